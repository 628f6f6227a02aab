#pragma once

// 2x2 matrices over Z/MZ: exact group orders, exhaustive counting oracles,
// conjugacy classes and the matrix-counting lemmas behind the trace and
// point-order predictions.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "frobmod/arith.hpp"

namespace frobmod::zn {

/// Exhaustive scans refuse to run beyond this many matrices.
inline constexpr u64 kMaxScan = 100'000'000;

/// An element of Z/MZ.
class Residue {
 public:
  Residue(i64 value, u64 modulus);

  u64 value() const { return value_; }
  u64 modulus() const { return modulus_; }
  bool is_unit() const { return gcd_u64(value_, modulus_) == 1; }

  friend bool operator==(const Residue&, const Residue&) = default;

 private:
  u64 value_;
  u64 modulus_;
};

/// [[a, b], [c, d]] over Z/MZ with all entries reduced.
struct ResidueMatrix {
  u64 a = 0, b = 0, c = 0, d = 0;
  u64 modulus = 2;

  static ResidueMatrix make(i64 a, i64 b, i64 c, i64 d, u64 modulus);
  static ResidueMatrix identity(u64 modulus) { return {1 % modulus, 0, 0, 1 % modulus, modulus}; }
  /// Inverse of index(): row-major base-M digits of (a, b, c, d).
  static ResidueMatrix from_index(u64 index, u64 modulus);

  u64 det() const;
  u64 trace() const;
  bool invertible() const { return gcd_u64(det(), modulus) == 1; }
  u64 index() const { return ((a * modulus + b) * modulus + c) * modulus + d; }

  ResidueMatrix operator*(const ResidueMatrix& o) const;
  ResidueMatrix operator-() const;
  ResidueMatrix inverse() const;
  ResidueMatrix pow(u64 e) const;
  /// Entrywise reduction to a divisor of the modulus.
  ResidueMatrix reduce(u64 divisor) const;

  std::string to_string() const;

  friend bool operator==(const ResidueMatrix&, const ResidueMatrix&) = default;
  friend auto operator<=>(const ResidueMatrix& x, const ResidueMatrix& y) { return x.index() <=> y.index(); }
};

struct GroupSizes {
  u64 gl2 = 0;
  u64 sl2 = 0;
  u64 psl2 = 0;
};

/// Orders of GL2, SL2 and PSL2 over Z/MZ.
GroupSizes group_sizes(u64 modulus);

/// Histogram of (determinant, trace) over all M^4 matrices.
class DetTraceTable {
 public:
  DetTraceTable(u64 modulus, unsigned threads = 0);

  u64 modulus() const { return modulus_; }
  u64 count(u64 det, u64 trace) const { return counts_[(det % modulus_) * modulus_ + trace % modulus_]; }

 private:
  u64 modulus_;
  std::vector<u64> counts_;
};

/// Number of matrices in GL2(Z/MZ) with determinant q and trace t.
/// Prime-power moduli are enumerated; composite moduli multiply prime-power
/// counts through the Chinese remainder theorem.
u64 count_det_trace(u64 modulus, i64 q, i64 t);
/// Same count, always by direct enumeration of the M^4 matrices.
u64 count_det_trace_exhaustive(u64 modulus, i64 q, i64 t);

/// Solutions (x, y) of xy = alpha over Z/l^n, from the closed form.
u64 count_xy_eq_alpha(u64 modulus, i64 alpha);

struct InductionSum {
  Rational literal;
  Rational closed_form;
};

/// Both sides of the summation identity
///   sum_{i<=k} (l^{n-i} - l^{n-i-1})(2i+1)(l^n - l^{n-1})
///     = l^{2n} + l^{2n-1} - (2k+3) l^{2n-k-1} + (2k+1) l^{2n-k-2}.
InductionSum induction_sum(u64 ell, int n, int k);

struct ConjClass {
  ResidueMatrix representative;  // lexicographically least member
  u64 size = 0;
  u64 fingerprint = 0;  // index() of the representative

  friend bool operator==(const ConjClass& x, const ConjClass& y) { return x.fingerprint == y.fingerprint; }
};

/// GL2(Z/MZ)-conjugacy class of an invertible matrix.
ConjClass conj_class_of(const ResidueMatrix& m);
/// All members of the conjugacy class, sorted.
std::vector<ResidueMatrix> class_members(const ResidueMatrix& m);
/// Order of the centralizer of m in GL2(Z/MZ), by enumeration.
u64 stabilizer_order(const ResidueMatrix& m);
/// Every conjugacy class of matrices with determinant q, sorted by fingerprint.
std::vector<ConjClass> classes_with_det(u64 modulus, i64 q);

/// Whether m (over Z/l^k, k = `level` <= the exponent of its modulus) fixes a
/// vector that is nonzero modulo l. Level 0 is always satisfied.
bool fixes_primitive_vector(const ResidueMatrix& m, u64 ell, int level);

/// Matrices with determinant q that fix a vector nonzero mod l, by enumeration.
u64 count_order_class(u64 modulus, i64 q);

/// The representatives [[1, l^a], [0, q]] for 0 <= a <= min(nu, n), where
/// nu = ord_l(q - 1).
std::vector<ResidueMatrix> conj_representatives_ma(u64 ell, int n, i64 q);

/// Whether m, over Z/l^{a+b+1} with determinant q, satisfies the four
/// conditions singling out an l-primary rational group Z/l^a + Z/l^b:
/// trace != q+1 mod l^{a+b+1}, trace == q+1 mod l^{a+b}, a fixed vector
/// primitive mod l at level b, and m == I mod l^a.
bool matches_group_structure(const ResidueMatrix& m, u64 ell, int a, int b, i64 q);

/// Number of matrices satisfying matches_group_structure, by enumeration.
u64 count_group_structure_matrices(u64 ell, int a, int b, i64 q);

}  // namespace frobmod::zn
