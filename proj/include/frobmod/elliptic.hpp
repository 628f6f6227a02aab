#pragma once

// Short Weierstrass curves y^2 = x^3 + Ax + B over F_q with p >= 5.

#include <cstdint>
#include <optional>
#include <vector>

#include "frobmod/finite_field.hpp"

namespace frobmod::ec {

using ff::FieldCtx;
using ff::FieldElement;

class Curve {
 public:
  /// Throws DomainError when p < 5 or 4A^3 + 27B^2 = 0.
  static Curve make(const FieldCtx& ctx, const FieldElement& a, const FieldElement& b);
  static Curve make(const FieldCtx& ctx, i64 a, i64 b);

  const FieldCtx& ctx() const { return ctx_; }
  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }
  FieldElement rhs(const FieldElement& x) const;
  FieldElement j_invariant() const;
  std::string to_string() const;

 private:
  Curve(FieldCtx ctx, FieldElement a, FieldElement b) : ctx_(std::move(ctx)), a_(std::move(a)), b_(std::move(b)) {}
  FieldCtx ctx_;
  FieldElement a_;
  FieldElement b_;
};

/// Whether 4A^3 + 27B^2 != 0.
bool is_nonsingular(const FieldElement& a, const FieldElement& b);

struct CurvePoint {
  bool infinity = true;
  FieldElement x;
  FieldElement y;

  static CurvePoint at_infinity() { return {}; }
  static CurvePoint affine(FieldElement x, FieldElement y) { return {false, std::move(x), std::move(y)}; }

  friend bool operator==(const CurvePoint& p, const CurvePoint& q) {
    if (p.infinity || q.infinity) return p.infinity == q.infinity;
    return p.x == q.x && p.y == q.y;
  }
};

bool on_curve(const Curve& e, const CurvePoint& p);
CurvePoint negate(const CurvePoint& p);
CurvePoint add(const Curve& e, const CurvePoint& p, const CurvePoint& q);
CurvePoint multiply(const Curve& e, const CurvePoint& p, const Integer& k);
CurvePoint multiply(const Curve& e, const CurvePoint& p, u64 k);
/// Smallest m >= 1 with mP = O, searched among divisors of `multiple`.
u64 point_order(const Curve& e, const CurvePoint& p, u64 multiple);

/// Exhaustive x-scan counter with a precomputed quadratic-character table.
/// One instance serves every curve over the same field.
class PointCounter {
 public:
  explicit PointCounter(const FieldCtx& ctx);
  /// #E(F_q) including the point at infinity.
  u64 count(const FieldElement& a, const FieldElement& b) const;
  u64 count(const Curve& e) const { return count(e.a(), e.b()); }
  /// Quadratic character of the element with the given index.
  int chi(u64 index) const { return chi_[index]; }

 private:
  FieldCtx ctx_;
  u64 q_ = 0;
  std::vector<std::int8_t> chi_;
  std::vector<u64> cubes_prime_;
  std::vector<FieldElement> elements_;
  std::vector<FieldElement> cubes_;
};

/// Largest field size handled by exhaustive counting.
inline constexpr u64 kMaxCountField = 1'000'000;

u64 point_count(const Curve& e);
i64 trace_of_frobenius(const Curve& e);
/// Trace from a known point count: q + 1 - #E.
i64 trace_from_count(const FieldCtx& ctx, u64 count);

/// Twist by the least nonsquare d: (A d^2, B d^3).
Curve quadratic_twist(const Curve& e);

/// Order of Aut over F_q of the class of e.
int aut_order(const Curve& e);

struct GroupShape {
  u64 k = 1;
  u64 m = 1;
  friend bool operator==(const GroupShape&, const GroupShape&) = default;
};

/// Exponents (a, b), a <= b, with l-primary part Z/l^a + Z/l^b.
struct PrimaryShape {
  int a = 0;
  int b = 0;
  friend bool operator==(const PrimaryShape&, const PrimaryShape&) = default;
};

/// l-primary structure of E(F_q) given its order. Random probing with a
/// seed derived from `seed` and the curve, completed by an exhaustive scan.
PrimaryShape primary_structure(const Curve& e, u64 count, u64 ell, u64 seed = 0);
/// E(F_q) = Z/k + Z/m with k | m.
GroupShape group_structure(const Curve& e, u64 count, u64 seed = 0);
/// Whether E(F_q) has a point of exact order N.
bool has_point_of_order(const Curve& e, u64 count, u64 modulus, u64 seed = 0);

/// One F_q-isomorphism class under (A, B) ~ (u^4 A, u^6 B).
struct ClassRep {
  Curve curve;
  FieldElement j;
  int aut_order = 2;
  /// Number of couples (A, B) in the class, (q - 1)/#Aut.
  u64 multiplicity = 0;
};

/// All classes sorted by (j, A, B) of the canonical representative.
std::vector<ClassRep> enumerate_class_reps(const FieldCtx& ctx);

struct CurveClassRecord {
  Curve representative;
  i64 trace = 0;
  GroupShape group_shape;
  int aut_order = 2;
  FieldElement j_inv;
  u64 multiplicity = 0;
};

/// Class representatives with trace and group structure.
std::vector<CurveClassRecord> enumerate_classes(const FieldCtx& ctx, int threads = 1, u64 seed = 0);

}  // namespace frobmod::ec
