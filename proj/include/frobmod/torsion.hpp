#pragma once

// N-torsion bases over explicit extension fields and the matrix of the
// q-power Frobenius acting on them.

#include <vector>

#include "frobmod/elliptic.hpp"
#include "frobmod/poly.hpp"
#include "frobmod/zn_matrix.hpp"

namespace frobmod::torsion {

using ec::Curve;
using ec::CurvePoint;

inline constexpr u64 kMaxLevel = 13;
inline constexpr u64 kMaxTorsionField = 10'000;

/// Polynomial in x over the curve's field whose roots are the x-coordinates
/// of the nonzero N-torsion points: psi_N for odd N and (x^3+Ax+B) psi_N/(2y)
/// for even N.
ff::Poly division_poly(const Curve& e, u64 modulus);

struct TorsionBasis {
  u64 modulus = 0;
  /// Degree d of the torsion field over F_q.
  int degree = 0;
  /// The curve base-changed to F_{q^d}.
  Curve curve;
  CurvePoint p;
  CurvePoint q;
  /// Every point of E[N], O included.
  std::vector<CurvePoint> points;
};

/// Basis of E[N] over the least extension containing it. P is the first
/// point of exact order N in root order; Q the first one meeting <P> only in O.
TorsionBasis torsion_basis(const Curve& e, u64 modulus, u64 seed = 0);

/// Same torsion field and points with a different basis (P', Q').
TorsionBasis rebase(const TorsionBasis& b, const CurvePoint& p, const CurvePoint& q);

/// Coefficients (i, j) with x = iP + jQ.
std::pair<u64, u64> discrete_log(const TorsionBasis& b, const CurvePoint& x);

struct FrobeniusMatrix {
  zn::ResidueMatrix matrix;
  TorsionBasis basis;
};

/// Matrix [[a, b], [c, d]] with sigma P = aP + cQ, sigma Q = bP + dQ for
/// sigma the q-power map of the base field.
FrobeniusMatrix frobenius_matrix(const TorsionBasis& b, const Integer& q);
FrobeniusMatrix frobenius_matrix(const Curve& e, u64 modulus, u64 seed = 0);

zn::ConjClass class_of_curve(const Curve& e, u64 modulus, u64 seed = 0);

}  // namespace frobmod::torsion
