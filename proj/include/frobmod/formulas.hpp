#pragma once

// Closed-form predictions for Frobenius statistics modulo N together with
// their explicit error bounds.

#include <string_view>

#include "frobmod/arith.hpp"
#include "frobmod/zn_matrix.hpp"

namespace frobmod::formulas {

/// Argument of the matrix-count function: the discriminant t^2 - 4q as a
/// full integer. Reduction happens inside phi, modulo l^n for odd l and
/// modulo 2^{n+2} for l = 2.
struct PhiInput {
  u64 ell = 0;
  int n = 0;
  Integer delta;
};

enum class Statistic { TraceResidue, OrderProb, ClassProb, GroupStructure };

std::string_view to_string(Statistic s);

struct Prediction {
  Rational value;
  double error_bound = 0.0;
  u64 modulus = 0;
  Statistic statistic = Statistic::TraceResidue;
};

/// Degree [L:K] = #PSL2(Z/N) and genus g_L = 1 + [L:K](N-6)/(12N) of the
/// level-N modular function field.
struct LevelData {
  u64 modulus = 0;
  u64 degree_lk = 0;
  Rational genus;
};

LevelData level_data(u64 modulus);

/// 4[L:K] + 4 g_L + 2 at level N.
Rational chebotarev_constant(u64 modulus);

/// Number of matrices in GL2(Z/l^n) with determinant q and trace t, as a
/// function of t^2 - 4q.
Integer phi(const PhiInput& input);

/// Limiting probability of a rational point of order exactly l^n, for
/// q a residue class with l not dividing q.
Rational theta(u64 ell, int n, i64 q);

/// Probability that the trace is t modulo N.
Prediction trace_prediction(i64 q, u64 modulus, i64 t);
/// Probability that Frobenius lands in the given class of determinant-q matrices.
Prediction class_prediction(i64 q, u64 modulus, const zn::ConjClass& cls);
/// Probability of a rational point of order exactly N.
Prediction order_prediction(i64 q, u64 modulus);
/// Probability that the l-primary rational subgroup is Z/l^a + Z/l^b.
Prediction group_structure_prediction(i64 q, u64 ell, int a, int b);

}  // namespace frobmod::formulas
