#pragma once

// Trace of Frobenius modulo the characteristic through the coefficient of
// x^{p-1} in (x^3 + Ax + B)^{(p-1)/2}.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "frobmod/elliptic.hpp"

namespace frobmod::modp {

/// Sparse polynomial in A, B over F_p, homogeneous for the weights
/// deg A = 2, deg B = 3.
struct WeightedPoly {
  u64 p = 0;
  /// (exponent of A, exponent of B) -> nonzero coefficient mod p.
  std::map<std::pair<int, int>, u64> terms;

  int weight() const;
  ff::FieldElement evaluate(const ff::FieldElement& a, const ff::FieldElement& b) const;
  std::string to_string() const;
};

/// c_{A,B} for a prime p >= 5.
WeightedPoly c_poly(u64 p);

/// Norm of c_{A,B} down to F_p for the curve's coefficients.
u64 trace_mod_p(const WeightedPoly& c, const ec::Curve& e);
u64 trace_mod_p(const ec::Curve& e);

struct SquarefreeReport {
  u64 p = 0;
  int eps_a = 0;
  int eps_b = 0;
  /// Degree of the dehomogenized polynomial in s = B^2/A^3.
  int r = 0;
  /// ((p-1)/2 - 2 eps_a - 3 eps_b)/6.
  int r_closed_form = 0;
  bool ok = false;
};

SquarefreeReport verify_squarefree(u64 p);

struct ModpHistogram {
  u64 p = 0;
  int k = 0;
  /// counts[t] = #S_t for t in [0, p).
  std::vector<u64> counts;
  u64 total = 0;
  /// 3 p^{3k/2 + 1}.
  double bound = 0.0;
  /// max over t in [1, p) of |#S_t - #S/(p-1)|.
  double max_deviation = 0.0;
  bool total_matches = false;
  bool within_bound = false;
};

inline constexpr u64 kMaxHistogramPairs = 10'000'000;

ModpHistogram modp_trace_histogram(u64 p, int k, unsigned threads = 1);

struct DualTraceReport {
  u64 pairs = 0;
  u64 mismatches = 0;
  /// First mismatching (A index, B index), if any.
  std::optional<std::pair<u64, u64>> first_mismatch;
};

/// Compares trace_mod_p with (q + 1 - #E) mod p for every nonsingular pair.
DualTraceReport dual_trace_check(const ff::FieldCtx& ctx, unsigned threads = 1);

}  // namespace frobmod::modp
