#pragma once

// Exhaustive censuses over all isomorphism classes of curves over F_q,
// compared row by row with the closed-form predictions.

#include <string>
#include <vector>

#include "frobmod/finite_field.hpp"
#include "frobmod/formulas.hpp"

namespace frobmod::census {

enum class Weighting { PerClass, PerPair };

std::string_view to_string(Weighting w);

/// Regime labels: the explicit bound when it is below 1, the soft tolerance
/// when it is vacuous and q >= kSoftMinQ, and the vacuous bound otherwise.
inline constexpr std::string_view kRegimeBound = "explicit_bound";
inline constexpr std::string_view kRegimeSoft = "soft_tolerance";
inline constexpr std::string_view kRegimeVacuous = "vacuous_bound";
inline constexpr u64 kSoftMinQ = 5000;
inline constexpr double kDefaultSoftTolerance = 0.02;

struct CensusOptions {
  unsigned threads = 1;
  u64 seed = 0;
  Weighting weighting = Weighting::PerClass;
  double soft_tolerance = kDefaultSoftTolerance;
};

struct CensusRow {
  std::string key;
  Rational predicted;
  double bound = 0.0;
  Rational empirical;
  double gap = 0.0;
  bool within_bound = false;
  std::string regime;
};

struct CensusMeta {
  u64 q = 0;
  u64 modulus = 0;
  std::string statistic;
  std::string weighting;
  u64 seed = 0;
  std::string version;
  u64 class_count = 0;
  i64 delta = 0;
  double runtime_ms = 0.0;
  double soft_tolerance = kDefaultSoftTolerance;
};

struct CensusReport {
  CensusMeta meta;
  std::vector<CensusRow> rows;

  bool passed() const;
  std::vector<const CensusRow*> failing_rows() const;
};

/// F_q for a census: q must be a prime power with p >= 5 and q <= 10^6.
ff::FieldCtx census_field(u64 q);

CensusReport run_trace_census(u64 q, u64 modulus, const CensusOptions& opts = {});
CensusReport run_order_census(u64 q, u64 modulus, const CensusOptions& opts = {});
/// Needs N <= 5 and q <= 10^4.
CensusReport run_class_census(u64 q, u64 modulus, const CensusOptions& opts = {});
/// Needs l^{a+b+1} <= 27.
CensusReport run_group_structure_census(u64 q, u64 ell, int a, int b, const CensusOptions& opts = {});
/// Trace modulo p over all couples (A, B); pair weighting only.
CensusReport run_modp_census(u64 q, const CensusOptions& opts = {});

/// Fills gap, regime and within_bound from predicted, bound and empirical.
void classify_row(CensusRow& row, u64 q, double soft_tolerance);

}  // namespace frobmod::census
