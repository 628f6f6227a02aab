#include "frobmod/census.hpp"

#include <chrono>
#include <cmath>

#include "frobmod/elliptic.hpp"
#include "frobmod/modp.hpp"
#include "frobmod/parallel.hpp"
#include "frobmod/torsion.hpp"

#ifndef FROBMOD_VERSION
#define FROBMOD_VERSION "0.0.0"
#endif

namespace frobmod::census {

namespace {

using Clock = std::chrono::steady_clock;
using Counts = std::vector<u64>;

inline constexpr u64 kMaxCensusField = 1'000'000;
inline constexpr u64 kMaxClassCensusField = 10'000;
inline constexpr u64 kMaxClassCensusLevel = 5;
inline constexpr u64 kMaxGroupLevel = 27;

struct Sweep {
  ff::FieldCtx ctx;
  std::vector<ec::ClassRep> reps;
};

Sweep make_sweep(u64 q) {
  Sweep s{census_field(q), {}};
  s.reps = ec::enumerate_class_reps(s.ctx);
  return s;
}

void require_coprime(u64 q, u64 modulus) {
  if (modulus < 2) throw DomainError("N must be at least 2");
  if (gcd_u64(q, modulus) != 1) throw DomainError("gcd(N, q) must be 1");
}

// Weighted histogram over classes; `bucket` returns the bucket index of a
// class, or `buckets` to skip it.
template <class Bucket>
Counts weighted_counts(const Sweep& s, const CensusOptions& opts, std::size_t buckets, Bucket bucket) {
  return parallel_reduce(
      0, s.reps.size(), opts.threads, Counts(buckets, 0),
      [&](u64 lo, u64 hi, Counts& acc) {
        for (u64 i = lo; i < hi; ++i) {
          const std::size_t b = bucket(s.reps[i]);
          if (b >= buckets) continue;
          acc[b] += opts.weighting == Weighting::PerPair ? s.reps[i].multiplicity : 1;
        }
      },
      [](Counts& into, const Counts& from) {
        for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
      });
}

u64 total_weight(const Sweep& s, Weighting w) {
  if (w == Weighting::PerClass) return s.reps.size();
  u64 total = 0;
  for (const auto& r : s.reps) total += r.multiplicity;
  return total;
}

CensusReport start_report(const Sweep& s, u64 modulus, std::string statistic, const CensusOptions& opts) {
  CensusReport rep;
  rep.meta.q = *s.ctx.small_order();
  rep.meta.modulus = modulus;
  rep.meta.statistic = std::move(statistic);
  rep.meta.weighting = std::string(to_string(opts.weighting));
  rep.meta.seed = opts.seed;
  rep.meta.version = FROBMOD_VERSION;
  rep.meta.class_count = s.reps.size();
  rep.meta.delta = static_cast<i64>(s.reps.size()) - 2 * static_cast<i64>(rep.meta.q);
  rep.meta.soft_tolerance = opts.soft_tolerance;
  return rep;
}

void add_row(CensusReport& rep, std::string key, const formulas::Prediction& pred, u64 hits, u64 total,
             double soft_tolerance) {
  CensusRow row;
  row.key = std::move(key);
  row.predicted = pred.value;
  row.bound = pred.error_bound;
  row.empirical = Rational(Integer(hits), Integer(total));
  classify_row(row, rep.meta.q, soft_tolerance);
  rep.rows.push_back(std::move(row));
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

std::string_view to_string(Weighting w) { return w == Weighting::PerClass ? "class" : "pair"; }

bool CensusReport::passed() const { return failing_rows().empty(); }

std::vector<const CensusRow*> CensusReport::failing_rows() const {
  std::vector<const CensusRow*> out;
  for (const auto& r : rows)
    if (!r.within_bound) out.push_back(&r);
  return out;
}

ff::FieldCtx census_field(u64 q) {
  const auto pp = as_prime_power(q);
  if (!pp) throw DomainError(std::to_string(q) + " is not a prime power");
  if (pp->prime < 5) throw DomainError("census needs characteristic p >= 5");
  if (q > kMaxCensusField) throw CapExceeded("census needs q <= 10^6");
  return ff::FieldCtx::make(pp->prime, pp->exponent);
}

void classify_row(CensusRow& row, u64 q, double soft_tolerance) {
  const Rational diff = row.empirical - row.predicted;
  row.gap = std::abs(to_double(diff));
  if (row.bound < 1.0) {
    row.regime = std::string(kRegimeBound);
    row.within_bound = row.gap <= row.bound;
  } else if (q >= kSoftMinQ) {
    row.regime = std::string(kRegimeSoft);
    row.within_bound = row.gap <= soft_tolerance;
  } else {
    row.regime = std::string(kRegimeVacuous);
    row.within_bound = row.gap <= row.bound;
  }
}

CensusReport run_trace_census(u64 q, u64 modulus, const CensusOptions& opts) {
  const auto start = Clock::now();
  require_coprime(q, modulus);
  const Sweep s = make_sweep(q);
  const ec::PointCounter counter(s.ctx);
  const Counts counts = weighted_counts(s, opts, modulus, [&](const ec::ClassRep& r) {
    return static_cast<std::size_t>(mod_floor(ec::trace_from_count(s.ctx, counter.count(r.curve)), modulus));
  });
  CensusReport rep = start_report(s, modulus, "trace_residue", opts);
  const u64 total = total_weight(s, opts.weighting);
  for (u64 t = 0; t < modulus; ++t) {
    add_row(rep, std::to_string(t), formulas::trace_prediction(static_cast<i64>(q), modulus, static_cast<i64>(t)),
            counts[t], total, opts.soft_tolerance);
  }
  rep.meta.runtime_ms = elapsed_ms(start);
  return rep;
}

CensusReport run_order_census(u64 q, u64 modulus, const CensusOptions& opts) {
  const auto start = Clock::now();
  require_coprime(q, modulus);
  const Sweep s = make_sweep(q);
  const ec::PointCounter counter(s.ctx);
  const Counts counts = weighted_counts(s, opts, 1, [&](const ec::ClassRep& r) -> std::size_t {
    return ec::has_point_of_order(r.curve, counter.count(r.curve), modulus, opts.seed) ? 0 : 1;
  });
  CensusReport rep = start_report(s, modulus, "order_prob", opts);
  add_row(rep, std::to_string(modulus), formulas::order_prediction(static_cast<i64>(q), modulus), counts[0],
          total_weight(s, opts.weighting), opts.soft_tolerance);
  rep.meta.runtime_ms = elapsed_ms(start);
  return rep;
}

CensusReport run_class_census(u64 q, u64 modulus, const CensusOptions& opts) {
  const auto start = Clock::now();
  require_coprime(q, modulus);
  if (modulus > kMaxClassCensusLevel) throw CapExceeded("class census needs N <= 5");
  if (q > kMaxClassCensusField) throw CapExceeded("class census needs q <= 10^4");
  const Sweep s = make_sweep(q);
  const auto classes = zn::classes_with_det(modulus, static_cast<i64>(q));
  const Counts counts = weighted_counts(s, opts, classes.size(), [&](const ec::ClassRep& r) {
    const zn::ConjClass c = torsion::class_of_curve(r.curve, modulus, opts.seed);
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (classes[i] == c) return i;
    throw std::logic_error("Frobenius class with the wrong determinant");
  });
  CensusReport rep = start_report(s, modulus, "class_prob", opts);
  const u64 total = total_weight(s, opts.weighting);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    add_row(rep, std::to_string(classes[i].fingerprint),
            formulas::class_prediction(static_cast<i64>(q), modulus, classes[i]), counts[i], total,
            opts.soft_tolerance);
  }
  rep.meta.runtime_ms = elapsed_ms(start);
  return rep;
}

CensusReport run_group_structure_census(u64 q, u64 ell, int a, int b, const CensusOptions& opts) {
  const auto start = Clock::now();
  if (!is_prime(ell)) throw DomainError("l must be prime");
  if (a < 0 || b < a) throw DomainError("need 0 <= a <= b");
  const u64 modulus = ipow(ell, a + b + 1);
  if (modulus > kMaxGroupLevel) throw CapExceeded("group census needs l^{a+b+1} <= 27");
  require_coprime(q, modulus);
  const Sweep s = make_sweep(q);
  const ec::PointCounter counter(s.ctx);
  const ec::PrimaryShape target{a, b};
  const Counts counts = weighted_counts(s, opts, 1, [&](const ec::ClassRep& r) -> std::size_t {
    return ec::primary_structure(r.curve, counter.count(r.curve), ell, opts.seed) == target ? 0 : 1;
  });
  CensusReport rep = start_report(s, modulus, "group_structure", opts);
  add_row(rep, "(" + std::to_string(a) + "," + std::to_string(b) + ")",
          formulas::group_structure_prediction(static_cast<i64>(q), ell, a, b), counts[0],
          total_weight(s, opts.weighting), opts.soft_tolerance);
  rep.meta.runtime_ms = elapsed_ms(start);
  return rep;
}

CensusReport run_modp_census(u64 q, const CensusOptions& opts) {
  const auto start = Clock::now();
  const Sweep s = make_sweep(q);
  const u64 p = s.ctx.characteristic();
  const auto hist = modp::modp_trace_histogram(p, s.ctx.degree(), opts.threads);
  if (!hist.total_matches) throw std::logic_error("#S differs from p^{2k} - p^k");
  CensusOptions pair_opts = opts;
  pair_opts.weighting = Weighting::PerPair;
  CensusReport rep = start_report(s, p, "modp_trace", pair_opts);
  const double row_bound = round_up(hist.bound / static_cast<double>(hist.total));
  for (u64 t = 0; t < p; ++t) {
    formulas::Prediction pred;
    pred.modulus = p;
    pred.value = t == 0 ? Rational(0) : Rational(1, static_cast<i64>(p - 1));
    pred.error_bound = t == 0 ? round_up(row_bound * static_cast<double>(p - 1)) : row_bound;
    add_row(rep, std::to_string(t), pred, hist.counts[t], hist.total, opts.soft_tolerance);
  }
  rep.meta.runtime_ms = elapsed_ms(start);
  return rep;
}

}  // namespace frobmod::census
