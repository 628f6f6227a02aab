#include "frobmod/modp.hpp"

#include <cmath>
#include <sstream>

#include "frobmod/parallel.hpp"
#include "frobmod/poly.hpp"

namespace frobmod::modp {

namespace {

void require_prime(u64 p) {
  if (p < 5 || !is_prime(p)) throw DomainError("p must be a prime >= 5");
}

u64 binomial_mod(u64 n, u64 k, u64 p) {
  if (k > n) return 0;
  Integer b = 1;
  for (u64 i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return static_cast<u64>(b % p);
}

u64 pair_count(const ff::FieldCtx& ctx) {
  if (!ctx.small_order() || Integer(*ctx.small_order()) * *ctx.small_order() > kMaxHistogramPairs) {
    throw CapExceeded("p^{2k} exceeds the histogram cap");
  }
  return *ctx.small_order() * *ctx.small_order();
}

}  // namespace

int WeightedPoly::weight() const { return static_cast<int>((p - 1) / 2); }

ff::FieldElement WeightedPoly::evaluate(const ff::FieldElement& a, const ff::FieldElement& b) const {
  ff::FieldElement acc = a - a;
  for (const auto& [exps, coeff] : terms) {
    acc += (a.pow(static_cast<u64>(exps.first)) * b.pow(static_cast<u64>(exps.second))).scaled(coeff);
  }
  return acc;
}

std::string WeightedPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [exps, coeff] = *it;
    if (!first) os << " + ";
    first = false;
    os << coeff;
    if (exps.first > 0) os << "*A" << (exps.first > 1 ? "^" + std::to_string(exps.first) : "");
    if (exps.second > 0) os << "*B" << (exps.second > 1 ? "^" + std::to_string(exps.second) : "");
  }
  return first ? "0" : os.str();
}

WeightedPoly c_poly(u64 p) {
  require_prime(p);
  WeightedPoly c;
  c.p = p;
  const u64 h = (p - 1) / 2;
  for (u64 i = (p - 1 + 5) / 6; i <= (p - 1) / 4; ++i) {
    const u64 ea = 3 * i - h;
    const u64 coeff = binomial_mod(h, i, p) * binomial_mod(i, ea, p) % p;
    if (coeff == 0) throw std::logic_error("vanishing coefficient in c_{A,B}");
    c.terms.emplace(std::make_pair(static_cast<int>(ea), static_cast<int>(h - 2 * i)), coeff);
  }
  return c;
}

u64 trace_mod_p(const WeightedPoly& c, const ec::Curve& e) {
  if (e.ctx().characteristic() != c.p) throw DomainError("curve characteristic differs from p");
  return ff::norm_to_prime(c.evaluate(e.a(), e.b()));
}

u64 trace_mod_p(const ec::Curve& e) { return trace_mod_p(c_poly(e.ctx().characteristic()), e); }

SquarefreeReport verify_squarefree(u64 p) {
  const WeightedPoly c = c_poly(p);
  SquarefreeReport rep;
  rep.p = p;
  rep.eps_a = 1;
  rep.eps_b = 1;
  for (const auto& [exps, coeff] : c.terms) {
    if (exps.first == 0) rep.eps_a = 0;
    if (exps.second == 0) rep.eps_b = 0;
  }
  const int reduced = c.weight() - 2 * rep.eps_a - 3 * rep.eps_b;
  rep.r_closed_form = reduced / 6;
  if (reduced % 6 != 0) return rep;
  // A^i B^j with 2i + 3j = 6r becomes A^{3r} s^{j/2}, s = B^2/A^3.
  const auto fp = ff::FieldCtx::make(p, 1);
  std::vector<ff::FieldElement> g(static_cast<std::size_t>(rep.r_closed_form) + 1, fp.zero());
  for (const auto& [exps, coeff] : c.terms) {
    const int j = exps.second - rep.eps_b;
    if (j % 2 != 0) return rep;
    g[static_cast<std::size_t>(j / 2)] = fp.from_int(static_cast<i64>(coeff));
  }
  const ff::Poly gp(fp, g);
  rep.r = gp.degree();
  const bool ends_nonzero = !g.front().is_zero() && !g.back().is_zero();
  rep.ok = ends_nonzero && rep.r == rep.r_closed_form && ff::gcd(gp, gp.derivative()).degree() == 0;
  return rep;
}

ModpHistogram modp_trace_histogram(u64 p, int k, unsigned threads) {
  require_prime(p);
  if (k < 1) throw DomainError("k must be positive");
  const auto ctx = ff::FieldCtx::make(p, k);
  const u64 q = *ctx.small_order();
  const u64 pairs = pair_count(ctx);
  const WeightedPoly c = c_poly(p);
  using Counts = std::vector<u64>;
  Counts counts = parallel_reduce(
      0, pairs, threads, Counts(p, 0),
      [&](u64 lo, u64 hi, Counts& acc) {
        for (u64 i = lo; i < hi; ++i) {
          const auto a = ctx.from_index(i / q);
          const auto b = ctx.from_index(i % q);
          if (!ec::is_nonsingular(a, b)) continue;
          ++acc[ff::norm_to_prime(c.evaluate(a, b))];
        }
      },
      [](Counts& into, const Counts& from) {
        for (std::size_t t = 0; t < into.size(); ++t) into[t] += from[t];
      });
  ModpHistogram h;
  h.p = p;
  h.k = k;
  h.counts = std::move(counts);
  for (u64 v : h.counts) h.total += v;
  h.total_matches = h.total == q * q - q;
  h.bound = round_up(3.0 * std::pow(static_cast<double>(p), 1.5 * k + 1.0));
  const double mean = static_cast<double>(h.total) / static_cast<double>(p - 1);
  for (u64 t = 1; t < p; ++t) h.max_deviation = std::max(h.max_deviation, std::abs(static_cast<double>(h.counts[t]) - mean));
  h.within_bound = h.max_deviation <= h.bound;
  return h;
}

DualTraceReport dual_trace_check(const ff::FieldCtx& ctx, unsigned threads) {
  const u64 q = *ctx.small_order();
  const u64 pairs = pair_count(ctx);
  const u64 p = ctx.characteristic();
  const WeightedPoly c = c_poly(p);
  const ec::PointCounter counter(ctx);
  return parallel_reduce(
      0, pairs, threads, DualTraceReport{},
      [&](u64 lo, u64 hi, DualTraceReport& acc) {
        for (u64 i = lo; i < hi; ++i) {
          const auto a = ctx.from_index(i / q);
          const auto b = ctx.from_index(i % q);
          if (!ec::is_nonsingular(a, b)) continue;
          ++acc.pairs;
          const u64 via_count = mod_floor(static_cast<i64>(q + 1) - static_cast<i64>(counter.count(a, b)), p);
          if (via_count == ff::norm_to_prime(c.evaluate(a, b))) continue;
          ++acc.mismatches;
          if (!acc.first_mismatch) acc.first_mismatch = std::make_pair(i / q, i % q);
        }
      },
      [](DualTraceReport& into, const DualTraceReport& from) {
        into.pairs += from.pairs;
        into.mismatches += from.mismatches;
        if (!into.first_mismatch) into.first_mismatch = from.first_mismatch;
      });
}

}  // namespace frobmod::modp
