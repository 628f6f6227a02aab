#include "frobmod/torsion.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace frobmod::torsion {

namespace {

using ff::FieldCtx;
using ff::FieldElement;
using ff::Poly;

void check_inputs(const Curve& e, u64 modulus) {
  if (modulus < 2 || modulus > kMaxLevel) throw DomainError("N must lie in [2, 13]");
  if (modulus % e.ctx().characteristic() == 0) throw DomainError("p divides N");
  if (!e.ctx().small_order() || *e.ctx().small_order() > kMaxTorsionField) {
    throw CapExceeded("torsion computations need q <= 10^4");
  }
}

// Division polynomials with the y-factor of even indices removed:
// psi_n = g_n for odd n and psi_n = 2y g_n for even n.
class DivisionTable {
 public:
  explicit DivisionTable(const Curve& e) : ctx_(e.ctx()) {
    const FieldElement a = e.a(), b = e.b();
    const FieldElement z = ctx_.zero(), one = ctx_.one();
    auto c = [&](i64 v) { return ctx_.from_int(v); };
    const Poly f(ctx_, {b, a, z, one});
    big_f_sq_ = (f * f).scaled(c(16));
    g_.emplace(0, Poly(ctx_));
    g_.emplace(1, Poly::constant(ctx_, one));
    g_.emplace(2, Poly::constant(ctx_, one));
    g_.emplace(3, Poly(ctx_, {-(a * a), b.scaled(12), a.scaled(6), z, c(3)}));
    g_.emplace(4, Poly(ctx_, {-(b * b).scaled(8) - a * a * a, -(a * b).scaled(4), -(a * a).scaled(5), b.scaled(20),
                              a.scaled(5), z, one})
                      .scaled(c(2)));
  }

  const Poly& g(int n) {
    auto it = g_.find(n);
    if (it != g_.end()) return it->second;
    const int m = n / 2;
    Poly out(ctx_);
    if (n % 2 == 1) {
      const Poly lhs = g(m + 2) * cube(g(m));
      const Poly rhs = g(m - 1) * cube(g(m + 1));
      out = m % 2 == 0 ? big_f_sq_ * lhs - rhs : lhs - big_f_sq_ * rhs;
    } else {
      out = g(m) * (g(m + 2) * g(m - 1) * g(m - 1) - g(m - 2) * g(m + 1) * g(m + 1));
    }
    return g_.emplace(n, std::move(out)).first->second;
  }

 private:
  static Poly cube(const Poly& p) { return p * p * p; }
  FieldCtx ctx_;
  Poly big_f_sq_{ctx_};
  std::map<int, Poly> g_;
};

bool has_exact_order(const Curve& e, const CurvePoint& p, u64 n) {
  if (!ec::multiply(e, p, n).infinity) return false;
  for (const auto& pp : factorize(n)) {
    if (ec::multiply(e, p, n / pp.prime).infinity) return false;
  }
  return true;
}

std::vector<CurvePoint> multiples(const Curve& e, const CurvePoint& p, u64 n) {
  std::vector<CurvePoint> out{CurvePoint::at_infinity()};
  for (u64 i = 1; i < n; ++i) out.push_back(ec::add(e, out.back(), p));
  return out;
}

bool contains(const std::vector<CurvePoint>& v, const CurvePoint& x) {
  for (const auto& y : v)
    if (y == x) return true;
  return false;
}

// Table of iP + jQ at index i*N + j; empty when two entries coincide.
std::vector<CurvePoint> span_table(const Curve& e, const CurvePoint& p, const CurvePoint& q, u64 n) {
  const auto mp = multiples(e, p, n);
  const auto mq = multiples(e, q, n);
  std::vector<CurvePoint> table;
  table.reserve(n * n);
  for (u64 i = 0; i < n; ++i) {
    for (u64 j = 0; j < n; ++j) {
      CurvePoint s = ec::add(e, mp[i], mq[j]);
      if (contains(table, s)) return {};
      table.push_back(std::move(s));
    }
  }
  return table;
}

// #E(F_{q^e}) from the trace over F_q.
Integer count_over_extension(const Integer& q, i64 trace, int e) {
  Integer s_prev = 2, s = trace;
  for (int i = 1; i < e; ++i) {
    Integer next = trace * s - q * s_prev;
    s_prev = s;
    s = next;
  }
  return boost::multiprecision::pow(q, static_cast<unsigned>(e)) + 1 - s;
}

// Extension contexts are deterministic in (p, k, seed) and reused across curves.
FieldCtx extension_field(u64 p, int k, u64 seed) {
  static std::mutex mu;
  static std::map<std::tuple<u64, int, u64>, FieldCtx> cache;
  const std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(p, k, seed);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, FieldCtx::make(p, k, seed)).first;
  return it->second;
}

CurvePoint frobenius_point(const CurvePoint& x, const Integer& q) {
  if (x.infinity) return x;
  return CurvePoint::affine(x.x.pow(q), x.y.pow(q));
}

}  // namespace

Poly division_poly(const Curve& e, u64 modulus) {
  if (modulus < 1 || modulus > kMaxLevel) throw DomainError("N must lie in [1, 13]");
  if (modulus % e.ctx().characteristic() == 0) throw DomainError("p divides N");
  DivisionTable table(e);
  Poly g = table.g(static_cast<int>(modulus));
  if (modulus % 2 == 1) return g;
  const FieldCtx& ctx = e.ctx();
  return Poly(ctx, {e.b(), e.a(), ctx.zero(), ctx.one()}) * g;
}

TorsionBasis torsion_basis(const Curve& e, u64 modulus, u64 seed) {
  check_inputs(e, modulus);
  const FieldCtx& ctx = e.ctx();
  const u64 n = modulus;
  const i64 trace = ec::trace_of_frobenius(e);
  const Integer& q = ctx.order();
  const Poly psi = division_poly(e, n);
  const int max_degree = static_cast<int>(n * n);
  for (int d = 1; d <= max_degree; ++d) {
    if (mod_floor(Integer(boost::multiprecision::powm(q, Integer(d), Integer(n))), n) != 1 % n) continue;
    if (count_over_extension(q, trace, d) % (n * n) != 0) continue;
    const FieldCtx ext = d == 1 ? ctx : extension_field(ctx.characteristic(), ctx.degree() * d, seed);
    const ff::Embedding emb(ctx, ext);
    const Curve ce = Curve::make(ext, emb(e.a()), emb(e.b()));
    std::vector<CurvePoint> pts;
    for (const auto& x : ff::poly_factor_distinct_roots(emb(psi), seed)) {
      const auto y = ff::sqrt(ce.rhs(x));
      if (!y) continue;
      pts.push_back(CurvePoint::affine(x, *y));
      if (!y->is_zero()) pts.push_back(CurvePoint::affine(x, -*y));
    }
    if (pts.size() + 1 != n * n) continue;
    for (const auto& p : pts) {
      if (!has_exact_order(ce, p, n)) continue;
      const auto mp = multiples(ce, p, n);
      for (const auto& qq : pts) {
        if (!has_exact_order(ce, qq, n)) continue;
        bool independent = true;
        CurvePoint acc = qq;
        for (u64 j = 1; j < n && independent; ++j, acc = ec::add(ce, acc, qq)) independent = !contains(mp, acc);
        if (!independent) continue;
        auto table = span_table(ce, p, qq, n);
        if (table.empty()) throw std::logic_error("independent pair does not span E[N]");
        return TorsionBasis{n, d, ce, p, qq, std::move(table)};
      }
    }
    throw std::logic_error("E[N] found without a basis");
  }
  throw CapExceeded("torsion field degree exceeds N^2");
}

TorsionBasis rebase(const TorsionBasis& b, const CurvePoint& p, const CurvePoint& q) {
  auto table = span_table(b.curve, p, q, b.modulus);
  if (table.empty()) throw DomainError("points do not form a basis of E[N]");
  return TorsionBasis{b.modulus, b.degree, b.curve, p, q, std::move(table)};
}

std::pair<u64, u64> discrete_log(const TorsionBasis& b, const CurvePoint& x) {
  for (std::size_t i = 0; i < b.points.size(); ++i) {
    if (b.points[i] == x) return {i / b.modulus, i % b.modulus};
  }
  throw DomainError("point is not in E[N]");
}

FrobeniusMatrix frobenius_matrix(const TorsionBasis& b, const Integer& q) {
  const auto [a, c] = discrete_log(b, frobenius_point(b.p, q));
  const auto [bb, d] = discrete_log(b, frobenius_point(b.q, q));
  const auto m = zn::ResidueMatrix::make(static_cast<i64>(a), static_cast<i64>(bb), static_cast<i64>(c),
                                         static_cast<i64>(d), b.modulus);
  if (m.det() != mod_floor(q, b.modulus)) throw std::logic_error("Frobenius determinant differs from q mod N");
  return FrobeniusMatrix{m, b};
}

FrobeniusMatrix frobenius_matrix(const Curve& e, u64 modulus, u64 seed) {
  FrobeniusMatrix fm = frobenius_matrix(torsion_basis(e, modulus, seed), e.ctx().order());
  if (fm.matrix.trace() != mod_floor(ec::trace_of_frobenius(e), modulus)) {
    throw std::logic_error("Frobenius trace differs from the point-count trace mod N");
  }
  return fm;
}

zn::ConjClass class_of_curve(const Curve& e, u64 modulus, u64 seed) {
  return zn::conj_class_of(frobenius_matrix(e, modulus, seed).matrix);
}

}  // namespace frobmod::torsion
