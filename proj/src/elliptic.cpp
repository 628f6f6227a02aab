#include "frobmod/elliptic.hpp"

#include <algorithm>
#include <random>
#include <tuple>
#include <unordered_set>

#include "frobmod/parallel.hpp"

namespace frobmod::ec {

namespace {

void require_same(const Curve& e, const FieldElement& x) {
  if (x.field() != e.ctx().data()) throw DomainError("point coordinates are not in the curve's field");
}

u64 require_small(const FieldCtx& ctx) {
  if (!ctx.small_order() || *ctx.small_order() > kMaxCountField) {
    throw CapExceeded("field too large for exhaustive point counting");
  }
  return *ctx.small_order();
}

u64 mix(u64 x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

u64 point_key(const CurvePoint& p, u64 q) {
  if (p.infinity) return ~u64{0};
  return p.x.index() * q + p.y.index();
}

// Enumerates the group generated by an accumulated set of points.
class SubgroupBuilder {
 public:
  SubgroupBuilder(const Curve& e, u64 q) : e_(e), q_(q) {
    elems_.push_back(CurvePoint::at_infinity());
    keys_.insert(point_key(elems_.back(), q_));
  }
  std::size_t size() const { return elems_.size(); }
  bool contains(const CurvePoint& p) const { return keys_.count(point_key(p, q_)) > 0; }
  void adjoin(const CurvePoint& r) {
    const std::size_t base = elems_.size();
    CurvePoint shift = r;
    while (!contains(shift)) {
      for (std::size_t i = 0; i < base; ++i) {
        CurvePoint s = add(e_, elems_[i], shift);
        keys_.insert(point_key(s, q_));
        elems_.push_back(std::move(s));
      }
      shift = add(e_, shift, r);
    }
  }

 private:
  const Curve& e_;
  u64 q_;
  std::vector<CurvePoint> elems_;
  std::unordered_set<u64> keys_;
};

}  // namespace

bool is_nonsingular(const FieldElement& a, const FieldElement& b) {
  return !((a * a * a).scaled(4) + (b * b).scaled(27)).is_zero();
}

Curve Curve::make(const FieldCtx& ctx, const FieldElement& a, const FieldElement& b) {
  if (ctx.characteristic() < 5) throw DomainError("short Weierstrass model needs p >= 5");
  if (a.field() != ctx.data() || b.field() != ctx.data()) throw DomainError("coefficients are not in the field");
  if (!is_nonsingular(a, b)) throw DomainError("4A^3 + 27B^2 = 0");
  return Curve(ctx, a, b);
}

Curve Curve::make(const FieldCtx& ctx, i64 a, i64 b) { return make(ctx, ctx.from_int(a), ctx.from_int(b)); }

FieldElement Curve::rhs(const FieldElement& x) const { return (x * x + a_) * x + b_; }

FieldElement Curve::j_invariant() const {
  const FieldElement a3 = (a_ * a_ * a_).scaled(4);
  return a3.scaled(1728) / (a3 + (b_ * b_).scaled(27));
}

std::string Curve::to_string() const { return "y^2 = x^3 + (" + a_.to_string() + ")x + (" + b_.to_string() + ")"; }

bool on_curve(const Curve& e, const CurvePoint& p) {
  if (p.infinity) return true;
  require_same(e, p.x);
  require_same(e, p.y);
  return p.y * p.y == e.rhs(p.x);
}

CurvePoint negate(const CurvePoint& p) {
  if (p.infinity) return p;
  return CurvePoint::affine(p.x, -p.y);
}

CurvePoint add(const Curve& e, const CurvePoint& p, const CurvePoint& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  FieldElement lambda;
  if (p.x == q.x) {
    if (p.y != q.y || p.y.is_zero()) return CurvePoint::at_infinity();
    lambda = ((p.x * p.x).scaled(3) + e.a()) / p.y.scaled(2);
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  FieldElement x3 = lambda * lambda - p.x - q.x;
  FieldElement y3 = lambda * (p.x - x3) - p.y;
  return CurvePoint::affine(std::move(x3), std::move(y3));
}

CurvePoint multiply(const Curve& e, const CurvePoint& p, u64 k) {
  CurvePoint result = CurvePoint::at_infinity();
  CurvePoint base = p;
  while (k > 0) {
    if (k & 1) result = add(e, result, base);
    k >>= 1;
    if (k > 0) base = add(e, base, base);
  }
  return result;
}

CurvePoint multiply(const Curve& e, const CurvePoint& p, const Integer& k) {
  if (k < 0) return negate(multiply(e, p, Integer(-k)));
  if (k == 0) return CurvePoint::at_infinity();
  CurvePoint result = CurvePoint::at_infinity();
  const unsigned top = boost::multiprecision::msb(k);
  for (unsigned bit = top + 1; bit-- > 0;) {
    result = add(e, result, result);
    if (boost::multiprecision::bit_test(k, bit)) result = add(e, result, p);
  }
  return result;
}

u64 point_order(const Curve& e, const CurvePoint& p, u64 multiple) {
  if (!multiply(e, p, multiple).infinity) throw DomainError("multiple does not annihilate the point");
  u64 ord = multiple;
  for (const auto& pp : factorize(multiple)) {
    while (ord % pp.prime == 0 && multiply(e, p, ord / pp.prime).infinity) ord /= pp.prime;
  }
  return ord;
}

PointCounter::PointCounter(const FieldCtx& ctx) : ctx_(ctx), q_(require_small(ctx)) {
  if (ctx.characteristic() < 5) throw DomainError("point counting needs p >= 5");
  chi_.assign(q_, -1);
  chi_[0] = 0;
  if (ctx.is_prime_field()) {
    cubes_prime_.resize(q_);
    for (u64 x = 0; x < q_; ++x) {
      const u64 sq = x * x % q_;
      if (x != 0) chi_[sq] = 1;
      cubes_prime_[x] = sq * x % q_;
    }
    return;
  }
  elements_.reserve(q_);
  cubes_.reserve(q_);
  for (u64 i = 0; i < q_; ++i) {
    elements_.push_back(ctx.from_index(i));
    const FieldElement sq = elements_.back() * elements_.back();
    if (i != 0) chi_[sq.index()] = 1;
    cubes_.push_back(sq * elements_.back());
  }
}

u64 PointCounter::count(const FieldElement& a, const FieldElement& b) const {
  if (a.field() != ctx_.data() || b.field() != ctx_.data()) throw DomainError("coefficients are not in the counter's field");
  i64 sum = 0;
  if (ctx_.is_prime_field()) {
    const u64 p = q_;
    const u64 av = a.prime_value();
    const u64 bv = b.prime_value();
    u64 ax = 0;
    for (u64 x = 0; x < p; ++x) {
      u64 v = cubes_prime_[x] + ax + bv;
      if (v >= p) v -= p;
      if (v >= p) v -= p;
      sum += chi_[v];
      ax += av;
      if (ax >= p) ax -= p;
    }
  } else {
    for (u64 i = 0; i < q_; ++i) sum += chi_[(cubes_[i] + a * elements_[i] + b).index()];
  }
  const u64 count = static_cast<u64>(static_cast<i64>(q_) + 1 + sum);
  const i64 t = static_cast<i64>(q_) + 1 - static_cast<i64>(count);
  if (static_cast<double>(t) * static_cast<double>(t) > 4.0 * static_cast<double>(q_)) {
    throw std::logic_error("point count violates the Hasse bound");
  }
  return count;
}

u64 point_count(const Curve& e) { return PointCounter(e.ctx()).count(e); }

i64 trace_from_count(const FieldCtx& ctx, u64 count) {
  return static_cast<i64>(require_small(ctx)) + 1 - static_cast<i64>(count);
}

i64 trace_of_frobenius(const Curve& e) { return trace_from_count(e.ctx(), point_count(e)); }

Curve quadratic_twist(const Curve& e) {
  const auto d = e.ctx().least_nonsquare();
  if (!d) throw DomainError("no nonsquare in characteristic 2");
  const FieldElement d2 = *d * *d;
  return Curve::make(e.ctx(), e.a() * d2, e.b() * d2 * *d);
}

int aut_order(const Curve& e) {
  const u64 q1 = mod_floor(e.ctx().order() - 1, 12);
  if (e.a().is_zero()) return static_cast<int>(gcd_u64(6, q1 == 0 ? 12 : q1));
  if (e.b().is_zero()) return static_cast<int>(gcd_u64(4, q1 == 0 ? 12 : q1));
  return 2;
}

PrimaryShape primary_structure(const Curve& e, u64 count, u64 ell, u64 seed) {
  if (!is_prime(ell)) throw DomainError("l must be prime");
  const u64 q = require_small(e.ctx());
  if (count == 0) throw DomainError("point count must be positive");
  if (count % ell != 0) return {0, 0};
  const int s = valuation(count, ell);
  if (s == 1 || (q - 1) % ell != 0) return {0, s};
  u64 sylow = ipow(ell, s);
  const u64 cofactor = count / sylow;
  SubgroupBuilder h(e, q);
  int max_exp = 0;
  auto consider = [&](const CurvePoint& p) {
    const CurvePoint r = multiply(e, p, cofactor);
    int c = 0;
    for (CurvePoint t = r; !t.infinity; t = multiply(e, t, ell)) ++c;
    max_exp = std::max(max_exp, c);
    if (!h.contains(r)) h.adjoin(r);
    return h.size() == sylow;
  };
  std::mt19937_64 rng(mix(seed ^ mix(e.a().index() * q + e.b().index())));
  const FieldCtx& ctx = e.ctx();
  constexpr int kRandomDraws = 64;
  for (int draw = 0; draw < kRandomDraws; ++draw) {
    const FieldElement x = ctx.from_index(rng() % q);
    const auto y = ff::sqrt(e.rhs(x));
    if (!y) continue;
    if (consider(CurvePoint::affine(x, (rng() & 1) ? *y : -*y))) return {s - max_exp, max_exp};
  }
  for (u64 i = 0; i < q; ++i) {
    const FieldElement x = ctx.from_index(i);
    const auto y = ff::sqrt(e.rhs(x));
    if (!y) continue;
    if (consider(CurvePoint::affine(x, *y))) return {s - max_exp, max_exp};
    if (!y->is_zero() && consider(CurvePoint::affine(x, -*y))) return {s - max_exp, max_exp};
  }
  throw std::logic_error("Sylow subgroup smaller than the point count predicts");
}

GroupShape group_structure(const Curve& e, u64 count, u64 seed) {
  GroupShape g{1, count};
  for (const auto& pp : factorize(count)) {
    const PrimaryShape ps = primary_structure(e, count, pp.prime, seed);
    g.k *= ipow(pp.prime, ps.a);
  }
  g.m = count / g.k;
  return g;
}

bool has_point_of_order(const Curve& e, u64 count, u64 modulus, u64 seed) {
  if (modulus < 1) throw DomainError("N must be positive");
  if (modulus % e.ctx().characteristic() == 0) throw DomainError("p divides N");
  for (const auto& pp : factorize(modulus)) {
    if (primary_structure(e, count, pp.prime, seed).b < pp.exponent) return false;
  }
  return true;
}

std::vector<ClassRep> enumerate_class_reps(const FieldCtx& ctx) {
  const u64 q = require_small(ctx);
  if (ctx.characteristic() < 5) throw DomainError("class enumeration needs p >= 5");
  const FieldElement d = *ctx.least_nonsquare();
  const FieldElement zero = ctx.zero();
  std::vector<ClassRep> reps;
  auto push = [&](const FieldElement& a, const FieldElement& b) {
    Curve c = Curve::make(ctx, a, b);
    const int aut = aut_order(c);
    FieldElement j = c.j_invariant();
    reps.push_back({std::move(c), std::move(j), aut, (q - 1) / static_cast<u64>(aut)});
  };
  // AB != 0: classes are indexed by s = B^2/A^3 together with the square
  // class of B/A.
  const FieldElement bad = ctx.from_int(-4) / ctx.from_int(27);
  for (u64 i = 1; i < q; ++i) {
    const FieldElement s = ctx.from_index(i);
    if (s == bad) continue;
    const FieldElement inv = s.inverse();
    push(inv, inv);
    push(d * d * inv, d * d * d * inv);
  }
  // A = 0 or B = 0: cosets of sixth and fourth powers, least index first.
  auto cosets = [&](u64 power, bool a_zero) {
    const u64 g = gcd_u64(power, q - 1);
    std::vector<u64> seen;
    for (u64 i = 1; i < q && seen.size() < g; ++i) {
      const FieldElement v = ctx.from_index(i);
      const u64 key = v.pow((q - 1) / g).index();
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      if (a_zero) push(zero, v);
      else push(v, zero);
    }
  };
  cosets(6, true);
  cosets(4, false);
  std::sort(reps.begin(), reps.end(), [](const ClassRep& x, const ClassRep& y) {
    return std::tie(x.j, x.curve.a(), x.curve.b()) < std::tie(y.j, y.curve.a(), y.curve.b());
  });
  return reps;
}

std::vector<CurveClassRecord> enumerate_classes(const FieldCtx& ctx, int threads, u64 seed) {
  const auto reps = enumerate_class_reps(ctx);
  const PointCounter counter(ctx);
  std::vector<std::optional<CurveClassRecord>> slots(reps.size());
  parallel_reduce(
      0, reps.size(), static_cast<unsigned>(std::max(threads, 0)), 0,
      [&](u64 lo, u64 hi, int&) {
        for (u64 i = lo; i < hi; ++i) {
          const ClassRep& r = reps[i];
          const u64 n = counter.count(r.curve);
          slots[i] = CurveClassRecord{r.curve, trace_from_count(ctx, n), group_structure(r.curve, n, seed),
                                      r.aut_order, r.j, r.multiplicity};
        }
      },
      [](int&, const int&) {});
  std::vector<CurveClassRecord> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace frobmod::ec
