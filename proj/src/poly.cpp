#include "frobmod/poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace frobmod::ff {

namespace {

constexpr u64 kScanLimit = 1'000'000;

void require_same(const Poly& a, const Poly& b) {
  if (!(a.ctx() == b.ctx())) throw DomainError("polynomials over different fields");
}

FieldElement random_element(const FieldCtx& ctx, std::mt19937_64& rng) {
  std::vector<u64> c(static_cast<std::size_t>(ctx.degree()));
  for (auto& v : c) v = rng() % ctx.characteristic();
  return ctx.from_coeffs(c);
}

// sum_{i<K} (a x)^{2^i} mod g for q = 2^K.
Poly absolute_trace(const Poly& g, const FieldElement& a) {
  const FieldCtx& ctx = g.ctx();
  Poly term = Poly::monomial(ctx, a, 1) % g;
  Poly acc = term;
  for (int i = 1; i < ctx.degree(); ++i) {
    term = (term * term) % g;
    acc = acc + term;
  }
  return acc;
}

void split(const Poly& g, std::mt19937_64& rng, std::vector<FieldElement>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    const Poly m = g.monic();
    out.push_back(-m.coeff(0));
    return;
  }
  const FieldCtx& ctx = g.ctx();
  const Integer half = (ctx.order() - 1) / 2;
  for (;;) {
    Poly h(ctx);
    if (ctx.characteristic() == 2) {
      h = gcd(g, absolute_trace(g, random_element(ctx, rng)));
    } else {
      Poly lin(ctx, {random_element(ctx, rng), ctx.one()});
      h = gcd(g, powmod(lin, half, g) - Poly::constant(ctx, ctx.one()));
    }
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split(h, rng, out);
      split(g / h, rng, out);
      return;
    }
  }
}

}  // namespace

Poly::Poly(FieldCtx ctx, std::vector<FieldElement> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (c.field() != ctx_.data()) throw DomainError("coefficient from a different field");
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const FieldCtx& ctx, const FieldElement& c) { return Poly(ctx, {c}); }

Poly Poly::monomial(const FieldCtx& ctx, const FieldElement& c, int d) {
  if (d < 0) throw DomainError("negative monomial degree");
  std::vector<FieldElement> v(static_cast<std::size_t>(d) + 1, ctx.zero());
  v[d] = c;
  return Poly(ctx, std::move(v));
}

Poly Poly::from_ints(const FieldCtx& ctx, const std::vector<i64>& coeffs) {
  std::vector<FieldElement> v;
  v.reserve(coeffs.size());
  for (i64 c : coeffs) v.push_back(ctx.from_int(c));
  return Poly(ctx, std::move(v));
}

FieldElement Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return ctx_.zero();
  return c_[i];
}

FieldElement Poly::leading() const {
  if (c_.empty()) throw DomainError("zero polynomial has no leading coefficient");
  return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
  require_same(*this, o);
  std::vector<FieldElement> v(std::max(c_.size(), o.c_.size()), ctx_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return Poly(ctx_, std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly out(ctx_);
  out.c_.reserve(c_.size());
  for (const auto& c : c_) out.c_.push_back(-c);
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  require_same(*this, o);
  if (is_zero() || o.is_zero()) return Poly(ctx_);
  std::vector<FieldElement> v(c_.size() + o.c_.size() - 1, ctx_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return Poly(ctx_, std::move(v));
}

Poly Poly::scaled(const FieldElement& c) const {
  std::vector<FieldElement> v;
  v.reserve(c_.size());
  for (const auto& x : c_) v.push_back(x * c);
  return Poly(ctx_, std::move(v));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  require_same(*this, d);
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  if (degree() < d.degree()) return {Poly(ctx_), *this};
  std::vector<FieldElement> rem = c_;
  std::vector<FieldElement> quot(c_.size() - d.c_.size() + 1, ctx_.zero());
  const FieldElement lead_inv = d.leading().inverse();
  const std::size_t dd = d.c_.size() - 1;
  for (std::size_t i = rem.size(); i-- > dd;) {
    if (rem[i].is_zero()) continue;
    const FieldElement f = rem[i] * lead_inv;
    quot[i - dd] = f;
    for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d.c_[j];
  }
  rem.resize(dd);
  return {Poly(ctx_, std::move(quot)), Poly(ctx_, std::move(rem))};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inverse());
}

Poly Poly::derivative() const {
  std::vector<FieldElement> v;
  for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i].scaled(i % ctx_.characteristic()));
  return Poly(ctx_, std::move(v));
}

FieldElement Poly::eval(const FieldElement& x) const {
  FieldElement acc = ctx_.zero();
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const bool unit = c_[i].is_one();
    if (!unit || i == 0) os << (c_[i].in_prime_field() ? c_[i].to_string() : "(" + c_[i].to_string() + ")");
    if (i >= 1) os << (unit ? "" : "*") << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

Poly gcd(const Poly& a, const Poly& b) {
  require_same(a, b);
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly powmod(const Poly& base, const Integer& e, const Poly& m) {
  require_same(base, m);
  if (e < 0) throw DomainError("negative exponent");
  const FieldCtx& ctx = base.ctx();
  Poly result = Poly::constant(ctx, ctx.one()) % m;
  if (e == 0) return result;
  const Poly b = base % m;
  const unsigned top = boost::multiprecision::msb(e);
  for (unsigned bit = top + 1; bit-- > 0;) {
    result = (result * result) % m;
    if (boost::multiprecision::bit_test(e, bit)) result = (result * b) % m;
  }
  return result;
}

Embedding::Embedding(FieldCtx source, FieldCtx target)
    : source_(std::move(source)), target_(std::move(target)), image_(target_.zero()) {
  if (source_.characteristic() != target_.characteristic()) throw DomainError("embedding across characteristics");
  if (target_.degree() % source_.degree() != 0) throw DomainError("source degree does not divide target degree");
  if (source_.is_prime_field()) return;
  std::vector<i64> mod;
  for (u64 c : source_.modulus_poly()) mod.push_back(static_cast<i64>(c));
  auto roots = poly_factor_distinct_roots(Poly::from_ints(target_, mod));
  if (roots.empty()) throw std::logic_error("source modulus has no root in the target field");
  image_ = roots.front();
}

FieldElement Embedding::operator()(const FieldElement& a) const {
  if (a.field() != source_.data()) throw DomainError("element is not in the embedding source");
  const auto c = a.coeffs();
  FieldElement acc = target_.zero();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * image_ + target_.from_int(static_cast<i64>(c[i]));
  return acc;
}

Poly Embedding::operator()(const Poly& f) const {
  std::vector<FieldElement> v;
  v.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) v.push_back((*this)(c));
  return Poly(target_, std::move(v));
}

std::vector<FieldElement> poly_factor_distinct_roots(const Poly& f, u64 seed) {
  if (f.is_zero()) throw DomainError("roots of the zero polynomial");
  const FieldCtx& ctx = f.ctx();
  std::vector<FieldElement> out;
  if (f.degree() == 0) return out;
  if (ctx.small_order() && *ctx.small_order() <= kScanLimit) {
    for (u64 i = 0; i < *ctx.small_order(); ++i) {
      FieldElement x = ctx.from_index(i);
      if (f.eval(x).is_zero()) out.push_back(std::move(x));
    }
    return out;
  }
  const Poly X = Poly::x(ctx);
  const Poly g = gcd(f, powmod(X, ctx.order(), f) - X);
  std::mt19937_64 rng(seed);
  split(g, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace frobmod::ff
