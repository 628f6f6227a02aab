#include "frobmod/finite_field.hpp"

#include <random>
#include <sstream>

namespace frobmod::ff {

namespace {

using detail::FieldData;
using PolyP = std::vector<u64>;  // dense polynomial over F_p, x^0 first

void trim(PolyP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyP mul_p(const PolyP& f, const PolyP& g, u64 p) {
  if (f.empty() || g.empty()) return {};
  PolyP out(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) out[i + j] = (out[i + j] + mul_mod(f[i], g[j], p)) % p;
  }
  trim(out);
  return out;
}

// Remainder of f modulo a nonzero g.
PolyP rem_p(PolyP f, const PolyP& g, u64 p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const u64 lead_inv = inv_mod(g.back(), p);
  while (f.size() > dg && !f.empty()) {
    const u64 c = mul_mod(f.back(), lead_inv, p);
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t j = 0; j <= dg; ++j) f[shift + j] = (f[shift + j] + p - mul_mod(c, g[j], p)) % p;
    trim(f);
  }
  return f;
}

PolyP gcd_p(PolyP f, PolyP g, u64 p) {
  trim(f);
  trim(g);
  while (!g.empty()) {
    PolyP r = rem_p(f, g, p);
    f = std::move(g);
    g = std::move(r);
  }
  if (!f.empty()) {
    const u64 inv = inv_mod(f.back(), p);
    for (auto& c : f) c = mul_mod(c, inv, p);
  }
  return f;
}

PolyP powmod_p(PolyP base, u64 e, const PolyP& modulus, u64 p) {
  PolyP result{1};
  base = rem_p(base, modulus, p);
  while (e > 0) {
    if (e & 1) result = rem_p(mul_p(result, base, p), modulus, p);
    base = rem_p(mul_p(base, base, p), modulus, p);
    e >>= 1;
  }
  return result;
}

// x^{p^times} mod f.
PolyP frobenius_power_of_x(const PolyP& f, u64 p, int times) {
  PolyP cur{0, 1};
  cur = rem_p(cur, f, p);
  for (int i = 0; i < times; ++i) cur = powmod_p(cur, p, f, p);
  return cur;
}

PolyP sub_p(PolyP f, const PolyP& g, u64 p) {
  if (f.size() < g.size()) f.resize(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = (f[i] + p - g[i]) % p;
  trim(f);
  return f;
}

std::vector<int> prime_divisors(int k) {
  std::vector<int> out;
  for (const auto& pp : factorize(static_cast<u64>(k))) out.push_back(static_cast<int>(pp.prime));
  return out;
}

std::shared_ptr<FieldData> build(u64 p, std::vector<u64> modulus) {
  auto data = std::make_shared<FieldData>();
  data->p = p;
  data->k = static_cast<int>(modulus.size()) - 1;
  data->modulus = std::move(modulus);
  data->order = ipow_big(p, data->k);
  for (u64 c : data->modulus) data->neg_modulus.push_back((p - c % p) % p);
  if (data->order <= Integer(std::numeric_limits<u64>::max())) data->small_order = static_cast<u64>(data->order);
  return data;
}

void find_nonsquare(FieldData& data) {
  if (data.p == 2) return;
  const Integer half = (data.order - 1) / 2;
  for (u64 idx = 2;; ++idx) {
    FieldElement::Coeffs c(static_cast<std::size_t>(data.k), 0);
    u64 rest = idx;
    for (int i = 0; i < data.k; ++i) {
      c[i] = rest % data.p;
      rest /= data.p;
    }
    FieldElement e(&data, c);
    if (e.pow(half).is_one()) continue;
    data.nonsquare = std::vector<u64>(c.begin(), c.end());
    return;
  }
}

const FieldData& checked(const FieldData* f) {
  if (f == nullptr) throw DomainError("field element has no field");
  return *f;
}

void require_same(const FieldElement& x, const FieldElement& y) {
  if (x.field() != y.field()) throw DomainError("field elements belong to different fields");
}

}  // namespace

bool is_irreducible(u64 p, std::span<const u64> monic) {
  if (!is_prime(p)) throw DomainError("p must be prime");
  PolyP f(monic.begin(), monic.end());
  trim(f);
  if (f.empty() || f.back() != 1) throw DomainError("modulus must be monic");
  const int k = static_cast<int>(f.size()) - 1;
  if (k < 1) return false;
  if (k == 1) return true;
  // Rabin: x^{p^k} = x mod f, and gcd(x^{p^{k/r}} - x, f) = 1 for primes r | k.
  const PolyP x{0, 1};
  if (sub_p(frobenius_power_of_x(f, p, k), x, p) != PolyP{}) return false;
  for (int r : prime_divisors(k)) {
    PolyP g = gcd_p(f, sub_p(frobenius_power_of_x(f, p, k / r), x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

FieldCtx FieldCtx::make(u64 p, int k, u64 seed) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (k < 1) throw DomainError("extension degree must be at least 1");
  if (k == 1) return with_modulus(p, {0, 1});
  // Candidates are monic degree-k polynomials indexed by the base-p digits of
  // their lower coefficients (x^0 first).
  const Integer candidates = ipow_big(p, k);
  const u64 space = candidates < Integer(u64{1} << 62) ? static_cast<u64>(candidates) : u64{1} << 62;
  u64 start = 0;
  if (seed != 0) start = std::mt19937_64(seed)() % space;
  for (u64 offset = 0; offset < space; ++offset) {
    u64 idx = (start + offset) % space;
    std::vector<u64> f(static_cast<std::size_t>(k) + 1, 0);
    for (int i = 0; i < k; ++i) {
      f[i] = idx % p;
      idx /= p;
    }
    f[k] = 1;
    if (f[0] == 0) continue;
    if (is_irreducible(p, f)) return with_modulus(p, std::move(f));
  }
  throw std::logic_error("no irreducible polynomial found");
}

FieldCtx FieldCtx::with_modulus(u64 p, std::vector<u64> modulus) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  for (auto& c : modulus) c %= p;
  trim(modulus);
  if (!is_irreducible(p, modulus)) throw DomainError("modulus polynomial is not irreducible");
  auto data = build(p, std::move(modulus));
  find_nonsquare(*data);
  return FieldCtx(std::move(data));
}

u64 FieldCtx::characteristic() const { return data_->p; }
int FieldCtx::degree() const { return data_->k; }
const Integer& FieldCtx::order() const { return data_->order; }
std::optional<u64> FieldCtx::small_order() const { return data_->small_order; }
const std::vector<u64>& FieldCtx::modulus_poly() const { return data_->modulus; }

FieldElement FieldCtx::zero() const {
  return FieldElement(data_.get(), FieldElement::Coeffs(static_cast<std::size_t>(data_->k), 0));
}

FieldElement FieldCtx::one() const { return from_int(1); }

FieldElement FieldCtx::from_int(i64 v) const {
  FieldElement::Coeffs c(static_cast<std::size_t>(data_->k), 0);
  c[0] = mod_floor(v, data_->p);
  return FieldElement(data_.get(), std::move(c));
}

FieldElement FieldCtx::from_coeffs(std::span<const u64> coeffs) const {
  PolyP f(coeffs.begin(), coeffs.end());
  for (auto& c : f) c %= data_->p;
  f = rem_p(f, data_->modulus, data_->p);
  FieldElement::Coeffs c(static_cast<std::size_t>(data_->k), 0);
  for (std::size_t i = 0; i < f.size(); ++i) c[i] = f[i];
  return FieldElement(data_.get(), std::move(c));
}

FieldElement FieldCtx::from_index(u64 index) const {
  if (data_->small_order && index >= *data_->small_order) throw DomainError("index out of range");
  FieldElement::Coeffs c(static_cast<std::size_t>(data_->k), 0);
  for (int i = 0; i < data_->k; ++i) {
    c[i] = index % data_->p;
    index /= data_->p;
  }
  return FieldElement(data_.get(), std::move(c));
}

FieldElement FieldCtx::generator() const {
  const u64 x[2] = {0, 1};
  return from_coeffs(x);
}

std::optional<FieldElement> FieldCtx::least_nonsquare() const {
  if (!data_->nonsquare) return std::nullopt;
  return from_coeffs(*data_->nonsquare);
}

bool FieldElement::is_zero() const {
  for (u64 c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool FieldElement::is_one() const {
  if (coeffs_.empty() || coeffs_[0] != 1) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

bool FieldElement::in_prime_field() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

u64 FieldElement::prime_value() const {
  if (!in_prime_field()) throw DomainError("element is not in the prime field");
  return coeffs_.empty() ? 0 : coeffs_[0];
}

u64 FieldElement::index() const {
  const auto& f = checked(field_);
  if (!f.small_order) throw CapExceeded("field too large for 64-bit element indices");
  u64 idx = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) idx = idx * f.p + coeffs_[i];
  return idx;
}

Integer FieldElement::big_index() const {
  const auto& f = checked(field_);
  Integer idx = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) idx = idx * f.p + coeffs_[i];
  return idx;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same(*this, o);
  const u64 p = field_->p;
  Coeffs c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    u64 s = coeffs_[i] + o.coeffs_[i];
    c[i] = s >= p ? s - p : s;
  }
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same(*this, o);
  const u64 p = field_->p;
  Coeffs c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] >= o.coeffs_[i] ? coeffs_[i] - o.coeffs_[i] : coeffs_[i] + p - o.coeffs_[i];
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-() const {
  const u64 p = checked(field_).p;
  Coeffs c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] == 0 ? 0 : p - coeffs_[i];
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same(*this, o);
  const auto& f = *field_;
  const u64 p = f.p;
  const std::size_t k = coeffs_.size();
  if (k == 1) return FieldElement(field_, Coeffs{mul_mod(coeffs_[0], o.coeffs_[0], p)});
  if (p < (u64{1} << 32)) {
    // Products fit in 64 bits; sums of at most 2k of them fit in 128 bits,
    // so each coefficient is reduced once.
    using u128 = unsigned __int128;
    boost::container::small_vector<u128, 16> acc(2 * k - 1, 0);
    for (std::size_t i = 0; i < k; ++i) {
      const u64 x = coeffs_[i];
      if (x == 0) continue;
      for (std::size_t j = 0; j < k; ++j) acc[i + j] += static_cast<u128>(x * o.coeffs_[j]);
    }
    for (std::size_t i = 2 * k - 2; i >= k; --i) {
      const u64 c = static_cast<u64>(acc[i] % p);
      if (c == 0) continue;
      const std::size_t shift = i - k;
      for (std::size_t j = 0; j < k; ++j) acc[shift + j] += static_cast<u128>(c * f.neg_modulus[j]);
    }
    Coeffs out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = static_cast<u64>(acc[i] % p);
    return FieldElement(field_, std::move(out));
  }
  boost::container::small_vector<u64, 8> prod(2 * k - 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + mul_mod(coeffs_[i], o.coeffs_[j], p)) % p;
  }
  // Reduce with the monic modulus, highest degree first.
  for (std::size_t i = 2 * k - 2; i >= k; --i) {
    const u64 c = prod[i];
    if (c == 0) continue;
    const std::size_t shift = i - k;
    for (std::size_t j = 0; j < k; ++j) prod[shift + j] = (prod[shift + j] + p - mul_mod(c, f.modulus[j], p)) % p;
    prod[i] = 0;
  }
  return FieldElement(field_, Coeffs(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(k)));
}

FieldElement FieldElement::inverse() const {
  const auto& f = checked(field_);
  if (is_zero()) throw DomainError("division by zero in F_q");
  const u64 p = f.p;
  if (coeffs_.size() == 1) return FieldElement(field_, Coeffs{inv_mod(coeffs_[0], p)});
  // Extended Euclid on (modulus, a) over F_p.
  PolyP r0 = f.modulus, r1(coeffs_.begin(), coeffs_.end());
  trim(r1);
  PolyP s0{}, s1{1};
  while (r1.size() > 1) {
    PolyP quot;
    PolyP rem = r0;
    const u64 lead_inv = inv_mod(r1.back(), p);
    quot.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, 0);
    while (rem.size() >= r1.size() && !rem.empty()) {
      const u64 c = mul_mod(rem.back(), lead_inv, p);
      const std::size_t shift = rem.size() - r1.size();
      quot[shift] = c;
      for (std::size_t j = 0; j < r1.size(); ++j) rem[shift + j] = (rem[shift + j] + p - mul_mod(c, r1[j], p)) % p;
      trim(rem);
    }
    PolyP s2 = sub_p(s0, mul_p(quot, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant since the modulus is irreducible.
  const u64 inv = inv_mod(r1[0], p);
  for (auto& c : s1) c = mul_mod(c, inv, p);
  Coeffs c(coeffs_.size(), 0);
  for (std::size_t i = 0; i < s1.size(); ++i) c[i] = s1[i];
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

FieldElement FieldElement::pow(const Integer& e) const {
  const auto& f = checked(field_);
  if (e < 0) return inverse().pow(Integer(-e));
  FieldElement result(field_, Coeffs(coeffs_.size(), 0));
  result.coeffs_[0] = 1 % f.p;
  if (e == 0) return result;
  const unsigned top = boost::multiprecision::msb(e);
  for (unsigned bit = top + 1; bit-- > 0;) {
    result = result * result;
    if (boost::multiprecision::bit_test(e, bit)) result = result * *this;
  }
  return result;
}

FieldElement FieldElement::pow(u64 e) const {
  checked(field_);
  FieldElement result(field_, Coeffs(coeffs_.size(), 0));
  result.coeffs_[0] = 1;
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

FieldElement FieldElement::frobenius(int times) const {
  const auto& f = checked(field_);
  FieldElement out = *this;
  const int reduced = f.k == 0 ? 0 : ((times % f.k) + f.k) % f.k;
  for (int i = 0; i < reduced; ++i) out = out.pow(f.p);
  return out;
}

FieldElement FieldElement::scaled(u64 c) const {
  const u64 p = checked(field_).p;
  c %= p;
  Coeffs out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mul_mod(coeffs_[i], c, p);
  return FieldElement(field_, std::move(out));
}

std::string FieldElement::to_string() const {
  if (coeffs_.size() == 1) return std::to_string(coeffs_[0]);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || coeffs_[i] != 1) os << coeffs_[i];
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

std::strong_ordering operator<=>(const FieldElement& x, const FieldElement& y) {
  for (std::size_t i = x.coeffs_.size(); i-- > 0;) {
    if (x.coeffs_[i] != y.coeffs_[i]) return x.coeffs_[i] <=> y.coeffs_[i];
  }
  return std::strong_ordering::equal;
}

int legendre(const FieldElement& a) {
  const auto& f = checked(a.field());
  if (f.k != 1) throw DomainError("legendre symbol needs a prime field");
  if (f.p == 2) throw DomainError("legendre symbol needs an odd prime");
  const u64 v = a.prime_value();
  if (v == 0) return 0;
  return pow_mod(v, (f.p - 1) / 2, f.p) == 1 ? 1 : -1;
}

bool is_square(const FieldElement& a) {
  const auto& f = checked(a.field());
  if (a.is_zero() || f.p == 2) return true;
  return a.pow((f.order - 1) / 2).is_one();
}

std::optional<FieldElement> sqrt(const FieldElement& a) {
  const auto& f = checked(a.field());
  if (a.is_zero()) return a;
  if (f.p == 2) return a.pow(f.order / 2);  // squaring is bijective
  if (!is_square(a)) return std::nullopt;
  if (f.k == 1) {
    const u64 p = f.p;
    const u64 v = a.prime_value();
    if (p % 4 == 3) return FieldElement(a.field(), FieldElement::Coeffs{pow_mod(v, (p + 1) / 4, p)});
    u64 t = p - 1;
    int s = 0;
    while ((t & 1) == 0) {
      t >>= 1;
      ++s;
    }
    u64 c = pow_mod((*f.nonsquare)[0], t, p);
    u64 x = pow_mod(v, (t + 1) / 2, p);
    u64 b = pow_mod(v, t, p);
    int m = s;
    while (b != 1) {
      int i = 0;
      for (u64 bb = b; bb != 1; bb = mul_mod(bb, bb, p)) ++i;
      u64 w = c;
      for (int j = 0; j < m - i - 1; ++j) w = mul_mod(w, w, p);
      x = mul_mod(x, w, p);
      c = mul_mod(w, w, p);
      b = mul_mod(b, c, p);
      m = i;
    }
    return FieldElement(a.field(), FieldElement::Coeffs{x});
  }
  const Integer& q = f.order;
  if (q % 4 == 3) return a.pow((q + 1) / 4);
  // Tonelli-Shanks with q - 1 = 2^s t.
  Integer t = q - 1;
  int s = 0;
  while ((t & 1) == 0) {
    t >>= 1;
    ++s;
  }
  FieldElement::Coeffs nc(f.nonsquare->begin(), f.nonsquare->end());
  FieldElement z(a.field(), nc);
  FieldElement c = z.pow(t);
  FieldElement x = a.pow((t + 1) / 2);
  FieldElement b = a.pow(t);
  int m = s;
  while (!b.is_one()) {
    int i = 0;
    FieldElement bb = b;
    while (!bb.is_one()) {
      bb = bb * bb;
      ++i;
    }
    FieldElement w = c;
    for (int j = 0; j < m - i - 1; ++j) w = w * w;
    x = x * w;
    c = w * w;
    b = b * c;
    m = i;
  }
  return x;
}

u64 norm_to_prime(const FieldElement& a) {
  const auto& f = checked(a.field());
  FieldElement prod = a;
  FieldElement conj = a;
  for (int i = 1; i < f.k; ++i) {
    conj = conj.pow(f.p);
    prod = prod * conj;
  }
  return prod.prime_value();
}

}  // namespace frobmod::ff
