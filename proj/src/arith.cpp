#include "frobmod/arith.hpp"

#include <cmath>
#include <limits>

namespace frobmod {

u64 PrimePower::value() const { return ipow(prime, exponent); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<PrimePower> factorize(u64 n) {
  if (n == 0) throw DomainError("cannot factor 0");
  std::vector<PrimePower> out;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::optional<PrimePower> as_prime_power(u64 m) {
  if (m < 2) return std::nullopt;
  auto f = factorize(m);
  if (f.size() != 1) return std::nullopt;
  return f.front();
}

u64 ipow(u64 base, int exp) {
  if (exp < 0) throw DomainError("negative exponent in ipow");
  u64 r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<u64>::max() / base) throw CapExceeded("ipow overflow");
    r *= base;
  }
  return r;
}

Integer ipow_big(u64 base, int exp) {
  if (exp < 0) throw DomainError("negative exponent in ipow_big");
  Integer r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

Rational rpow(u64 base, int exp) {
  if (exp >= 0) return Rational(ipow_big(base, exp));
  return Rational(Integer(1), ipow_big(base, -exp));
}

u64 gcd_u64(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 lcm_u64(u64 a, u64 b) { return a / gcd_u64(a, b) * b; }

u64 mod_floor(i64 x, u64 m) {
  i64 r = x % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

u64 mod_floor(const Integer& x, u64 m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 m) {
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
  while (new_r != 0) {
    i64 quot = r / new_r;
    i64 tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw DomainError("element is not a unit modulo " + std::to_string(m));
  return mod_floor(t, m);
}

Valuation valuation_mod(u64 x, u64 l, int n) {
  u64 m = ipow(l, n);
  x %= m;
  if (x == 0) return Valuation::infinite();
  return Valuation::finite(valuation(x, l));
}

int valuation(u64 x, u64 l) {
  if (x == 0) throw DomainError("valuation of 0");
  int k = 0;
  while (x % l == 0) {
    x /= l;
    ++k;
  }
  return k;
}

u64 isqrt(u64 n) {
  using u128 = unsigned __int128;
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  if (r > 0xFFFFFFFFULL) r = 0xFFFFFFFFULL;
  while (static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::string to_string(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

double round_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

}  // namespace frobmod
