#pragma once

// Integer helpers shared by every module: exact big integers and rationals,
// small-integer factorization, valuations and modular inverses.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace frobmod {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Raised when an operation's precondition on its arguments is violated.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an exhaustive operation would exceed its size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An l-adic valuation where ord(0) is +infinity, kept distinct from every
/// finite value.
class Valuation {
 public:
  static constexpr Valuation infinite() { return Valuation(); }
  static constexpr Valuation finite(int v) { return Valuation(v); }

  constexpr bool is_infinite() const { return !value_.has_value(); }
  constexpr int value() const {
    if (!value_) throw DomainError("valuation is infinite");
    return *value_;
  }
  /// Finite value, or `cap` when infinite.
  constexpr int value_or(int cap) const { return value_ ? *value_ : cap; }

  friend constexpr bool operator==(Valuation, Valuation) = default;

 private:
  constexpr Valuation() = default;
  constexpr explicit Valuation(int v) : value_(v) {}
  std::optional<int> value_;
};

struct PrimePower {
  u64 prime = 0;
  int exponent = 0;
  u64 value() const;
};

bool is_prime(u64 n);
std::vector<PrimePower> factorize(u64 n);
/// Returns (l, n) when m = l^n with l prime, n >= 1.
std::optional<PrimePower> as_prime_power(u64 m);

u64 ipow(u64 base, int exp);
Integer ipow_big(u64 base, int exp);
/// l^e as a rational; negative exponents allowed.
Rational rpow(u64 base, int exp);

u64 gcd_u64(u64 a, u64 b);
u64 lcm_u64(u64 a, u64 b);

/// Least nonnegative residue of x modulo m.
u64 mod_floor(i64 x, u64 m);
u64 mod_floor(const Integer& x, u64 m);

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);
/// Inverse of a modulo m; throws DomainError when gcd(a, m) != 1.
u64 inv_mod(u64 a, u64 m);

/// l-adic valuation of x in Z/l^n; infinite when x = 0 in that ring.
Valuation valuation_mod(u64 x, u64 l, int n);
/// l-adic valuation of a nonzero integer.
int valuation(u64 x, u64 l);

/// Integer floor(sqrt(n)).
u64 isqrt(u64 n);

std::string to_string(const Rational& r);
double to_double(const Rational& r);

/// Rounds a nonnegative bound up to the next representable double so that
/// rounding in the evaluation never makes it smaller than the real value.
double round_up(double x);

}  // namespace frobmod
