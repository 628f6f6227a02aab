#include <gtest/gtest.h>

#include "frobmod/arith.hpp"
#include "oracles.hpp"

using namespace frobmod;

TEST(Arith, IsPrimeMatchesTrialDivision) {
  for (u64 n = 0; n < 5000; ++n) EXPECT_EQ(is_prime(n), oracle::naive_is_prime(n)) << n;
  EXPECT_TRUE(is_prime(1'000'000'007ULL));
  EXPECT_TRUE(is_prime(18446744073709551557ULL));
  EXPECT_FALSE(is_prime(3215031751ULL));
}

TEST(Arith, FactorizeRebuildsInput) {
  for (u64 n = 2; n < 3000; ++n) {
    u64 prod = 1;
    u64 last = 0;
    for (const auto& pp : factorize(n)) {
      EXPECT_TRUE(oracle::naive_is_prime(pp.prime));
      EXPECT_GT(pp.prime, last);
      last = pp.prime;
      prod *= pp.value();
    }
    EXPECT_EQ(prod, n);
  }
}

TEST(Arith, PrimePowerDetection) {
  auto pp = as_prime_power(27);
  ASSERT_TRUE(pp);
  EXPECT_EQ(pp->prime, 3u);
  EXPECT_EQ(pp->exponent, 3);
  EXPECT_FALSE(as_prime_power(12));
  EXPECT_FALSE(as_prime_power(1));
  EXPECT_TRUE(as_prime_power(10007));
}

TEST(Arith, ModularHelpers) {
  EXPECT_EQ(mod_floor(i64{-7}, 5), 3u);
  EXPECT_EQ(mod_floor(Integer(-12), 9), 6u);
  EXPECT_EQ(pow_mod(3, 100, 101), 1u);
  for (u64 m : {7ULL, 9ULL, 16ULL, 25ULL})
    for (u64 a = 1; a < m; ++a) {
      if (std::gcd(a, m) != 1) {
        EXPECT_THROW(inv_mod(a, m), DomainError);
        continue;
      }
      EXPECT_EQ(a * inv_mod(a, m) % m, 1u);
    }
  EXPECT_EQ(mul_mod(~0ULL, ~0ULL, 1'000'000'007ULL), static_cast<u64>((static_cast<unsigned __int128>(~0ULL) * ~0ULL) % 1'000'000'007ULL));
}

TEST(Arith, Valuations) {
  EXPECT_EQ(valuation(48, 2), 4);
  EXPECT_TRUE(valuation_mod(0, 3, 2).is_infinite());
  EXPECT_EQ(valuation_mod(18, 3, 3).value(), 2);
  EXPECT_EQ(valuation_mod(27, 3, 3), Valuation::infinite());
  EXPECT_EQ(valuation_mod(27, 3, 4).value(), 3);
  EXPECT_THROW(Valuation::infinite().value(), DomainError);
  EXPECT_EQ(Valuation::infinite().value_or(9), 9);
}

TEST(Arith, PowersAndRationals) {
  EXPECT_EQ(ipow(3, 5), 243u);
  EXPECT_EQ(ipow_big(10, 30), Integer("1000000000000000000000000000000"));
  EXPECT_EQ(rpow(2, -3), Rational(1, 8));
  EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_EQ(isqrt(99), 9u);
  EXPECT_EQ(isqrt(100), 10u);
  EXPECT_EQ(isqrt(~0ULL), 4294967295u);
  EXPECT_GT(round_up(0.1), 0.1);
  EXPECT_EQ(lcm_u64(4, 6), 12u);
}
