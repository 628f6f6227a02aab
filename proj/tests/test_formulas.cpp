#include <gtest/gtest.h>

#include "frobmod/formulas.hpp"
#include "oracles.hpp"

using namespace frobmod;
using formulas::phi;
using formulas::theta;

namespace {

const std::vector<u64> kPhiModuli = {2, 3, 4, 5, 7, 8, 9, 16, 25, 27};

Rational order_fraction(u64 m, u64 q) {
  const u64 ell = as_prime_power(m)->prime;
  const auto mats = oracle::matrices_with_det(m, q);
  u64 hit = 0;
  for (const auto& g : mats)
    if (oracle::fixes_primitive(g, m, ell)) ++hit;
  return Rational(Integer(hit), Integer(mats.size()));
}

}  // namespace

TEST(Formulas, PhiMatchesBruteForceForEveryLift) {
  for (u64 m : kPhiModuli) {
    const auto pp = *as_prime_power(m);
    const auto h = oracle::det_trace_histogram(m);
    for (u64 q = 1; q < m; ++q) {
      if (q % pp.prime == 0) continue;
      for (u64 t = 0; t < m; ++t)
        for (i64 lq : {0, 1, -3, 7})
          for (i64 lt : {0, 1, -2, 5}) {
            const Integer qq = Integer(q) + Integer(lq) * m;
            const Integer tt = Integer(t) + Integer(lt) * m;
            const Integer got = phi({pp.prime, pp.exponent, tt * tt - 4 * qq});
            EXPECT_EQ(got, Integer(h[q][t])) << "M=" << m << " q=" << qq << " t=" << tt;
          }
    }
  }
}

TEST(Formulas, PhiRejectsBadInput) {
  EXPECT_THROW(phi({4, 1, Integer(1)}), DomainError);
  EXPECT_THROW(phi({3, 0, Integer(1)}), DomainError);
}

TEST(Formulas, ThetaMatchesBruteForce) {
  for (u64 m : {2ULL, 3ULL, 4ULL, 5ULL, 8ULL, 9ULL, 27ULL, 25ULL}) {
    const auto pp = *as_prime_power(m);
    for (u64 q = 1; q < m; ++q) {
      if (q % pp.prime == 0) continue;
      const Rational want = order_fraction(m, q);
      for (i64 lift : {0, 1, 4, -2})
        EXPECT_EQ(theta(pp.prime, pp.exponent, static_cast<i64>(q) + lift * static_cast<i64>(m)), want)
            << m << " " << q << " lift " << lift;
    }
  }
}

TEST(Formulas, ThetaClosedForms) {
  for (u64 ell : {2ULL, 3ULL, 5ULL, 7ULL})
    for (int n = 1; n <= 3; ++n) {
      const u64 m = ipow(ell, n);
      const Integer sl2(zn::group_sizes(m).sl2);
      for (u64 q = 1; q < m; ++q) {
        if (q % ell == 0) continue;
        const Valuation nu = valuation_mod((q + m - 1) % m, ell, n);
        const int v = nu.value_or(n);
        const Integer count = v >= n ? ipow_big(ell, 2 * n) : ipow_big(ell, 2 * n) + ipow_big(ell, 2 * n - 2 * v - 1);
        EXPECT_EQ(theta(ell, n, static_cast<i64>(q)), Rational(count, sl2)) << ell << "^" << n << " q=" << q;
        if (m <= 27) EXPECT_EQ(Integer(zn::count_order_class(m, static_cast<i64>(q))), count);
      }
    }
}

TEST(Formulas, LevelDataKnownGenera) {
  const std::vector<std::pair<u64, int>> known = {{2, 0}, {3, 0}, {4, 0}, {5, 0}, {6, 1}, {7, 3}, {8, 5}, {11, 26}};
  for (const auto& [n, g] : known) EXPECT_EQ(formulas::level_data(n).genus, Rational(g)) << n;
  EXPECT_EQ(formulas::level_data(7).degree_lk, 168u);
  EXPECT_EQ(formulas::chebotarev_constant(3), Rational(4 * 12 + 0 + 2));
}

TEST(Formulas, TracePredictionsSumToOne) {
  for (u64 n : {2ULL, 3ULL, 4ULL, 6ULL, 9ULL, 12ULL, 16ULL})
    for (i64 q : {5LL, 7LL, 13LL, 103LL}) {
      if (std::gcd(static_cast<u64>(q), n) != 1) continue;
      Rational sum = 0;
      for (u64 t = 0; t < n; ++t) sum += formulas::trace_prediction(q, n, static_cast<i64>(t)).value;
      EXPECT_EQ(sum, 1) << n << " " << q;
    }
}

TEST(Formulas, TracePredictionIsBruteForceRatio) {
  for (u64 n : {6ULL, 12ULL, 15ULL}) {
    const auto h = oracle::det_trace_histogram(n);
    for (u64 q = 1; q < n; ++q) {
      if (std::gcd(q, n) != 1) continue;
      u64 sl2 = 0;
      for (u64 t = 0; t < n; ++t) sl2 += h[q][t];
      for (u64 t = 0; t < n; ++t)
        EXPECT_EQ(formulas::trace_prediction(q, n, t).value, Rational(Integer(h[q][t]), Integer(sl2)));
    }
  }
}

TEST(Formulas, ReferenceValues) {
  EXPECT_EQ(formulas::order_prediction(4, 9).value, Rational(7, 54));
  EXPECT_EQ(formulas::trace_prediction(4, 9, 4).value, Rational(11, 72));
  EXPECT_EQ(formulas::order_prediction(9973, 9).value, Rational(1, 8));
  const auto p = formulas::trace_prediction(10007, 3, 0);
  EXPECT_EQ(p.value, Rational(1, 2));
  EXPECT_NEAR(p.error_bound, 0.307372, 1e-6);
  EXPECT_LE(p.error_bound, 0.308);
  EXPECT_THROW(formulas::trace_prediction(9, 3, 0), DomainError);
  EXPECT_THROW(formulas::theta(3, 1, 6), DomainError);
}

TEST(Formulas, OrderPredictionIsMultiplicative) {
  for (i64 q : {7LL, 11LL, 13LL, 9973LL})
    EXPECT_EQ(formulas::order_prediction(q, 6).value, theta(2, 1, q) * theta(3, 1, q));
  const auto p6 = formulas::order_prediction(7, 6);
  EXPECT_GT(p6.error_bound, formulas::order_prediction(7, 2).error_bound);
}

TEST(Formulas, ClassPredictionsSumToOne) {
  for (u64 n : {3ULL, 4ULL, 5ULL}) {
    Rational sum = 0;
    for (const auto& cls : zn::classes_with_det(n, 103)) {
      const auto p = formulas::class_prediction(103, n, cls);
      EXPECT_EQ(p.value, Rational(Integer(cls.size), Integer(zn::group_sizes(n).sl2)));
      sum += p.value;
    }
    EXPECT_EQ(sum, 1);
  }
}

TEST(Formulas, GroupStructureTelescopes) {
  for (u64 ell : {2ULL, 3ULL})
    for (int s = 0; ipow(ell, s + 1) <= 27; ++s)
      for (i64 q : {5LL, 7LL, 13LL, 25LL, 9973LL, 10007LL}) {
        if (q % static_cast<i64>(ell) == 0) continue;
        Rational sum = 0;
        for (int a = 0; 2 * a <= s; ++a) sum += formulas::group_structure_prediction(q, ell, a, s - a).value;
        const Integer delta = Integer(q - 1) * Integer(q - 1);
        const Rational upper =
            s == 0 ? Rational(1)
                   : Rational(phi({ell, s, delta}), Integer(zn::group_sizes(ipow(ell, s)).sl2));
        const Rational lower = Rational(phi({ell, s + 1, delta}), Integer(zn::group_sizes(ipow(ell, s + 1)).sl2));
        EXPECT_EQ(sum, upper - lower) << ell << " s=" << s << " q=" << q;
      }
}

TEST(Formulas, GroupStructureValueIsMatrixFraction) {
  const u64 m = 27;
  const auto pred = formulas::group_structure_prediction(9973, 3, 1, 1);
  EXPECT_EQ(pred.value, Rational(Integer(zn::count_group_structure_matrices(3, 1, 1, 9973)),
                                 Integer(zn::group_sizes(m).sl2)));
  EXPECT_EQ(pred.value, Rational(1, 36));
}
