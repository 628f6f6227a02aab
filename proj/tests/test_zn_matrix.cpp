#include <gtest/gtest.h>

#include "frobmod/zn_matrix.hpp"
#include "oracles.hpp"

using namespace frobmod;
using zn::ResidueMatrix;

namespace {

const std::vector<u64> kSmallModuli = {2, 3, 4, 5, 6, 7, 8, 9, 10, 12};

u64 naive_gl2(u64 m) {
  u64 n = 0;
  const auto h = oracle::det_trace_histogram(m);
  for (u64 det = 0; det < m; ++det)
    if (std::gcd(det, m) == 1)
      for (u64 t = 0; t < m; ++t) n += h[det][t];
  return n;
}

}  // namespace

TEST(ZnMatrix, ResidueReducesNegatives) {
  zn::Residue r(-1, 9);
  EXPECT_EQ(r.value(), 8u);
  EXPECT_TRUE(r.is_unit());
  EXPECT_FALSE(zn::Residue(6, 9).is_unit());
}

TEST(ZnMatrix, ArithmeticAndIndexRoundTrip) {
  const auto m = ResidueMatrix::make(2, -1, 5, 3, 7);
  EXPECT_EQ(m.b, 6u);
  EXPECT_EQ(m.det(), (2 * 3 + 5) % 7u);
  EXPECT_EQ(m.trace(), 5u);
  EXPECT_EQ(m * m.inverse(), ResidueMatrix::identity(7));
  EXPECT_EQ(m.pow(48), ResidueMatrix::identity(7));
  EXPECT_EQ(ResidueMatrix::from_index(m.index(), 7), m);
  EXPECT_EQ(ResidueMatrix::make(4, 5, 7, 8, 9).reduce(3), ResidueMatrix::make(1, 2, 1, 2, 3));
  EXPECT_THROW(ResidueMatrix::make(3, 0, 0, 1, 9).inverse(), DomainError);
}

TEST(ZnMatrix, GroupSizesMatchEnumeration) {
  for (u64 m : kSmallModuli) {
    const auto g = zn::group_sizes(m);
    EXPECT_EQ(g.gl2, naive_gl2(m)) << m;
    const auto h = oracle::det_trace_histogram(m);
    u64 sl2 = 0;
    for (u64 t = 0; t < m; ++t) sl2 += h[1 % m][t];
    EXPECT_EQ(g.sl2, sl2) << m;
    EXPECT_EQ(g.psl2 * (m == 2 ? 1 : 2), g.sl2) << m;
  }
}

TEST(ZnMatrix, DetTraceCountsMatchBruteForce) {
  for (u64 m : kSmallModuli) {
    const auto h = oracle::det_trace_histogram(m);
    zn::DetTraceTable table(m, 2);
    for (u64 q = 0; q < m; ++q) {
      if (std::gcd(q, m) != 1) continue;
      for (u64 t = 0; t < m; ++t) {
        EXPECT_EQ(table.count(q, t), h[q][t]);
        EXPECT_EQ(zn::count_det_trace(m, static_cast<i64>(q), static_cast<i64>(t)), h[q][t]) << m << " " << q << " " << t;
        EXPECT_EQ(zn::count_det_trace_exhaustive(m, static_cast<i64>(q + 3 * m), static_cast<i64>(t) - 2 * static_cast<i64>(m)),
                  h[q][t]);
      }
    }
  }
}

TEST(ZnMatrix, ChineseRemainderMultiplicativity) {
  for (u64 n : {6ULL, 12ULL, 15ULL}) {
    const auto h = oracle::det_trace_histogram(n);
    const auto parts = factorize(n);
    for (u64 q = 1; q < n; ++q) {
      if (std::gcd(q, n) != 1) continue;
      for (u64 t = 0; t < n; ++t) {
        u64 prod = 1;
        for (const auto& pp : parts) prod *= zn::count_det_trace_exhaustive(pp.value(), q, t);
        EXPECT_EQ(prod, h[q][t]);
        EXPECT_EQ(zn::count_det_trace(n, q, t), prod);
      }
    }
  }
}

TEST(ZnMatrix, ScanCapIsEnforced) {
  EXPECT_THROW(zn::count_det_trace_exhaustive(101, 1, 0), CapExceeded);
  EXPECT_THROW(zn::count_det_trace(9, 3, 0), DomainError);
}

TEST(ZnMatrix, XyEqualsAlphaCounts) {
  for (u64 m = 2; m <= 64; ++m) {
    if (!as_prime_power(m)) continue;
    for (u64 alpha = 0; alpha < m; ++alpha) {
      u64 n = 0;
      for (u64 x = 0; x < m; ++x)
        for (u64 y = 0; y < m; ++y)
          if (x * y % m == alpha) ++n;
      EXPECT_EQ(zn::count_xy_eq_alpha(m, static_cast<i64>(alpha)), n) << m << " " << alpha;
    }
  }
}

TEST(ZnMatrix, InductionSumIdentity) {
  for (u64 ell : {2ULL, 3ULL, 5ULL, 7ULL})
    for (int n = 1; n <= 5; ++n)
      for (int k = 0; k <= n; ++k) {
        const auto s = zn::induction_sum(ell, n, k);
        EXPECT_EQ(s.literal, s.closed_form) << ell << " " << n << " " << k;
      }
  EXPECT_THROW(zn::induction_sum(3, 2, 3), DomainError);
  EXPECT_THROW(zn::induction_sum(4, 2, 1), DomainError);
}

TEST(ZnMatrix, ConjugacyClassesPartitionDeterminantFibre) {
  for (u64 m : {3ULL, 4ULL, 5ULL, 6ULL, 8ULL}) {
    const auto gl2 = oracle::gl2_with_inverses(m);
    for (u64 q = 1; q < m; ++q) {
      if (std::gcd(q, m) != 1) continue;
      const auto classes = zn::classes_with_det(m, static_cast<i64>(q));
      u64 total = 0;
      for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        if (i > 0) EXPECT_LT(classes[i - 1].fingerprint, c.fingerprint);
        const auto orbit = oracle::conjugacy_orbit({c.representative.a, c.representative.b, c.representative.c,
                                                    c.representative.d}, m, gl2);
        EXPECT_EQ(orbit.size(), c.size);
        EXPECT_EQ(*orbit.begin(), c.fingerprint);
        EXPECT_EQ(c.size * zn::stabilizer_order(c.representative), zn::group_sizes(m).gl2);
        total += c.size;
      }
      EXPECT_EQ(total, zn::group_sizes(m).sl2);
    }
  }
}

TEST(ZnMatrix, ClassOfAnyMemberIsTheSame) {
  const auto m = ResidueMatrix::make(1, 1, 0, 2, 9);
  const auto cls = zn::conj_class_of(m);
  for (const auto& x : zn::class_members(m)) EXPECT_EQ(zn::conj_class_of(x), cls);
}

TEST(ZnMatrix, OrderClassCountsMatchBruteForce) {
  for (u64 m : {2ULL, 3ULL, 4ULL, 5ULL, 7ULL, 8ULL, 9ULL}) {
    const u64 ell = as_prime_power(m)->prime;
    for (u64 q = 1; q < m; ++q) {
      if (q % ell == 0) continue;
      u64 n = 0;
      for (const auto& g : oracle::matrices_with_det(m, q))
        if (oracle::fixes_primitive(g, m, ell)) ++n;
      EXPECT_EQ(zn::count_order_class(m, static_cast<i64>(q)), n) << m << " " << q;
    }
  }
}

TEST(ZnMatrix, FixesPrimitiveVectorAtLowerLevel) {
  const auto m = ResidueMatrix::make(1, 3, 0, 4, 9);
  EXPECT_TRUE(zn::fixes_primitive_vector(m, 3, 0));
  EXPECT_TRUE(zn::fixes_primitive_vector(m, 3, 2));
  const auto no = ResidueMatrix::make(2, 0, 0, 2, 9);
  EXPECT_FALSE(zn::fixes_primitive_vector(no, 3, 1));
}

TEST(ZnMatrix, RepresentativesMaAreDistinctAndExhaustive) {
  for (u64 m : {2ULL, 3ULL, 4ULL, 5ULL, 7ULL, 8ULL, 9ULL, 11ULL, 13ULL, 16ULL, 25ULL, 27ULL}) {
    const auto pp = *as_prime_power(m);
    const auto gl2 = oracle::gl2_with_inverses(m);
    for (u64 q = 1; q < m; ++q) {
      if (q % pp.prime == 0) continue;
      const auto reps = zn::conj_representatives_ma(pp.prime, pp.exponent, static_cast<i64>(q));
      std::vector<std::set<u64>> orbits;
      for (const auto& r : reps) {
        EXPECT_EQ(r.det(), q);
        orbits.push_back(oracle::conjugacy_orbit({r.a, r.b, r.c, r.d}, m, gl2));
      }
      for (std::size_t i = 0; i < orbits.size(); ++i)
        for (std::size_t j = i + 1; j < orbits.size(); ++j) EXPECT_EQ(orbits[i].count(*orbits[j].begin()), 0u);
      for (u64 w = 0; w < m; ++w) {
        const u64 k = oracle::key({1 % m, w, 0, q}, m);
        bool found = false;
        for (const auto& o : orbits) found = found || o.count(k) > 0;
        EXPECT_TRUE(found) << m << " q=" << q << " w=" << w;
      }
    }
  }
}

TEST(ZnMatrix, GroupStructureConditionsAgreeWithEnumeration) {
  const u64 m = 9;
  for (u64 q : {1ULL, 4ULL, 7ULL, 2ULL}) {
    u64 n = 0;
    for (const auto& g : oracle::matrices_with_det(m, q)) {
      const auto r = ResidueMatrix::make(g.a, g.b, g.c, g.d, m);
      const bool trace_ok = r.trace() != (q + 1) % m && (r.trace() % 3) == (q + 1) % 3;
      const bool fix_ok = oracle::fixes_primitive({g.a % 3, g.b % 3, g.c % 3, g.d % 3}, 3, 3);
      if (trace_ok && fix_ok) ++n;
    }
    EXPECT_EQ(zn::count_group_structure_matrices(3, 0, 1, static_cast<i64>(q)), n) << q;
  }
}
