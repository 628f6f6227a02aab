#include <gtest/gtest.h>

#include <random>

#include "frobmod/elliptic.hpp"
#include "oracles.hpp"

using namespace frobmod;
using ec::Curve;
using ec::CurvePoint;
using ff::FieldCtx;

namespace {

std::pair<u64, u64> canonical_pair(const FieldCtx& ctx, const ff::FieldElement& a, const ff::FieldElement& b) {
  const u64 q = *ctx.small_order();
  std::pair<u64, u64> best{q, q};
  for (u64 i = 1; i < q; ++i) {
    const auto u = ctx.from_index(i);
    const auto u2 = u * u;
    best = std::min(best, std::pair<u64, u64>{(u2 * u2 * a).index(), (u2 * u2 * u2 * b).index()});
  }
  return best;
}

int naive_aut(const FieldCtx& ctx, const ff::FieldElement& a, const ff::FieldElement& b) {
  int n = 0;
  for (u64 i = 1; i < *ctx.small_order(); ++i) {
    const auto u = ctx.from_index(i);
    const auto u2 = u * u;
    if (u2 * u2 * a == a && u2 * u2 * u2 * b == b) ++n;
  }
  return n;
}

}  // namespace

TEST(Elliptic, ReferenceCurveOverF5) {
  const auto ctx = FieldCtx::make(5, 1);
  const auto e = Curve::make(ctx, 1, 0);
  EXPECT_EQ(ec::point_count(e), 4u);
  EXPECT_EQ(ec::trace_of_frobenius(e), 2);
  EXPECT_EQ(e.j_invariant(), ctx.from_int(1728));
  EXPECT_THROW(Curve::make(ctx, 0, 0), DomainError);
  EXPECT_THROW(Curve::make(FieldCtx::make(3, 1), 1, 1), DomainError);
}

TEST(Elliptic, PointCountsMatchNaive) {
  for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL, 101ULL}) {
    const auto ctx = FieldCtx::make(p, 1);
    ec::PointCounter counter(ctx);
    for (u64 a = 0; a < p; ++a)
      for (u64 b = 0; b < p; ++b) {
        if (!ec::is_nonsingular(ctx.from_int(a), ctx.from_int(b))) continue;
        const u64 n = counter.count(ctx.from_int(a), ctx.from_int(b));
        EXPECT_EQ(n, oracle::legendre_point_count(p, a, b));
        if (p <= 13) EXPECT_EQ(n, oracle::naive_point_count(ctx, ctx.from_int(a), ctx.from_int(b)));
      }
  }
  const auto f25 = FieldCtx::make(5, 2);
  ec::PointCounter c25(f25);
  for (u64 a = 0; a < 25; a += 2)
    for (u64 b = 1; b < 25; b += 3) {
      const auto fa = f25.from_index(a), fb = f25.from_index(b);
      if (!ec::is_nonsingular(fa, fb)) continue;
      const u64 n = c25.count(fa, fb);
      EXPECT_EQ(n, oracle::naive_point_count(f25, fa, fb));
      EXPECT_LE(std::abs(ec::trace_from_count(f25, n)), 10);
    }
}

TEST(Elliptic, GroupLawOnAllPoints) {
  const auto ctx = FieldCtx::make(13, 1);
  const auto e = Curve::make(ctx, 2, 5);
  const u64 n = ec::point_count(e);
  std::vector<CurvePoint> pts{CurvePoint::at_infinity()};
  for (const auto& p : oracle::all_points(13, 2, 5))
    if (!p.inf) pts.push_back(CurvePoint::affine(ctx.from_int(p.x), ctx.from_int(p.y)));
  ASSERT_EQ(pts.size(), n);
  for (const auto& p : pts) {
    EXPECT_TRUE(ec::on_curve(e, p));
    EXPECT_TRUE(ec::multiply(e, p, n).infinity);
    EXPECT_TRUE(ec::add(e, p, ec::negate(p)).infinity);
    EXPECT_EQ(n % ec::point_order(e, p, n), 0u);
    for (const auto& q : pts) {
      EXPECT_EQ(ec::add(e, p, q), ec::add(e, q, p));
      EXPECT_EQ(ec::add(e, ec::add(e, p, q), pts[3]), ec::add(e, p, ec::add(e, q, pts[3])));
    }
  }
  EXPECT_EQ(ec::multiply(e, pts[2], Integer(n + 3)), ec::multiply(e, pts[2], u64{3}));
}

TEST(Elliptic, TwistTracesAreOpposite) {
  const auto ctx = FieldCtx::make(13, 1);
  for (u64 a = 0; a < 13; ++a)
    for (u64 b = 0; b < 13; ++b) {
      if (!ec::is_nonsingular(ctx.from_int(a), ctx.from_int(b))) continue;
      const auto e = Curve::make(ctx, a, b);
      const auto t = ec::quadratic_twist(e);
      EXPECT_EQ(ec::point_count(e) + ec::point_count(t), 2u * 13 + 2);
      EXPECT_EQ(e.j_invariant(), t.j_invariant());
    }
}

TEST(Elliptic, JInvariantIsIsomorphismInvariant) {
  const auto ctx = FieldCtx::make(5, 2);
  const auto e = Curve::make(ctx, ctx.from_index(7), ctx.from_index(11));
  for (u64 i = 1; i < 25; ++i) {
    const auto u = ctx.from_index(i);
    const auto u2 = u * u;
    const auto f = Curve::make(ctx, u2 * u2 * e.a(), u2 * u2 * u2 * e.b());
    EXPECT_EQ(f.j_invariant(), e.j_invariant());
    EXPECT_EQ(ec::point_count(f), ec::point_count(e));
  }
}

TEST(Elliptic, AutomorphismOrders) {
  for (u64 q : {5ULL, 7ULL, 11ULL, 13ULL, 25ULL, 49ULL}) {
    const auto pp = *as_prime_power(q);
    const auto ctx = FieldCtx::make(pp.prime, pp.exponent);
    for (u64 a = 0; a < q; a += 3)
      for (u64 b = 0; b < q; b += 2) {
        const auto fa = ctx.from_index(a), fb = ctx.from_index(b);
        if (!ec::is_nonsingular(fa, fb)) continue;
        EXPECT_EQ(ec::aut_order(Curve::make(ctx, fa, fb)), naive_aut(ctx, fa, fb));
      }
  }
}

TEST(Elliptic, ClassRepresentativesMatchOrbitPartition) {
  for (u64 q : {5ULL, 7ULL, 11ULL, 13ULL, 25ULL, 49ULL}) {
    const auto pp = *as_prime_power(q);
    const auto ctx = FieldCtx::make(pp.prime, pp.exponent);
    const auto orbits = oracle::isomorphism_orbits(ctx);
    const auto reps = ec::enumerate_class_reps(ctx);
    ASSERT_EQ(reps.size(), orbits.size()) << q;
    std::set<std::pair<u64, u64>> hit;
    Rational mass = 0;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const auto& r = reps[i];
      const auto key = canonical_pair(ctx, r.curve.a(), r.curve.b());
      ASSERT_TRUE(orbits.count(key)) << q;
      EXPECT_EQ(orbits.at(key), r.multiplicity);
      EXPECT_EQ(r.multiplicity * static_cast<u64>(r.aut_order), q - 1);
      EXPECT_EQ(r.j, r.curve.j_invariant());
      EXPECT_TRUE(hit.insert(key).second);
      if (i > 0) EXPECT_LE(reps[i - 1].j, r.j);
      mass += Rational(1, r.aut_order);
    }
    EXPECT_EQ(mass, Rational(q));
    EXPECT_GE(reps.size(), 2 * q);
    EXPECT_LE(reps.size(), 2 * q + 22);
  }
}

TEST(Elliptic, GroupStructureMatchesNaive) {
  for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 31ULL, 37ULL}) {
    const auto ctx = FieldCtx::make(p, 1);
    bool saw_full_torsion = false;
    for (u64 a = 0; a < p; ++a)
      for (u64 b = 0; b < p; ++b) {
        if (!ec::is_nonsingular(ctx.from_int(a), ctx.from_int(b))) continue;
        const auto e = Curve::make(ctx, a, b);
        const auto [k, m] = oracle::naive_group_shape(p, a, b);
        const u64 n = k * m;
        for (u64 seed : {0ULL, 5ULL}) {
          const auto g = ec::group_structure(e, n, seed);
          EXPECT_EQ(g.k, k) << p << " " << a << " " << b;
          EXPECT_EQ(g.m, m);
        }
        for (u64 ell : {2ULL, 3ULL, 5ULL}) {
          if (ell == p) continue;
          const auto ps = ec::primary_structure(e, n, ell);
          EXPECT_EQ(ps.a, n % ell ? 0 : valuation(k, ell));
          EXPECT_EQ(ps.b, n % ell ? 0 : valuation(m, ell));
        }
        if (k % 3 == 0) saw_full_torsion = true;
        const auto pts = oracle::all_points(p, a, b);
        for (u64 order : {2ULL, 3ULL, 4ULL, 6ULL, 9ULL}) {
          if (order % p == 0) continue;
          bool naive = false;
          for (const auto& pt : pts) naive = naive || oracle::pt_order(pt, a, p) == order;
          EXPECT_EQ(ec::has_point_of_order(e, n, order), naive) << p << " " << a << " " << b << " N=" << order;
        }
      }
    if (p % 3 == 1) EXPECT_TRUE(saw_full_torsion) << p;
  }
}

TEST(Elliptic, EnumerateClassesRecords) {
  const auto ctx = FieldCtx::make(7, 2);
  const auto serial = ec::enumerate_classes(ctx, 1, 3);
  const auto threaded = ec::enumerate_classes(ctx, 4, 3);
  ASSERT_EQ(serial.size(), threaded.size());
  u64 pairs = 0;
  ec::PointCounter counter(ctx);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    const auto& r = serial[i];
    EXPECT_EQ(r.trace, threaded[i].trace);
    EXPECT_EQ(r.group_shape, threaded[i].group_shape);
    EXPECT_EQ(r.trace, ec::trace_from_count(ctx, counter.count(r.representative)));
    EXPECT_EQ(r.group_shape.k * r.group_shape.m, counter.count(r.representative));
    EXPECT_EQ(r.group_shape.m % r.group_shape.k, 0u);
    pairs += r.multiplicity;
  }
  EXPECT_EQ(pairs, 49u * 49 - 49);
}
