#include <gtest/gtest.h>

#include "frobmod/torsion.hpp"
#include "oracles.hpp"

using namespace frobmod;
using ec::Curve;
using ff::FieldCtx;
using ff::Poly;

namespace {

std::vector<Curve> all_curves(const FieldCtx& ctx) {
  std::vector<Curve> out;
  const u64 q = *ctx.small_order();
  for (u64 a = 0; a < q; ++a)
    for (u64 b = 0; b < q; ++b)
      if (ec::is_nonsingular(ctx.from_index(a), ctx.from_index(b)))
        out.push_back(Curve::make(ctx, ctx.from_index(a), ctx.from_index(b)));
  return out;
}

i64 naive_trace(const Curve& e) {
  const u64 q = *e.ctx().small_order();
  return static_cast<i64>(q + 1) - static_cast<i64>(oracle::naive_point_count(e.ctx(), e.a(), e.b()));
}

}  // namespace

TEST(Torsion, LowDivisionPolynomials) {
  const auto ctx = FieldCtx::make(13, 1);
  const auto e = Curve::make(ctx, 2, 5);
  EXPECT_EQ(torsion::division_poly(e, 2), Poly::from_ints(ctx, {5, 2, 0, 1}));
  EXPECT_EQ(torsion::division_poly(e, 3), Poly::from_ints(ctx, {-4, 12 * 5, 6 * 2, 0, 3}));
  for (u64 n = 2; n <= 12; ++n) {
    const int want = n % 2 ? static_cast<int>((n * n - 1) / 2) : static_cast<int>((n * n + 2) / 2);
    EXPECT_EQ(torsion::division_poly(e, n).degree(), want) << n;
  }
  EXPECT_THROW(torsion::division_poly(e, 13), DomainError);
}

TEST(Torsion, RationalRootsAreTorsionAbscissas) {
  const u64 p = 31;
  const auto ctx = FieldCtx::make(p, 1);
  for (u64 a : {1ULL, 4ULL, 9ULL})
    for (u64 b : {3ULL, 7ULL}) {
      const auto e = Curve::make(ctx, a, b);
      const auto pts = oracle::all_points(p, a, b);
      for (u64 n : {2ULL, 3ULL, 4ULL, 5ULL}) {
        std::set<u64> want;
        for (const auto& pt : pts)
          if (!pt.inf && n % oracle::pt_order(pt, a, p) == 0) want.insert(pt.x);
        std::set<u64> got;
        for (const auto& r : ff::poly_factor_distinct_roots(torsion::division_poly(e, n)))
          if (ff::is_square(e.rhs(r)) || e.rhs(r).is_zero()) got.insert(r.prime_value());
        EXPECT_EQ(got, want) << a << " " << b << " N=" << n;
      }
    }
}

TEST(Torsion, BasisSpansFullTorsion) {
  const auto ctx = FieldCtx::make(13, 1);
  const auto e = Curve::make(ctx, 1, 6);
  for (u64 n : {2ULL, 3ULL, 4ULL, 5ULL}) {
    const auto b = torsion::torsion_basis(e, n);
    ASSERT_EQ(b.points.size(), n * n);
    std::set<std::pair<Integer, Integer>> seen;
    for (u64 i = 0; i < n; ++i)
      for (u64 j = 0; j < n; ++j) {
        const auto& x = b.points[i * n + j];
        EXPECT_TRUE(ec::on_curve(b.curve, x));
        EXPECT_TRUE(ec::multiply(b.curve, x, n).infinity);
        EXPECT_EQ(x, ec::add(b.curve, ec::multiply(b.curve, b.p, i), ec::multiply(b.curve, b.q, j)));
        EXPECT_EQ(torsion::discrete_log(b, x), (std::pair<u64, u64>{i, j}));
        if (!x.infinity) EXPECT_TRUE(seen.insert({x.x.big_index(), x.y.big_index()}).second);
      }
    const Integer qd = ipow_big(13, b.degree);
    EXPECT_EQ((qd - 1) % n, 0);
  }
}

TEST(Torsion, FrobeniusDeterminantAndTrace) {
  for (u64 q : {7ULL, 11ULL, 13ULL}) {
    const auto ctx = FieldCtx::make(q, 1);
    for (const auto& e : all_curves(ctx)) {
      const i64 t = naive_trace(e);
      for (u64 n : {2ULL, 3ULL}) {
        if (n % q == 0) continue;
        const auto fm = torsion::frobenius_matrix(e, n);
        EXPECT_EQ(fm.matrix.det(), q % n);
        EXPECT_EQ(fm.matrix.trace(), mod_floor(t, n));
        EXPECT_EQ(fm.matrix.pow(static_cast<u64>(fm.basis.degree)), zn::ResidueMatrix::identity(n));
        for (int d = 1; d < fm.basis.degree; ++d) EXPECT_NE(fm.matrix.pow(d), zn::ResidueMatrix::identity(n));
      }
    }
  }
}

TEST(Torsion, FrobeniusOverExtensionBase) {
  const auto ctx = FieldCtx::make(5, 2);
  int checked = 0;
  for (const auto& e : all_curves(ctx)) {
    if (++checked % 7) continue;
    const i64 t = naive_trace(e);
    for (u64 n : {3ULL, 4ULL}) {
      const auto fm = torsion::frobenius_matrix(e, n);
      EXPECT_EQ(fm.matrix.det(), 25 % n);
      EXPECT_EQ(fm.matrix.trace(), mod_floor(t, n));
    }
  }
}

TEST(Torsion, HigherLevelsOnSampleCurves) {
  const auto ctx = FieldCtx::make(13, 1);
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {2, 5}, {0, 3}, {4, 0}}) {
    const auto e = Curve::make(ctx, a, b);
    const i64 t = naive_trace(e);
    for (u64 n : {4ULL, 5ULL, 6ULL}) {
      const auto fm = torsion::frobenius_matrix(e, n);
      EXPECT_EQ(fm.matrix.det(), 13 % n);
      EXPECT_EQ(fm.matrix.trace(), mod_floor(t, n));
    }
  }
}

TEST(Torsion, TwoTorsionDegreeFollowsCubicRoots) {
  const auto ctx = FieldCtx::make(11, 1);
  for (const auto& e : all_curves(ctx)) {
    const auto roots = ff::poly_factor_distinct_roots(Poly(ctx, {e.b(), e.a(), ctx.zero(), ctx.one()}));
    const int want = roots.size() == 3 ? 1 : roots.size() == 1 ? 2 : 3;
    EXPECT_EQ(torsion::torsion_basis(e, 2).degree, want);
  }
}

TEST(Torsion, ClassIsBasisIndependent) {
  const auto ctx = FieldCtx::make(13, 1);
  const auto e = Curve::make(ctx, 2, 5);
  const auto fm = torsion::frobenius_matrix(e, 3);
  const auto& b = fm.basis;
  const auto swapped = torsion::rebase(b, b.q, b.p);
  const auto sheared = torsion::rebase(b, ec::add(b.curve, b.p, b.q), b.q);
  const auto scaled = torsion::rebase(b, ec::multiply(b.curve, b.p, u64{2}), b.q);
  const auto cls = zn::conj_class_of(fm.matrix);
  for (const auto& nb : {swapped, sheared, scaled}) {
    const auto m = torsion::frobenius_matrix(nb, Integer(13)).matrix;
    EXPECT_EQ(zn::conj_class_of(m), cls);
  }
  EXPECT_EQ(torsion::class_of_curve(e, 3, 11), cls);
  EXPECT_THROW(torsion::rebase(b, b.p, ec::multiply(b.curve, b.p, u64{2})), DomainError);
}

TEST(Torsion, TwistNegatesClass) {
  const auto ctx = FieldCtx::make(13, 1);
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {2, 5}, {3, 7}, {6, 1}}) {
    const auto e = Curve::make(ctx, a, b);
    const auto tw = ec::quadratic_twist(e);
    for (u64 n : {3ULL, 4ULL}) {
      const auto m = torsion::frobenius_matrix(e, n).matrix;
      EXPECT_EQ(torsion::class_of_curve(tw, n), zn::conj_class_of(-m));
    }
  }
}

TEST(Torsion, RejectsUnsupportedInputs) {
  const auto ctx = FieldCtx::make(7, 1);
  const auto e = Curve::make(ctx, 1, 1);
  EXPECT_THROW(torsion::torsion_basis(e, 7), DomainError);
  EXPECT_THROW(torsion::torsion_basis(e, 14), DomainError);
  const auto big = FieldCtx::make(10007, 1);
  EXPECT_THROW(torsion::torsion_basis(Curve::make(big, 1, 1), 3), CapExceeded);
}
