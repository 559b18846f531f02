#include <gtest/gtest.h>

#include "sasaki/foliated_chart.hpp"

using namespace sasaki;

namespace {

class Chart : public ::testing::TestWithParam<int> {
 protected:
  SphereContext ctx{GetParam()};
  FoliatedChart chart{ctx};
  RngStream rng{42, 0xc4, static_cast<std::uint64_t>(GetParam())};
  std::size_t m = chart.horizontal_dim();
  DerivativeStrategy how = DerivativeStrategy::analytic();

  ChartCoords sample() {
    return ChartCoords::from(rng.ball(3, std::numbers::pi - 0.1), rng.ball(m, 2.0));
  }
};

}  // namespace

TEST_P(Chart, LandsOnSphereWithTangentCoordinateFields) {
  for (int s = 0; s < 64; ++s) {
    const ChartCoords pt = sample();
    const Vec<double> p = chart.point(pt);
    EXPECT_NEAR(norm(p), 1.0, 1e-13);
    const auto cols = chart.coordinate_fields(pt);
    ASSERT_EQ(cols.size(), chart.coord_dim());
    for (const auto& c : cols) EXPECT_NEAR(dot(c, p), 0.0, 1e-12);
  }
}

TEST_P(Chart, OriginValues) {
  const ChartCoords pt{Vec<double>(chart.coord_dim())};
  const AdaptedFrameAt f = chart.adapted_frame(pt);
  EXPECT_EQ(f.p, Vec<double>::basis(ctx.dim(), 0));
  for (Axis a : kAxes) {
    const auto ia = static_cast<std::size_t>(index(a));
    EXPECT_LT(max_abs_diff(f.dz[ia], ctx.xi(a, f.p)), 1e-15);
  }
  for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(f.g_at(i, i), 1.0, 1e-15);
}

TEST_P(Chart, LeavesAreReebOrbits) {
  for (int s = 0; s < 32; ++s) {
    const AdaptedFrameAt f = chart.adapted_frame(sample());
    EXPECT_LT(f.leaf_defect, 1e-12);
    EXPECT_GT(f.sigma_min, 1e-3);
    for (const auto& dz : f.dz) EXPECT_LT(max_abs(ctx.horizontal(f.p, dz)), 1e-12);
  }
}

TEST_P(Chart, AdaptedFrameIsHorizontalWithBlockMetric) {
  const AdaptedFrameAt f = chart.adapted_frame(sample());
  for (std::size_t i = 0; i < m; ++i) {
    for (Axis a : kAxes) EXPECT_NEAR(ctx.eta(a, f.p, f.delta[i]), 0.0, 1e-13);
    for (std::size_t j = 0; j < m; ++j) EXPECT_NEAR(f.g_at(i, j), f.g_at(j, i), 1e-15);
  }
  const Vec<double> probe = ctx.random_horizontal(rng, f.p);
  EXPECT_NEAR(dot(probe, f.xi[0]), 0.0, 1e-13);
}

TEST_P(Chart, Brackets) {
  const ChartCoords pt = sample();
  const AdaptedFrameAt f = chart.adapted_frame(pt);
  EXPECT_EQ(max_abs(chart.bracket_coords(pt, 1, 1, how)), 0.0);
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % m;
    Vec<double> expect(ctx.dim());
    for (Axis a : kAxes) expect -= 2.0 * ctx.omega(a, f.p, f.delta[i], f.delta[j]) * ctx.xi(a, f.p);
    EXPECT_LT(max_abs_diff(chart.bracket_coords(pt, i, j, how), expect), 1e-9);
    EXPECT_LT(max_abs_diff(chart.bracket_coords(pt, i, j, DerivativeStrategy::finite_difference(1e-4)), expect),
              1e-6);
  }
  // [delta_i, xi_a] vanishes: xi_a has constant chart components along the leaf.
  const ChartFrameCalculus calc(chart, how);
  for (Axis a : kAxes) {
    const Vec<double> b = calc.levi_civita(pt, FrameIndex::delta(0), FrameIndex::reeb(a)) -
                          calc.levi_civita(pt, FrameIndex::reeb(a), FrameIndex::delta(0));
    EXPECT_LT(max_abs(b), 1e-9);
  }
}

TEST_P(Chart, ChristoffelSymmetricAndRouteIndependent) {
  const ChartCoords pt = sample();
  const auto a = chart.christoffel(pt, how);
  const auto b = chart.christoffel(pt, DerivativeStrategy::finite_difference(1e-4));
  ASSERT_EQ(a.size(), m * m * m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        EXPECT_EQ(a[k * m * m + i * m + j], a[k * m * m + j * m + i]);
        EXPECT_NEAR(a[k * m * m + i * m + j], b[k * m * m + i * m + j], 1e-6);
      }
}

TEST_P(Chart, ConnectionComponents) {
  const ChartFrameCalculus calc(chart, how);
  const ChartCoords pt = sample();
  const AdaptedFrameAt f = chart.adapted_frame(pt);
  const auto gam = chart.christoffel(pt, how);
  const std::size_t i = 0, j = m - 1;
  std::vector<double> fij(m);
  for (std::size_t k = 0; k < m; ++k) fij[k] = gam[k * m * m + i * m + j];
  Vec<double> lc = calc.combine(f, fij);
  for (Axis a : kAxes) lc -= ctx.omega(a, f.p, f.delta[i], f.delta[j]) * ctx.xi(a, f.p);
  EXPECT_LT(max_abs_diff(calc.levi_civita(pt, FrameIndex::delta(i), FrameIndex::delta(j)), lc), 1e-8);
  EXPECT_LT(max_abs_diff(calc.hbar(pt, FrameIndex::delta(i), FrameIndex::delta(j)), calc.combine(f, fij)), 1e-8);
  for (Axis a : kAxes) {
    EXPECT_LT(max_abs(calc.hbar(pt, FrameIndex::reeb(a), FrameIndex::delta(i))), 1e-9);
    EXPECT_LT(max_abs(calc.hbar(pt, FrameIndex::delta(i), FrameIndex::reeb(a))), 1e-9);
    EXPECT_LT(max_abs(calc.hbar(pt, FrameIndex::reeb(a), FrameIndex::reeb(next(a)))), 1e-9);
    // Leaves are totally geodesic.
    EXPECT_LT(max_abs(ctx.horizontal(f.p, calc.levi_civita(pt, FrameIndex::reeb(a), FrameIndex::reeb(next(a))))),
              1e-9);
    EXPECT_LT(max_abs(calc.levi_civita(pt, FrameIndex::reeb(a), FrameIndex::reeb(a))), 1e-9);
  }
}

TEST_P(Chart, MetricAndChristoffelConstantAlongLeaves) {
  const ChartCoords pt = sample();
  const FrameData<double> f = chart.frame(pt.c);
  auto gfn = [&](const auto& c) { return chart.metric_flat(c); };
  auto ffn = [&](const auto& c) { return Vec(chart.christoffel_generic(c, how)); };
  for (Axis a : kAxes) {
    EXPECT_LT(max_abs(chart.coord_derivative(gfn, pt.c, chart.reeb_direction(f, a), how)), 1e-10);
    EXPECT_LT(max_abs(chart.coord_derivative(ffn, pt.c, chart.reeb_direction(f, a), how)), 1e-8);
  }
}

TEST_P(Chart, DomainErrors) {
  EXPECT_THROW(chart.point(ChartCoords::from(Vec<double>{3.2, 0, 0}, Vec<double>(m))), DomainError);
  Vec<double> far(m);
  far[0] = 10.0;
  EXPECT_THROW(chart.point(ChartCoords::from(Vec<double>(3), far)), DomainError);
  EXPECT_THROW(chart.point(ChartCoords{Vec<double>(2)}), DimensionError);
  EXPECT_THROW(ChartCoords::from(Vec<double>(2), far), DimensionError);
  Vec<double> bad(m);
  bad[0] = std::nan("");
  EXPECT_THROW(chart.point(ChartCoords::from(Vec<double>(3), bad)), DomainError);
}

TEST_P(Chart, IllConditionedAndDegenerateRegions) {
  const FoliatedChart wide(ctx, 1e8);
  Vec<double> x(m);
  x[0] = 1e5;
  const ChartCoords pt = ChartCoords::from(Vec<double>(3), x);
  if (ctx.n() == 1) {
    // One quaternionic direction: the transverse metric is conformal to the flat one.
    EXPECT_NEAR(wide.metric_condition(pt), 1.0, 1e-6);
  } else {
    // Radial versus transverse eigenvalues differ by 1 + |x|^2.
    EXPECT_GT(wide.metric_condition(pt), 1e8);
    EXPECT_THROW(wide.christoffel(pt, how), ConditioningError);
  }
  x[0] = 1e7;
  try {
    wide.adapted_frame(ChartCoords::from(Vec<double>(3), x));
    FAIL() << "expected ChartDegeneracyError";
  } catch (const ChartDegeneracyError& e) {
    EXPECT_LE(e.sigma_min(), 1e-10);
  }
}

INSTANTIATE_TEST_SUITE_P(Dimensions, Chart, ::testing::Values(1, 2));
