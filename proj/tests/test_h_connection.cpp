#include <gtest/gtest.h>

#include "sasaki/field.hpp"
#include "sasaki/hconnection.hpp"
#include "sasaki/structure.hpp"

using namespace sasaki;

namespace {

class HConn : public ::testing::TestWithParam<int> {
 protected:
  SphereContext ctx{GetParam()};
  RngStream rng{42, 0x4c, static_cast<std::uint64_t>(GetParam())};
};

}  // namespace

TEST_P(HConn, ReebFieldsAreParallel) {
  for (int s = 0; s < 100; ++s) {
    const Vec<double> p = ctx.random_point(rng);
    const Vec<double> x = ctx.random_tangent(rng, p);
    for (Axis a : kAxes) {
      EXPECT_LT(max_abs(hbar(ctx, reeb_field(ctx, a), p, x)), 1e-9);
      for (Axis b : kAxes) EXPECT_LT(max_abs(hbar(ctx, reeb_field(ctx, b), p, ctx.xi(a, p))), 1e-9);
    }
  }
}

TEST_P(HConn, CoincidesWithProjectedLeviCivitaOnH) {
  const Vec<double> p = ctx.random_point(rng);
  const Vec<double> x = ctx.random_horizontal(rng, p);
  auto f = horizontal_field(ctx, canonical_extension(ctx.random_horizontal(rng, p)));
  EXPECT_LT(max_abs_diff(hbar(ctx, f, p, x), ctx.horizontal(p, levi_civita(ctx, f, p, x))), 1e-8);
  EXPECT_LT(max_abs_diff(hbar_projection_oracle(ctx, f, p, x), ctx.horizontal(p, levi_civita(ctx, f, p, x))), 1e-8);
}

TEST_P(HConn, ProjectionOracleAgrees) {
  for (int s = 0; s < 256; ++s) {
    const Vec<double> p = ctx.random_point(rng);
    const Vec<double> x = ctx.random_tangent(rng, p);
    auto f = canonical_extension(ctx.random_tangent(rng, p));
    EXPECT_LT(max_abs_diff(hbar(ctx, f, p, x), hbar_projection_oracle(ctx, f, p, x)), 1e-7);
  }
  const Vec<double> p = ctx.random_point(rng);
  auto x2 = reeb_field(ctx, Axis::j);
  EXPECT_LT(max_abs(hbar(ctx, x2, p, ctx.xi(Axis::i, p))), 1e-12);
  EXPECT_LT(max_abs(hbar_projection_oracle(ctx, x2, p, ctx.xi(Axis::i, p))), 1e-12);
}

TEST_P(HConn, PreservesHorizontalFields) {
  const Vec<double> p = ctx.random_point(rng);
  const Vec<double> x = ctx.random_tangent(rng, p);
  auto f = horizontal_field(ctx, canonical_extension(rng.normal_vector(ctx.dim())));
  EXPECT_LT(max_abs(ctx.vertical(p, hbar(ctx, f, p, x))), 1e-9);
}

TEST_P(HConn, MetricCompatibility) {
  const Vec<double> p = ctx.random_point(rng);
  for (Axis a : kAxes)
    EXPECT_NEAR(hbar_metric_compat_defect(ctx, p, ctx.xi(a, p), reeb_field(ctx, next(a)), reeb_field(ctx, prev(a))), 0.0, 1e-9);
  const Vec<double> xh = ctx.random_horizontal(rng, p);
  EXPECT_NEAR(hbar_metric_compat_defect(ctx, p, xh, canonical_extension(ctx.random_horizontal(rng, p)),
                                        canonical_extension(ctx.random_horizontal(rng, p))),
              0.0, 1e-8);
  const Vec<double> x = ctx.random_tangent(rng, p);
  EXPECT_NEAR(hbar_metric_compat_defect(ctx, p, x, canonical_extension(ctx.random_tangent(rng, p)),
                                        canonical_extension(ctx.random_tangent(rng, p))),
              0.0, 1e-8);
}

TEST_P(HConn, TorsionPattern) {
  const Vec<double> p = ctx.random_point(rng);
  const Vec<double> x = ctx.random_horizontal(rng, p);
  const Vec<double> y = ctx.random_horizontal(rng, p);
  EXPECT_LT(max_abs_diff(hbar_torsion(ctx, p, x, y), torsion_model(ctx, p, x, y)), 1e-8);
  for (Axis a : kAxes) {
    EXPECT_LT(max_abs(hbar_torsion(ctx, p, x, ctx.xi(a, p))), 1e-8);
    const Axis b = next(a);
    EXPECT_LT(max_abs_diff(hbar_torsion(ctx, p, reeb_field(ctx, a), reeb_field(ctx, b)), -2.0 * ctx.xi(next(b), p)), 1e-9);
  }
}

TEST_P(HConn, TorsionExtensionIndependent) {
  const Vec<double> p = ctx.random_point(rng);
  const Vec<double> x = ctx.random_tangent(rng, p);
  const Vec<double> y = ctx.random_tangent(rng, p);
  Mat m(ctx.dim());
  for (std::size_t r = 0; r < ctx.dim(); ++r)
    for (std::size_t c = 0; c < ctx.dim(); ++c) m(r, c) = rng.normal();
  EXPECT_LT(max_abs_diff(hbar_torsion(ctx, p, x, y),
                         hbar_torsion(ctx, p, affine_extension(x, p, m), affine_extension(y, p, m))),
            1e-7);
}

TEST_P(HConn, BracketIdentity) {
  const Vec<double> p = ctx.random_point(rng);
  auto xf = canonical_extension(ctx.random_horizontal(rng, p));
  auto yf = canonical_extension(ctx.random_horizontal(rng, p));
  EXPECT_LT(bracket_identity_residual(ctx, p, xf, xf), 1e-14);
  EXPECT_LT(bracket_identity_residual(ctx, p, xf, yf), 1e-8);
  EXPECT_NEAR(ctx.omega(Axis::k, p, ctx.xi(Axis::i, p), ctx.xi(Axis::j, p)), -1.0, 1e-12);
  EXPECT_LT(bracket_identity_residual(ctx, p, reeb_field(ctx, Axis::i), reeb_field(ctx, Axis::j)), 1e-10);
}

TEST_P(HConn, PhiParallelOnHorizontalOnly) {
  for (int s = 0; s < 64; ++s) {
    const Vec<double> p = ctx.random_point(rng);
    const Vec<double> x = ctx.random_horizontal(rng, p);
    auto yf = canonical_extension(ctx.random_horizontal(rng, p));
    for (Axis a : kAxes) EXPECT_LT(phi_parallel_residual(ctx, p, a, x, yf), 1e-8);
  }
  // The Levi-Civita derivative of phi does not vanish: (nabla_X phi_a) X = xi_a.
  const Vec<double> p = ctx.random_point(rng);
  const Vec<double> x = ctx.random_horizontal(rng, p);
  auto xf = canonical_extension(x);
  const Vec<double> lc = levi_civita(ctx, phi_field(ctx, Axis::i, xf), p, x) -
                         ctx.phi(Axis::i, p, levi_civita(ctx, xf, p, x));
  EXPECT_NEAR(norm(lc), 1.0, 1e-9);
}

TEST_P(HConn, PhiHasNoRealEigenvaluesOnH) {
  const Vec<double> p = ctx.random_point(rng);
  const Vec<double> y = ctx.random_horizontal(rng, p);
  for (Axis a : kAxes) {
    const Vec<double> py = ctx.phi(a, p, y);
    EXPECT_NEAR(dot(py, y), 0.0, 1e-14);
    EXPECT_LT(max_abs_diff(ctx.phi(a, p, py), -y), 1e-14);
  }
}

TEST_P(HConn, PhiDerivativeAlongReeb) {
  const Vec<double> p = ctx.random_point(rng);
  const Vec<double> y = ctx.random_horizontal(rng, p);
  for (Axis a : kAxes)
    for (Axis b : kAxes)
      EXPECT_LT(max_abs_diff(hbar_phi_derivative(ctx, p, a, ctx.xi(b, p), canonical_extension(y)),
                             2.0 * h_tensor(ctx, p, b, a, y)),
                1e-8);
}

INSTANTIATE_TEST_SUITE_P(Dimensions, HConn, ::testing::Values(1, 2));
