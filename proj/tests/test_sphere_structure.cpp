#include <gtest/gtest.h>

#include "sasaki/calibration.hpp"
#include "sasaki/field.hpp"
#include "sasaki/structure.hpp"

using namespace sasaki;

namespace {

class Structure : public ::testing::TestWithParam<int> {
 protected:
  SphereContext ctx{GetParam()};
  RngStream rng{42, 0x51, static_cast<std::uint64_t>(GetParam())};
};

}  // namespace

TEST(StructureBasics, ReebAtFirstBasisPointUnderRightMultiplication) {
  const SphereContext ctx(1);
  const Vec<double> p = Vec<double>::basis(8, 0);
  EXPECT_EQ(ctx.xi(Axis::i, p), Vec<double>::basis(8, 1));
  EXPECT_EQ(ctx.xi(Axis::j, p), Vec<double>::basis(8, 2));
  EXPECT_EQ(ctx.xi(Axis::k, p), Vec<double>::basis(8, 3));
}

TEST(StructureBasics, InvalidConstructionRejected) {
  EXPECT_THROW(SphereContext(0), DomainError);
  EXPECT_THROW(SphereContext(1, Multiplication::right, 0.5), DomainError);
}

TEST_P(Structure, ReebOrthonormalAndTangent) {
  for (int s = 0; s < 100; ++s) {
    const Vec<double> p = ctx.random_point(rng);
    for (Axis a : kAxes) {
      EXPECT_NEAR(norm(ctx.xi(a, p)), 1.0, 1e-12);
      EXPECT_NEAR(dot(ctx.xi(a, p), p), 0.0, 1e-12);
      for (Axis b : kAxes)
        EXPECT_NEAR(dot(ctx.xi(a, p), ctx.xi(b, p)), a == b ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST_P(Structure, ReebBracketIsTwiceThird) {
  for (int s = 0; s < 100; ++s) {
    const Vec<double> p = ctx.random_point(rng);
    const Vec<double> b = lie_bracket(reeb_field(ctx, Axis::i), reeb_field(ctx, Axis::j), p);
    EXPECT_LT(max_abs_diff(b, 2.0 * ctx.xi(Axis::k, p)), 1e-10);
  }
}

TEST_P(Structure, EtaOnReebAndPhi) {
  const Vec<double> p = ctx.random_point(rng);
  const Vec<double> x = ctx.random_tangent(rng, p);
  for (Axis a : kAxes) {
    EXPECT_NEAR(ctx.eta(a, p, ctx.xi(a, p)), 1.0, 1e-15);
    EXPECT_NEAR(ctx.eta(a, p, ctx.xi(next(a), p)), 0.0, 1e-15);
    EXPECT_NEAR(ctx.eta(a, p, ctx.phi(a, p, x)), 0.0, 1e-14);
  }
}

TEST_P(Structure, PhiSquaredAndCompatibility) {
  for (int s = 0; s < 100; ++s) {
    const Vec<double> p = ctx.random_point(rng);
    const Vec<double> x = ctx.random_tangent(rng, p);
    const Vec<double> y = ctx.random_tangent(rng, p);
    for (Axis a : kAxes) {
      EXPECT_LT(max_abs(ctx.phi(a, p, ctx.xi(a, p))), 1e-15);
      const Vec<double> pp = ctx.phi(a, p, ctx.phi(a, p, x));
      EXPECT_LT(max_abs_diff(pp, -x + ctx.eta(a, p, x) * ctx.xi(a, p)), 1e-12);
      const double lhs = dot(ctx.phi(a, p, x), ctx.phi(a, p, y));
      EXPECT_NEAR(lhs, dot(x, y) - ctx.eta(a, p, x) * ctx.eta(a, p, y), 1e-12);
    }
  }
}

TEST_P(Structure, OmegaAntisymmetricAndEqualsDEta) {
  const Vec<double> p = ctx.random_point(rng);
  const Vec<double> x = ctx.random_tangent(rng, p);
  const Vec<double> y = ctx.random_tangent(rng, p);
  const auto fd = DerivativeStrategy::finite_difference();
  for (Axis a : kAxes) {
    EXPECT_NEAR(ctx.omega(a, p, x, x), 0.0, 1e-15);
    EXPECT_NEAR(ctx.omega(a, p, x, y) + ctx.omega(a, p, y, x), 0.0, 1e-15);
    const double de = d_eta(ctx, p, a, canonical_extension(x, fd), canonical_extension(y, fd));
    EXPECT_NEAR(ctx.omega(a, p, x, y), de, 1e-8);
  }
}

TEST_P(Structure, HorizontalProjection) {
  const Vec<double> p = ctx.random_point(rng);
  const Vec<double> x = ctx.random_tangent(rng, p);
  EXPECT_LT(max_abs(ctx.horizontal(p, ctx.xi(Axis::j, p))), 1e-15);
  const Vec<double> hx = ctx.horizontal(p, x);
  EXPECT_LT(max_abs_diff(ctx.horizontal(p, hx), hx), 1e-15);
  EXPECT_LT(max_abs_diff(hx + ctx.vertical(p, x), x), 1e-13);
  for (Axis a : kAxes) EXPECT_NEAR(ctx.eta(a, p, hx), 0.0, 1e-15);
}

TEST_P(Structure, ThreeSasakianRelations) {
  const Vec<double> p = ctx.random_point(rng);
  EXPECT_LT(max_abs_diff(ctx.xi(Axis::k, p), ctx.phi(Axis::i, p, ctx.xi(Axis::j, p))), 1e-12);
  const Vec<double> x = ctx.random_tangent(rng, p);
  EXPECT_NEAR(ctx.eta(Axis::k, p, x), ctx.eta(Axis::i, p, ctx.phi(Axis::j, p, x)), 1e-12);
  const Vec<double> rhs =
      ctx.phi(Axis::i, p, ctx.phi(Axis::j, p, x)) - ctx.eta(Axis::j, p, x) * ctx.xi(Axis::i, p);
  EXPECT_LT(max_abs_diff(ctx.phi(Axis::k, p, x), rhs), 1e-12);
  const ThreeSasakianRelations r = check_three_sasakian_relations(ctx, p, rng);
  EXPECT_LT(std::max({r.xi, r.eta, r.phi}), 1e-12);
}

TEST_P(Structure, AdaptedFrameHasBlockMetric) {
  const Vec<double> p = ctx.random_point(rng);
  std::vector<Vec<double>> frame;
  for (Axis a : kAxes) frame.push_back(ctx.xi(a, p));
  for (const auto& v : ctx.horizontal_frame(rng, p)) frame.push_back(v);
  EXPECT_EQ(frame.size(), ctx.dim() - 1);
  EXPECT_LE(gram_defect(frame), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Dimensions, Structure, ::testing::Values(1, 2));

TEST(StrongTypes, PointAndTangentInvariants) {
  const SphereContext ctx(1);
  EXPECT_THROW(PointOnSphere::from(Vec<double>::basis(8, 0) * 1.1), DomainError);
  const PointOnSphere p = PointOnSphere::normalize(Vec<double>{1, 2, 0, 0, 0, 0, 0, 1});
  EXPECT_THROW(TangentAt::at(p, p.coords()), DomainError);
  EXPECT_THROW(TangentAt::at(p, Vec<double>(4)), DimensionError);
  const TangentAt x = xi(ctx, p, Axis::i);
  EXPECT_NEAR(eta(ctx, p, Axis::i, x), 1.0, 1e-15);
  EXPECT_LT(max_abs(phi(ctx, p, Axis::i, x).vec()), 1e-15);
  EXPECT_LT(max_abs(horizontal_project(ctx, p, x).vec()), 1e-15);
}

TEST(StrongTypes, BaseMismatchRejected) {
  const SphereContext ctx(1);
  const PointOnSphere p = PointOnSphere::from(Vec<double>::basis(8, 0));
  const PointOnSphere q = PointOnSphere::from(Vec<double>::basis(8, 4));
  const TangentAt x = xi(ctx, q, Axis::j);
  EXPECT_THROW(eta(ctx, p, Axis::i, x), DomainError);
  EXPECT_THROW(phi(ctx, p, Axis::i, x), DomainError);
  EXPECT_THROW(omega(ctx, p, Axis::i, x, x), DomainError);
}

TEST(Calibration, PicksRightMultiplicationAndNegativeSign) {
  for (int n : {1, 2}) {
    const CalibrationRecord rec = calibrate(n, 42);
    EXPECT_EQ(rec.multiplication, Multiplication::right);
    EXPECT_EQ(rec.sign_phi, -1.0);
    EXPECT_EQ(rec.sectional_sign, 1.0);
    EXPECT_LT(rec.bracket_defect_right, 1e-12);
    EXPECT_GT(rec.bracket_defect_left, 0.1);
    EXPECT_LT(rec.reeb_defect_minus, 1e-12);
    EXPECT_GT(rec.reeb_defect_plus, 0.1);
  }
}

TEST(Calibration, LeftMultiplicationFlipsBracketSign) {
  const SphereContext ctx(1, Multiplication::left);
  RngStream rng(1, 1);
  const Vec<double> p = ctx.random_point(rng);
  const Vec<double> b = lie_bracket(reeb_field(ctx, Axis::i), reeb_field(ctx, Axis::j), p);
  EXPECT_LT(max_abs_diff(b, -2.0 * ctx.xi(Axis::k, p)), 1e-12);
}
