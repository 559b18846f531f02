// Samples a few horizontal unit vectors on S^(4n+3) and prints the
// holomorphic sectional curvature of the H-connection next to the
// Levi-Civita sectional curvature of the same phi-plane.
#include <cstdio>
#include <cstdlib>

#include "sasaki/calibration.hpp"
#include "sasaki/curvature.hpp"

int main(int argc, char** argv) {
  using namespace sasaki;
  const int n = argc > 1 ? std::atoi(argv[1]) : 1;
  const CalibrationRecord rec = calibrate(n, 42);
  const SphereContext ctx(n, rec.multiplication, rec.sign_phi);
  RngStream rng(42, 1);

  std::printf("S^%d, multiplication=%s sign_phi=%+.0f\n", 4 * n + 3, name(rec.multiplication),
              rec.sign_phi);
  std::printf("%-3s %-20s %-20s %s\n", "a", "H_a(X)", "K(X, phi_a X)", "H - K");
  for (int s = 0; s < 4; ++s) {
    const Vec<double> p = ctx.random_point(rng);
    const Vec<double> x = ctx.random_horizontal(rng, p);
    const CurvatureAt at{ctx, p};
    for (Axis a : kAxes) {
      const double h = holomorphic_sectional(ctx, at, a, x);
      const double k = rec.sectional_sign * sectional(at.levi_civita_op(), x, ctx.phi(a, p, x));
      std::printf("%-3s %-20.15f %-20.15f %.15f\n", name(a), h, k, h - k);
    }
  }
  return 0;
}
