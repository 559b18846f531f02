#pragma once

#include "sasaki/field.hpp"
#include "sasaki/structure.hpp"
#include "sasaki/vec.hpp"

namespace sasaki {

/// The H-connection:
///   nablabar_X F = nabla_X F - eta^a(X) nabla_F xi_a - eta^a(F) nabla_X xi_a
///                  + Omega^a(X, F) xi_a
/// with every nabla xi_a taken from the Levi-Civita connection of the Reeb
/// field itself (no substitution of nabla xi = -phi).
template <class S, class Rule>
Vec<S> hbar(const SphereContext& ctx, const VectorField<Rule>& f, const Vec<S>& q,
            const Vec<S>& x) {
  const Vec<S> y = f(q);
  Vec<S> r = levi_civita(ctx, f, q, x);
  for (Axis a : kAxes) {
    auto xi_a = reeb_field(ctx, a, f.strategy);
    r -= ctx.eta(a, q, x) * levi_civita(ctx, xi_a, q, y);
    r -= ctx.eta(a, q, y) * levi_civita(ctx, xi_a, q, x);
    r += ctx.omega(a, q, x, y) * ctx.xi(a, q);
  }
  return r;
}

/// Second route by splitting into horizontal and vertical parts:
///   nablabar_X F = h(nabla_{hX} hF) + eta^a(X) h[xi_a, hF] + X(eta^a(F)) xi_a.
template <class Rule>
Vec<double> hbar_projection_oracle(const SphereContext& ctx, const VectorField<Rule>& f,
                                   const Vec<double>& p, const Vec<double>& x) {
  auto hf = horizontal_field(ctx, f);
  Vec<double> r = ctx.horizontal(p, levi_civita(ctx, hf, p, ctx.horizontal(p, x)));
  for (Axis a : kAxes) {
    auto xi_a = reeb_field(ctx, a, f.strategy);
    r += ctx.eta(a, p, x) * ctx.horizontal(p, lie_bracket(xi_a, hf, p));
    auto eta_f = [&ctx, &f, a](const auto& q) { return ctx.eta(a, q, f(q)); };
    r += scalar_derivative(eta_f, p, x, f.strategy) * ctx.xi(a, p);
  }
  return r;
}

/// X g(F, G) - g(nablabar_X F, G) - g(F, nablabar_X G).
template <class RF, class RG>
double hbar_metric_compat_defect(const SphereContext& ctx, const Vec<double>& p,
                                 const Vec<double>& x, const VectorField<RF>& f,
                                 const VectorField<RG>& g) {
  auto gfg = [&f, &g](const auto& q) { return dot(f(q), g(q)); };
  const double lhs = scalar_derivative(gfg, p, x, f.strategy);
  return lhs - dot(hbar(ctx, f, p, x), g(p)) - dot(f(p), hbar(ctx, g, p, x));
}

/// T(X, Y) = nablabar_X Y~ - nablabar_Y X~ - [X~, Y~].
template <class RX, class RY>
Vec<double> hbar_torsion(const SphereContext& ctx, const Vec<double>& p,
                         const VectorField<RX>& xf, const VectorField<RY>& yf) {
  const Vec<double> x = xf(p);
  const Vec<double> y = yf(p);
  return hbar(ctx, yf, p, x) - hbar(ctx, xf, p, y) - lie_bracket(xf, yf, p);
}

inline Vec<double> hbar_torsion(const SphereContext& ctx, const Vec<double>& p,
                                const Vec<double>& x, const Vec<double>& y,
                                DerivativeStrategy how = DerivativeStrategy::analytic()) {
  return hbar_torsion(ctx, p, canonical_extension(x, how), canonical_extension(y, how));
}

/// Closed-form torsion pattern 2 Omega^a(X, Y) xi_a.
inline Vec<double> torsion_model(const SphereContext& ctx, const Vec<double>& p,
                                 const Vec<double>& x, const Vec<double>& y) {
  Vec<double> r(ctx.dim());
  for (Axis a : kAxes) r += 2.0 * ctx.omega(a, p, x, y) * ctx.xi(a, p);
  return r;
}

/// Defect of [X, Y] = nablabar_X Y - nablabar_Y X - 2 Omega^a(X, Y) xi_a.
template <class RX, class RY>
double bracket_identity_residual(const SphereContext& ctx, const Vec<double>& p,
                                 const VectorField<RX>& xf, const VectorField<RY>& yf) {
  const Vec<double> x = xf(p);
  const Vec<double> y = yf(p);
  Vec<double> rhs = hbar(ctx, yf, p, x) - hbar(ctx, xf, p, y) - torsion_model(ctx, p, x, y);
  return max_abs_diff(lie_bracket(xf, yf, p), rhs);
}

/// (nablabar_X phi_a) Y = nablabar_X (phi_a Y~) - phi_a nablabar_X Y~.
template <class Rule>
Vec<double> hbar_phi_derivative(const SphereContext& ctx, const Vec<double>& p, Axis a,
                                const Vec<double>& x, const VectorField<Rule>& yf) {
  return hbar(ctx, phi_field(ctx, a, yf), p, x) - ctx.phi(a, p, hbar(ctx, yf, p, x));
}

template <class Rule>
double phi_parallel_residual(const SphereContext& ctx, const Vec<double>& p, Axis a,
                             const Vec<double>& x, const VectorField<Rule>& yf) {
  return max_abs(hbar_phi_derivative(ctx, p, a, x, yf));
}

}  // namespace sasaki
