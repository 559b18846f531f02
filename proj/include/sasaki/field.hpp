#pragma once

#include <cmath>
#include <utility>

#include "sasaki/dual.hpp"
#include "sasaki/errors.hpp"
#include "sasaki/numerics.hpp"
#include "sasaki/structure.hpp"
#include "sasaki/vec.hpp"

namespace sasaki {

/// How a field is differentiated: exactly via forward-mode duals, or by
/// Richardson-extrapolated central differences with the given step.
struct DerivativeStrategy {
  enum class Kind { analytic, finite_difference };
  Kind kind = Kind::analytic;
  double step = 1e-4;

  static DerivativeStrategy analytic() { return {Kind::analytic, 1e-4}; }
  static DerivativeStrategy finite_difference(double h = 1e-4) {
    if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
    return {Kind::finite_difference, h};
  }
};

/// Derivative at t = 0 of t -> f(normalize(q + tX)).
///
/// `f` is a generic callable on ambient points returning a scalar or a Vec of
/// the point's scalar type. Works for any scalar S, so derivatives nest.
template <class S, class F>
auto derivative_along(const F& f, const Vec<S>& q, const Vec<S>& x, DerivativeStrategy how) {
  if (how.kind == DerivativeStrategy::Kind::analytic) {
    auto r = f(normalized(make_dual(q, x)));
    if (!all_finite(r)) throw NumericError("non-finite field value", 0.0);
    return derivative_part(r);
  }
  auto curve = [&](double t) { return f(normalized(q + t * x)); };
  return richardson_derivative(curve, 0.0, how.step);
}

/// A tangent vector field on the sphere given by a rule q -> F(q) that is
/// generic over the scalar type, plus its differentiation strategy.
template <class Rule>
struct VectorField {
  Rule rule;
  DerivativeStrategy strategy;

  template <class S>
  Vec<S> operator()(const Vec<S>& q) const {
    return rule(q);
  }
};

template <class Rule>
VectorField<Rule> make_field(Rule rule, DerivativeStrategy how = DerivativeStrategy::analytic()) {
  return {std::move(rule), how};
}

/// Y(q) = seed - <seed, q> q.
inline auto canonical_extension(const Vec<double>& seed,
                                DerivativeStrategy how = DerivativeStrategy::analytic()) {
  return make_field(
      [seed]<class S>(const Vec<S>& q) -> Vec<S> {
        Vec<S> s = lift<S>(seed);
        return s - dot(s, q) * q;
      },
      how);
}

/// Second extension family: w(q) = seed + M (q - base), projected to T_q S.
/// Agrees with the canonical extension at `base` for tangent seeds but has a
/// different first jet.
inline auto affine_extension(const Vec<double>& seed, const Vec<double>& base, const Mat& m,
                             DerivativeStrategy how = DerivativeStrategy::analytic()) {
  if (m.size() != seed.size()) throw DimensionError(seed.size(), m.size());
  return make_field(
      [seed, base, m]<class S>(const Vec<S>& q) -> Vec<S> {
        Vec<S> w = lift<S>(seed) + m.apply(q - lift<S>(base));
        return w - dot(w, q) * q;
      },
      how);
}

inline auto reeb_field(const SphereContext& ctx, Axis a,
                       DerivativeStrategy how = DerivativeStrategy::analytic()) {
  return make_field([&ctx, a]<class S>(const Vec<S>& q) -> Vec<S> { return ctx.xi(a, q); }, how);
}

/// q -> phi_a F(q).
template <class Rule>
auto phi_field(const SphereContext& ctx, Axis a, const VectorField<Rule>& f) {
  return make_field(
      [&ctx, a, f]<class S>(const Vec<S>& q) -> Vec<S> { return ctx.phi(a, q, f(q)); },
      f.strategy);
}

/// q -> h F(q).
template <class Rule>
auto horizontal_field(const SphereContext& ctx, const VectorField<Rule>& f) {
  return make_field(
      [&ctx, f]<class S>(const Vec<S>& q) -> Vec<S> { return ctx.horizontal(q, f(q)); },
      f.strategy);
}

/// Ambient derivative D_X F at q.
template <class S, class Rule>
Vec<S> directional_derivative(const VectorField<Rule>& f, const Vec<S>& q, const Vec<S>& x) {
  return derivative_along([&f](const auto& pt) { return f(pt); }, q, x, f.strategy);
}

/// Derivative X(f) of a scalar function on the sphere.
template <class S, class Fn>
S scalar_derivative(const Fn& fn, const Vec<S>& q, const Vec<S>& x,
                    DerivativeStrategy how = DerivativeStrategy::analytic()) {
  return derivative_along(fn, q, x, how);
}

/// Levi-Civita derivative of the round metric: the tangential part of D_X F.
template <class S, class Rule>
Vec<S> levi_civita(const SphereContext& ctx, const VectorField<Rule>& f, const Vec<S>& q,
                   const Vec<S>& x) {
  return ctx.tangential(q, directional_derivative(f, q, x));
}

/// [F, G](q) = D_F G - D_G F, not projected.
template <class S, class RF, class RG>
Vec<S> lie_bracket_raw(const VectorField<RF>& f, const VectorField<RG>& g, const Vec<S>& q) {
  return directional_derivative(g, q, f(q)) - directional_derivative(f, q, g(q));
}

/// Lie bracket at a real point. The ambient bracket of tangent fields is
/// tangent; a normal component above 1e-6 throws NumericError.
template <class RF, class RG>
Vec<double> lie_bracket(const VectorField<RF>& f, const VectorField<RG>& g,
                        const Vec<double>& q) {
  Vec<double> b = lie_bracket_raw(f, g, q);
  const double normal = std::abs(dot(b, q));
  if (!(normal <= 1e-6 * std::max(1.0, max_abs(b))))
    throw NumericError("Lie bracket is not tangent to the sphere", normal);
  return b;
}

/// (nabla_X phi_a) Y - g(X,Y) xi_a + eta^a(Y) X, with Y extended by `yf`.
template <class Rule>
Vec<double> sasaki_condition_defect(const SphereContext& ctx, const Vec<double>& p, Axis a,
                                    const Vec<double>& x, const VectorField<Rule>& yf) {
  const Vec<double> y = yf(p);
  Vec<double> lhs = levi_civita(ctx, phi_field(ctx, a, yf), p, x) -
                    ctx.phi(a, p, levi_civita(ctx, yf, p, x));
  return lhs - dot(x, y) * ctx.xi(a, p) + ctx.eta(a, p, y) * x;
}

template <class Rule>
double sasaki_condition_residual(const SphereContext& ctx, const Vec<double>& p, Axis a,
                                 const Vec<double>& x, const VectorField<Rule>& yf) {
  return max_abs(sasaki_condition_defect(ctx, p, a, x, yf));
}

/// h_ab(X) = 1/2 (L_{xi_a} phi_b) X = 1/2 ([xi_a, phi_b X~] - phi_b [xi_a, X~]).
template <class Rule>
Vec<double> h_tensor(const SphereContext& ctx, const Vec<double>& p, Axis a, Axis b,
                     const VectorField<Rule>& xf) {
  auto xi_a = reeb_field(ctx, a, xf.strategy);
  Vec<double> first = lie_bracket(xi_a, phi_field(ctx, b, xf), p);
  Vec<double> second = ctx.phi(b, p, lie_bracket(xi_a, xf, p));
  return 0.5 * (first - second);
}

inline Vec<double> h_tensor(const SphereContext& ctx, const Vec<double>& p, Axis a, Axis b,
                            const Vec<double>& x,
                            DerivativeStrategy how = DerivativeStrategy::analytic()) {
  return h_tensor(ctx, p, a, b, canonical_extension(x, how));
}

/// dEta^a(X,Y) = 1/2 (X(eta^a(Y~)) - Y(eta^a(X~)) - eta^a([X~,Y~])).
template <class RX, class RY>
double d_eta(const SphereContext& ctx, const Vec<double>& p, Axis a, const VectorField<RX>& xf,
             const VectorField<RY>& yf) {
  const Vec<double> x = xf(p);
  const Vec<double> y = yf(p);
  auto eta_y = [&](const auto& q) { return ctx.eta(a, q, yf(q)); };
  auto eta_x = [&](const auto& q) { return ctx.eta(a, q, xf(q)); };
  double xy = scalar_derivative(eta_y, p, x, yf.strategy);
  double yx = scalar_derivative(eta_x, p, y, xf.strategy);
  return 0.5 * (xy - yx - ctx.eta(a, p, lie_bracket(xf, yf, p)));
}

}  // namespace sasaki
