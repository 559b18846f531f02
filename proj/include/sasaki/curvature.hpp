#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/field.hpp"
#include "sasaki/hconnection.hpp"
#include "sasaki/numerics.hpp"
#include "sasaki/structure.hpp"
#include "sasaki/vec.hpp"

namespace sasaki {

/// Closed-form curvature of the unit sphere: R(X,Y)Z = g(Y,Z)X - g(X,Z)Y.
inline Vec<double> riemann_sphere(const Vec<double>& x, const Vec<double>& y,
                                  const Vec<double>& z) {
  return dot(y, z) * x - dot(x, z) * y;
}

/// R(X,Y)Z = nabla_X nabla_Y Z~ - nabla_Y nabla_X Z~ - nabla_[X~,Y~] Z~ from
/// extended fields.
template <class RX, class RY, class RZ>
Vec<double> riemann_from_definition(const SphereContext& ctx, const Vec<double>& p,
                                    const VectorField<RX>& xf, const VectorField<RY>& yf,
                                    const VectorField<RZ>& zf) {
  auto nyz = make_field(
      [&ctx, &yf, &zf](const auto& q) { return levi_civita(ctx, zf, q, yf(q)); }, zf.strategy);
  auto nxz = make_field(
      [&ctx, &xf, &zf](const auto& q) { return levi_civita(ctx, zf, q, xf(q)); }, zf.strategy);
  return levi_civita(ctx, nyz, p, xf(p)) - levi_civita(ctx, nxz, p, yf(p)) -
         levi_civita(ctx, zf, p, lie_bracket(xf, yf, p));
}

inline Vec<double> riemann_from_definition(const SphereContext& ctx, const Vec<double>& p,
                                           const Vec<double>& x, const Vec<double>& y,
                                           const Vec<double>& z,
                                           DerivativeStrategy how = DerivativeStrategy::analytic()) {
  return riemann_from_definition(ctx, p, canonical_extension(x, how), canonical_extension(y, how),
                                 canonical_extension(z, how));
}

/// Curvature of the H-connection from extended fields.
template <class RX, class RY, class RZ>
Vec<double> rbar_direct(const SphereContext& ctx, const Vec<double>& p,
                        const VectorField<RX>& xf, const VectorField<RY>& yf,
                        const VectorField<RZ>& zf) {
  auto nyz = make_field([&ctx, &yf, &zf](const auto& q) { return hbar(ctx, zf, q, yf(q)); },
                        zf.strategy);
  auto nxz = make_field([&ctx, &xf, &zf](const auto& q) { return hbar(ctx, zf, q, xf(q)); },
                        zf.strategy);
  return hbar(ctx, nyz, p, xf(p)) - hbar(ctx, nxz, p, yf(p)) -
         hbar(ctx, zf, p, lie_bracket(xf, yf, p));
}

inline Vec<double> rbar_direct(const SphereContext& ctx, const Vec<double>& p,
                               const Vec<double>& x, const Vec<double>& y, const Vec<double>& z,
                               DerivativeStrategy how = DerivativeStrategy::analytic()) {
  return rbar_direct(ctx, p, canonical_extension(x, how), canonical_extension(y, how),
                     canonical_extension(z, how));
}

/// Closed-form expansion of the H-connection curvature in terms of R, eta,
/// Omega and phi. Single sums run over a; double sums over pairs a != b.
inline Vec<double> rbar_from_r(const SphereContext& ctx, const Vec<double>& p,
                               const Vec<double>& x, const Vec<double>& y,
                               const Vec<double>& z) {
  auto e = [&](Axis a, const Vec<double>& v) { return ctx.eta(a, p, v); };
  auto f = [&](Axis a, const Vec<double>& v) { return ctx.phi(a, p, v); };
  auto om = [&](Axis a, const Vec<double>& u, const Vec<double>& v) {
    return ctx.omega(a, p, u, v);
  };
  auto xi = [&](Axis a) { return ctx.xi(a, p); };

  Vec<double> r = riemann_sphere(x, y, z);
  for (Axis a : kAxes) {
    r -= 2.0 * om(a, y, x) * f(a, z) + om(a, z, x) * f(a, y);
    r += om(a, z, y) * f(a, x);
    r += e(a, x) * e(a, z) * y - e(a, y) * e(a, z) * x;
    r += e(a, y) * dot(x, z) * xi(a) - e(a, x) * dot(y, z) * xi(a);
  }
  for (Axis a : kAxes) {
    for (Axis b : kAxes) {
      if (a == b) continue;
      r -= e(a, z) * e(b, y) * f(b, f(a, x));
      r += e(a, z) * e(b, x) * f(b, f(a, y));
      r += 2.0 * e(a, y) * e(b, x) * f(b, f(a, z));
      r += 2.0 * e(a, z) * om(b, x, f(a, y)) * xi(b);
      r -= e(a, x) * om(b, y, f(a, z)) * xi(b);
      r += e(a, y) * om(b, x, f(a, z)) * xi(b);
      r += e(a, y) * e(b, f(a, z)) * f(b, x) + e(a, z) * e(b, f(a, y)) * f(b, x);
      r -= e(a, x) * e(b, f(a, z)) * f(b, y) + e(a, z) * e(b, f(a, x)) * f(b, y);
    }
  }
  return r;
}

/// Difference between the true H-connection curvature and the closed-form
/// expansion above:
///   -2 sum_{a != b} eta^a(X) eta^b(Y) (eta^a(Z) xi_b + eta^b(Z) xi_a).
/// Nonzero only when X, Y and Z all have vertical parts.
inline Vec<double> expansion_correction(const SphereContext& ctx, const Vec<double>& p,
                                        const Vec<double>& x, const Vec<double>& y,
                                        const Vec<double>& z) {
  Vec<double> r(ctx.dim());
  for (Axis a : kAxes)
    for (Axis b : kAxes) {
      if (a == b) continue;
      const double c = -2.0 * ctx.eta(a, p, x) * ctx.eta(b, p, y);
      r += c * (ctx.eta(a, p, z) * ctx.xi(b, p) + ctx.eta(b, p, z) * ctx.xi(a, p));
    }
  return r;
}

/// 4-tensor from a curvature operator: R(X,Y,Z,W) = g(R(X,Y)W, Z).
template <class Op>
double quad(const Op& op, const Vec<double>& x, const Vec<double>& y, const Vec<double>& z,
            const Vec<double>& w) {
  return dot(op(x, y, w), z);
}

/// Which formula supplies the H-connection curvature.
enum class RbarRoute { direct, expansion };

/// Curvature operators bound to a point, usable with quad().
struct CurvatureAt {
  const SphereContext& ctx;
  Vec<double> p;
  DerivativeStrategy how = DerivativeStrategy::analytic();

  auto levi_civita_op() const {
    return [this](const Vec<double>& x, const Vec<double>& y, const Vec<double>& z) {
      return riemann_sphere(x, y, z);
    };
  }
  auto rbar_op(RbarRoute route) const {
    return [this, route](const Vec<double>& x, const Vec<double>& y, const Vec<double>& z) {
      return route == RbarRoute::direct ? rbar_direct(ctx, p, x, y, z, how)
                                        : rbar_from_r(ctx, p, x, y, z);
    };
  }
};

/// R_0 model tensor scaled by k:
///   k/4 ( g(X,Z)g(Y,U) - g(X,U)g(Y,Z) + sum_a g(X,phi_a Z)g(Y,phi_a U)
///         - sum_a g(X,phi_a U)g(Y,phi_a Z) + 2 sum_a g(X,phi_a Y)g(Z,phi_a U) ).
inline double r0_model(const SphereContext& ctx, const Vec<double>& p, double k,
                       const Vec<double>& x, const Vec<double>& y, const Vec<double>& z,
                       const Vec<double>& u) {
  double s = dot(x, z) * dot(y, u) - dot(x, u) * dot(y, z);
  for (Axis a : kAxes) {
    s += dot(x, ctx.phi(a, p, z)) * dot(y, ctx.phi(a, p, u));
    s -= dot(x, ctx.phi(a, p, u)) * dot(y, ctx.phi(a, p, z));
    s += 2.0 * dot(x, ctx.phi(a, p, y)) * dot(z, ctx.phi(a, p, u));
  }
  return 0.25 * k * s;
}

/// Vector form: k/4 ( g(Y,Z)X - g(X,Z)Y + sum_a g(phi_a Y,Z) phi_a X
///                    - sum_a g(phi_a X,Z) phi_a Y + 2 sum_a g(X,phi_a Y) phi_a Z ).
inline Vec<double> r0_operator(const SphereContext& ctx, const Vec<double>& p, double k,
                               const Vec<double>& x, const Vec<double>& y,
                               const Vec<double>& z) {
  Vec<double> r = dot(y, z) * x - dot(x, z) * y;
  for (Axis a : kAxes) {
    r += dot(ctx.phi(a, p, y), z) * ctx.phi(a, p, x);
    r -= dot(ctx.phi(a, p, x), z) * ctx.phi(a, p, y);
    r += 2.0 * dot(x, ctx.phi(a, p, y)) * ctx.phi(a, p, z);
  }
  r *= 0.25 * k;
  return r;
}

/// Ricci-type trace sum_i T(v_i, X, v_i, Y) over an orthonormal list.
template <class Tensor>
double frame_trace(const std::vector<Vec<double>>& frame, const Tensor& t, const Vec<double>& x,
                   const Vec<double>& y) {
  double s = 0.0;
  for (const auto& v : frame) s += t(v, x, v, y);
  return s;
}

/// Ricci tensor of the H-connection on H over a horizontal orthonormal frame.
inline double ricci_bar(const CurvatureAt& at, const std::vector<Vec<double>>& frame,
                        const Vec<double>& x, const Vec<double>& y,
                        RbarRoute route = RbarRoute::direct) {
  auto op = at.rbar_op(route);
  return frame_trace(
      frame,
      [&](const Vec<double>& a, const Vec<double>& b, const Vec<double>& c,
          const Vec<double>& d) { return quad(op, a, b, c, d); },
      x, y);
}

/// {xi_1, xi_2, xi_3} followed by `horizontal`: an orthonormal frame of T_p S.
inline std::vector<Vec<double>> full_frame(const SphereContext& ctx, const Vec<double>& p,
                                           const std::vector<Vec<double>>& horizontal) {
  std::vector<Vec<double>> f;
  for (Axis a : kAxes) f.push_back(ctx.xi(a, p));
  f.insert(f.end(), horizontal.begin(), horizontal.end());
  return f;
}

/// Levi-Civita Ricci S(X,Y) = sum_i g(R(E_i,X)Y, E_i) with R from its
/// definition through extended fields.
inline double ricci_levi_civita(const SphereContext& ctx, const Vec<double>& p,
                                const std::vector<Vec<double>>& frame, const Vec<double>& x,
                                const Vec<double>& y,
                                DerivativeStrategy how = DerivativeStrategy::analytic()) {
  double s = 0.0;
  for (const auto& e : frame) s += dot(riemann_from_definition(ctx, p, e, x, y, how), e);
  return s;
}

/// Trace of R_0 (k = 1) against a horizontal frame.
inline double ricci_of_r0(const SphereContext& ctx, const Vec<double>& p,
                          const std::vector<Vec<double>>& frame, const Vec<double>& x,
                          const Vec<double>& y) {
  return frame_trace(
      frame,
      [&](const Vec<double>& a, const Vec<double>& b, const Vec<double>& c,
          const Vec<double>& d) { return r0_model(ctx, p, 1.0, a, b, c, d); },
      x, y);
}

/// Sectional curvature g(R(X,Y)Y,X) / (|X|^2|Y|^2 - g(X,Y)^2) of the plane
/// span{X, Y}. Throws DomainError for a degenerate plane.
template <class Op>
double sectional(const Op& op, const Vec<double>& x, const Vec<double>& y) {
  const double den = dot(x, x) * dot(y, y) - dot(x, y) * dot(x, y);
  if (!(den >= 1e-10)) throw DomainError("degenerate plane in sectional curvature");
  return dot(op(x, y, y), x) / den;
}

/// H_a(X) = Rbar(X, phi_a X, X, phi_a X) for horizontal X, normalized first.
inline double holomorphic_sectional(const SphereContext& ctx, const CurvatureAt& at, Axis a,
                                    const Vec<double>& x, RbarRoute route = RbarRoute::direct) {
  const Vec<double> u = normalized(ctx.horizontal(at.p, x));
  const Vec<double> pu = ctx.phi(a, at.p, u);
  return quad(at.rbar_op(route), u, pu, u, pu);
}

/// H_a(X) plus a flag set when X was not a unit horizontal vector and had
/// to be projected or rescaled first.
struct HolomorphicSample {
  double value = 0.0;
  bool renormalized = false;
};

inline HolomorphicSample holomorphic_sectional_sample(const SphereContext& ctx,
                                                      const CurvatureAt& at, Axis a,
                                                      const Vec<double>& x,
                                                      RbarRoute route = RbarRoute::direct) {
  const Vec<double> hx = ctx.horizontal(at.p, x);
  const bool off = std::abs(norm(x) - 1.0) > 1e-12 || max_abs_diff(hx, x) > 1e-12;
  return {holomorphic_sectional(ctx, at, a, hx, route), off};
}

/// H_a(X) - K(X, phi_a X) for horizontal unit X.
inline double cons_rela_difference(const SphereContext& ctx, const CurvatureAt& at, Axis a,
                                   const Vec<double>& x, RbarRoute route = RbarRoute::direct) {
  const Vec<double> u = normalized(ctx.horizontal(at.p, x));
  return holomorphic_sectional(ctx, at, a, u, route) -
         sectional(at.levi_civita_op(), u, ctx.phi(a, at.p, u));
}

/// Pieces of the sectional relation for the phi_a-plane of a unit X.
struct SectionalRelation {
  double k = 0.0;       ///< Levi-Civita sectional curvature of the plane
  double k_bar = 0.0;   ///< H-connection sectional curvature of the plane
  double rhs = 0.0;     ///< K + 3 + 4(e_b e_c)^2 + 6(e_b^4 + e_c^4) - 8(e_b^2 + e_c^2)
  double eta_b = 0.0;
  double eta_c = 0.0;

  double defect() const { return k_bar - rhs; }
};

inline SectionalRelation theorem_sec_relation(const SphereContext& ctx, const CurvatureAt& at,
                                              Axis a, const Vec<double>& x, RbarRoute route) {
  const Vec<double> u = normalized(x);
  const Vec<double> pu = ctx.phi(a, at.p, u);
  SectionalRelation s;
  s.k = sectional(at.levi_civita_op(), u, pu);
  s.k_bar = sectional(at.rbar_op(route), u, pu);
  s.eta_b = ctx.eta(next(a), at.p, u);
  s.eta_c = ctx.eta(prev(a), at.p, u);
  const double b2 = s.eta_b * s.eta_b;
  const double c2 = s.eta_c * s.eta_c;
  s.rhs = s.k + 3.0 + 4.0 * b2 * c2 + 6.0 * (b2 * b2 + c2 * c2) - 8.0 * (b2 + c2);
  return s;
}

/// Defect of the sectional relation with K-bar from the closed-form expansion.
inline double theorem_sec_check(const SphereContext& ctx, const CurvatureAt& at, Axis a,
                                const Vec<double>& x) {
  return theorem_sec_relation(ctx, at, a, x, RbarRoute::expansion).defect();
}

/// Identity families of an algebraic curvature 4-tensor T on given arguments.
struct IdentityDefects {
  double antisymmetry = 0.0;    ///< T(X,Y,Z,U) + T(Y,X,Z,U), T(X,Y,Z,U) + T(X,Y,U,Z)
  double bianchi = 0.0;         ///< T(X,Y,U,Z) + T(Y,Z,U,X) + T(Z,X,U,Y)
  double pair_symmetry = 0.0;   ///< T(X,Y,Z,U) - T(Z,U,X,Y)
  double phi_invariance = 0.0;  ///< T(X,Y,phi Z,phi U) - T, T(phi X,phi Y,Z,U) - T, all a
};

template <class Tensor>
IdentityDefects curvature_identities(const SphereContext& ctx, const Vec<double>& p,
                                     const Tensor& t, const Vec<double>& x, const Vec<double>& y,
                                     const Vec<double>& z, const Vec<double>& u) {
  IdentityDefects d;
  const double xyzu = t(x, y, z, u);
  d.antisymmetry =
      std::max(std::abs(xyzu + t(y, x, z, u)), std::abs(xyzu + t(x, y, u, z)));
  d.bianchi = std::abs(t(x, y, u, z) + t(y, z, u, x) + t(z, x, u, y));
  d.pair_symmetry = std::abs(xyzu - t(z, u, x, y));
  for (Axis a : kAxes) {
    auto f = [&](const Vec<double>& v) { return ctx.phi(a, p, v); };
    d.phi_invariance = std::max(d.phi_invariance, std::abs(t(x, y, f(z), f(u)) - xyzu));
    d.phi_invariance = std::max(d.phi_invariance, std::abs(t(f(x), f(y), z, u) - xyzu));
  }
  return d;
}

/// Both sides of Rbar(X, phi_1 X, phi_2 X, phi_3 X) = R(X, phi_1 X, phi_2 X, phi_3 X).
inline std::array<double, 2> corollary_quad(const SphereContext& ctx, const CurvatureAt& at,
                                            const Vec<double>& x,
                                            RbarRoute route = RbarRoute::direct) {
  const Vec<double> p1 = ctx.phi(Axis::i, at.p, x);
  const Vec<double> p2 = ctx.phi(Axis::j, at.p, x);
  const Vec<double> p3 = ctx.phi(Axis::k, at.p, x);
  return {quad(at.rbar_op(route), x, p1, p2, p3), quad(at.levi_civita_op(), x, p1, p2, p3)};
}

}  // namespace sasaki
