#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "sasaki/dual.hpp"
#include "sasaki/errors.hpp"
#include "sasaki/field.hpp"
#include "sasaki/numerics.hpp"
#include "sasaki/quaternion.hpp"
#include "sasaki/structure.hpp"
#include "sasaki/vec.hpp"

namespace sasaki {

/// The chart Jacobian lost rank at this point.
class ChartDegeneracyError : public Error {
 public:
  explicit ChartDegeneracyError(double smallest_singular_value)
      : Error("foliated chart Jacobian is rank deficient (sigma_min = " +
              std::to_string(smallest_singular_value) + ")"),
        sigma_(smallest_singular_value) {}
  double sigma_min() const noexcept { return sigma_; }

 private:
  double sigma_;
};

/// Chart coordinates (z^1, z^2, z^3, x^1, ..., x^{4n}) stored as one vector.
struct ChartCoords {
  Vec<double> c;

  static ChartCoords from(const Vec<double>& z, const Vec<double>& x) {
    if (z.size() != 3) throw DimensionError(3, z.size());
    ChartCoords r{Vec<double>(3 + x.size())};
    for (std::size_t i = 0; i < 3; ++i) r.c[i] = z[i];
    for (std::size_t i = 0; i < x.size(); ++i) r.c[3 + i] = x[i];
    return r;
  }
};

/// Adapted frame data at a chart point, over any scalar type:
///   delta_i = d/dx^i - eta^a_i xi_a,  eta^a_i = eta^a(d/dx^i),  g_ij = g(delta_i, delta_j),
///   xi_a = sum_b reeb(a, b) d/dz^b.
template <class S>
struct FrameData {
  Vec<S> p;
  std::vector<Vec<S>> dz;
  std::vector<Vec<S>> dx;
  std::array<Vec<S>, 3> xi;
  std::array<std::array<S, 3>, 3> reeb{};
  std::vector<std::array<S, 3>> eta;  ///< eta[i][a] = eta^a_i
  std::vector<Vec<S>> delta;
  std::vector<S> g;                   ///< row-major 4n x 4n
};

/// Real-valued frame plus conditioning diagnostics.
struct AdaptedFrameAt : FrameData<double> {
  double leaf_defect = 0.0;  ///< residual of fitting xi_a inside span{d/dz^b}
  double sigma_min = 0.0;    ///< smallest singular value of the chart Jacobian

  double g_at(std::size_t i, std::size_t j) const { return g[i * delta.size() + j]; }
};

/// Foliated coordinates on a dense open subset of S^{4n+3}:
///   u = exp(z^1 i + z^2 j + z^3 k),  q_a = (x^{4a-3}, ..., x^{4a}) in H,
///   p = (u, q_1 u, ..., q_n u) / sqrt(1 + |q|^2).
/// Reeb orbits p -> p w (w a unit quaternion) change u only, so each leaf is
/// a slice x = const.
class FoliatedChart {
 public:
  explicit FoliatedChart(const SphereContext& ctx, double x_max = 10.0)
      : ctx_(ctx), x_max_(x_max) {}

  const SphereContext& context() const noexcept { return ctx_; }
  std::size_t coord_dim() const noexcept { return ctx_.dim() - 1; }
  std::size_t horizontal_dim() const noexcept { return ctx_.dim() - 4; }
  double x_max() const noexcept { return x_max_; }

  /// Throws DomainError unless |z| < pi and |x| < x_max.
  void check_domain(const ChartCoords& pt) const {
    if (pt.c.size() != coord_dim()) throw DimensionError(coord_dim(), pt.c.size());
    if (!all_finite(pt.c)) throw DomainError("chart coordinates must be finite");
    double z2 = 0.0;
    double x2 = 0.0;
    for (std::size_t i = 0; i < 3; ++i) z2 += pt.c[i] * pt.c[i];
    for (std::size_t i = 3; i < pt.c.size(); ++i) x2 += pt.c[i] * pt.c[i];
    if (!(std::sqrt(z2) < std::numbers::pi)) throw DomainError("chart point has |z| >= pi");
    if (!(std::sqrt(x2) < x_max_)) throw DomainError("chart point has |x| >= x_max");
  }

  template <class S>
  Vec<S> parametrize(const Vec<S>& c) const {
    const std::size_t n = static_cast<std::size_t>(ctx_.n());
    const Quat<S> u = qexp_imaginary(c[0], c[1], c[2]);
    Vec<S> p(ctx_.dim());
    S q2(0.0);
    for (std::size_t r = 0; r < 4; ++r) p[r] = u[r];
    for (std::size_t a = 0; a < n; ++a) {
      Quat<S> q{c[3 + 4 * a], c[4 + 4 * a], c[5 + 4 * a], c[6 + 4 * a]};
      q2 += qnorm2(q);
      Quat<S> qu = qmul(q, u);
      for (std::size_t r = 0; r < 4; ++r) p[4 + 4 * a + r] = qu[r];
    }
    using std::sqrt;
    return p / sqrt(S(1.0) + q2);
  }

  Vec<double> point(const ChartCoords& pt) const {
    check_domain(pt);
    return parametrize(pt.c);
  }

  /// Columns d/dz^a then d/dx^i of the parametrization Jacobian.
  template <class S>
  std::vector<Vec<S>> jacobian_columns(const Vec<S>& c) const {
    std::vector<Vec<S>> cols;
    for (std::size_t k = 0; k < coord_dim(); ++k)
      cols.push_back(derivative_part(parametrize(make_dual(c, lift<S>(basis(k))))));
    return cols;
  }

  std::vector<Vec<double>> coordinate_fields(const ChartCoords& pt) const {
    check_domain(pt);
    return jacobian_columns(pt.c);
  }

  template <class S>
  FrameData<S> frame(const Vec<S>& c) const {
    const std::size_t m = horizontal_dim();
    FrameData<S> f;
    f.p = parametrize(c);
    std::vector<Vec<S>> cols = jacobian_columns(c);
    f.dz.assign(cols.begin(), cols.begin() + 3);
    f.dx.assign(cols.begin() + 3, cols.end());

    // xi_a in span{d/dz}: normal equations of the 3-column fit.
    std::vector<S> normal(9, S(0.0));
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t s = 0; s < 3; ++s) normal[r * 3 + s] = dot(f.dz[r], f.dz[s]);
    const std::vector<S> ninv = invert_small(normal, 3);
    for (Axis a : kAxes) {
      const auto ia = static_cast<std::size_t>(index(a));
      f.xi[ia] = ctx_.xi(a, f.p);
      std::array<S, 3> rhs{dot(f.dz[0], f.xi[ia]), dot(f.dz[1], f.xi[ia]),
                           dot(f.dz[2], f.xi[ia])};
      for (std::size_t b = 0; b < 3; ++b)
        f.reeb[ia][b] = ninv[b * 3 + 0] * rhs[0] + ninv[b * 3 + 1] * rhs[1] +
                        ninv[b * 3 + 2] * rhs[2];
    }

    for (std::size_t i = 0; i < m; ++i) {
      Vec<S> di = f.dx[i];
      std::array<S, 3> e{};
      for (Axis a : kAxes) {
        const auto ia = static_cast<std::size_t>(index(a));
        e[ia] = ctx_.eta(a, f.p, f.dx[i]);
        di -= e[ia] * f.xi[ia];
      }
      f.eta.push_back(e);
      f.delta.push_back(di);
    }
    f.g.assign(m * m, S(0.0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) f.g[i * m + j] = dot(f.delta[i], f.delta[j]);
    return f;
  }

  /// Real frame with rank and leaf-fit diagnostics. Throws ChartDegeneracyError
  /// when the Jacobian has rank < 4n+3.
  AdaptedFrameAt adapted_frame(const ChartCoords& pt) const {
    check_domain(pt);
    AdaptedFrameAt f;
    static_cast<FrameData<double>&>(f) = frame(pt.c);
    const std::size_t d = ctx_.dim();
    Eigen::MatrixXd jac(d, coord_dim());
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t r = 0; r < d; ++r) jac(r, k) = f.dz[k][r];
    for (std::size_t k = 0; k < f.dx.size(); ++k)
      for (std::size_t r = 0; r < d; ++r) jac(r, 3 + k) = f.dx[k][r];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    f.sigma_min = svd.singularValues().minCoeff();
    if (!(f.sigma_min > 1e-10)) throw ChartDegeneracyError(f.sigma_min);
    for (std::size_t a = 0; a < 3; ++a) {
      Vec<double> fit(d);
      for (std::size_t b = 0; b < 3; ++b) fit += f.reeb[a][b] * f.dz[b];
      f.leaf_defect = std::max(f.leaf_defect, max_abs_diff(fit, f.xi[a]));
    }
    return f;
  }

  // Frame fields as coordinate-space directions -----------------------------

  /// Coordinate-space direction whose pushforward is delta_i.
  template <class S>
  Vec<S> delta_direction(const FrameData<S>& f, std::size_t i) const {
    Vec<S> d = lift<S>(basis(3 + i));
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) d[b] -= f.eta[i][a] * f.reeb[a][b];
    return d;
  }

  /// Coordinate-space direction whose pushforward is xi_a.
  template <class S>
  Vec<S> reeb_direction(const FrameData<S>& f, Axis a) const {
    Vec<S> d(coord_dim());
    for (std::size_t b = 0; b < 3; ++b) d[b] = f.reeb[static_cast<std::size_t>(index(a))][b];
    return d;
  }

  /// Derivative of fn(c + t dir) at t = 0; fn is generic over the scalar type.
  template <class S, class Fn>
  auto coord_derivative(const Fn& fn, const Vec<S>& c, const Vec<S>& dir,
                        DerivativeStrategy how) const {
    if (how.kind == DerivativeStrategy::Kind::analytic)
      return derivative_part(fn(make_dual(c, dir)));
    return richardson_derivative([&](double t) { return fn(c + t * dir); }, 0.0, how.step);
  }

  /// g_ij flattened row-major.
  template <class S>
  Vec<S> metric_flat(const Vec<S>& c) const {
    return Vec<S>(frame(c).g);
  }

  /// [delta_i, delta_j] = D_{delta_i} delta_j - D_{delta_j} delta_i.
  Vec<double> bracket_coords(const ChartCoords& pt, std::size_t i, std::size_t j,
                             DerivativeStrategy how) const {
    check_domain(pt);
    if (i == j) return Vec<double>(ctx_.dim());
    const FrameData<double> f = frame(pt.c);
    auto dj = [this, j](const auto& c) { return frame(c).delta[j]; };
    auto di = [this, i](const auto& c) { return frame(c).delta[i]; };
    return coord_derivative(dj, pt.c, delta_direction(f, i), how) -
           coord_derivative(di, pt.c, delta_direction(f, j), how);
  }

  /// F^k_ij = g^{kh}/2 (delta_j g_ih + delta_i g_jh - delta_h g_ij), flattened
  /// as k * m * m + i * m + j, over any scalar type.
  template <class S>
  std::vector<S> christoffel_generic(const Vec<S>& c, DerivativeStrategy how) const {
    const std::size_t m = horizontal_dim();
    const FrameData<S> f = frame(c);
    const std::vector<S> ginv = invert_small(f.g, m);
    auto gfn = [this](const auto& cc) { return metric_flat(cc); };
    std::vector<Vec<S>> dg;
    for (std::size_t h = 0; h < m; ++h)
      dg.push_back(coord_derivative(gfn, c, delta_direction(f, h), how));
    std::vector<S> out(m * m * m, S(0.0));
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
          S acc(0.0);
          for (std::size_t h = 0; h < m; ++h)
            acc += ginv[k * m + h] * (dg[j][i * m + h] + dg[i][j * m + h] - dg[h][i * m + j]);
          out[k * m * m + i * m + j] = S(0.5) * acc;
          out[k * m * m + j * m + i] = S(0.5) * acc;
        }
    return out;
  }

  /// Condition number of g_ij.
  double metric_condition(const ChartCoords& pt) const {
    const std::size_t m = horizontal_dim();
    const FrameData<double> f = frame(pt.c);
    Eigen::MatrixXd g(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f.g[i * m + j];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
    const auto& s = svd.singularValues();
    return s(0) / s(s.size() - 1);
  }

  /// Christoffel symbols at a real point. Throws ConditioningError when
  /// cond(g_ij) > 1e8.
  std::vector<double> christoffel(const ChartCoords& pt, DerivativeStrategy how) const {
    check_domain(pt);
    const double cond = metric_condition(pt);
    if (!(cond <= 1e8)) throw ConditioningError(cond, 1e8);
    return christoffel_generic(pt.c, how);
  }

 private:
  Vec<double> basis(std::size_t k) const { return Vec<double>::basis(coord_dim(), k); }

  const SphereContext& ctx_;
  double x_max_;
};

/// One member of the adapted frame {xi_1, xi_2, xi_3, delta_1, ..., delta_4n}.
struct FrameIndex {
  enum class Kind { reeb, delta };
  Kind kind;
  std::size_t i;

  static FrameIndex reeb(Axis a) { return {Kind::reeb, static_cast<std::size_t>(index(a))}; }
  static FrameIndex delta(std::size_t i) { return {Kind::delta, i}; }
};

/// Connection components on adapted-frame fields, differentiated in chart
/// coordinates: an independent route from the extrinsic field calculus.
class ChartFrameCalculus {
 public:
  ChartFrameCalculus(const FoliatedChart& chart, DerivativeStrategy how)
      : chart_(chart), how_(how) {}

  template <class S>
  Vec<S> vector(const FrameData<S>& f, FrameIndex w) const {
    return w.kind == FrameIndex::Kind::reeb ? f.xi[w.i] : f.delta[w.i];
  }

  template <class S>
  Vec<S> direction(const FrameData<S>& f, FrameIndex w) const {
    return w.kind == FrameIndex::Kind::reeb
               ? chart_.reeb_direction(f, axis_from_index(static_cast<int>(w.i)))
               : chart_.delta_direction(f, w.i);
  }

  /// nabla_V W: tangential part of the coordinate derivative of W along V.
  Vec<double> levi_civita(const ChartCoords& pt, FrameIndex v, FrameIndex w) const {
    const FrameData<double> f = chart_.frame(pt.c);
    auto wf = [this, w](const auto& c) { return vector(chart_.frame(c), w); };
    return chart_.context().tangential(
        f.p, chart_.coord_derivative(wf, pt.c, direction(f, v), how_));
  }

  /// H-connection on frame fields from its defining combination of nabla terms.
  Vec<double> hbar(const ChartCoords& pt, FrameIndex v, FrameIndex w) const {
    const SphereContext& ctx = chart_.context();
    const FrameData<double> f = chart_.frame(pt.c);
    const Vec<double> vv = vector(f, v);
    const Vec<double> wv = vector(f, w);
    Vec<double> r = levi_civita(pt, v, w);
    for (Axis a : kAxes) {
      const FrameIndex xa = FrameIndex::reeb(a);
      r -= ctx.eta(a, f.p, vv) * levi_civita(pt, w, xa);
      r -= ctx.eta(a, f.p, wv) * levi_civita(pt, v, xa);
      r += ctx.omega(a, f.p, vv, wv) * ctx.xi(a, f.p);
    }
    return r;
  }

  /// sum_k coeff[k] delta_k.
  Vec<double> combine(const FrameData<double>& f, const std::vector<double>& coeff) const {
    Vec<double> r(chart_.context().dim());
    for (std::size_t k = 0; k < coeff.size(); ++k) r += coeff[k] * f.delta[k];
    return r;
  }

 private:
  const FoliatedChart& chart_;
  DerivativeStrategy how_;
};

}  // namespace sasaki
