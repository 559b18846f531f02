#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/numerics.hpp"
#include "sasaki/quaternion.hpp"
#include "sasaki/rng.hpp"
#include "sasaki/vec.hpp"

namespace sasaki {

/// Index of a Reeb field / structure tensor, named by the imaginary unit that
/// generates it: xi_i(p) = p * i, and so on.
enum class Axis : int { i = 0, j = 1, k = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::i, Axis::j, Axis::k};

constexpr int index(Axis a) { return static_cast<int>(a); }
constexpr Axis axis_from_index(int i) { return static_cast<Axis>(i % 3); }
/// (a, next(a), next(next(a))) is an even permutation of (i, j, k).
constexpr Axis next(Axis a) { return axis_from_index(index(a) + 1); }
constexpr Axis prev(Axis a) { return axis_from_index(index(a) + 2); }
inline const char* name(Axis a) {
  static const char* const names[] = {"i", "j", "k"};
  return names[index(a)];
}

/// Side on which the imaginary units act on H^{n+1}.
enum class Multiplication { right, left };

inline const char* name(Multiplication m) { return m == Multiplication::right ? "right" : "left"; }

/// 4x4 matrix of q -> q*u (right) or q -> u*q (left) for the unit u of `a`.
inline Mat quaternion_unit_matrix(Axis a, Multiplication m) {
  Quat<double> u{0.0, 0.0, 0.0, 0.0};
  u[static_cast<std::size_t>(index(a)) + 1] = 1.0;
  Mat r(4);
  for (std::size_t c = 0; c < 4; ++c) {
    Quat<double> e{0.0, 0.0, 0.0, 0.0};
    e[c] = 1.0;
    Quat<double> img = (m == Multiplication::right) ? qmul(e, u) : qmul(u, e);
    for (std::size_t row = 0; row < 4; ++row) r(row, c) = img[row];
  }
  return r;
}

/// The 3-Sasakian structure of the round sphere S^{4n+3} in H^{n+1} = R^{4n+4}.
///
/// Points use coordinate blocks (1, i, j, k) per quaternion. With structure
/// matrices E_a (componentwise multiplication by a unit):
///   xi_a(p)     = E_a p
///   eta^a(X)    = <X, xi_a(p)>
///   phi_a(X)    = sign_phi * (E_a X + eta^a(X) p)
///   Omega^a(X,Y) = <X, phi_a Y>
/// The member templates accept any scalar (double or nested Dual) so that
/// vector fields built from them can be differentiated exactly.
class SphereContext {
 public:
  explicit SphereContext(int n, Multiplication mult = Multiplication::right,
                         double sign_phi = -1.0)
      : n_(n), mult_(mult), sign_phi_(sign_phi) {
    if (n < 1) throw DomainError("quaternionic dimension n must be >= 1");
    if (sign_phi != 1.0 && sign_phi != -1.0) throw DomainError("sign_phi must be +1 or -1");
    const std::size_t d = dim();
    for (Axis a : kAxes) {
      Mat block = quaternion_unit_matrix(a, mult);
      Mat e(d);
      for (std::size_t b = 0; b < d / 4; ++b)
        for (std::size_t r = 0; r < 4; ++r)
          for (std::size_t c = 0; c < 4; ++c) e(4 * b + r, 4 * b + c) = block(r, c);
      e_[static_cast<std::size_t>(index(a))] = e;
    }
  }

  int n() const noexcept { return n_; }
  /// Ambient dimension 4n+4.
  std::size_t dim() const noexcept { return 4 * static_cast<std::size_t>(n_) + 4; }
  Multiplication multiplication() const noexcept { return mult_; }
  double sign_phi() const noexcept { return sign_phi_; }
  const Mat& structure_matrix(Axis a) const { return e_[static_cast<std::size_t>(index(a))]; }

  template <class S>
  Vec<S> xi(Axis a, const Vec<S>& q) const {
    return structure_matrix(a).apply(q);
  }

  template <class S>
  S eta(Axis a, const Vec<S>& q, const Vec<S>& x) const {
    return dot(x, xi(a, q));
  }

  template <class S>
  Vec<S> phi(Axis a, const Vec<S>& q, const Vec<S>& x) const {
    Vec<S> r = structure_matrix(a).apply(x) + eta(a, q, x) * q;
    r *= sign_phi_;
    return r;
  }

  template <class S>
  S omega(Axis a, const Vec<S>& q, const Vec<S>& x, const Vec<S>& y) const {
    return dot(x, phi(a, q, y));
  }

  /// Orthogonal projection onto T_q S: x - <x,q> q.
  template <class S>
  Vec<S> tangential(const Vec<S>& q, const Vec<S>& x) const {
    return x - dot(x, q) * q;
  }

  /// hX = X - sum_a eta^a(X) xi_a.
  template <class S>
  Vec<S> horizontal(const Vec<S>& q, const Vec<S>& x) const {
    Vec<S> r = x;
    for (Axis a : kAxes) r -= eta(a, q, x) * xi(a, q);
    return r;
  }

  /// sum_a eta^a(X) xi_a.
  template <class S>
  Vec<S> vertical(const Vec<S>& q, const Vec<S>& x) const {
    return x - horizontal(q, x);
  }

  void check_dim(const Vec<double>& v) const {
    if (v.size() != dim()) throw DimensionError(dim(), v.size());
  }

  // Random sampling ---------------------------------------------------------

  Vec<double> random_point(RngStream& rng) const { return normalized(rng.normal_vector(dim())); }

  /// Unit tangent at q, drawn as a projected standard normal; redrawn when the
  /// projection nearly vanishes.
  Vec<double> random_tangent(RngStream& rng, const Vec<double>& q) const {
    for (;;) {
      Vec<double> v = tangential(q, rng.normal_vector(dim()));
      double nv = norm(v);
      if (nv >= 1e-8) return v / nv;
    }
  }

  Vec<double> random_horizontal(RngStream& rng, const Vec<double>& q) const {
    for (;;) {
      Vec<double> v = horizontal(q, tangential(q, rng.normal_vector(dim())));
      double nv = norm(v);
      if (nv >= 1e-8) return v / nv;
    }
  }

  /// Orthonormal frame of H at q (4n vectors) from random projected vectors.
  std::vector<Vec<double>> horizontal_frame(RngStream& rng, const Vec<double>& q) const {
    std::vector<Vec<double>> raw;
    for (int i = 0; i < 4 * n_; ++i) raw.push_back(random_horizontal(rng, q));
    return gram_schmidt(raw);
  }

 private:
  int n_;
  Multiplication mult_;
  double sign_phi_;
  std::array<Mat, 3> e_;
};

// Strongly typed point/tangent API ------------------------------------------

/// A point of S^{4n+3}; |p| = 1 within 1e-12.
class PointOnSphere {
 public:
  static PointOnSphere from(Vec<double> p) {
    if (!all_finite(p)) throw DomainError("point has non-finite entries");
    if (std::abs(norm(p) - 1.0) > 1e-12) throw DomainError("point is not on the unit sphere");
    return PointOnSphere(std::move(p));
  }
  static PointOnSphere normalize(const Vec<double>& v) { return from(normalized(v)); }

  const Vec<double>& coords() const noexcept { return p_; }
  std::size_t dim() const noexcept { return p_.size(); }

 private:
  explicit PointOnSphere(Vec<double> p) : p_(std::move(p)) {}
  Vec<double> p_;
};

/// A tangent vector together with its base point; <v, base> = 0 within 1e-10.
class TangentAt {
 public:
  static TangentAt at(const PointOnSphere& base, Vec<double> v) {
    if (v.size() != base.dim()) throw DimensionError(base.dim(), v.size());
    if (!all_finite(v)) throw DomainError("tangent has non-finite entries");
    if (std::abs(dot(v, base.coords())) > 1e-10)
      throw DomainError("vector is not tangent at its base point");
    return TangentAt(base, std::move(v));
  }

  const PointOnSphere& base() const noexcept { return base_; }
  const Vec<double>& vec() const noexcept { return v_; }

 private:
  TangentAt(PointOnSphere base, Vec<double> v) : base_(std::move(base)), v_(std::move(v)) {}
  PointOnSphere base_;
  Vec<double> v_;
};

inline void require_based_at(const TangentAt& x, const PointOnSphere& p) {
  if (max_abs_diff(x.base().coords(), p.coords()) > 1e-14)
    throw DomainError("tangent vector is based at a different point");
}

inline TangentAt xi(const SphereContext& ctx, const PointOnSphere& p, Axis a) {
  ctx.check_dim(p.coords());
  return TangentAt::at(p, ctx.xi(a, p.coords()));
}

inline double eta(const SphereContext& ctx, const PointOnSphere& p, Axis a, const TangentAt& x) {
  require_based_at(x, p);
  return ctx.eta(a, p.coords(), x.vec());
}

inline TangentAt phi(const SphereContext& ctx, const PointOnSphere& p, Axis a,
                     const TangentAt& x) {
  require_based_at(x, p);
  return TangentAt::at(p, ctx.phi(a, p.coords(), x.vec()));
}

inline double omega(const SphereContext& ctx, const PointOnSphere& p, Axis a,
                    const TangentAt& x, const TangentAt& y) {
  require_based_at(x, p);
  require_based_at(y, p);
  return ctx.omega(a, p.coords(), x.vec(), y.vec());
}

inline TangentAt horizontal_project(const SphereContext& ctx, const PointOnSphere& p,
                                    const TangentAt& x) {
  require_based_at(x, p);
  return TangentAt::at(p, ctx.horizontal(p.coords(), x.vec()));
}

/// Max defects of the quaternionic relations between the three structures,
/// over all even permutations (b, c, t) and `samples` random tangents X:
///   xi_t  = phi_b xi_c = -phi_c xi_b
///   eta^t = eta^b o phi_c = -eta^c o phi_b
///   phi_t = phi_b phi_c - eta^c (x) xi_b = -phi_c phi_b + eta^b (x) xi_c
struct ThreeSasakianRelations {
  double xi = 0.0;
  double eta = 0.0;
  double phi = 0.0;
};

inline ThreeSasakianRelations check_three_sasakian_relations(const SphereContext& ctx,
                                                             const Vec<double>& p,
                                                             RngStream& rng, int samples = 8) {
  ThreeSasakianRelations r;
  for (Axis b : kAxes) {
    const Axis c = next(b);
    const Axis t = next(c);
    r.xi = std::max(r.xi, max_abs_diff(ctx.xi(t, p), ctx.phi(b, p, ctx.xi(c, p))));
    r.xi = std::max(r.xi, max_abs_diff(ctx.xi(t, p), -ctx.phi(c, p, ctx.xi(b, p))));
    for (int s = 0; s < samples; ++s) {
      Vec<double> x = ctx.random_tangent(rng, p);
      double et = ctx.eta(t, p, x);
      r.eta = std::max(r.eta, std::abs(et - ctx.eta(b, p, ctx.phi(c, p, x))));
      r.eta = std::max(r.eta, std::abs(et + ctx.eta(c, p, ctx.phi(b, p, x))));
      Vec<double> pt = ctx.phi(t, p, x);
      Vec<double> lhs1 = ctx.phi(b, p, ctx.phi(c, p, x)) - ctx.eta(c, p, x) * ctx.xi(b, p);
      Vec<double> lhs2 = -ctx.phi(c, p, ctx.phi(b, p, x)) + ctx.eta(b, p, x) * ctx.xi(c, p);
      r.phi = std::max(r.phi, max_abs_diff(pt, lhs1));
      r.phi = std::max(r.phi, max_abs_diff(pt, lhs2));
    }
  }
  return r;
}

}  // namespace sasaki
