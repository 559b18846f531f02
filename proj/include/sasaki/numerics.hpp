#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/vec.hpp"

namespace sasaki {

namespace detail {

template <class F>
auto checked_eval(const F& f, double t) {
  auto r = f(t);
  if (!all_finite(r)) throw NumericError("non-finite function value", t);
  return r;
}

}  // namespace detail

/// Central difference (f(t0+h) - f(t0-h)) / 2h.
template <class F>
auto central_difference(const F& f, double t0, double h) {
  auto plus = detail::checked_eval(f, t0 + h);
  auto minus = detail::checked_eval(f, t0 - h);
  return (plus - minus) / (2.0 * h);
}

/// One Richardson level on the central difference: (4 D(h/2) - D(h)) / 3.
/// Truncation error is O(h^4); exact (to rounding) on cubics.
///
/// `f` maps a real parameter to anything with vector-space arithmetic
/// (double, Dual, Vec<S>). Throws NumericError carrying the offending t if
/// any evaluation is non-finite.
template <class F>
auto richardson_derivative(const F& f, double t0, double h) {
  if (!(h > 0.0)) throw DomainError("richardson_derivative: step must be positive");
  auto coarse = central_difference(f, t0, h);
  auto fine = central_difference(f, t0, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

/// Orthonormalizes `vs` in order (modified Gram-Schmidt with one
/// re-orthogonalization pass). Throws RankDeficiencyError naming the first
/// vector whose residual norm falls below `pivot_tolerance`.
inline std::vector<Vec<double>> gram_schmidt(const std::vector<Vec<double>>& vs,
                                             double pivot_tolerance = 1e-10) {
  std::vector<Vec<double>> out;
  out.reserve(vs.size());
  for (std::size_t k = 0; k < vs.size(); ++k) {
    Vec<double> w = vs[k];
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : out) w -= dot(w, e) * e;
    }
    const double nw = norm(w);
    if (!(nw >= pivot_tolerance)) throw RankDeficiencyError(k, nw);
    out.push_back(w / nw);
  }
  return out;
}

/// Inverse of a small dense m x m matrix (row-major) over any scalar type,
/// by Gauss-Jordan elimination with partial pivoting on the real value.
/// Throws RankDeficiencyError when a pivot magnitude falls below 1e-300.
template <class S>
std::vector<S> invert_small(std::vector<S> a, std::size_t m) {
  if (a.size() != m * m) throw DimensionError(m * m, a.size());
  std::vector<S> inv(m * m, S(0.0));
  for (std::size_t i = 0; i < m; ++i) inv[i * m + i] = S(1.0);
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(value_of(a[r * m + col])) > std::abs(value_of(a[piv * m + col]))) piv = r;
    const double pv = std::abs(value_of(a[piv * m + col]));
    if (!(pv > 1e-300)) throw RankDeficiencyError(col, pv);
    if (piv != col)
      for (std::size_t c = 0; c < m; ++c) {
        std::swap(a[piv * m + c], a[col * m + c]);
        std::swap(inv[piv * m + c], inv[col * m + c]);
      }
    const S d = S(1.0) / a[col * m + col];
    for (std::size_t c = 0; c < m; ++c) {
      a[col * m + c] = a[col * m + c] * d;
      inv[col * m + c] = inv[col * m + c] * d;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const S f = a[r * m + col];
      for (std::size_t c = 0; c < m; ++c) {
        a[r * m + c] = a[r * m + c] - f * a[col * m + c];
        inv[r * m + c] = inv[r * m + c] - f * inv[col * m + c];
      }
    }
  }
  return inv;
}

/// max |<e_i, e_j> - delta_ij| over a list of vectors.
inline double gram_defect(const std::vector<Vec<double>>& es) {
  double m = 0.0;
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = 0; j < es.size(); ++j)
      m = std::max(m, std::abs(dot(es[i], es[j]) - (i == j ? 1.0 : 0.0)));
  return m;
}

}  // namespace sasaki
