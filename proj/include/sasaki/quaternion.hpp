#pragma once

#include <array>
#include <cmath>

#include "sasaki/dual.hpp"

namespace sasaki {

/// Quaternion as (real, i, j, k) components.
template <class S>
using Quat = std::array<S, 4>;

template <class S>
Quat<S> qmul(const Quat<S>& a, const Quat<S>& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

template <class S>
Quat<S> qconj(const Quat<S>& a) {
  return {a[0], -a[1], -a[2], -a[3]};
}

template <class S>
S qnorm2(const Quat<S>& a) {
  return a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3];
}

namespace detail {

// cos(sqrt(s)) and sin(sqrt(s))/sqrt(s), smooth through s = 0 so that dual
// numbers differentiate cleanly at the identity.
template <class S>
S cos_of_sqrt(const S& s) {
  using std::cos;
  using std::sqrt;
  if (value_of(s) < 1e-6) {
    return S(1.0) - s / 2.0 + s * s / 24.0 - s * s * s / 720.0 + s * s * s * s / 40320.0;
  }
  return cos(sqrt(s));
}

template <class S>
S sinc_of_sqrt(const S& s) {
  using std::sin;
  using std::sqrt;
  if (value_of(s) < 1e-6) {
    return S(1.0) - s / 6.0 + s * s / 120.0 - s * s * s / 5040.0 + s * s * s * s / 362880.0;
  }
  S r = sqrt(s);
  return sin(r) / r;
}

}  // namespace detail

/// exp(a i + b j + c k), a unit quaternion.
template <class S>
Quat<S> qexp_imaginary(const S& a, const S& b, const S& c) {
  S s = a * a + b * b + c * c;
  S k = detail::sinc_of_sqrt(s);
  return {detail::cos_of_sqrt(s), k * a, k * b, k * c};
}

}  // namespace sasaki
