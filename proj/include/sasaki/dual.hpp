#pragma once

#include <cmath>
#include <type_traits>

namespace sasaki {

/// Forward-mode dual number carrying a value and one directional derivative.
///
/// Nesting composes: Dual<Dual<double>> carries mixed second derivatives, which
/// is how curvature operators differentiate through a connection that itself
/// differentiates. All arithmetic is defined through hidden friends so that
/// plain doubles (and lower-order duals) convert implicitly on either side.
template <class T>
struct Dual {
  T v{};
  T d{};

  constexpr Dual() = default;
  constexpr Dual(T value, T deriv) : v(value), d(deriv) {}

  template <class U>
    requires std::is_convertible_v<U, T>
  constexpr Dual(const U& x) : v(static_cast<T>(x)), d(T(0.0)) {}  // NOLINT: implicit lift

  constexpr Dual& operator+=(const Dual& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o) {
    d = d * o.v + v * o.d;
    v *= o.v;
    return *this;
  }
  constexpr Dual& operator/=(const Dual& o) {
    *this = *this / o;
    return *this;
  }

  friend constexpr Dual operator+(const Dual& a) { return a; }
  friend constexpr Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  friend constexpr Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
  friend constexpr Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
  friend constexpr Dual operator*(const Dual& a, const Dual& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
  }
  friend constexpr Dual operator/(const Dual& a, const Dual& b) {
    T inv = T(1.0) / b.v;
    T q = a.v * inv;
    return {q, (a.d - q * b.d) * inv};
  }

  friend Dual sqrt(const Dual& a) {
    using std::sqrt;
    T r = sqrt(a.v);
    return {r, a.d / (T(2.0) * r)};
  }
  friend Dual sin(const Dual& a) {
    using std::cos;
    using std::sin;
    return {sin(a.v), a.d * cos(a.v)};
  }
  friend Dual cos(const Dual& a) {
    using std::cos;
    using std::sin;
    return {cos(a.v), -(a.d * sin(a.v))};
  }
  friend Dual exp(const Dual& a) {
    using std::exp;
    T e = exp(a.v);
    return {e, a.d * e};
  }
  friend Dual log(const Dual& a) {
    using std::log;
    return {log(a.v), a.d / a.v};
  }
};

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};
template <class T>
inline constexpr bool is_dual_v = is_dual<T>::value;

/// Innermost real value of a (possibly nested) scalar.
inline constexpr double value_of(double x) { return x; }
template <class T>
constexpr double value_of(const Dual<T>& x) {
  return value_of(x.v);
}

/// True when every component of a (possibly nested) scalar is finite.
inline bool all_finite(double x) { return std::isfinite(x); }
template <class T>
bool all_finite(const Dual<T>& x) {
  return all_finite(x.v) && all_finite(x.d);
}

}  // namespace sasaki
