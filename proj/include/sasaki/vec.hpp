#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <type_traits>
#include <vector>

#include "sasaki/dual.hpp"
#include "sasaki/errors.hpp"

namespace sasaki {

/// Dense ambient vector over a scalar type S (double or a nested Dual).
///
/// The ambient space is R^{4n+4}; sizes are runtime values but tiny (8, 12, ...),
/// so a std::vector backing store is plenty.
template <class S>
class Vec {
 public:
  using value_type = S;

  Vec() = default;
  explicit Vec(std::size_t n) : x_(n, S(0.0)) {}
  Vec(std::initializer_list<S> init) : x_(init) {}
  explicit Vec(std::vector<S> data) : x_(std::move(data)) {}

  static Vec basis(std::size_t n, std::size_t i) {
    Vec e(n);
    e[i] = S(1.0);
    return e;
  }

  std::size_t size() const noexcept { return x_.size(); }
  S& operator[](std::size_t i) { return x_[i]; }
  const S& operator[](std::size_t i) const { return x_[i]; }
  auto begin() { return x_.begin(); }
  auto end() { return x_.end(); }
  auto begin() const { return x_.begin(); }
  auto end() const { return x_.end(); }
  const std::vector<S>& data() const noexcept { return x_; }

  Vec& operator+=(const Vec& o) {
    check_same(o);
    for (std::size_t i = 0; i < x_.size(); ++i) x_[i] += o.x_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    check_same(o);
    for (std::size_t i = 0; i < x_.size(); ++i) x_[i] -= o.x_[i];
    return *this;
  }
  template <class A>
    requires std::is_convertible_v<A, S>
  Vec& operator*=(const A& a) {
    for (auto& xi : x_) xi *= S(a);
    return *this;
  }

  friend bool operator==(const Vec&, const Vec&) = default;

  void check_same(const Vec& o) const {
    if (o.size() != size()) throw DimensionError(size(), o.size());
  }

 private:
  std::vector<S> x_;
};

template <class S>
Vec<S> operator+(Vec<S> a, const Vec<S>& b) {
  a += b;
  return a;
}
template <class S>
Vec<S> operator-(Vec<S> a, const Vec<S>& b) {
  a -= b;
  return a;
}
template <class S>
Vec<S> operator-(Vec<S> a) {
  for (auto& x : a) x = -x;
  return a;
}
template <class S, class A>
  requires std::is_convertible_v<A, S>
Vec<S> operator*(const A& a, Vec<S> v) {
  v *= a;
  return v;
}
template <class S, class A>
  requires std::is_convertible_v<A, S>
Vec<S> operator*(Vec<S> v, const A& a) {
  v *= a;
  return v;
}
template <class S, class A>
  requires std::is_convertible_v<A, S>
Vec<S> operator/(Vec<S> v, const A& a) {
  const S inv = S(1.0) / S(a);
  v *= inv;
  return v;
}

/// Euclidean inner product; this is the round metric g restricted from the ambient space.
template <class S>
S dot(const Vec<S>& u, const Vec<S>& v) {
  u.check_same(v);
  S acc(0.0);
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

template <class S>
S squared_norm(const Vec<S>& u) {
  return dot(u, u);
}

template <class S>
S norm(const Vec<S>& u) {
  using std::sqrt;
  return sqrt(squared_norm(u));
}

template <class S>
Vec<S> normalized(const Vec<S>& u) {
  return u / norm(u);
}

inline double max_abs(const Vec<double>& u) {
  double m = 0.0;
  for (double x : u) m = std::max(m, std::abs(x));
  return m;
}

/// Max-norm of a difference; NaN propagates as +inf so it can never pass a threshold.
inline double max_abs_diff(const Vec<double>& a, const Vec<double>& b) {
  a.check_same(b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = std::abs(a[i] - b[i]);
    if (std::isnan(d)) return INFINITY;
    m = std::max(m, d);
  }
  return m;
}

template <class S>
bool all_finite(const Vec<S>& u) {
  return std::all_of(u.begin(), u.end(), [](const S& x) { return all_finite(x); });
}

/// Embeds a real vector into a higher scalar type (zero derivative parts).
template <class S>
Vec<S> lift(const Vec<double>& u) {
  if constexpr (std::is_same_v<S, double>) {
    return u;
  } else {
    Vec<S> r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = S(u[i]);
    return r;
  }
}

template <class S>
Vec<S> value_part(const Vec<Dual<S>>& u) {
  Vec<S> r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = u[i].v;
  return r;
}

template <class S>
Vec<S> derivative_part(const Vec<Dual<S>>& u) {
  Vec<S> r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = u[i].d;
  return r;
}

template <class S>
S value_part(const Dual<S>& x) {
  return x.v;
}
template <class S>
S derivative_part(const Dual<S>& x) {
  return x.d;
}

/// Builds base + eps * direction as a dual vector.
template <class S>
Vec<Dual<S>> make_dual(const Vec<S>& base, const Vec<S>& direction) {
  base.check_same(direction);
  Vec<Dual<S>> r(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) r[i] = Dual<S>(base[i], direction[i]);
  return r;
}

/// Square real matrix, row-major. Only used for the small structure matrices.
class Mat {
 public:
  Mat() = default;
  explicit Mat(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  static Mat identity(std::size_t n) {
    Mat m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

  template <class S>
  Vec<S> apply(const Vec<S>& v) const {
    if (v.size() != n_) throw DimensionError(n_, v.size());
    Vec<S> r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      S acc(0.0);
      for (std::size_t j = 0; j < n_; ++j) {
        const double m = a_[i * n_ + j];
        if (m != 0.0) acc += v[j] * m;
      }
      r[i] = acc;
    }
    return r;
  }

  Mat transpose() const {
    Mat t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.n_ != b.n_) throw DimensionError(a.n_, b.n_);
    Mat c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k)
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += a(i, k) * b(k, j);
    return c;
  }
  friend Mat operator+(const Mat& a, const Mat& b) {
    if (a.n_ != b.n_) throw DimensionError(a.n_, b.n_);
    Mat c(a.n_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
    return c;
  }
  friend Mat operator*(double s, Mat m) {
    for (auto& x : m.a_) x *= s;
    return m;
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

}  // namespace sasaki
