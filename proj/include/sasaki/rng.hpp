#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>

#include "sasaki/vec.hpp"

namespace sasaki {

/// Seeded random stream. Identical (seed, stream, substream) triples give
/// identical sequences on any conforming platform: both std::seed_seq and
/// std::mt19937_64 are fully specified, and normals are drawn with the polar
/// method here instead of the implementation-defined std::normal_distribution.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0)
      : seed_(seed), stream_(stream) {
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(substream), hi(substream)};
    engine_.seed(seq);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal() {
    if (spare_) {
      double s = *spare_;
      spare_.reset();
      return s;
    }
    for (;;) {
      double u = 2.0 * uniform() - 1.0;
      double v = 2.0 * uniform() - 1.0;
      double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) {
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        return u * f;
      }
    }
  }

  Vec<double> normal_vector(std::size_t n) {
    Vec<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  /// Uniform point in the closed ball of radius r in R^n.
  Vec<double> ball(std::size_t n, double r) {
    Vec<double> g = normal_vector(n);
    double radius = r * std::pow(uniform(), 1.0 / static_cast<double>(n));
    return (radius / norm(g)) * g;
  }

 private:
  static std::uint32_t lo(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
  static std::uint32_t hi(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace sasaki
