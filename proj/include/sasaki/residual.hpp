#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/rng.hpp"

namespace sasaki {

/// Tolerance tiers. Thresholds grow with differentiation depth: closed-form
/// identities, single-differentiation routes, and doubly-differentiated or
/// frame-summed quantities.
enum class Tier { closed, fd, deep };

struct Tolerances {
  double closed = 1e-9;
  double fd = 1e-6;
  double deep = 1e-5;

  double operator()(Tier t) const {
    switch (t) {
      case Tier::closed:
        return closed;
      case Tier::fd:
        return fd;
      case Tier::deep:
        return deep;
    }
    return deep;
  }

  /// Throws DomainError unless 0 < closed <= fd <= deep.
  void validate() const {
    if (!(closed > 0.0 && fd > 0.0 && deep > 0.0))
      throw DomainError("tolerances must be positive");
    if (!(closed <= fd && fd <= deep))
      throw DomainError("tolerances must satisfy tol_closed <= tol_fd <= tol_deep");
  }
};

/// A check threshold expressed relative to a tier, so scaling a tier scales
/// every check in it. With default tiers, `scale` reproduces the pinned value.
struct Threshold {
  Tier tier = Tier::closed;
  double scale = 1.0;

  double resolve(const Tolerances& t) const { return scale * t(tier); }
};

struct Residual {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;

  bool pass() const { return value <= threshold; }  // false for NaN
};

/// Running max of nonnegative defects. NaN is absorbing (recorded as +inf).
class MaxAccumulator {
 public:
  void observe(double d) {
    if (std::isnan(d)) d = INFINITY;
    value_ = std::max(value_, std::abs(d));
  }
  void merge(const MaxAccumulator& o) { value_ = std::max(value_, o.value_); }
  double value() const { return value_; }

 private:
  double value_ = 0.0;
};

/// Evaluates `defect(rng, index)` for every sample index and returns the max.
///
/// Sample i always draws from RngStream(seed, stream, i), so the result does
/// not depend on how samples are split across workers, and max is
/// order-independent.
template <class F>
double max_over_samples(std::size_t samples, std::uint64_t seed, std::uint64_t stream,
                        unsigned workers, F&& defect) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(samples)));
  std::vector<MaxAccumulator> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto body = [&](unsigned w) {
    try {
      for (std::size_t i = w; i < samples; i += workers) {
        RngStream rng(seed, stream, i);
        partial[w].observe(defect(rng, i));
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  MaxAccumulator total;
  for (const auto& p : partial) total.merge(p);
  return total.value();
}

}  // namespace sasaki
