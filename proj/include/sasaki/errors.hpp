#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sasaki {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  DimensionError(std::size_t expected, std::size_t got)
      : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(got)),
        expected_(expected),
        got_(got) {}
  std::size_t expected() const noexcept { return expected_; }
  std::size_t got() const noexcept { return got_; }

 private:
  std::size_t expected_;
  std::size_t got_;
};

/// A function evaluation produced NaN or Inf; `parameter()` is the curve
/// parameter (or other scalar input) at which it happened.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double parameter)
      : Error(what + " (at t = " + std::to_string(parameter) + ")"), parameter_(parameter) {}
  double parameter() const noexcept { return parameter_; }

 private:
  double parameter_;
};

class RankDeficiencyError : public Error {
 public:
  RankDeficiencyError(std::size_t index, double pivot)
      : Error("rank deficient input at index " + std::to_string(index) +
              " (pivot norm " + std::to_string(pivot) + ")"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Input outside the domain of an operation (chart domain, degenerate plane,
/// tangent not based at the expected point, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConditioningError : public Error {
 public:
  ConditioningError(double condition, double limit)
      : Error("matrix too ill-conditioned: cond = " + std::to_string(condition) +
              " exceeds " + std::to_string(limit)),
        condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

}  // namespace sasaki
