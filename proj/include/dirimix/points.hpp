#pragma once

#include <span>
#include <vector>

#include "dirimix/errors.hpp"

namespace dirimix {

/// Point of the open simplex interior. Holds all J coordinates; the last one
/// is derived from the first J-1 when built from the interior chart.
class SimplexPoint {
 public:
  /// From (x_1, ..., x_{J-1}): each > 0 and sum < 1 strictly.
  static SimplexPoint from_interior(std::vector<double> head);
  /// From all J coordinates: each > 0 and |sum - 1| <= 1e-12.
  static SimplexPoint from_full(std::vector<double> x);

  std::size_t dim() const noexcept { return x_.size(); }
  double operator[](std::size_t j) const { return x_[j]; }
  std::span<const double> coords() const noexcept { return x_; }
  std::vector<double> head() const { return {x_.begin(), x_.end() - 1}; }

 private:
  explicit SimplexPoint(std::vector<double> x) : x_(std::move(x)) {}
  std::vector<double> x_;
};

/// Point of the open positive orthant R_{>0}^{J-1}.
class OrthantPoint {
 public:
  explicit OrthantPoint(std::vector<double> y);

  std::size_t size() const noexcept { return y_.size(); }
  double operator[](std::size_t j) const { return y_[j]; }
  std::span<const double> coords() const noexcept { return y_; }
  /// Y = sum_j y_j.
  double total() const noexcept { return total_; }

 private:
  std::vector<double> y_;
  double total_ = 0.0;
};

/// Additive log-ratio coordinates t in R^{J-1}.
class LogRatioPoint {
 public:
  explicit LogRatioPoint(std::vector<double> t);

  std::size_t size() const noexcept { return t_.size(); }
  double operator[](std::size_t j) const { return t_[j]; }
  std::span<const double> coords() const noexcept { return t_; }

 private:
  std::vector<double> t_;
};

}  // namespace dirimix
