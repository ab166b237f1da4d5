#pragma once

// The two charts of the simplex interior, both with baseline coordinate J:
//   additive log-ratio  t_j = log(x_j / x_J)         (R^{J-1} <-> simplex)
//   orthant chart       x_j = y_j / (1 + Y)          (R_{>0}^{J-1} <-> simplex)
// Other baselines are reached by permuting coordinates around these calls.

#include <cstddef>
#include <vector>

#include "dirimix/numeric.hpp"
#include "dirimix/points.hpp"

namespace dirimix {

LogRatioPoint alr_transform(const SimplexPoint& x);
SimplexPoint alr_inverse(const LogRatioPoint& t);

/// |det d(x_1..x_{J-1}) / dt| = prod_{j=1}^{J} x_j.
double alr_jacobian_det(const SimplexPoint& x);

/// Density of t = alr(x) for x ~ Dir(alpha):
/// c(alpha) exp(<alpha_{1:J-1}, t>) S(t)^{-alpha_+}, S(t) = 1 + sum_j e^{t_j}.
double alr_log_density(const Alpha& alpha, const LogRatioPoint& t);
double alr_density(const Alpha& alpha, const LogRatioPoint& t);

SimplexPoint chart_transform(const OrthantPoint& y);
OrthantPoint chart_inverse(const SimplexPoint& x);

/// |det d(x_1..x_{J-1}) / dy| = (1 + Y)^{-J}.
double chart_jacobian_det(const OrthantPoint& y);

/// Moves coordinate `baseline` (0-based) to the last position; the remaining
/// coordinates keep their relative order.
std::vector<double> move_to_back(std::vector<double> values, std::size_t baseline);
/// Inverse of move_to_back.
std::vector<double> restore_from_back(std::vector<double> values, std::size_t baseline);

}  // namespace dirimix
