#pragma once

// Local expansion of the inverted Dirichlet kernel near y = 0:
//
//   h_alpha(y) = c(alpha) sum_m (-1)^{|m|} (alpha_+)_{|m|} / m!  y^{u(alpha) + m},
//   u(alpha) = (alpha_1 - 1, ..., alpha_{J-1} - 1),
//
// absolutely convergent for Y = sum_j y_j < 1. Grouping by n = |m| with the
// multinomial theorem gives the terms t_n = c(alpha) y^u (alpha_+)_n Y^n / n!.

#include <cstdint>
#include <vector>

#include "dirimix/numeric.hpp"
#include "dirimix/points.hpp"

namespace dirimix {

struct SeriesTerm {
  std::vector<double> exponent;
  double coefficient = 0.0;
};

/// Positive direction lambda used to order generalized exponents by <w, lambda>.
struct Direction {
  std::vector<double> lambda;
  std::uint64_t seed = 0;
  int attempts = 0;
  /// Smallest gap between consecutive sorted projections.
  double min_gap = 0.0;
  /// True when distinctness was decided exactly (rational inputs); false when
  /// it rests on the floating tolerance.
  bool exact = false;
};

/// Coefficient of y^{u(alpha)+m}.
SeriesTerm h_series_coeff(const Alpha& alpha, const MultiIndex& m);

struct SeriesEvaluation {
  double value = 0.0;
  /// Guaranteed bound on |value - h_alpha(y)|: truncation + rounding.
  double tail_bound = 0.0;
  double truncation_bound = 0.0;
  double rounding_allowance = 0.0;
  /// Ratio bound used for the geometric tail.
  double ratio = 0.0;
};

/// Partial sum through total order `order`. Requires Y < 1/2 and a ratio
/// q = Y * max(1, (order + alpha_+) / (order + 1)) < 1.
SeriesEvaluation h_series_eval(const Alpha& alpha, const OrthantPoint& y, int order);

/// Draws lambda > 0 (seeded) until all <v_i, lambda> are pairwise distinct
/// (relative gap > 1e-12). Throws after `max_attempts` draws.
Direction separating_direction(const std::vector<std::vector<double>>& vectors, std::uint64_t seed,
                               int max_attempts = 1000);
/// Exact variant: integer-valued lambda, exact distinctness.
Direction separating_direction(const std::vector<std::vector<Rational>>& vectors, std::uint64_t seed,
                               int max_attempts = 1000);

struct ExtractedCoefficient {
  double value = 0.0;
  /// Sum of absolute contributions, for relative comparisons.
  double scale = 0.0;
  std::size_t contributors = 0;
};

/// A_w = sum_i sum_{m : u_i + m = w} b_i (-1)^{|m|} (v_i)_{|m|} / m!,
/// b_i = c_i c(alpha^(i)), v_i = alpha^(i)_+.
ExtractedCoefficient coefficient_extract(const std::vector<Alpha>& params, const std::vector<double>& coeffs,
                                         const std::vector<double>& w, double eps_int = 1e-9);

/// The `count` smallest exponents of {u_i + m} ordered by <w, lambda>,
/// with coincident exponents merged.
std::vector<std::vector<double>> lowest_exponents(const std::vector<Alpha>& params, const std::vector<double>& lambda,
                                                  std::size_t count);

}  // namespace dirimix
