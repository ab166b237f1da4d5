#include "dirimix/transports.hpp"

#include <algorithm>
#include <cmath>

namespace dirimix {

LogRatioPoint alr_transform(const SimplexPoint& x) {
  const std::size_t d = x.dim() - 1;
  const double log_base = std::log(x[d]);
  std::vector<double> t(d);
  for (std::size_t j = 0; j < d; ++j) t[j] = std::log(x[j]) - log_base;
  return LogRatioPoint(std::move(t));
}

SimplexPoint alr_inverse(const LogRatioPoint& t) {
  // Divide through by the largest exponential so huge |t| stays finite.
  const double peak = std::max(0.0, *std::max_element(t.coords().begin(), t.coords().end()));
  std::vector<double> x(t.size() + 1);
  double total = std::exp(-peak);
  for (std::size_t j = 0; j < t.size(); ++j) {
    x[j] = std::exp(t[j] - peak);
    total += x[j];
  }
  x[t.size()] = std::exp(-peak);
  for (double& v : x) v /= total;
  return SimplexPoint::from_full(std::move(x));
}

double alr_jacobian_det(const SimplexPoint& x) {
  double det = 1.0;
  for (double v : x.coords()) det *= v;
  return det;
}

double alr_log_density(const Alpha& alpha, const LogRatioPoint& t) {
  require(alpha.size() == t.size() + 1, ErrorKind::DimensionMismatch, "log-ratio point does not match alpha");
  const double peak = std::max(0.0, *std::max_element(t.coords().begin(), t.coords().end()));
  double scaled = std::exp(-peak);
  double linear = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    scaled += std::exp(t[j] - peak);
    linear += alpha[j] * t[j];
  }
  const double log_s = peak + std::log(scaled);
  return log_normalizer(alpha) + linear - alpha.sum() * log_s;
}

double alr_density(const Alpha& alpha, const LogRatioPoint& t) { return std::exp(alr_log_density(alpha, t)); }

SimplexPoint chart_transform(const OrthantPoint& y) {
  const double scale = 1.0 + y.total();
  std::vector<double> x(y.size() + 1);
  for (std::size_t j = 0; j < y.size(); ++j) x[j] = y[j] / scale;
  x[y.size()] = 1.0 / scale;
  return SimplexPoint::from_full(std::move(x));
}

OrthantPoint chart_inverse(const SimplexPoint& x) {
  const std::size_t d = x.dim() - 1;
  std::vector<double> y(d);
  for (std::size_t j = 0; j < d; ++j) y[j] = x[j] / x[d];
  return OrthantPoint(std::move(y));
}

double chart_jacobian_det(const OrthantPoint& y) {
  return std::pow(1.0 + y.total(), -static_cast<double>(y.size() + 1));
}

std::vector<double> move_to_back(std::vector<double> values, std::size_t baseline) {
  require(baseline < values.size(), ErrorKind::InvalidArgument, "baseline coordinate out of range");
  std::rotate(values.begin() + static_cast<std::ptrdiff_t>(baseline),
              values.begin() + static_cast<std::ptrdiff_t>(baseline) + 1, values.end());
  return values;
}

std::vector<double> restore_from_back(std::vector<double> values, std::size_t baseline) {
  require(baseline < values.size(), ErrorKind::InvalidArgument, "baseline coordinate out of range");
  std::rotate(values.begin() + static_cast<std::ptrdiff_t>(baseline), values.end() - 1, values.end());
  return values;
}

}  // namespace dirimix
