#include "dirimix/points.hpp"

#include <cmath>
#include <string>

namespace dirimix {

SimplexPoint SimplexPoint::from_interior(std::vector<double> head) {
  require(!head.empty(), ErrorKind::InvalidArgument, "simplex point needs J >= 2");
  double sum = 0.0;
  for (std::size_t j = 0; j < head.size(); ++j) {
    require(std::isfinite(head[j]) && head[j] > 0, ErrorKind::Domain,
            "simplex coordinate " + std::to_string(j + 1) + " is not strictly positive");
    sum += head[j];
  }
  require(sum < 1.0, ErrorKind::Domain, "simplex coordinates must sum to < 1 (point on or outside the boundary)");
  head.push_back(1.0 - sum);
  return SimplexPoint(std::move(head));
}

SimplexPoint SimplexPoint::from_full(std::vector<double> x) {
  require(x.size() >= 2, ErrorKind::InvalidArgument, "simplex point needs J >= 2");
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    require(std::isfinite(x[j]) && x[j] > 0, ErrorKind::Domain,
            "simplex coordinate " + std::to_string(j + 1) + " is not strictly positive");
    sum += x[j];
  }
  require(std::abs(sum - 1.0) <= 1e-12, ErrorKind::Domain, "simplex coordinates must sum to 1");
  return SimplexPoint(std::move(x));
}

OrthantPoint::OrthantPoint(std::vector<double> y) : y_(std::move(y)) {
  require(!y_.empty(), ErrorKind::InvalidArgument, "orthant point needs at least one coordinate");
  for (std::size_t j = 0; j < y_.size(); ++j) {
    require(std::isfinite(y_[j]) && y_[j] > 0, ErrorKind::Domain,
            "orthant coordinate " + std::to_string(j + 1) + " is not strictly positive");
    total_ += y_[j];
  }
}

LogRatioPoint::LogRatioPoint(std::vector<double> t) : t_(std::move(t)) {
  require(!t_.empty(), ErrorKind::InvalidArgument, "log-ratio point needs at least one coordinate");
  for (double v : t_) require(std::isfinite(v), ErrorKind::Domain, "log-ratio coordinates must be finite");
}

}  // namespace dirimix
