#include "dirimix/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace dirimix {

SeriesTerm h_series_coeff(const Alpha& alpha, const MultiIndex& m) {
  const std::size_t d = alpha.size() - 1;
  require(m.size() == d, ErrorKind::DimensionMismatch,
          "series multi-index must have length J-1 = " + std::to_string(d));
  SeriesTerm term;
  term.exponent.resize(d);
  double log_magnitude = log_normalizer(alpha) + log_rising_factorial(alpha.sum(), m.order());
  for (std::size_t j = 0; j < d; ++j) {
    term.exponent[j] = alpha[j] - 1.0 + m[j];
    log_magnitude -= std::lgamma(m[j] + 1.0);
  }
  term.coefficient = (m.order() % 2 ? -1.0 : 1.0) * std::exp(log_magnitude);
  return term;
}

SeriesEvaluation h_series_eval(const Alpha& alpha, const OrthantPoint& y, int order) {
  const std::size_t d = alpha.size() - 1;
  require(y.size() == d, ErrorKind::DimensionMismatch, "orthant point does not match alpha");
  require(order >= 0, ErrorKind::InvalidArgument, "series order must be >= 0");
  const double total_y = y.total();
  require(total_y < 0.5, ErrorKind::Domain, "series evaluation needs Y < 1/2, got Y = " + std::to_string(total_y));
  const double v = alpha.sum();
  // Beyond n = order the term ratio Y (v + n) / (n + 1) is bounded by q.
  const double q = total_y * std::max(1.0, (order + v) / (order + 1.0));
  require(q < 1.0, ErrorKind::Domain,
          "tail ratio " + std::to_string(q) + " >= 1 at order " + std::to_string(order) + "; raise the order");

  double log_prefactor = log_normalizer(alpha);
  for (std::size_t j = 0; j < d; ++j) log_prefactor += (alpha[j] - 1.0) * std::log(y[j]);
  double term = std::exp(log_prefactor);
  double value = 0.0;
  double absolute = 0.0;
  for (int n = 0; n <= order; ++n) {
    value += (n % 2 ? -term : term);
    absolute += term;
    term *= total_y * (v + n) / (n + 1.0);
  }
  SeriesEvaluation out;
  out.value = value;
  out.ratio = q;
  out.truncation_bound = term / (1.0 - q);
  out.rounding_allowance = 256.0 * std::numeric_limits<double>::epsilon() * absolute;
  out.tail_bound = out.truncation_bound + out.rounding_allowance;
  return out;
}

namespace {

template <class T>
double projection(const std::vector<T>& v, const std::vector<T>& lambda, T& exact_out) {
  T s = 0;
  for (std::size_t j = 0; j < v.size(); ++j) s += v[j] * lambda[j];
  exact_out = s;
  return to_double(s);
}

void check_shapes(std::size_t count, std::size_t dim, const std::vector<std::size_t>& sizes) {
  require(count > 0, ErrorKind::InvalidArgument, "separating direction needs at least one vector");
  require(dim > 0, ErrorKind::InvalidArgument, "separating direction needs nonempty vectors");
  for (auto s : sizes) require(s == dim, ErrorKind::DimensionMismatch, "vectors differ in length");
}

}  // namespace

Direction separating_direction(const std::vector<std::vector<double>>& vectors, std::uint64_t seed,
                               int max_attempts) {
  std::vector<std::size_t> sizes;
  for (const auto& v : vectors) sizes.push_back(v.size());
  check_shapes(vectors.size(), vectors.empty() ? 0 : vectors.front().size(), sizes);
  const std::size_t dim = vectors.front().size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(1e-3, 1.0);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<double> lambda(dim);
    for (auto& l : lambda) l = draw(rng);
    std::vector<double> values;
    double scale = 1.0;
    for (const auto& v : vectors) {
      double ignored;
      values.push_back(projection(v, lambda, ignored));
      scale = std::max(scale, std::abs(values.back()));
    }
    std::sort(values.begin(), values.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < values.size(); ++i) gap = std::min(gap, values[i] - values[i - 1]);
    if (gap > 1e-12 * scale) return Direction{std::move(lambda), seed, attempt, gap, false};
  }
  fail(ErrorKind::Ambiguity, "no separating direction after " + std::to_string(max_attempts) +
                                 " draws; the input contains duplicate (or numerically coincident) vectors");
}

Direction separating_direction(const std::vector<std::vector<Rational>>& vectors, std::uint64_t seed,
                               int max_attempts) {
  std::vector<std::size_t> sizes;
  for (const auto& v : vectors) sizes.push_back(v.size());
  check_shapes(vectors.size(), vectors.empty() ? 0 : vectors.front().size(), sizes);
  const std::size_t dim = vectors.front().size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> draw(1, 1L << 20);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<Rational> lambda(dim);
    for (auto& l : lambda) l = Rational(draw(rng));
    std::vector<Rational> values;
    for (const auto& v : vectors) {
      Rational s;
      projection(v, lambda, s);
      values.push_back(std::move(s));
    }
    std::sort(values.begin(), values.end());
    bool distinct = std::adjacent_find(values.begin(), values.end()) == values.end();
    if (distinct) {
      Direction out;
      for (const auto& l : lambda) out.lambda.push_back(to_double(l));
      out.seed = seed;
      out.attempts = attempt;
      out.min_gap = std::numeric_limits<double>::infinity();
      for (std::size_t i = 1; i < values.size(); ++i)
        out.min_gap = std::min(out.min_gap, to_double(Rational(values[i] - values[i - 1])));
      out.exact = true;
      return out;
    }
  }
  fail(ErrorKind::Ambiguity, "no separating direction after " + std::to_string(max_attempts) +
                                 " draws; the input contains duplicate vectors");
}

ExtractedCoefficient coefficient_extract(const std::vector<Alpha>& params, const std::vector<double>& coeffs,
                                         const std::vector<double>& w, double eps_int) {
  require(params.size() == coeffs.size(), ErrorKind::DimensionMismatch, "one coefficient per parameter required");
  ExtractedCoefficient out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& alpha = params[i];
    const std::size_t d = alpha.size() - 1;
    require(w.size() == d, ErrorKind::DimensionMismatch, "exponent w must have length J-1");
    if (coeffs[i] == 0.0) continue;
    // The only candidate is m = w - u_i; it contributes iff it is a
    // nonnegative integer vector.
    std::vector<int> m(d);
    bool lattice = true;
    for (std::size_t j = 0; j < d && lattice; ++j) {
      const double diff = w[j] - (alpha[j] - 1.0);
      const double rounded = std::round(diff);
      lattice = std::abs(diff - rounded) <= eps_int && rounded >= 0;
      m[j] = static_cast<int>(rounded);
    }
    if (!lattice) continue;
    const MultiIndex mi(std::move(m));
    double log_term = log_normalizer(alpha) + log_rising_factorial(alpha.sum(), mi.order());
    for (int mj : mi) log_term -= std::lgamma(mj + 1.0);
    const double contribution = coeffs[i] * (mi.order() % 2 ? -1.0 : 1.0) * std::exp(log_term);
    out.value += contribution;
    out.scale += std::abs(contribution);
    ++out.contributors;
  }
  return out;
}

std::vector<std::vector<double>> lowest_exponents(const std::vector<Alpha>& params, const std::vector<double>& lambda,
                                                  std::size_t count) {
  require(!params.empty(), ErrorKind::InvalidArgument, "lowest_exponents needs parameters");
  const std::size_t d = params.front().size() - 1;
  require(lambda.size() == d, ErrorKind::DimensionMismatch, "direction must have length J-1");
  const double min_lambda = *std::min_element(lambda.begin(), lambda.end());
  require(min_lambda > 0, ErrorKind::InvalidArgument, "direction must be strictly positive");
  auto dot = [&](const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += w[j] * lambda[j];
    return s;
  };
  double base = std::numeric_limits<double>::infinity();
  for (const auto& alpha : params) {
    std::vector<double> u(d);
    for (std::size_t j = 0; j < d; ++j) u[j] = alpha[j] - 1.0;
    base = std::min(base, dot(u));
  }

  for (int max_order = 4;; max_order += 4) {
    std::vector<std::pair<double, std::vector<double>>> found;
    for (const auto& alpha : params) {
      for (const auto& m : lattice_up_to(d, max_order)) {
        std::vector<double> w(d);
        for (std::size_t j = 0; j < d; ++j) w[j] = alpha[j] - 1.0 + m[j];
        bool duplicate = false;
        for (const auto& [_, other] : found) {
          double dist = 0.0;
          for (std::size_t j = 0; j < d; ++j) dist = std::max(dist, std::abs(other[j] - w[j]));
          if (dist <= 1e-9) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) found.emplace_back(dot(w), std::move(w));
      }
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    // Any exponent with |m| > max_order projects to at least this bound.
    const double unseen = base + (max_order + 1) * min_lambda;
    if (found.size() >= count && found[count - 1].first < unseen) {
      std::vector<std::vector<double>> out;
      for (std::size_t i = 0; i < count; ++i) out.push_back(std::move(found[i].second));
      return out;
    }
  }
}

}  // namespace dirimix
