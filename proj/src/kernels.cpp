#include "dirimix/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace dirimix {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Dirichlet: return "dirichlet";
    case Family::InvertedDirichlet: return "inverted_dirichlet";
    case Family::GeneralizedDirichlet: return "generalized_dirichlet";
    case Family::BetaLiouville: return "beta_liouville";
    case Family::InvertedBetaLiouville: return "inverted_beta_liouville";
    case Family::DirichletMultinomial: return "dirichlet_multinomial";
    case Family::LdaMarginal: return "lda_marginal";
  }
  return "unknown";
}

Family parse_family(std::string_view text) {
  if (text == "dirichlet") return Family::Dirichlet;
  if (text == "inverted_dirichlet" || text == "id") return Family::InvertedDirichlet;
  if (text == "generalized_dirichlet" || text == "gd") return Family::GeneralizedDirichlet;
  if (text == "beta_liouville" || text == "bl") return Family::BetaLiouville;
  if (text == "inverted_beta_liouville" || text == "ibl") return Family::InvertedBetaLiouville;
  if (text == "dirichlet_multinomial" || text == "dm") return Family::DirichletMultinomial;
  if (text == "lda_marginal" || text == "lda") return Family::LdaMarginal;
  fail(ErrorKind::Parse, "unknown kernel family '" + std::string(text) + "'");
}

namespace {

void require_positive(const std::vector<double>& v, const char* what) {
  for (double x : v)
    require(std::isfinite(x) && x > 0, ErrorKind::InvalidArgument, std::string(what) + " entries must be > 0");
}

void require_positive(double v, const char* what) {
  require(std::isfinite(v) && v > 0, ErrorKind::InvalidArgument, std::string(what) + " must be > 0");
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_dim(std::size_t got, std::size_t expected, const char* what) {
  require(got == expected, ErrorKind::DimensionMismatch,
          std::string(what) + " has dimension " + std::to_string(got) + ", kernel expects " +
              std::to_string(expected));
}

void validate_document(const Document& w, std::size_t vocabulary) {
  for (int word : w)
    require(word >= 1 && static_cast<std::size_t>(word) <= vocabulary, ErrorKind::InvalidArgument,
            "document word index " + std::to_string(word) + " outside 1.." + std::to_string(vocabulary));
}

}  // namespace

GeneralizedDirichletKernel::GeneralizedDirichletKernel(std::vector<double> a_, std::vector<double> b_)
    : a(std::move(a_)), b(std::move(b_)) {
  require(!a.empty() && a.size() == b.size(), ErrorKind::DimensionMismatch,
          "generalized Dirichlet needs equal-length non-empty a and b");
  require_positive(a, "a");
  require_positive(b, "b");
}

std::vector<double> GeneralizedDirichletKernel::exponents() const {
  const std::size_t d = a.size();
  std::vector<double> gamma(d);
  for (std::size_t j = 0; j + 1 < d; ++j) gamma[j] = b[j] - a[j + 1] - b[j + 1];
  gamma[d - 1] = b[d - 1] - 1.0;
  return gamma;
}

BetaLiouvilleKernel::BetaLiouvilleKernel(std::vector<double> a_vec_, double a_, double b_)
    : a_vec(std::move(a_vec_)), a(a_), b(b_) {
  require(!a_vec.empty(), ErrorKind::InvalidArgument, "Beta-Liouville needs J >= 2");
  require_positive(a_vec, "a_vec");
  require_positive(a, "a");
  require_positive(b, "b");
}

InvertedBetaLiouvilleKernel::InvertedBetaLiouvilleKernel(std::vector<double> a_vec_, double a_, double b_,
                                                         double lambda_)
    : a_vec(std::move(a_vec_)), a(a_), b(b_), lambda(lambda_) {
  require(!a_vec.empty(), ErrorKind::InvalidArgument, "inverted Beta-Liouville needs J >= 2");
  require_positive(a_vec, "a_vec");
  require_positive(a, "a");
  require_positive(b, "b");
  require_positive(lambda, "lambda");
}

DirichletMultinomialKernel::DirichletMultinomialKernel(int n_, Alpha alpha_) : n(n_), alpha(std::move(alpha_)) {
  require(n >= 0, ErrorKind::InvalidArgument, "Dirichlet-multinomial total count must be >= 0");
}

LdaMarginalKernel::LdaMarginalKernel(Alpha alpha_, TopicMatrix<double> beta_, Document document_)
    : alpha(std::move(alpha_)), beta(std::move(beta_)), document(std::move(document_)) {
  require(beta.topics() == alpha.size(), ErrorKind::DimensionMismatch, "topic matrix rows must match alpha length");
  validate_document(document, beta.vocabulary());
}

Family family_of(const KernelSpec& spec) {
  return std::visit(Overloaded{
                        [](const DirichletKernel&) { return Family::Dirichlet; },
                        [](const InvertedDirichletKernel&) { return Family::InvertedDirichlet; },
                        [](const GeneralizedDirichletKernel&) { return Family::GeneralizedDirichlet; },
                        [](const BetaLiouvilleKernel&) { return Family::BetaLiouville; },
                        [](const InvertedBetaLiouvilleKernel&) { return Family::InvertedBetaLiouville; },
                        [](const DirichletMultinomialKernel&) { return Family::DirichletMultinomial; },
                        [](const LdaMarginalKernel&) { return Family::LdaMarginal; },
                    },
                    spec);
}

std::size_t dimension_of(const KernelSpec& spec) {
  return std::visit(Overloaded{
                        [](const DirichletKernel& k) { return k.alpha.size(); },
                        [](const InvertedDirichletKernel& k) { return k.alpha.size(); },
                        [](const DirichletMultinomialKernel& k) { return k.alpha.size(); },
                        [](const LdaMarginalKernel& k) { return k.alpha.size(); },
                        [](const auto& k) { return k.dim(); },
                    },
                    spec);
}

double dirichlet_log_density(const Alpha& alpha, const SimplexPoint& x) {
  require_dim(x.dim(), alpha.size(), "simplex point");
  double value = log_normalizer(alpha);
  for (std::size_t j = 0; j < alpha.size(); ++j) value += (alpha[j] - 1.0) * std::log(x[j]);
  return value;
}

double inverted_dirichlet_log_density(const Alpha& alpha, const OrthantPoint& y) {
  require_dim(y.size() + 1, alpha.size(), "orthant point");
  double value = log_normalizer(alpha) - alpha.sum() * std::log1p(y.total());
  for (std::size_t j = 0; j < y.size(); ++j) value += (alpha[j] - 1.0) * std::log(y[j]);
  return value;
}

namespace {

double gd_log_density(const GeneralizedDirichletKernel& k, const SimplexPoint& x) {
  require_dim(x.dim(), k.dim(), "simplex point");
  const auto gamma = k.exponents();
  const std::size_t d = k.a.size();
  // tails[j] = 1 - sum_{l <= j} x_l, accumulated from the right for accuracy.
  std::vector<double> tails(d);
  double tail = 0.0;
  for (std::size_t j = d + 1; j-- > 1;) {
    tail += x[j];
    tails[j - 1] = tail;
  }
  double value = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    value += std::lgamma(k.a[j] + k.b[j]) - std::lgamma(k.a[j]) - std::lgamma(k.b[j]);
    value += (k.a[j] - 1.0) * std::log(x[j]);
    if (gamma[j] != 0.0) value += gamma[j] * std::log(tails[j]);
  }
  return value;
}

double bl_log_density(const BetaLiouvilleKernel& k, const SimplexPoint& x) {
  require_dim(x.dim(), k.dim(), "simplex point");
  const std::size_t d = k.a_vec.size();
  const double a_sum = std::accumulate(k.a_vec.begin(), k.a_vec.end(), 0.0);
  double value = std::lgamma(k.a + k.b) + std::lgamma(a_sum) - std::lgamma(k.a) - std::lgamma(k.b);
  double head = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    value += (k.a_vec[j] - 1.0) * std::log(x[j]) - std::lgamma(k.a_vec[j]);
    head += x[j];
  }
  if (k.a != a_sum) value += (k.a - a_sum) * std::log(head);
  value += (k.b - 1.0) * std::log(x[d]);
  return value;
}

double ibl_log_density(const InvertedBetaLiouvilleKernel& k, const OrthantPoint& y) {
  require_dim(y.size() + 1, k.dim(), "orthant point");
  const std::size_t d = k.a_vec.size();
  const double a_sum = std::accumulate(k.a_vec.begin(), k.a_vec.end(), 0.0);
  double value = std::lgamma(a_sum) + std::lgamma(k.a + k.b) - std::lgamma(k.a) - std::lgamma(k.b);
  value += k.b * std::log(k.lambda);
  for (std::size_t j = 0; j < d; ++j) value += (k.a_vec[j] - 1.0) * std::log(y[j]) - std::lgamma(k.a_vec[j]);
  if (k.a != a_sum) value += (k.a - a_sum) * std::log(y.total());
  // log(lambda + Y) = log(lambda) + log1p(Y / lambda)
  value -= (k.a + k.b) * (std::log(k.lambda) + std::log1p(y.total() / k.lambda));
  return value;
}

[[noreturn]] void wrong_domain(Family family, const char* domain) {
  fail(ErrorKind::Domain, "kernel family " + std::string(to_string(family)) + " is not defined on the " + domain);
}

}  // namespace

double kernel_log_density(const KernelSpec& spec, const SimplexPoint& x) {
  return std::visit(Overloaded{
                        [&](const DirichletKernel& k) { return dirichlet_log_density(k.alpha, x); },
                        [&](const GeneralizedDirichletKernel& k) { return gd_log_density(k, x); },
                        [&](const BetaLiouvilleKernel& k) { return bl_log_density(k, x); },
                        [&](const DirichletMultinomialKernel&) -> double {
                          fail(ErrorKind::Unsupported, "discrete family: use dm_pmf / dm_pmf_exact");
                        },
                        [&](const LdaMarginalKernel&) -> double {
                          fail(ErrorKind::Unsupported, "discrete family: use lda_marginal / lda_marginal_exact");
                        },
                        [&](const auto&) -> double { wrong_domain(family_of(spec), "simplex"); },
                    },
                    spec);
}

double kernel_log_density(const KernelSpec& spec, const OrthantPoint& y) {
  return std::visit(Overloaded{
                        [&](const InvertedDirichletKernel& k) { return inverted_dirichlet_log_density(k.alpha, y); },
                        [&](const InvertedBetaLiouvilleKernel& k) { return ibl_log_density(k, y); },
                        [&](const DirichletMultinomialKernel&) -> double {
                          fail(ErrorKind::Unsupported, "discrete family: use dm_pmf / dm_pmf_exact");
                        },
                        [&](const LdaMarginalKernel&) -> double {
                          fail(ErrorKind::Unsupported, "discrete family: use lda_marginal / lda_marginal_exact");
                        },
                        [&](const auto&) -> double { wrong_domain(family_of(spec), "positive orthant"); },
                    },
                    spec);
}

// --- discrete families -------------------------------------------------------

namespace {

void check_counts(int n, std::size_t dim, const MultiIndex& x) {
  require(x.size() == dim, ErrorKind::DimensionMismatch,
          "count vector has length " + std::to_string(x.size()) + ", expected " + std::to_string(dim));
  require(x.order() == n, ErrorKind::InvalidArgument,
          "count vector sums to " + std::to_string(x.order()) + ", expected n = " + std::to_string(n));
}

template <class T>
T lda_enumerate(const PositiveVector<T>& alpha, const TopicMatrix<T>& beta, const Document& w,
                const LdaLimits& limits) {
  const std::size_t topics = alpha.size();
  require(beta.topics() == topics, ErrorKind::DimensionMismatch, "topic matrix rows must match alpha length");
  validate_document(w, beta.vocabulary());
  require(w.size() <= limits.max_words && topics <= limits.max_topics, ErrorKind::Feasibility,
          "LDA enumeration over K^N = " + std::to_string(topics) + "^" + std::to_string(w.size()) +
              " assignments exceeds the cap (N <= " + std::to_string(limits.max_words) +
              ", K <= " + std::to_string(limits.max_topics) + ")");
  const std::size_t words = w.size();
  std::vector<std::size_t> z(words, 0);
  T total = 0;
  while (true) {
    T weight = 1;
    std::vector<int> counts(topics, 0);
    for (std::size_t n = 0; n < words && weight != 0; ++n) {
      weight *= beta.prob(z[n], w[n]);
      ++counts[z[n]];
    }
    if (weight != 0) total += weight * dirichlet_moment(alpha, MultiIndex(counts));
    std::size_t pos = 0;
    while (pos < words && ++z[pos] == topics) z[pos++] = 0;
    if (pos == words) break;
  }
  return total;
}

}  // namespace

Rational dm_pmf_exact(int n, const ExactAlpha& alpha, const MultiIndex& x) {
  check_counts(n, alpha.size(), x);
  Rational value(multinomial(x));
  for (std::size_t j = 0; j < x.size(); ++j) value *= rising_factorial(alpha[j], x[j]);
  return value / rising_factorial(alpha.sum(), n);
}

double dm_pmf(int n, const Alpha& alpha, const MultiIndex& x) {
  check_counts(n, alpha.size(), x);
  double log_value = std::lgamma(n + 1.0) - log_rising_factorial(alpha.sum(), n);
  for (std::size_t j = 0; j < x.size(); ++j)
    log_value += log_rising_factorial(alpha[j], x[j]) - std::lgamma(x[j] + 1.0);
  return std::exp(log_value);
}

Rational lda_marginal_exact(const ExactAlpha& alpha, const TopicMatrix<Rational>& beta, const Document& w,
                            const LdaLimits& limits) {
  return lda_enumerate(alpha, beta, w, limits);
}

double lda_marginal(const Alpha& alpha, const TopicMatrix<double>& beta, const Document& w, const LdaLimits& limits) {
  return lda_enumerate(alpha, beta, w, limits);
}

// --- mixtures ------------------------------------------------------------------

double log_sum_exp(std::span<const double> values) {
  require(!values.empty(), ErrorKind::InvalidArgument, "log-sum-exp of an empty list");
  const double peak = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(peak)) return peak;
  double s = 0.0;
  for (double v : values) s += std::exp(v - peak);
  return peak + std::log(s);
}

double mixture_log_density(const Measure& g, const SimplexPoint& x) {
  require(g.family() == Family::Dirichlet, ErrorKind::Domain,
          "simplex mixtures need a Dirichlet measure, got " + std::string(to_string(g.family())));
  std::vector<double> terms;
  terms.reserve(g.size());
  for (const auto& atom : g.atoms()) terms.push_back(std::log(atom.weight) + dirichlet_log_density(atom.param, x));
  return log_sum_exp(terms);
}

double mixture_log_density(const Measure& g, const OrthantPoint& y) {
  require(g.family() == Family::InvertedDirichlet, ErrorKind::Domain,
          "orthant mixtures need an inverted Dirichlet measure, got " + std::string(to_string(g.family())));
  std::vector<double> terms;
  terms.reserve(g.size());
  for (const auto& atom : g.atoms())
    terms.push_back(std::log(atom.weight) + inverted_dirichlet_log_density(atom.param, y));
  return log_sum_exp(terms);
}

// --- measures --------------------------------------------------------------------

Measure to_double(const ExactMeasure& measure) {
  std::vector<Measure::Atom> atoms;
  atoms.reserve(measure.size());
  for (const auto& atom : measure.atoms()) atoms.push_back({to_double(atom.param), to_double(atom.weight)});
  return Measure(measure.family(), std::move(atoms));
}

bool same_measure(const Measure& a, const Measure& b, double tol) {
  if (a.family() != b.family() || a.size() != b.size() || a.dim() != b.dim()) return false;
  for (const auto& atom : a.atoms()) {
    bool matched = false;
    for (const auto& other : b.atoms()) {
      double dist = 0.0;
      for (std::size_t j = 0; j < a.dim(); ++j) dist = std::max(dist, std::abs(atom.param[j] - other.param[j]));
      if (dist <= tol && std::abs(atom.weight - other.weight) <= tol) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

bool same_measure(const ExactMeasure& a, const ExactMeasure& b) {
  if (a.family() != b.family() || a.size() != b.size() || a.dim() != b.dim()) return false;
  for (const auto& atom : a.atoms())
    if (b.mass_at(atom.param) != atom.weight) return false;
  return true;
}

}  // namespace dirimix
