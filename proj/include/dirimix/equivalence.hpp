#pragma once

// Deciding m_G = m_G' and certifying identifiable regimes.
//
// decide_equality dispatches to one of three methods:
//   ExactPolynomial  rational atoms; exact, never wrong.
//   ClosedFormL2     float atoms with every pairwise alpha_j + beta_j > 1;
//                    ||m_G - m_G'||_2 from closed-form kernel inner products.
//   MonteCarlo       everything else; can refute equality but never confirm it.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dirimix/exactpoly.hpp"
#include "dirimix/measure.hpp"

namespace dirimix {

enum class Verdict { Equal, NotEqual, Inconclusive };
enum class Method { ExactPolynomial, ClosedFormL2, MonteCarlo };

std::string_view to_string(Verdict v);
std::string_view to_string(Method m);
Verdict parse_verdict(std::string_view text);
Method parse_method(std::string_view text);

struct RelationCertificate {
  Verdict verdict = Verdict::Inconclusive;
  Method method = Method::MonteCarlo;
  /// Set for ExactPolynomial: max |A_u| over all congruence classes.
  std::optional<Rational> exact_residual;
  /// Float residual: L2 distance, or max relative MC discrepancy.
  double residual = 0.0;
  /// ||m_G||_2 for ClosedFormL2, the MC standard error for MonteCarlo.
  double scale = 0.0;
  /// ExactPolynomial: (positive, negative) coefficient counts of G' - G,
  /// summed over congruence classes.
  std::optional<std::pair<std::size_t, std::size_t>> sign_counts;

  friend bool operator==(const RelationCertificate&, const RelationCertificate&) = default;
};

enum class Regime { FixedTotalSlice, BoxRegion, FewAtoms };
std::string_view to_string(Regime r);
Regime parse_regime(std::string_view text);

/// Evidence that a pair of measures lies in a class where equal mixtures
/// force equal measures. Constructed only through the checking factories.
class IdentifiabilityCertificate {
 public:
  struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    friend bool operator==(const Interval&, const Interval&) = default;
  };

  /// All atoms share total A (exactly, or within 1e-12 relative).
  template <class T>
  static IdentifiabilityCertificate fixed_total(const std::vector<PositiveVector<T>>& atoms);
  /// Every coordinate other than `baseline` (0-based) spreads by < 1.
  template <class T>
  static IdentifiabilityCertificate box_region(const std::vector<PositiveVector<T>>& atoms, std::size_t baseline);
  /// Each measure has at most J-1 atoms.
  static IdentifiabilityCertificate few_atoms(std::size_t atom_count, std::size_t dim);
  /// Rebuilds a certificate from serialized fields, re-checking their shape.
  static IdentifiabilityCertificate from_parts(Regime regime, std::size_t dim, std::size_t atom_count, double total,
                                               std::optional<std::string> exact_total, std::size_t baseline,
                                               std::vector<Interval> intervals);

  Regime regime() const noexcept { return regime_; }
  std::size_t dim() const noexcept { return dim_; }
  double total() const noexcept { return total_; }
  /// Exact total as "p/q" when atoms were rational.
  const std::optional<std::string>& exact_total() const noexcept { return exact_total_; }
  std::size_t baseline() const noexcept { return baseline_; }
  /// Spans [min, max] of the non-baseline coordinates, in coordinate order.
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  std::size_t atom_count() const noexcept { return atom_count_; }

  friend bool operator==(const IdentifiabilityCertificate&, const IdentifiabilityCertificate&) = default;

 private:
  IdentifiabilityCertificate() = default;
  Regime regime_ = Regime::FewAtoms;
  std::size_t dim_ = 0;
  double total_ = 0.0;
  std::optional<std::string> exact_total_;
  std::size_t baseline_ = 0;
  std::vector<Interval> intervals_;
  std::size_t atom_count_ = 0;
};

/// <f_alpha, f_beta> = c(alpha) c(beta) / c(alpha + beta - 1); needs alpha_j + beta_j > 1.
double inner_product(const Alpha& alpha, const Alpha& beta);
bool inner_product_feasible(const Alpha& alpha, const Alpha& beta);

/// ||m_G - m_G'||_2 on the simplex (inverted measures are taken through the
/// chart, which leaves equality unchanged). Accumulated in 50-digit precision.
double l2_distance(const Measure& g, const Measure& g_prime);
double l2_norm(const Measure& g);

Eigen::MatrixXd gram_matrix(const std::vector<Alpha>& params);

struct NullSpace {
  /// Null vectors scaled so their first significant entry is 1.
  std::vector<Eigen::VectorXd> vectors;
  /// Ascending eigenvalues of the input matrix.
  Eigen::VectorXd eigenvalues;
  /// lambda_max / lambda_min over positive eigenvalues (inf if none).
  double condition = 0.0;
};

/// Eigenvectors of a symmetric matrix with eigenvalue <= tol * lambda_max.
NullSpace numerical_null_space(const Eigen::MatrixXd& matrix, double tol);

struct MonteCarloStats {
  double mean_abs_rel = 0.0;
  double max_abs_rel = 0.0;
  double std_err = 0.0;
  std::size_t samples = 0;
};

/// Statistics of |m_G(x) - m_G'(x)| / f_{alpha0}(x) for x ~ Dir(alpha0).
/// Reproducible bit-for-bit given (seed, n_samples, chunk_size).
MonteCarloStats mc_discrepancy(const Measure& g, const Measure& g_prime, const Alpha& reference,
                               std::size_t n_samples, std::uint64_t seed, std::size_t chunk_size = 4096);

template <class T>
std::vector<IdentifiabilityCertificate> certify(const MixingMeasure<T>& g);
template <class T>
std::vector<IdentifiabilityCertificate> certify(const MixingMeasure<T>& g, const MixingMeasure<T>& g_prime);

struct EqualityOptions {
  std::uint64_t seed = 0x5eed;
  std::size_t mc_samples = 100000;
  double l2_rel_tol = 1e-10;
};

RelationCertificate decide_equality(const ExactMeasure& g, const ExactMeasure& g_prime);
RelationCertificate decide_equality(const Measure& g, const Measure& g_prime, const EqualityOptions& options = {});
/// Exact path when both are rational; otherwise both are taken as floats.
RelationCertificate decide_equality(const AnyMeasure& g, const AnyMeasure& g_prime,
                                    const EqualityOptions& options = {});

extern template IdentifiabilityCertificate IdentifiabilityCertificate::fixed_total(const std::vector<Alpha>&);
extern template IdentifiabilityCertificate IdentifiabilityCertificate::fixed_total(const std::vector<ExactAlpha>&);
extern template IdentifiabilityCertificate IdentifiabilityCertificate::box_region(const std::vector<Alpha>&,
                                                                                  std::size_t);
extern template IdentifiabilityCertificate IdentifiabilityCertificate::box_region(const std::vector<ExactAlpha>&,
                                                                                  std::size_t);
extern template std::vector<IdentifiabilityCertificate> certify(const Measure&);
extern template std::vector<IdentifiabilityCertificate> certify(const ExactMeasure&);
extern template std::vector<IdentifiabilityCertificate> certify(const Measure&, const Measure&);
extern template std::vector<IdentifiabilityCertificate> certify(const ExactMeasure&, const ExactMeasure&);

}  // namespace dirimix
