#pragma once

// Log-density and pmf evaluation for the Dirichlet family and the richer
// families built on top of it.

#include <cstddef>
#include <variant>
#include <vector>

#include "dirimix/family.hpp"
#include "dirimix/measure.hpp"
#include "dirimix/numeric.hpp"
#include "dirimix/points.hpp"

namespace dirimix {

/// K x V row-stochastic topic matrix. Rational rows must sum to exactly 1;
/// double rows within 1e-12 of 1 are renormalized, others rejected.
template <class T>
class TopicMatrix {
 public:
  static constexpr double kRowSumTolerance = 1e-12;

  explicit TopicMatrix(std::vector<std::vector<T>> rows);

  std::size_t topics() const noexcept { return rows_.size(); }
  std::size_t vocabulary() const noexcept { return rows_.front().size(); }
  /// 0-based topic k, 1-based word v.
  const T& prob(std::size_t k, int word) const { return rows_[k][static_cast<std::size_t>(word - 1)]; }
  const std::vector<std::vector<T>>& rows() const noexcept { return rows_; }

 private:
  std::vector<std::vector<T>> rows_;
};

/// Word indices, 1-based.
using Document = std::vector<int>;

struct DirichletKernel {
  Alpha alpha;
};

struct InvertedDirichletKernel {
  Alpha alpha;
};

/// Connor-Mosimann generalized Dirichlet with J-1 pairs (a_j, b_j).
struct GeneralizedDirichletKernel {
  GeneralizedDirichletKernel(std::vector<double> a, std::vector<double> b);
  std::vector<double> a;
  std::vector<double> b;
  /// gamma_j = b_j - a_{j+1} - b_{j+1} for j < J-1, gamma_{J-1} = b_{J-1} - 1.
  std::vector<double> exponents() const;
  std::size_t dim() const noexcept { return a.size() + 1; }
};

struct BetaLiouvilleKernel {
  BetaLiouvilleKernel(std::vector<double> a_vec, double a, double b);
  std::vector<double> a_vec;
  double a;
  double b;
  std::size_t dim() const noexcept { return a_vec.size() + 1; }
};

struct InvertedBetaLiouvilleKernel {
  InvertedBetaLiouvilleKernel(std::vector<double> a_vec, double a, double b, double lambda);
  std::vector<double> a_vec;
  double a;
  double b;
  double lambda;
  std::size_t dim() const noexcept { return a_vec.size() + 1; }
};

struct DirichletMultinomialKernel {
  DirichletMultinomialKernel(int n, Alpha alpha);
  int n;
  Alpha alpha;
};

struct LdaMarginalKernel {
  LdaMarginalKernel(Alpha alpha, TopicMatrix<double> beta, Document document);
  Alpha alpha;
  TopicMatrix<double> beta;
  Document document;
};

using KernelSpec = std::variant<DirichletKernel, InvertedDirichletKernel, GeneralizedDirichletKernel,
                                BetaLiouvilleKernel, InvertedBetaLiouvilleKernel, DirichletMultinomialKernel,
                                LdaMarginalKernel>;

Family family_of(const KernelSpec& spec);
/// J: simplex dimension + 1 (or number of topics K for LDA).
std::size_t dimension_of(const KernelSpec& spec);

/// Log-density on the simplex interior (Dirichlet, GD, BL).
double kernel_log_density(const KernelSpec& spec, const SimplexPoint& x);
/// Log-density on the positive orthant (inverted Dirichlet, inverted BL).
double kernel_log_density(const KernelSpec& spec, const OrthantPoint& y);

double dirichlet_log_density(const Alpha& alpha, const SimplexPoint& x);
double inverted_dirichlet_log_density(const Alpha& alpha, const OrthantPoint& y);

/// Caps on the K^N topic-assignment enumeration behind the LDA marginal.
struct LdaLimits {
  std::size_t max_words = 8;
  std::size_t max_topics = 4;
};

/// n!/prod x_j! * prod_j (alpha_j)_{x_j} / (alpha_+)_n.
Rational dm_pmf_exact(int n, const ExactAlpha& alpha, const MultiIndex& x);
double dm_pmf(int n, const Alpha& alpha, const MultiIndex& x);

/// q_{alpha,beta}(w) by enumeration of all topic assignments.
Rational lda_marginal_exact(const ExactAlpha& alpha, const TopicMatrix<Rational>& beta, const Document& w,
                            const LdaLimits& limits = {});
double lda_marginal(const Alpha& alpha, const TopicMatrix<double>& beta, const Document& w,
                    const LdaLimits& limits = {});

/// log sum_k pi_k f_k(point) by log-sum-exp, for Dirichlet (simplex) or
/// inverted Dirichlet (orthant) measures.
double mixture_log_density(const Measure& g, const SimplexPoint& x);
double mixture_log_density(const Measure& g, const OrthantPoint& y);

/// Numerically stable log(sum exp(v)).
double log_sum_exp(std::span<const double> values);

// ---------------------------------------------------------------------------

template <class T>
TopicMatrix<T>::TopicMatrix(std::vector<std::vector<T>> rows) : rows_(std::move(rows)) {
  require(!rows_.empty() && !rows_.front().empty(), ErrorKind::InvalidArgument, "topic matrix must be non-empty");
  const std::size_t v = rows_.front().size();
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    auto& row = rows_[k];
    require(row.size() == v, ErrorKind::DimensionMismatch, "topic matrix rows have unequal length");
    T total = 0;
    for (const auto& p : row) {
      if constexpr (is_exact_v<T>) {
        require(sgn(p) >= 0, ErrorKind::InvalidArgument, "topic probabilities must be >= 0");
      } else {
        require(std::isfinite(p) && p >= 0, ErrorKind::InvalidArgument, "topic probabilities must be >= 0");
      }
      total += p;
    }
    if constexpr (is_exact_v<T>) {
      require(total == 1, ErrorKind::InvalidArgument,
              "topic row " + std::to_string(k + 1) + " sums to " + to_string(total) + ", not 1");
    } else {
      require(std::abs(total - 1.0) <= kRowSumTolerance, ErrorKind::InvalidArgument,
              "topic row " + std::to_string(k + 1) + " is not stochastic within 1e-12");
      for (auto& p : row) p /= total;
    }
  }
}

}  // namespace dirimix
