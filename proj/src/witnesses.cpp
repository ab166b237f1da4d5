#include "dirimix/witnesses.hpp"

#include <cmath>
#include <numeric>

namespace dirimix {

template <class T>
WitnessPair<T> shift_witness(const PositiveVector<T>& alpha, Family family) {
  const T total = alpha.sum();
  std::vector<typename MixingMeasure<T>::Atom> atoms;
  atoms.reserve(alpha.size());
  for (std::size_t j = 0; j < alpha.size(); ++j) atoms.push_back({alpha.unit_shift(j), T(alpha[j] / total)});
  if constexpr (!is_exact_v<T>) {
    // Renormalize so the float weights sum to 1 as closely as possible.
    double s = 0.0;
    for (const auto& a : atoms) s += a.weight;
    for (auto& a : atoms) a.weight /= s;
  }
  return WitnessPair<T>{MixingMeasure<T>::point_mass(family, alpha), MixingMeasure<T>(family, std::move(atoms)),
                        "unit-shift identity f_alpha = sum_j (alpha_j/alpha_+) f_{alpha+e_j} in the " +
                            std::string(to_string(family)) + " family"};
}

double shift_residual(const Alpha& alpha, const SimplexPoint& x) {
  const double base = std::exp(dirichlet_log_density(alpha, x));
  const double total = alpha.sum();
  double mixture = 0.0;
  for (std::size_t j = 0; j < alpha.size(); ++j)
    mixture += alpha[j] / total * std::exp(dirichlet_log_density(alpha.unit_shift(j), x));
  return base - mixture;
}

template <class T>
MixingMeasure<T> expand_atom(const MixingMeasure<T>& g, std::size_t index) {
  require(index < g.size(), ErrorKind::InvalidArgument,
          "atom index " + std::to_string(index) + " out of range for a measure with " + std::to_string(g.size()) +
              " atoms");
  std::vector<typename MixingMeasure<T>::Atom> atoms;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (k != index) atoms.push_back(g[k]);
  const auto& expanded = g[index];
  const T total = expanded.param.sum();
  for (std::size_t j = 0; j < expanded.param.size(); ++j) {
    auto param = expanded.param.unit_shift(j);
    T weight = expanded.weight * expanded.param[j] / total;
    bool merged = false;
    for (auto& atom : atoms) {
      if (MixingMeasure<T>::same_atom(atom.param, param)) {
        atom.weight += weight;
        merged = true;
        break;
      }
    }
    if (!merged) atoms.push_back({std::move(param), std::move(weight)});
  }
  return MixingMeasure<T>(g.family(), std::move(atoms));
}

KernelSpec embed(const Alpha& alpha, Family target) {
  const std::size_t d = alpha.size() - 1;
  std::vector<double> head(alpha.begin(), alpha.begin() + static_cast<std::ptrdiff_t>(d));
  const double head_sum = std::accumulate(head.begin(), head.end(), 0.0);
  switch (target) {
    case Family::GeneralizedDirichlet: {
      std::vector<double> b(d);
      double tail = 0.0;
      for (std::size_t j = d; j-- > 0;) {
        tail += alpha[j + 1];
        b[j] = tail;
      }
      return GeneralizedDirichletKernel(std::move(head), std::move(b));
    }
    case Family::BetaLiouville:
      return BetaLiouvilleKernel(std::move(head), head_sum, alpha[d]);
    case Family::InvertedBetaLiouville:
      return InvertedBetaLiouvilleKernel(std::move(head), head_sum, alpha[d], 1.0);
    default:
      fail(ErrorKind::Unsupported, "embedding target must be generalized_dirichlet, beta_liouville or "
                                   "inverted_beta_liouville, not " + std::string(to_string(target)));
  }
}

Rational dm_shift_residual(int n, const ExactAlpha& alpha, const MultiIndex& x) {
  const Rational total = alpha.sum();
  Rational residual = dm_pmf_exact(n, alpha, x);
  for (std::size_t j = 0; j < alpha.size(); ++j) residual -= alpha[j] / total * dm_pmf_exact(n, alpha.unit_shift(j), x);
  return residual;
}

Rational lda_shift_residual(const ExactAlpha& alpha, const TopicMatrix<Rational>& beta, const Document& w,
                            const LdaLimits& limits) {
  const Rational total = alpha.sum();
  Rational residual = lda_marginal_exact(alpha, beta, w, limits);
  for (std::size_t k = 0; k < alpha.size(); ++k)
    residual -= alpha[k] / total * lda_marginal_exact(alpha.unit_shift(k), beta, w, limits);
  return residual;
}

template WitnessPair<double> shift_witness(const Alpha&, Family);
template WitnessPair<Rational> shift_witness(const ExactAlpha&, Family);
template Measure expand_atom(const Measure&, std::size_t);
template ExactMeasure expand_atom(const ExactMeasure&, std::size_t);

}  // namespace dirimix
