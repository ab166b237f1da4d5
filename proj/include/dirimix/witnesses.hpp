#pragma once

// Constructors and residual checks for the unit-shift identity
//   f_alpha = sum_j (alpha_j / alpha_+) f_{alpha + e_j}
// and for the families into which the Dirichlet family embeds.

#include <string>

#include "dirimix/kernels.hpp"
#include "dirimix/measure.hpp"

namespace dirimix {

/// Two distinct mixing measures inducing the same mixture.
template <class T>
struct WitnessPair {
  MixingMeasure<T> g0;
  MixingMeasure<T> g1;
  std::string provenance;

  Family family() const noexcept { return g0.family(); }
};

/// G0 = delta_alpha, G1 = sum_j (alpha_j / alpha_+) delta_{alpha + e_j}.
template <class T>
WitnessPair<T> shift_witness(const PositiveVector<T>& alpha, Family family = Family::Dirichlet);

/// f_alpha(x) - sum_j (alpha_j / alpha_+) f_{alpha + e_j}(x).
double shift_residual(const Alpha& alpha, const SimplexPoint& x);

/// Replaces atom `index` by its unit-shift expansion, merging atoms that
/// coincide with existing ones. The induced mixture is unchanged.
template <class T>
MixingMeasure<T> expand_atom(const MixingMeasure<T>& g, std::size_t index);

/// Kernel of the richer family whose density equals the Dirichlet density
/// with parameter alpha (GD, BL) or the inverted Dirichlet density (IBL).
KernelSpec embed(const Alpha& alpha, Family target);

/// p_{n,alpha}(x) - sum_j (alpha_j / alpha_+) p_{n,alpha+e_j}(x).
Rational dm_shift_residual(int n, const ExactAlpha& alpha, const MultiIndex& x);

/// q_{alpha,beta}(w) - sum_k (alpha_k / alpha_+) q_{alpha+e_k,beta}(w).
Rational lda_shift_residual(const ExactAlpha& alpha, const TopicMatrix<Rational>& beta, const Document& w,
                            const LdaLimits& limits = {});

extern template WitnessPair<double> shift_witness(const Alpha&, Family);
extern template WitnessPair<Rational> shift_witness(const ExactAlpha&, Family);
extern template Measure expand_atom(const Measure&, std::size_t);
extern template ExactMeasure expand_atom(const ExactMeasure&, std::size_t);

}  // namespace dirimix
