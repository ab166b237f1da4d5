#pragma once

// Exact rational decision core.
//
// A linear relation sum_i c_i f_{alpha^(i)} among Dirichlet kernels splits by
// congruence class of the parameters modulo Z^J. Inside one class every
// parameter is r + n^(i) with a common residue r in (0,1]^J, and the relation
// is equivalent (after dividing out x^{r-1} c(r)) to the simplex polynomial
// identity sum_i d_i x^{n^(i)} = 0 with
//
//   d_i = c_i (r_+)_{|n^(i)|} / prod_j (r_j)_{n^(i)_j},
//
// which has the same signs as c_i. Such an identity holds on the simplex iff
// every coefficient of its degree elevation to N = max |n^(i)| vanishes.

#include <map>
#include <utility>
#include <vector>

#include "dirimix/measure.hpp"
#include "dirimix/numeric.hpp"

namespace dirimix {

struct MonomialTerm {
  MultiIndex exponent;
  Rational coefficient;
};

/// sum_i d_i x^{n^(i)} for parameters r + n^(i) of one congruence class.
struct MonomialRelation {
  std::size_t dim = 0;
  std::vector<Rational> residue;
  std::vector<MonomialTerm> terms;

  /// Validates distinct exponents, nonzero coefficients and r in (0,1]^J.
  void validate() const;
  int max_degree() const;
  /// Atom r + n^(i) of each term, in term order.
  std::vector<ExactAlpha> parameters() const;
  /// Kernel coefficients c_i recovered from d_i, up to the common positive
  /// factor that was divided out.
  std::vector<Rational> kernel_coefficients() const;
};

struct CongruencePartition {
  std::vector<std::vector<std::size_t>> groups;
};

/// Coefficients A_u of the degree-N elevation, keyed by u with |u| = N.
struct ElevatedForm {
  int degree = 0;
  std::map<MultiIndex, Rational> coefficients;

  bool is_zero() const;
};

struct SignCounts {
  std::size_t positives = 0;
  std::size_t negatives = 0;
  /// (not null) or max(positives, negatives) >= J.
  bool bound_check = true;
};

/// Groups parameters whose pairwise differences are within eps_int of integer
/// vectors. Throws ErrorKind::Ambiguity when that relation is not transitive.
CongruencePartition congruence_partition(const std::vector<Alpha>& params, double eps_int = 1e-9);
CongruencePartition congruence_partition(const std::vector<ExactAlpha>& params);

struct ResidueDecomposition {
  std::vector<Rational> residue;
  std::vector<MultiIndex> exponents;
};

/// alpha^(i) = r + n^(i) with r_j = alpha_j - (ceil(alpha_j) - 1) in (0,1].
ResidueDecomposition residue_decompose(const std::vector<ExactAlpha>& params);

/// One relation per congruence class of the nonzero mass differences
/// G'({gamma}) - G({gamma}). Empty when G = G'.
std::vector<MonomialRelation> relation_from_measures(const ExactMeasure& g, const ExactMeasure& g_prime);

ElevatedForm degree_elevate(const MonomialRelation& rel, int degree);

bool is_null_relation(const MonomialRelation& rel);

SignCounts sign_counts(const MonomialRelation& rel);

/// Sign counts of an arbitrary coefficient vector (zeros ignored).
std::pair<std::size_t, std::size_t> count_signs(const std::vector<Rational>& coefficients);

struct NullBasisLimits {
  std::size_t max_monomials = 200;
};

/// Basis of {d : sum_i d_i x^{n^(i)} = 0 on the simplex}, as primitive integer
/// vectors (gcd 1, first nonzero entry positive), each checked with
/// is_null_relation.
std::vector<std::vector<Rational>> null_relation_basis(const std::vector<MultiIndex>& exponents, std::size_t dim,
                                                       const NullBasisLimits& limits = {});

/// Relation with the given exponents and coefficients; zero coefficients are
/// dropped. Residue defaults to the all-ones vector.
MonomialRelation make_relation(const std::vector<MultiIndex>& exponents, const std::vector<Rational>& coefficients,
                               std::vector<Rational> residue = {});

/// Evaluates sum_i d_i x^{n^(i)} exactly at a rational simplex point.
Rational evaluate_relation(const MonomialRelation& rel, const std::vector<Rational>& x);
Rational evaluate_elevated(const ElevatedForm& form, const std::vector<Rational>& x);

}  // namespace dirimix
