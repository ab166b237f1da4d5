#include "dirimix/exactpoly.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace dirimix {

// --- MonomialRelation --------------------------------------------------------

void MonomialRelation::validate() const {
  require(residue.size() == dim, ErrorKind::DimensionMismatch, "relation residue has the wrong length");
  for (const auto& r : residue)
    require(sgn(r) > 0 && r <= 1, ErrorKind::InvalidArgument, "relation residue entries must lie in (0,1]");
  std::set<MultiIndex> seen;
  for (const auto& term : terms) {
    require(term.exponent.size() == dim, ErrorKind::DimensionMismatch, "relation exponent has the wrong length");
    require(sgn(term.coefficient) != 0, ErrorKind::InvalidArgument, "relation coefficients must be nonzero");
    require(seen.insert(term.exponent).second, ErrorKind::InvalidArgument,
            "relation exponent " + to_string(term.exponent) + " repeated");
  }
}

int MonomialRelation::max_degree() const {
  int degree = 0;
  for (const auto& term : terms) degree = std::max(degree, term.exponent.order());
  return degree;
}

std::vector<ExactAlpha> MonomialRelation::parameters() const {
  std::vector<ExactAlpha> out;
  out.reserve(terms.size());
  for (const auto& term : terms) {
    std::vector<Rational> param(dim);
    for (std::size_t j = 0; j < dim; ++j) param[j] = residue[j] + term.exponent[j];
    out.emplace_back(std::move(param));
  }
  return out;
}

std::vector<Rational> MonomialRelation::kernel_coefficients() const {
  Rational residue_total = 0;
  for (const auto& r : residue) residue_total += r;
  std::vector<Rational> out;
  out.reserve(terms.size());
  for (const auto& term : terms) {
    Rational factor = 1;
    for (std::size_t j = 0; j < dim; ++j) factor *= rising_factorial(residue[j], term.exponent[j]);
    out.push_back(term.coefficient * factor / rising_factorial(residue_total, term.exponent.order()));
  }
  return out;
}

bool ElevatedForm::is_zero() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](const auto& kv) { return sgn(kv.second) == 0; });
}

// --- congruence ----------------------------------------------------------------

namespace {

template <class Related>
CongruencePartition partition_by(std::size_t count, Related related) {
  std::vector<std::vector<bool>> rel(count, std::vector<bool>(count, false));
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t k = i; k < count; ++k) rel[i][k] = rel[k][i] = (i == k) || related(i, k);

  CongruencePartition partition;
  std::vector<bool> assigned(count, false);
  for (std::size_t i = 0; i < count; ++i) {
    if (assigned[i]) continue;
    // Connected component of i.
    std::vector<std::size_t> group{i};
    assigned[i] = true;
    for (std::size_t head = 0; head < group.size(); ++head)
      for (std::size_t k = 0; k < count; ++k)
        if (!assigned[k] && rel[group[head]][k]) {
          assigned[k] = true;
          group.push_back(k);
        }
    std::sort(group.begin(), group.end());
    // Transitivity audit: a component must be a clique.
    for (std::size_t a = 0; a < group.size(); ++a)
      for (std::size_t b = a + 1; b < group.size(); ++b)
        require(rel[group[a]][group[b]], ErrorKind::Ambiguity,
                "integer-congruence relation is not transitive on parameters " + std::to_string(group[a] + 1) +
                    " and " + std::to_string(group[b] + 1) + "; adjust the integer tolerance");
    partition.groups.push_back(std::move(group));
  }
  return partition;
}

}  // namespace

CongruencePartition congruence_partition(const std::vector<Alpha>& params, double eps_int) {
  require(eps_int >= 0 && eps_int <= 0.1, ErrorKind::InvalidArgument, "integer tolerance must lie in [0, 0.1]");
  for (const auto& p : params)
    require(p.size() == params.front().size(), ErrorKind::DimensionMismatch, "parameters of mixed dimension");
  return partition_by(params.size(), [&](std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < params[i].size(); ++j) {
      const double diff = params[i][j] - params[k][j];
      if (std::abs(diff - std::round(diff)) > eps_int) return false;
    }
    return true;
  });
}

CongruencePartition congruence_partition(const std::vector<ExactAlpha>& params) {
  for (const auto& p : params)
    require(p.size() == params.front().size(), ErrorKind::DimensionMismatch, "parameters of mixed dimension");
  return partition_by(params.size(), [&](std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < params[i].size(); ++j)
      if (!is_integer(Rational(params[i][j] - params[k][j]))) return false;
    return true;
  });
}

ResidueDecomposition residue_decompose(const std::vector<ExactAlpha>& params) {
  require(!params.empty(), ErrorKind::InvalidArgument, "residue decomposition of an empty class");
  const std::size_t dim = params.front().size();
  ResidueDecomposition out;
  out.residue.resize(dim);
  for (std::size_t j = 0; j < dim; ++j) out.residue[j] = params.front()[j] - Rational(ceil_integer(params.front()[j]) - 1);
  std::set<MultiIndex> seen;
  for (std::size_t i = 0; i < params.size(); ++i) {
    require(params[i].size() == dim, ErrorKind::DimensionMismatch, "parameters of mixed dimension");
    std::vector<int> n(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      const Rational r = params[i][j] - Rational(ceil_integer(params[i][j]) - 1);
      require(r == out.residue[j], ErrorKind::InvalidArgument,
              "parameter " + std::to_string(i + 1) + " is not congruent to the first modulo Z^J");
      const Rational shift = params[i][j] - r;
      require(shift.get_num().fits_sint_p(), ErrorKind::Range, "exponent does not fit in an int");
      n[j] = static_cast<int>(shift.get_num().get_si());
    }
    MultiIndex exponent(std::move(n));
    require(seen.insert(exponent).second, ErrorKind::InvalidArgument, "parameters in a class must be distinct");
    out.exponents.push_back(std::move(exponent));
  }
  return out;
}

std::vector<MonomialRelation> relation_from_measures(const ExactMeasure& g, const ExactMeasure& g_prime) {
  require(g.family() == g_prime.family(), ErrorKind::InvalidArgument, "measures belong to different families");
  require(g.dim() == g_prime.dim(), ErrorKind::DimensionMismatch, "measures have different J");
  std::vector<ExactAlpha> support;
  std::vector<Rational> mass;
  auto collect = [&](const ExactMeasure& m) {
    for (const auto& atom : m.atoms()) {
      if (std::find(support.begin(), support.end(), atom.param) != support.end()) continue;
      Rational c = g_prime.mass_at(atom.param) - g.mass_at(atom.param);
      if (sgn(c) == 0) continue;
      support.push_back(atom.param);
      mass.push_back(std::move(c));
    }
  };
  collect(g);
  collect(g_prime);

  std::vector<MonomialRelation> relations;
  for (const auto& group : congruence_partition(support).groups) {
    std::vector<ExactAlpha> params;
    for (auto i : group) params.push_back(support[i]);
    auto decomposition = residue_decompose(params);
    MonomialRelation rel;
    rel.dim = g.dim();
    rel.residue = decomposition.residue;
    Rational residue_total = 0;
    for (const auto& r : rel.residue) residue_total += r;
    for (std::size_t k = 0; k < group.size(); ++k) {
      const auto& n = decomposition.exponents[k];
      Rational denominator = 1;
      for (std::size_t j = 0; j < rel.dim; ++j) denominator *= rising_factorial(rel.residue[j], n[j]);
      rel.terms.push_back({n, mass[group[k]] * rising_factorial(residue_total, n.order()) / denominator});
    }
    rel.validate();
    relations.push_back(std::move(rel));
  }
  return relations;
}

// --- elevation -------------------------------------------------------------------

ElevatedForm degree_elevate(const MonomialRelation& rel, int degree) {
  require(rel.dim >= 1, ErrorKind::InvalidArgument, "relation has no dimension");
  require(degree >= rel.max_degree(), ErrorKind::InvalidArgument,
          "elevation degree " + std::to_string(degree) + " is below the relation degree " +
              std::to_string(rel.max_degree()));
  ElevatedForm form;
  form.degree = degree;
  for (auto& u : compositions(rel.dim, degree)) form.coefficients.emplace(std::move(u), Rational(0));
  for (const auto& term : rel.terms) {
    for (const auto& beta : compositions(rel.dim, degree - term.exponent.order())) {
      form.coefficients[term.exponent + beta] += term.coefficient * Rational(multinomial(beta));
    }
  }
  return form;
}

bool is_null_relation(const MonomialRelation& rel) {
  if (rel.terms.empty()) return true;
  return degree_elevate(rel, rel.max_degree()).is_zero();
}

std::pair<std::size_t, std::size_t> count_signs(const std::vector<Rational>& coefficients) {
  std::size_t positives = 0, negatives = 0;
  for (const auto& c : coefficients) {
    if (sgn(c) > 0) ++positives;
    if (sgn(c) < 0) ++negatives;
  }
  return {positives, negatives};
}

SignCounts sign_counts(const MonomialRelation& rel) {
  std::vector<Rational> coefficients;
  for (const auto& term : rel.terms) coefficients.push_back(term.coefficient);
  auto [positives, negatives] = count_signs(coefficients);
  SignCounts counts{positives, negatives, true};
  if (!rel.terms.empty() && is_null_relation(rel)) counts.bound_check = std::max(positives, negatives) >= rel.dim;
  return counts;
}

MonomialRelation make_relation(const std::vector<MultiIndex>& exponents, const std::vector<Rational>& coefficients,
                               std::vector<Rational> residue) {
  require(exponents.size() == coefficients.size(), ErrorKind::DimensionMismatch,
          "exponent and coefficient lists differ in length");
  require(!exponents.empty(), ErrorKind::InvalidArgument, "relation needs at least one exponent");
  MonomialRelation rel;
  rel.dim = exponents.front().size();
  rel.residue = residue.empty() ? std::vector<Rational>(rel.dim, Rational(1)) : std::move(residue);
  for (std::size_t i = 0; i < exponents.size(); ++i)
    if (sgn(coefficients[i]) != 0) rel.terms.push_back({exponents[i], coefficients[i]});
  rel.validate();
  return rel;
}

// --- null space ------------------------------------------------------------------

std::vector<std::vector<Rational>> null_relation_basis(const std::vector<MultiIndex>& exponents, std::size_t dim,
                                                       const NullBasisLimits& limits) {
  require(!exponents.empty(), ErrorKind::InvalidArgument, "null_relation_basis needs at least one exponent");
  require(exponents.size() <= limits.max_monomials, ErrorKind::Feasibility,
          "lattice has " + std::to_string(exponents.size()) + " monomials, cap is " +
              std::to_string(limits.max_monomials));
  std::set<MultiIndex> distinct;
  int degree = 0;
  for (const auto& n : exponents) {
    require(n.size() == dim, ErrorKind::DimensionMismatch, "exponent length differs from J");
    require(distinct.insert(n).second, ErrorKind::InvalidArgument, "exponents must be distinct");
    degree = std::max(degree, n.order());
  }

  // Elevation matrix: rows are level-N monomials u, columns the exponents.
  const auto levels = compositions(dim, degree);
  const std::size_t rows = levels.size();
  const std::size_t cols = exponents.size();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols, 0));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (exponents[c].dominated_by(levels[r])) a[r][c] = multinomial(levels[r] - exponents[c]);

  // Fraction-free (Bareiss) elimination to row echelon form.
  std::vector<std::size_t> pivots;
  mpz_class previous = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        mpz_class value = a[rank][c] * a[i][k] - a[i][c] * a[rank][k];
        require(mpz_divisible_p(value.get_mpz_t(), previous.get_mpz_t()) != 0, ErrorKind::Range,
                "fraction-free elimination lost exactness");
        mpz_divexact(a[i][k].get_mpz_t(), value.get_mpz_t(), previous.get_mpz_t());
      }
      a[i][c] = 0;
    }
    previous = a[rank][c];
    pivots.push_back(c);
    ++rank;
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> d(cols, Rational(0));
    d[free] = 1;
    for (std::size_t row = rank; row-- > 0;) {
      const std::size_t pc = pivots[row];
      Rational s = 0;
      for (std::size_t k = pc + 1; k < cols; ++k)
        if (a[row][k] != 0) s += Rational(a[row][k]) * d[k];
      d[pc] = -s / Rational(a[row][pc]);
    }
    // Scale to a primitive integer vector with positive leading entry.
    mpz_class lcm_den = 1, gcd_num = 0;
    for (const auto& v : d) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), v.get_den_mpz_t());
    for (auto& v : d) {
      v *= lcm_den;
      mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), v.get_num_mpz_t());
    }
    const auto lead = std::find_if(d.begin(), d.end(), [](const Rational& v) { return sgn(v) != 0; });
    if (sgn(*lead) < 0) gcd_num = -gcd_num;
    for (auto& v : d) v /= Rational(gcd_num);

    require(is_null_relation(make_relation(exponents, d)), ErrorKind::Range,
            "computed null vector failed the elevation check");
    basis.push_back(std::move(d));
  }
  return basis;
}

// --- evaluation --------------------------------------------------------------------

namespace {

Rational monomial(const MultiIndex& n, const std::vector<Rational>& x) {
  Rational value = 1;
  for (std::size_t j = 0; j < n.size(); ++j) {
    Rational p;
    mpz_pow_ui(p.get_num_mpz_t(), x[j].get_num_mpz_t(), static_cast<unsigned long>(n[j]));
    mpz_pow_ui(p.get_den_mpz_t(), x[j].get_den_mpz_t(), static_cast<unsigned long>(n[j]));
    value *= p;
  }
  return value;
}

}  // namespace

Rational evaluate_relation(const MonomialRelation& rel, const std::vector<Rational>& x) {
  require(x.size() == rel.dim, ErrorKind::DimensionMismatch, "evaluation point has the wrong length");
  Rational value = 0;
  for (const auto& term : rel.terms) value += term.coefficient * monomial(term.exponent, x);
  return value;
}

Rational evaluate_elevated(const ElevatedForm& form, const std::vector<Rational>& x) {
  Rational value = 0;
  for (const auto& [u, a] : form.coefficients) {
    require(x.size() == u.size(), ErrorKind::DimensionMismatch, "evaluation point has the wrong length");
    if (sgn(a) != 0) value += a * monomial(u, x);
  }
  return value;
}

}  // namespace dirimix
