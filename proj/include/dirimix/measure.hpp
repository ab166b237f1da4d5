#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "dirimix/family.hpp"
#include "dirimix/numeric.hpp"

namespace dirimix {

/// Finite discrete mixing measure G = sum_k pi_k delta_{alpha^(k)}.
///
/// Weights are positive and sum to one (exactly for Rational, within 1e-12
/// for double). Atoms are pairwise distinct (exactly, or with infinity-norm
/// separation above 1e-9 for double).
template <class T>
class MixingMeasure {
 public:
  struct Atom {
    PositiveVector<T> param;
    T weight;
  };

  static constexpr double kWeightSumTolerance = 1e-12;
  static constexpr double kAtomSeparation = 1e-9;

  MixingMeasure(Family family, std::vector<Atom> atoms);

  static MixingMeasure point_mass(Family family, PositiveVector<T> param) {
    return MixingMeasure(family, {Atom{std::move(param), T(1)}});
  }

  Family family() const noexcept { return family_; }
  std::size_t dim() const noexcept { return atoms_.front().param.size(); }
  std::size_t size() const noexcept { return atoms_.size(); }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const Atom& operator[](std::size_t k) const { return atoms_[k]; }

  /// G({param}); zero when param is not an atom.
  T mass_at(const PositiveVector<T>& param) const;
  /// Index of the atom matching param, or size() when absent.
  std::size_t find(const PositiveVector<T>& param) const;

  static bool same_atom(const PositiveVector<T>& a, const PositiveVector<T>& b);

 private:
  Family family_;
  std::vector<Atom> atoms_;
};

using Measure = MixingMeasure<double>;
using ExactMeasure = MixingMeasure<Rational>;
/// Either representation, as read from JSON.
using AnyMeasure = std::variant<Measure, ExactMeasure>;

Measure to_double(const ExactMeasure& measure);

/// Atom-by-atom comparison up to permutation; weights and atoms compared with
/// absolute tolerance `tol` (exact comparison for Rational when tol is 0).
bool same_measure(const Measure& a, const Measure& b, double tol);
bool same_measure(const ExactMeasure& a, const ExactMeasure& b);

// ---------------------------------------------------------------------------

template <class T>
bool MixingMeasure<T>::same_atom(const PositiveVector<T>& a, const PositiveVector<T>& b) {
  if (a.size() != b.size()) return false;
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    double dist = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) dist = std::max(dist, std::abs(a[j] - b[j]));
    return dist <= kAtomSeparation;
  }
}

template <class T>
MixingMeasure<T>::MixingMeasure(Family family, std::vector<Atom> atoms) : family_(family), atoms_(std::move(atoms)) {
  require(is_alpha_indexed(family), ErrorKind::Unsupported,
          "mixing measures are supported for alpha-indexed families only, not " + std::string(to_string(family)));
  require(!atoms_.empty(), ErrorKind::InvalidArgument, "mixing measure needs at least one atom");
  const std::size_t dim = atoms_.front().param.size();
  T total = 0;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const auto& atom = atoms_[k];
    require(atom.param.size() == dim, ErrorKind::DimensionMismatch,
            "atom " + std::to_string(k + 1) + " has dimension " + std::to_string(atom.param.size()) +
                ", expected " + std::to_string(dim));
    if constexpr (is_exact_v<T>) {
      require(sgn(atom.weight) > 0, ErrorKind::InvalidArgument, "atom weights must be positive");
    } else {
      require(std::isfinite(atom.weight) && atom.weight > 0, ErrorKind::InvalidArgument,
              "atom weights must be positive");
    }
    total += atom.weight;
    for (std::size_t l = 0; l < k; ++l)
      require(!same_atom(atoms_[l].param, atom.param), ErrorKind::InvalidArgument,
              "atoms " + std::to_string(l + 1) + " and " + std::to_string(k + 1) + " coincide");
  }
  if constexpr (is_exact_v<T>) {
    require(total == 1, ErrorKind::InvalidArgument, "weights sum to " + to_string(total) + ", not 1");
  } else {
    require(std::abs(total - 1.0) <= kWeightSumTolerance, ErrorKind::InvalidArgument,
            "weights sum to " + std::to_string(total) + ", not 1");
  }
}

template <class T>
std::size_t MixingMeasure<T>::find(const PositiveVector<T>& param) const {
  for (std::size_t k = 0; k < atoms_.size(); ++k)
    if (same_atom(atoms_[k].param, param)) return k;
  return atoms_.size();
}

template <class T>
T MixingMeasure<T>::mass_at(const PositiveVector<T>& param) const {
  const auto k = find(param);
  return k == atoms_.size() ? T(0) : atoms_[k].weight;
}

}  // namespace dirimix
