#pragma once

// Scalar machinery shared by every module: the exact rational type, positive
// parameter vectors, multi-indices, rising factorials, Dirichlet normalizers
// and exact Dirichlet moments.

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "dirimix/errors.hpp"

namespace dirimix {

/// Arbitrary-precision rational. Arithmetic results from GMP are always in
/// lowest terms; use make_rational/parse_rational for construction from parts.
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);
Rational make_rational(const mpz_class& numerator, const mpz_class& denominator);

/// Accepts "p/q", "p", and plain decimals such as "0.25" or "-1.5e-3".
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Rational equal to the shortest decimal that round-trips to `value`
/// (0.1 becomes 1/10, not the binary expansion).
Rational rational_from_double(double value);

double to_double(const Rational& value);
inline double to_double(double value) { return value; }

bool is_integer(const Rational& value);
/// Smallest integer >= value.
mpz_class ceil_integer(const Rational& value);

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

/// Ordered list of J >= 2 strictly positive entries (finite when floating).
template <class T>
class PositiveVector {
 public:
  using value_type = T;

  PositiveVector() = default;
  explicit PositiveVector(std::vector<T> entries);
  PositiveVector(std::initializer_list<T> entries) : PositiveVector(std::vector<T>(entries)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  const T& operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<T>& entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  /// alpha_+.
  T sum() const;

  /// this + e_j.
  PositiveVector unit_shift(std::size_t j) const;

  friend bool operator==(const PositiveVector& a, const PositiveVector& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<T> entries_;
};

using Alpha = PositiveVector<double>;
using ExactAlpha = PositiveVector<Rational>;

Alpha to_double(const ExactAlpha& alpha);
ExactAlpha to_exact(const Alpha& alpha);

/// Nonnegative integer vector with total order |m|.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}
  static MultiIndex zeros(std::size_t size) { return MultiIndex(std::vector<int>(size, 0)); }
  static MultiIndex unit(std::size_t size, std::size_t j);

  std::size_t size() const noexcept { return entries_.size(); }
  int operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<int>& entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }
  int order() const noexcept;

  /// Coordinatewise <=.
  bool dominated_by(const MultiIndex& other) const;
  MultiIndex operator+(const MultiIndex& other) const;
  /// Coordinatewise difference; requires dominated_by.
  MultiIndex operator-(const MultiIndex& other) const;

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> entries_;
};

std::string to_string(const MultiIndex& m);

/// All multi-indices of the given size and exact order, in lexicographically
/// decreasing order ((N,0,..) first).
std::vector<MultiIndex> compositions(std::size_t size, int order);
/// All multi-indices with order <= max_order, grouped by increasing order.
std::vector<MultiIndex> lattice_up_to(std::size_t size, int max_order);

/// (v)_n = v (v+1) ... (v+n-1). Throws ErrorKind::Range on overflow.
double rising_factorial(double v, int n);
Rational rising_factorial(const Rational& v, int n);
/// log (v)_n for v > 0.
double log_rising_factorial(double v, int n);

mpz_class factorial(unsigned n);
/// n! / prod m_j!, n = |m|.
mpz_class multinomial(const MultiIndex& m);

/// log c(alpha) = log Gamma(alpha_+) - sum_j log Gamma(alpha_j).
double log_normalizer(const Alpha& alpha);
double log_normalizer(std::span<const double> alpha);

/// E[x^m] under Dir(alpha): prod_j (alpha_j)_{m_j} / (alpha_+)_{|m|}.
Rational dirichlet_moment(const ExactAlpha& alpha, const MultiIndex& m);
double dirichlet_moment(const Alpha& alpha, const MultiIndex& m);

// ---------------------------------------------------------------------------

template <class T>
PositiveVector<T>::PositiveVector(std::vector<T> entries) : entries_(std::move(entries)) {
  require(entries_.size() >= 2, ErrorKind::InvalidArgument,
          "positive vector needs at least 2 entries, got " + std::to_string(entries_.size()));
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    bool ok;
    if constexpr (is_exact_v<T>) {
      ok = sgn(entries_[j]) > 0;
    } else {
      ok = std::isfinite(entries_[j]) && entries_[j] > 0;
    }
    require(ok, ErrorKind::InvalidArgument,
            "entry " + std::to_string(j + 1) + " of positive vector is not a finite positive number");
  }
}

template <class T>
T PositiveVector<T>::sum() const {
  T total = 0;
  for (const auto& v : entries_) total += v;
  return total;
}

template <class T>
PositiveVector<T> PositiveVector<T>::unit_shift(std::size_t j) const {
  require(j < entries_.size(), ErrorKind::InvalidArgument, "unit shift index out of range");
  auto shifted = entries_;
  shifted[j] += 1;
  return PositiveVector(std::move(shifted));
}

}  // namespace dirimix
