#include "dirimix/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <numeric>

namespace dirimix {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::Feasibility: return "feasibility";
    case ErrorKind::Ambiguity: return "ambiguity";
    case ErrorKind::Range: return "range";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Unsupported: return "unsupported";
  }
  return "unknown";
}

Rational make_rational(long numerator, long denominator) {
  return make_rational(mpz_class(numerator), mpz_class(denominator));
}

Rational make_rational(const mpz_class& numerator, const mpz_class& denominator) {
  require(denominator != 0, ErrorKind::InvalidArgument, "rational with zero denominator");
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

namespace {

mpz_class parse_integer(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  bool ok = !s.empty();
  for (std::size_t i = 0; i < s.size() && ok; ++i) {
    ok = std::isdigit(static_cast<unsigned char>(s[i])) || (i == 0 && s[i] == '-' && s.size() > 1);
  }
  require(ok, ErrorKind::Parse, "not an integer: '" + std::string(text) + "'");
  return mpz_class(s, 10);
}

mpz_class pow10(unsigned long k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
  return p;
}

Rational parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits += text[i++];
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i++];
      --scale;
      seen_digit = true;
    }
  }
  require(seen_digit, ErrorKind::Parse, "not a number: '" + std::string(text) + "'");
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    require(i < text.size(), ErrorKind::Parse, "missing exponent in '" + std::string(text) + "'");
    long exponent = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i + (text[i] == '+' ? 1 : 0),
                                     text.data() + text.size(), exponent);
    require(ec == std::errc() && ptr == text.data() + text.size(), ErrorKind::Parse,
            "bad exponent in '" + std::string(text) + "'");
    scale += exponent;
    i = text.size();
  }
  require(i == text.size(), ErrorKind::Parse, "trailing characters in '" + std::string(text) + "'");
  mpz_class numerator(digits, 10);
  if (negative) numerator = -numerator;
  if (scale >= 0) return make_rational(numerator * pow10(static_cast<unsigned long>(scale)), 1);
  return make_rational(numerator, pow10(static_cast<unsigned long>(-scale)));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  require(!text.empty(), ErrorKind::Parse, "empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational rational_from_double(double value) {
  require(std::isfinite(value), ErrorKind::InvalidArgument, "cannot convert non-finite value to rational");
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return parse_decimal(std::string_view(buffer, static_cast<std::size_t>(result.ptr - buffer)));
}

double to_double(const Rational& value) {
  // mpq_get_d truncates; round to nearest (ties to even) instead.
  const int sign = sgn(value);
  if (sign == 0) return 0.0;
  const mpz_class num = abs(value.get_num());
  const mpz_class& den = value.get_den();
  // Pick k so that q = floor(num * 2^k / den) has 54 bits: 53 kept + 1 guard.
  const long k = 53 - static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) +
                 static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  mpz_class scaled_num = num, scaled_den = den;
  if (k >= 0) {
    mpz_mul_2exp(scaled_num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpz_mul_2exp(scaled_den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
  }
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
  long shift = -k;
  // q has 53 or 54 bits; reduce to 53 with round-half-even using the sticky remainder.
  if (mpz_sizeinbase(q.get_mpz_t(), 2) > 53) {
    const bool guard = mpz_tstbit(q.get_mpz_t(), 0);
    const bool sticky = sgn(r) != 0;
    q >>= 1;
    ++shift;
    if (guard && (sticky || mpz_tstbit(q.get_mpz_t(), 0))) q += 1;
  } else {
    // 53 bits: compare the remainder against half the divisor.
    const int cmp = mpz_cmp(mpz_class(2 * r).get_mpz_t(), scaled_den.get_mpz_t());
    if (cmp > 0 || (cmp == 0 && mpz_tstbit(q.get_mpz_t(), 0))) q += 1;
  }
  return sign * std::ldexp(q.get_d(), static_cast<int>(shift));
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

mpz_class ceil_integer(const Rational& value) {
  mpz_class result;
  mpz_cdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return result;
}

Alpha to_double(const ExactAlpha& alpha) {
  std::vector<double> out;
  out.reserve(alpha.size());
  for (const auto& a : alpha) out.push_back(to_double(a));
  return Alpha(std::move(out));
}

ExactAlpha to_exact(const Alpha& alpha) {
  std::vector<Rational> out;
  out.reserve(alpha.size());
  for (double a : alpha) out.push_back(rational_from_double(a));
  return ExactAlpha(std::move(out));
}

// --- MultiIndex ------------------------------------------------------------

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_) require(e >= 0, ErrorKind::InvalidArgument, "multi-index entries must be >= 0");
}

MultiIndex MultiIndex::unit(std::size_t size, std::size_t j) {
  std::vector<int> e(size, 0);
  e.at(j) = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::order() const noexcept { return std::accumulate(entries_.begin(), entries_.end(), 0); }

bool MultiIndex::dominated_by(const MultiIndex& other) const {
  require(size() == other.size(), ErrorKind::DimensionMismatch, "multi-index size mismatch");
  for (std::size_t j = 0; j < size(); ++j)
    if (entries_[j] > other.entries_[j]) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  require(size() == other.size(), ErrorKind::DimensionMismatch, "multi-index size mismatch");
  std::vector<int> e(size());
  for (std::size_t j = 0; j < size(); ++j) e[j] = entries_[j] + other.entries_[j];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  require(other.dominated_by(*this), ErrorKind::InvalidArgument, "multi-index difference would be negative");
  std::vector<int> e(size());
  for (std::size_t j = 0; j < size(); ++j) e[j] = entries_[j] - other.entries_[j];
  return MultiIndex(std::move(e));
}

std::string to_string(const MultiIndex& m) {
  std::string out = "(";
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (j) out += ",";
    out += std::to_string(m[j]);
  }
  return out + ")";
}

std::vector<MultiIndex> compositions(std::size_t size, int order) {
  require(size >= 1 && order >= 0, ErrorKind::InvalidArgument, "bad composition request");
  std::vector<MultiIndex> out;
  std::vector<int> current(size, 0);
  std::function<void(std::size_t, int)> fill = [&](std::size_t j, int remaining) {
    if (j + 1 == size) {
      current[j] = remaining;
      out.emplace_back(current);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      current[j] = v;
      fill(j + 1, remaining - v);
    }
  };
  fill(0, order);
  return out;
}

std::vector<MultiIndex> lattice_up_to(std::size_t size, int max_order) {
  std::vector<MultiIndex> out;
  for (int n = 0; n <= max_order; ++n) {
    auto level = compositions(size, n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// --- rising factorials and normalizers -------------------------------------

double rising_factorial(double v, int n) {
  require(n >= 0, ErrorKind::InvalidArgument, "rising factorial order must be >= 0");
  double result = 1.0;
  for (int k = 0; k < n; ++k) {
    result *= v + k;
    if (!std::isfinite(result))
      fail(ErrorKind::Range, "rising factorial (" + std::to_string(v) + ")_" + std::to_string(n) +
                                 " overflows double precision");
  }
  return result;
}

Rational rising_factorial(const Rational& v, int n) {
  require(n >= 0, ErrorKind::InvalidArgument, "rising factorial order must be >= 0");
  Rational result = 1;
  for (int k = 0; k < n; ++k) result *= v + k;
  return result;
}

double log_rising_factorial(double v, int n) {
  require(n >= 0 && v > 0, ErrorKind::InvalidArgument, "log rising factorial needs v > 0, n >= 0");
  if (n <= 32) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += std::log(v + k);
    return s;
  }
  return std::lgamma(v + n) - std::lgamma(v);
}

mpz_class factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

mpz_class multinomial(const MultiIndex& m) {
  mpz_class result = factorial(static_cast<unsigned>(m.order()));
  for (int e : m) result /= factorial(static_cast<unsigned>(e));
  return result;
}

double log_normalizer(std::span<const double> alpha) {
  double total = 0.0;
  double denominator = 0.0;
  for (double a : alpha) {
    total += a;
    denominator += std::lgamma(a);
  }
  return std::lgamma(total) - denominator;
}

double log_normalizer(const Alpha& alpha) { return log_normalizer(std::span<const double>(alpha.entries())); }

Rational dirichlet_moment(const ExactAlpha& alpha, const MultiIndex& m) {
  require(alpha.size() == m.size(), ErrorKind::DimensionMismatch,
          "moment multi-index has length " + std::to_string(m.size()) + ", expected " +
              std::to_string(alpha.size()));
  Rational numerator = 1;
  for (std::size_t j = 0; j < m.size(); ++j) numerator *= rising_factorial(alpha[j], m[j]);
  return numerator / rising_factorial(alpha.sum(), m.order());
}

double dirichlet_moment(const Alpha& alpha, const MultiIndex& m) {
  require(alpha.size() == m.size(), ErrorKind::DimensionMismatch,
          "moment multi-index has length " + std::to_string(m.size()) + ", expected " +
              std::to_string(alpha.size()));
  double log_value = -log_rising_factorial(alpha.sum(), m.order());
  for (std::size_t j = 0; j < m.size(); ++j) log_value += log_rising_factorial(alpha[j], m[j]);
  return std::exp(log_value);
}

}  // namespace dirimix
