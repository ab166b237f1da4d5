// Acceptance criteria, one PASS/FAIL line each. Exits nonzero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dirimix/equivalence.hpp"
#include "dirimix/exactpoly.hpp"
#include "dirimix/kernels.hpp"
#include "dirimix/series.hpp"
#include "dirimix/transports.hpp"
#include "dirimix/witnesses.hpp"
#include "oracles.hpp"

using namespace dirimix;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds; <= 0 means none
  std::function<Outcome()> body;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome shift_identity() {
  Outcome out;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = static_cast<std::size_t>(2 + trial % 5);
    const Alpha alpha(oracle::uniform_vector(dim, 0.2, 5.0));
    for (int i = 0; i < 1000; ++i) {
      const auto x = oracle::simplex_point(dim, 1e-6);
      const double rel = std::abs(shift_residual(alpha, x)) / std::exp(dirichlet_log_density(alpha, x));
      worst = std::max(worst, rel);
    }
  }
  out.expect(worst <= 1e-10, "worst relative residual " + fmt(worst));
  if (out.ok) out.detail = "worst relative residual " + fmt(worst);
  return out;
}

Outcome witness_exact() {
  Outcome out;
  std::size_t decisions = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = static_cast<std::size_t>(oracle::uniform_int(2, 5));
    auto pair = shift_witness(ExactAlpha(oracle::positive_rationals(dim, 5)));
    for (int step = 0; step <= 5; ++step) {
      const auto c = decide_equality(pair.g0, pair.g1);
      ++decisions;
      out.expect(c.verdict == Verdict::Equal && c.method == Method::ExactPolynomial && c.exact_residual &&
                     *c.exact_residual == 0,
                 "trial " + std::to_string(trial) + " step " + std::to_string(step) + " not exactly equal");
      const auto k = static_cast<std::size_t>(oracle::uniform_int(0, static_cast<int>(pair.g1.size()) - 1));
      pair.g1 = expand_atom(pair.g1, k);
    }
  }
  if (out.ok) out.detail = std::to_string(decisions) + " decisions, all Equal with residual 0";
  return out;
}

Outcome witness_l2() {
  Outcome out;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = static_cast<std::size_t>(oracle::uniform_int(2, 6));
    const auto pair = shift_witness(Alpha(oracle::uniform_vector(dim, 1.0, 5.0)));
    worst = std::max(worst, l2_distance(pair.g0, pair.g1) / l2_norm(pair.g0));
  }
  out.expect(worst <= 1e-10, "worst relative distance " + fmt(worst));
  if (out.ok) out.detail = "worst relative distance " + fmt(worst);
  return out;
}

Outcome dm_identity() {
  Outcome out;
  std::size_t checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t dim = static_cast<std::size_t>(2 + trial % 3);
    const ExactAlpha alpha(oracle::positive_rationals(dim, 5));
    for (int n = 0; n <= 5; ++n)
      for (const auto& x : compositions(dim, n)) {
        ++checked;
        out.expect(dm_shift_residual(n, alpha, x) == 0, "nonzero residual at n=" + std::to_string(n));
      }
  }
  if (out.ok) out.detail = std::to_string(checked) + " outcomes exactly zero";
  return out;
}

Outcome lda_identity() {
  Outcome out;
  std::size_t checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = static_cast<std::size_t>(2 + trial % 2);
    const std::size_t v = static_cast<std::size_t>(2 + (trial / 2) % 3);
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Rational> row;
      Rational total = 0;
      for (std::size_t w = 0; w < v; ++w) {
        row.push_back(Rational(oracle::uniform_int(1, 9)));
        total += row.back();
      }
      for (auto& p : row) p /= total;
      rows.push_back(row);
    }
    const TopicMatrix<Rational> beta(rows);
    const ExactAlpha alpha(oracle::positive_rationals(k, 4));
    for (int len = 0; len <= 6; ++len)
      for (int rep = 0; rep < 3; ++rep) {
        Document doc;
        for (int i = 0; i < len; ++i) doc.push_back(oracle::uniform_int(1, static_cast<int>(v)));
        ++checked;
        out.expect(lda_shift_residual(alpha, beta, doc) == 0, "nonzero residual at length " + std::to_string(len));
      }
  }
  if (out.ok) out.detail = std::to_string(checked) + " documents exactly zero";
  return out;
}

Outcome embeddings() {
  Outcome out;
  double worst = 0.0;
  for (Family family : {Family::GeneralizedDirichlet, Family::BetaLiouville, Family::InvertedBetaLiouville})
    for (int i = 0; i < 100; ++i) {
      const std::size_t dim = static_cast<std::size_t>(oracle::uniform_int(2, 6));
      const Alpha alpha(oracle::uniform_vector(dim, 0.2, 5.0));
      const auto spec = embed(alpha, family);
      double diff;
      if (family == Family::InvertedBetaLiouville) {
        const OrthantPoint y(oracle::uniform_vector(dim - 1, 0.01, 5.0));
        diff = std::abs(kernel_log_density(spec, y) - inverted_dirichlet_log_density(alpha, y));
      } else {
        const auto x = oracle::simplex_point(dim);
        diff = std::abs(kernel_log_density(spec, x) - dirichlet_log_density(alpha, x));
      }
      worst = std::max(worst, diff);
    }
  out.expect(worst <= 1e-12, "worst absolute log-density gap " + fmt(worst));
  if (out.ok) out.detail = "worst absolute log-density gap " + fmt(worst);
  return out;
}

Outcome jacobians() {
  Outcome out;
  double worst = 0.0;
  for (std::size_t dim = 2; dim <= 4; ++dim)
    for (int i = 0; i < 100; ++i) {
      const auto t = oracle::uniform_vector(dim - 1, -2.0, 2.0);
      const double fd_alr = oracle::fd_jacobian_det(
          [](const std::vector<double>& s) { return alr_inverse(LogRatioPoint(s)).head(); }, t);
      worst = std::max(worst, std::abs(alr_jacobian_det(alr_inverse(LogRatioPoint(t))) - fd_alr) / fd_alr);
      const auto y = oracle::uniform_vector(dim - 1, 0.05, 4.0);
      const double fd_chart = oracle::fd_jacobian_det(
          [](const std::vector<double>& s) { return chart_transform(OrthantPoint(s)).head(); }, y);
      worst = std::max(worst, std::abs(chart_jacobian_det(OrthantPoint(y)) - fd_chart) / fd_chart);
    }
  out.expect(worst <= 1e-6, "worst relative gap " + fmt(worst));
  if (out.ok) out.detail = "worst relative gap " + fmt(worst);
  return out;
}

Outcome transport_consistency() {
  Outcome out;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t dim = static_cast<std::size_t>(oracle::uniform_int(2, 5));
    const Alpha alpha(oracle::uniform_vector(dim, 0.2, 5.0));
    const OrthantPoint y(oracle::uniform_vector(dim - 1, 0.05, 5.0));
    const auto x = chart_transform(y);
    const double lhs = std::exp(dirichlet_log_density(alpha, x));
    const double rhs = std::pow(x[dim - 1], -static_cast<double>(dim)) * std::exp(inverted_dirichlet_log_density(alpha, y));
    worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  out.expect(worst <= 1e-12, "worst relative gap " + fmt(worst));
  if (out.ok) out.detail = "worst relative gap " + fmt(worst);
  return out;
}

Outcome series_bound() {
  Outcome out;
  double worst_ratio = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t dim = static_cast<std::size_t>(oracle::uniform_int(2, 4));
    const auto alpha = oracle::uniform_vector(dim, 0.2, 1.5);
    auto y = oracle::simplex_coords(dim, 1e-3);
    y.pop_back();
    const double scale = oracle::uniform(0.01, 0.4);
    for (auto& v : y) v *= scale;
    const auto e = h_series_eval(Alpha(alpha), OrthantPoint(y), 40);
    const double exact = oracle::inverted_dirichlet_density(alpha, y);
    out.expect(std::abs(e.value - exact) <= e.tail_bound, "error exceeds reported bound in case " + std::to_string(i));
    worst_ratio = std::max(worst_ratio, e.tail_bound / exact);
  }
  out.expect(worst_ratio <= 1e-8, "tail bound / h reached " + fmt(worst_ratio));
  if (out.ok) out.detail = "worst tail_bound / h " + fmt(worst_ratio);
  return out;
}

Outcome sign_bound() {
  Outcome out;
  std::size_t vectors = 0;
  for (std::size_t dim = 2; dim <= 3; ++dim) {
    const auto exps = lattice_up_to(dim, 3);
    const auto basis = null_relation_basis(exps, dim);
    for (const auto& v : basis) {
      const auto [p, n] = count_signs(v);
      out.expect(std::max(p, n) >= dim, "basis vector violates the bound at J=" + std::to_string(dim));
      ++vectors;
    }
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<Rational> combo(exps.size(), Rational(0));
      for (const auto& v : basis) {
        const Rational w = oracle::rational(-6, 6, 5);
        for (std::size_t i = 0; i < combo.size(); ++i) combo[i] += w * v[i];
      }
      const auto [p, n] = count_signs(combo);
      if (p + n == 0) continue;
      out.expect(std::max(p, n) >= dim, "random combination violates the bound at J=" + std::to_string(dim));
      ++vectors;
    }
    const auto pair = shift_witness(ExactAlpha(std::vector<Rational>(dim, Rational(1))));
    const auto counts = sign_counts(relation_from_measures(pair.g0, pair.g1).front());
    out.expect(counts.positives == dim && counts.negatives == 1, "shift relation counts differ from (J, 1)");
  }
  if (out.ok) out.detail = std::to_string(vectors) + " vectors checked";
  return out;
}

Outcome fixed_total_slice() {
  Outcome out;
  double worst = 1.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Alpha> atoms;
    while (atoms.size() < 6) {
      auto x = oracle::simplex_coords(3, 0.06);
      for (auto& v : x) v *= 10.0;
      atoms.emplace_back(x);
    }
    const auto ns = numerical_null_space(gram_matrix(atoms), 1e-10);
    out.expect(ns.vectors.empty(), "null vector found in draw " + std::to_string(trial));
    worst = std::min(worst, ns.eigenvalues[0] / ns.eigenvalues[ns.eigenvalues.size() - 1]);
  }
  const Alpha alpha{2, 2, 2};
  std::vector<Alpha> params{alpha};
  for (std::size_t j = 0; j < 3; ++j) params.push_back(alpha.unit_shift(j));
  const auto ns = numerical_null_space(gram_matrix(params), 1e-10);
  out.expect(ns.vectors.size() == 1, "shift set null space is not one-dimensional");
  if (ns.vectors.size() == 1) {
    const double expected[4] = {1, -1.0 / 3, -1.0 / 3, -1.0 / 3};
    for (int i = 0; i < 4; ++i)
      out.expect(std::abs(ns.vectors[0][i] - expected[i]) <= 1e-8, "shift null vector entry " + std::to_string(i));
  }
  if (out.ok) out.detail = "smallest lambda_min / lambda_max over draws " + fmt(worst);
  return out;
}

ExactMeasure small_measure(std::size_t dim, std::size_t max_atoms) {
  const auto k = static_cast<std::size_t>(oracle::uniform_int(1, static_cast<int>(max_atoms)));
  std::vector<ExactAlpha> params;
  while (params.size() < k) {
    ExactAlpha a(oracle::positive_rationals(dim, 3, 2));
    bool fresh = true;
    for (const auto& p : params) fresh = fresh && !(p == a);
    if (fresh) params.push_back(a);
  }
  std::vector<Rational> w;
  Rational total = 0;
  for (std::size_t i = 0; i < k; ++i) {
    w.push_back(Rational(oracle::uniform_int(1, 4)));
    total += w.back();
  }
  std::vector<ExactMeasure::Atom> atoms;
  for (std::size_t i = 0; i < k; ++i) atoms.push_back({params[i], w[i] / total});
  return ExactMeasure(Family::Dirichlet, std::move(atoms));
}

Outcome few_atoms() {
  Outcome out;
  std::size_t pairs = 0;
  for (std::size_t dim = 2; dim <= 4; ++dim) {
    int done = 0;
    while (done < 500) {
      const auto g = small_measure(dim, dim - 1);
      const auto h = small_measure(dim, dim - 1);
      if (same_measure(g, h)) continue;
      ++done;
      ++pairs;
      out.expect(decide_equality(g, h).verdict != Verdict::Equal, "distinct pair judged equal at J=" + std::to_string(dim));
    }
  }
  if (out.ok) out.detail = std::to_string(pairs) + " distinct pairs, none equal";
  return out;
}

Outcome moments() {
  Outcome out;
  std::mt19937_64 engine(31337);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t dim = static_cast<std::size_t>(oracle::uniform_int(2, 4));
    const auto alpha = oracle::uniform_vector(dim, 0.5, 4.0);
    std::vector<int> m(dim);
    for (auto& v : m) v = oracle::uniform_int(0, 3);
    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto x = oracle::dirichlet_sample(alpha, engine);
      double value = 1.0;
      for (std::size_t j = 0; j < dim; ++j) value *= std::pow(x[j], m[j]);
      sum += value;
      sum_sq += value * value;
    }
    const double mean = sum / n;
    const double se = std::sqrt(std::max(0.0, sum_sq / n - mean * mean) / n);
    const double analytic = dirichlet_moment(Alpha(alpha), MultiIndex(m));
    out.expect(std::abs(analytic - mean) <= 4 * se + 1e-15, "case " + std::to_string(trial) + " off by " +
                                                                  fmt(std::abs(analytic - mean) / se) + " SE");
  }
  // Beta(a, b): E[x] = a / (a + b), E[x^2] = a (a + 1) / ((a + b)(a + b + 1)), E[x(1 - x)] = ab / ((a+b)(a+b+1)).
  const ExactAlpha beta{Rational(2), Rational(3)};
  out.expect(dirichlet_moment(beta, MultiIndex{1, 0}) == make_rational(2, 5), "E[x] for Beta(2,3)");
  out.expect(dirichlet_moment(beta, MultiIndex{2, 0}) == make_rational(1, 5), "E[x^2] for Beta(2,3)");
  out.expect(dirichlet_moment(beta, MultiIndex{1, 1}) == make_rational(1, 5), "E[x(1-x)] for Beta(2,3)");
  out.expect(dirichlet_moment(ExactAlpha{Rational(1), Rational(1)}, MultiIndex{3, 0}) == make_rational(1, 4),
             "E[x^3] under the uniform law");
  if (out.ok) out.detail = "10 MC cases within 4 SE; hand cases exact";
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "shift identity", 10, shift_identity},
      {2, "witness equality, exact path", 30, witness_exact},
      {3, "witness equality, closed-form L2", 0, witness_l2},
      {4, "Dirichlet-multinomial identity", 10, dm_identity},
      {5, "LDA identity", 60, lda_identity},
      {6, "embeddings", 0, embeddings},
      {7, "Jacobians", 0, jacobians},
      {8, "transport consistency", 0, transport_consistency},
      {9, "series tail bound", 0, series_bound},
      {10, "sign bound", 60, sign_bound},
      {11, "fixed-total slice", 0, fixed_total_slice},
      {12, "few-atoms identifiability", 0, few_atoms},
      {13, "moment oracle", 0, moments},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome result;
    try {
      result = c.body();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (result.ok && c.time_limit > 0 && seconds >= c.time_limit) {
      result.ok = false;
      result.detail = "runtime " + fmt(seconds) + " s exceeds " + fmt(c.time_limit) + " s";
    }
    if (!result.ok) ++failures;
    std::printf("%s [%d] %s (%.2f s): %s\n", result.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), seconds,
                result.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
