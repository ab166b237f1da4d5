#include "dirimix/equivalence.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <thread>

#include "dirimix/kernels.hpp"

namespace dirimix {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "equal";
    case Verdict::NotEqual: return "not_equal";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::ExactPolynomial: return "exact_polynomial";
    case Method::ClosedFormL2: return "closed_form_l2";
    case Method::MonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

Verdict parse_verdict(std::string_view text) {
  for (auto v : {Verdict::Equal, Verdict::NotEqual, Verdict::Inconclusive})
    if (to_string(v) == text) return v;
  fail(ErrorKind::Parse, "unknown verdict '" + std::string(text) + "'");
}

Method parse_method(std::string_view text) {
  for (auto m : {Method::ExactPolynomial, Method::ClosedFormL2, Method::MonteCarlo})
    if (to_string(m) == text) return m;
  fail(ErrorKind::Parse, "unknown method '" + std::string(text) + "'");
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::FixedTotalSlice: return "fixed_total_slice";
    case Regime::BoxRegion: return "box_region";
    case Regime::FewAtoms: return "few_atoms";
  }
  return "unknown";
}

Regime parse_regime(std::string_view text) {
  for (auto r : {Regime::FixedTotalSlice, Regime::BoxRegion, Regime::FewAtoms})
    if (to_string(r) == text) return r;
  fail(ErrorKind::Parse, "unknown regime '" + std::string(text) + "'");
}

// --- certificates ----------------------------------------------------------------

template <class T>
IdentifiabilityCertificate IdentifiabilityCertificate::fixed_total(const std::vector<PositiveVector<T>>& atoms) {
  require(!atoms.empty(), ErrorKind::InvalidArgument, "certificate needs atoms");
  const T total = atoms.front().sum();
  for (const auto& a : atoms) {
    require(a.size() == atoms.front().size(), ErrorKind::DimensionMismatch, "atoms of mixed dimension");
    if constexpr (is_exact_v<T>) {
      require(a.sum() == total, ErrorKind::InvalidArgument, "atom totals differ; not a fixed-total slice");
    } else {
      require(std::abs(a.sum() - total) <= 1e-12 * std::abs(total), ErrorKind::InvalidArgument,
              "atom totals differ; not a fixed-total slice");
    }
  }
  IdentifiabilityCertificate cert;
  cert.regime_ = Regime::FixedTotalSlice;
  cert.dim_ = atoms.front().size();
  cert.total_ = to_double(total);
  if constexpr (is_exact_v<T>) cert.exact_total_ = to_string(total);
  cert.atom_count_ = atoms.size();
  return cert;
}

template <class T>
IdentifiabilityCertificate IdentifiabilityCertificate::box_region(const std::vector<PositiveVector<T>>& atoms,
                                                                  std::size_t baseline) {
  require(!atoms.empty(), ErrorKind::InvalidArgument, "certificate needs atoms");
  const std::size_t dim = atoms.front().size();
  require(baseline < dim, ErrorKind::InvalidArgument, "baseline coordinate out of range");
  IdentifiabilityCertificate cert;
  cert.regime_ = Regime::BoxRegion;
  cert.dim_ = dim;
  cert.baseline_ = baseline;
  cert.atom_count_ = atoms.size();
  for (std::size_t j = 0; j < dim; ++j) {
    if (j == baseline) continue;
    T lo = atoms.front()[j], hi = atoms.front()[j];
    for (const auto& a : atoms) {
      require(a.size() == dim, ErrorKind::DimensionMismatch, "atoms of mixed dimension");
      lo = std::min<T>(lo, a[j]);
      hi = std::max<T>(hi, a[j]);
    }
    require(T(hi - lo) < T(1), ErrorKind::InvalidArgument,
            "coordinate " + std::to_string(j + 1) + " spreads by >= 1; not a box region");
    cert.intervals_.push_back({to_double(lo), to_double(hi)});
  }
  return cert;
}

IdentifiabilityCertificate IdentifiabilityCertificate::few_atoms(std::size_t atom_count, std::size_t dim) {
  require(dim >= 2 && atom_count >= 1 && atom_count <= dim - 1, ErrorKind::InvalidArgument,
          "few-atoms regime needs at most J-1 atoms");
  IdentifiabilityCertificate cert;
  cert.regime_ = Regime::FewAtoms;
  cert.dim_ = dim;
  cert.atom_count_ = atom_count;
  return cert;
}

IdentifiabilityCertificate IdentifiabilityCertificate::from_parts(Regime regime, std::size_t dim,
                                                                  std::size_t atom_count, double total,
                                                                  std::optional<std::string> exact_total,
                                                                  std::size_t baseline,
                                                                  std::vector<Interval> intervals) {
  require(dim >= 2 && atom_count >= 1, ErrorKind::InvalidArgument, "certificate needs J >= 2 and at least one atom");
  IdentifiabilityCertificate cert;
  cert.regime_ = regime;
  cert.dim_ = dim;
  cert.atom_count_ = atom_count;
  switch (regime) {
    case Regime::FixedTotalSlice:
      require(std::isfinite(total) && total > 0, ErrorKind::InvalidArgument, "slice total must be positive");
      cert.total_ = total;
      if (exact_total) cert.exact_total_ = to_string(parse_rational(*exact_total));
      break;
    case Regime::BoxRegion:
      require(baseline < dim, ErrorKind::InvalidArgument, "baseline coordinate out of range");
      require(intervals.size() == dim - 1, ErrorKind::DimensionMismatch, "box region needs J-1 intervals");
      for (const auto& iv : intervals)
        require(iv.lo > 0 && iv.lo <= iv.hi && iv.hi - iv.lo < 1.0, ErrorKind::InvalidArgument,
                "box interval must have positive endpoints and length < 1");
      cert.baseline_ = baseline;
      cert.intervals_ = std::move(intervals);
      break;
    case Regime::FewAtoms:
      require(atom_count <= dim - 1, ErrorKind::InvalidArgument, "few-atoms regime needs at most J-1 atoms");
      break;
  }
  return cert;
}

namespace {

void require_dirichlet_like(Family f) {
  require(f == Family::Dirichlet || f == Family::InvertedDirichlet, ErrorKind::Unsupported,
          "only Dirichlet and inverted Dirichlet measures are supported here, not " + std::string(to_string(f)));
}

template <class T>
std::vector<IdentifiabilityCertificate> certify_atoms(const std::vector<PositiveVector<T>>& atoms, std::size_t dim,
                                                      std::size_t max_count) {
  std::vector<IdentifiabilityCertificate> out;
  auto attempt = [&](auto&& make) {
    try {
      out.push_back(make());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvalidArgument) throw;
    }
  };
  attempt([&] { return IdentifiabilityCertificate::fixed_total(atoms); });
  for (std::size_t baseline = 0; baseline < dim; ++baseline)
    attempt([&] { return IdentifiabilityCertificate::box_region(atoms, baseline); });
  if (max_count <= dim - 1) out.push_back(IdentifiabilityCertificate::few_atoms(max_count, dim));
  return out;
}

}  // namespace

template <class T>
std::vector<IdentifiabilityCertificate> certify(const MixingMeasure<T>& g) {
  require_dirichlet_like(g.family());
  std::vector<PositiveVector<T>> atoms;
  for (const auto& a : g.atoms()) atoms.push_back(a.param);
  return certify_atoms(atoms, g.dim(), g.size());
}

template <class T>
std::vector<IdentifiabilityCertificate> certify(const MixingMeasure<T>& g, const MixingMeasure<T>& g_prime) {
  require_dirichlet_like(g.family());
  require(g.family() == g_prime.family(), ErrorKind::InvalidArgument, "measures belong to different families");
  require(g.dim() == g_prime.dim(), ErrorKind::DimensionMismatch, "measures have different J");
  std::vector<PositiveVector<T>> atoms;
  for (const auto& a : g.atoms()) atoms.push_back(a.param);
  for (const auto& a : g_prime.atoms())
    if (g.find(a.param) == g.size()) atoms.push_back(a.param);
  return certify_atoms(atoms, g.dim(), std::max(g.size(), g_prime.size()));
}

template IdentifiabilityCertificate IdentifiabilityCertificate::fixed_total(const std::vector<Alpha>&);
template IdentifiabilityCertificate IdentifiabilityCertificate::fixed_total(const std::vector<ExactAlpha>&);
template IdentifiabilityCertificate IdentifiabilityCertificate::box_region(const std::vector<Alpha>&, std::size_t);
template IdentifiabilityCertificate IdentifiabilityCertificate::box_region(const std::vector<ExactAlpha>&,
                                                                           std::size_t);
template std::vector<IdentifiabilityCertificate> certify(const Measure&);
template std::vector<IdentifiabilityCertificate> certify(const ExactMeasure&);
template std::vector<IdentifiabilityCertificate> certify(const Measure&, const Measure&);
template std::vector<IdentifiabilityCertificate> certify(const ExactMeasure&, const ExactMeasure&);

// --- closed-form inner products ------------------------------------------------------

bool inner_product_feasible(const Alpha& alpha, const Alpha& beta) {
  if (alpha.size() != beta.size()) return false;
  for (std::size_t j = 0; j < alpha.size(); ++j)
    if (!(alpha[j] + beta[j] > 1.0)) return false;
  return true;
}

double inner_product(const Alpha& alpha, const Alpha& beta) {
  require(alpha.size() == beta.size(), ErrorKind::DimensionMismatch, "inner product of different dimensions");
  require(inner_product_feasible(alpha, beta), ErrorKind::Feasibility,
          "closed-form inner product needs alpha_j + beta_j > 1 for every j");
  std::vector<double> combined(alpha.size());
  for (std::size_t j = 0; j < alpha.size(); ++j) combined[j] = alpha[j] + beta[j] - 1.0;
  return std::exp(log_normalizer(alpha) + log_normalizer(beta) - log_normalizer(combined));
}

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

Wide wide_log_normalizer(const std::vector<Wide>& alpha) {
  Wide total = 0, denominator = 0;
  for (const auto& a : alpha) {
    total += a;
    denominator += boost::math::lgamma(a);
  }
  return boost::math::lgamma(total) - denominator;
}

struct SignedAtom {
  std::vector<Wide> alpha;
  Wide weight;
  Wide log_norm;
};

/// sum_{a,b} w_a w_b <f_a, f_b> in 50-digit arithmetic.
Wide wide_quadratic_form(const std::vector<SignedAtom>& atoms) {
  Wide sum = 0;
  std::vector<Wide> combined;
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    for (std::size_t b = a; b < atoms.size(); ++b) {
      combined.resize(atoms[a].alpha.size());
      for (std::size_t j = 0; j < combined.size(); ++j) combined[j] = atoms[a].alpha[j] + atoms[b].alpha[j] - 1;
      const Wide inner = exp(atoms[a].log_norm + atoms[b].log_norm - wide_log_normalizer(combined));
      sum += (a == b ? Wide(1) : Wide(2)) * atoms[a].weight * atoms[b].weight * inner;
    }
  }
  return sum;
}

std::vector<SignedAtom> signed_atoms(const Measure& g, const Measure* g_prime) {
  std::vector<SignedAtom> out;
  auto add = [&](const Measure& m, int sign) {
    for (const auto& atom : m.atoms()) {
      SignedAtom s;
      s.alpha.assign(atom.param.begin(), atom.param.end());
      s.weight = Wide(atom.weight) * sign;
      s.log_norm = wide_log_normalizer(s.alpha);
      out.push_back(std::move(s));
    }
  };
  add(g, 1);
  if (g_prime) add(*g_prime, -1);
  return out;
}

void require_l2_feasible(const std::vector<const Measure*>& measures) {
  for (const auto* m : measures)
    for (const auto* n : measures)
      for (const auto& a : m->atoms())
        for (const auto& b : n->atoms())
          require(inner_product_feasible(a.param, b.param), ErrorKind::Feasibility,
                  "closed-form L2 needs alpha_j + beta_j > 1 for every pair of atoms");
}

}  // namespace

double l2_distance(const Measure& g, const Measure& g_prime) {
  require_dirichlet_like(g.family());
  require(g.family() == g_prime.family(), ErrorKind::InvalidArgument, "measures belong to different families");
  require(g.dim() == g_prime.dim(), ErrorKind::DimensionMismatch, "measures have different J");
  require_l2_feasible({&g, &g_prime});
  const Wide squared = wide_quadratic_form(signed_atoms(g, &g_prime));
  if (squared < 0) {
    require(squared >= Wide(-1e-12), ErrorKind::Range, "negative squared L2 distance beyond rounding");
    return 0.0;
  }
  return static_cast<double>(sqrt(squared));
}

double l2_norm(const Measure& g) {
  require_dirichlet_like(g.family());
  require_l2_feasible({&g});
  return static_cast<double>(sqrt(wide_quadratic_form(signed_atoms(g, nullptr))));
}

Eigen::MatrixXd gram_matrix(const std::vector<Alpha>& params) {
  const auto n = static_cast<Eigen::Index>(params.size());
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = i; k < n; ++k)
      gram(i, k) = gram(k, i) = inner_product(params[static_cast<std::size_t>(i)], params[static_cast<std::size_t>(k)]);
  return gram;
}

NullSpace numerical_null_space(const Eigen::MatrixXd& matrix, double tol) {
  require(matrix.rows() == matrix.cols() && matrix.rows() > 0, ErrorKind::InvalidArgument,
          "null space needs a non-empty square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
  require(solver.info() == Eigen::Success, ErrorKind::Range, "eigendecomposition failed");
  NullSpace out;
  out.eigenvalues = solver.eigenvalues();
  const double largest = out.eigenvalues.maxCoeff();
  const double smallest = out.eigenvalues.minCoeff();
  out.condition = smallest > 0 ? largest / smallest : std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < out.eigenvalues.size(); ++i) {
    if (out.eigenvalues(i) > tol * largest) continue;
    Eigen::VectorXd v = solver.eigenvectors().col(i);
    const double peak = v.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (std::abs(v(k)) > 1e-8 * peak) {
        v /= v(k);
        break;
      }
    }
    out.vectors.push_back(std::move(v));
  }
  return out;
}

// --- Monte Carlo -----------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct LogKernel {
  std::vector<double> exponent;  // alpha_j - 1
  double offset;                 // log weight + log c(alpha)
};

std::vector<LogKernel> log_kernels(const Measure& g) {
  std::vector<LogKernel> out;
  for (const auto& atom : g.atoms()) {
    LogKernel k{{}, std::log(atom.weight) + log_normalizer(atom.param)};
    for (double a : atom.param) k.exponent.push_back(a - 1.0);
    out.push_back(std::move(k));
  }
  return out;
}

double log_mixture(const std::vector<LogKernel>& kernels, const std::vector<double>& log_x,
                   std::vector<double>& scratch) {
  scratch.clear();
  for (const auto& k : kernels) {
    double v = k.offset;
    for (std::size_t j = 0; j < log_x.size(); ++j) v += k.exponent[j] * log_x[j];
    scratch.push_back(v);
  }
  return log_sum_exp(scratch);
}

struct ChunkStats {
  double sum = 0.0;
  double sum_sq = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

}  // namespace

MonteCarloStats mc_discrepancy(const Measure& g, const Measure& g_prime, const Alpha& reference,
                               std::size_t n_samples, std::uint64_t seed, std::size_t chunk_size) {
  require(n_samples >= 1000, ErrorKind::InvalidArgument, "Monte Carlo needs at least 1000 samples");
  require(chunk_size >= 1, ErrorKind::InvalidArgument, "chunk size must be positive");
  require(g.dim() == g_prime.dim() && g.dim() == reference.size(), ErrorKind::DimensionMismatch,
          "measures and reference must share J");
  // The density ratio m/f_{alpha0} is chart invariant, so inverted measures
  // use the same computation.
  const auto kernels_g = log_kernels(g);
  const auto kernels_h = log_kernels(g_prime);
  const LogKernel base{[&] {
                         std::vector<double> e;
                         for (double a : reference) e.push_back(a - 1.0);
                         return e;
                       }(),
                       log_normalizer(reference)};
  const std::size_t dim = reference.size();
  const std::size_t chunks = (n_samples + chunk_size - 1) / chunk_size;

  auto run_chunk = [&](std::size_t c) {
    ChunkStats stats;
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(c)));
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<std::gamma_distribution<double>> gammas;
    for (double a : reference) gammas.emplace_back(a + 1.0, 1.0);
    std::vector<double> log_x(dim), scratch;
    const std::size_t begin = c * chunk_size;
    const std::size_t end = std::min(n_samples, begin + chunk_size);
    for (std::size_t s = begin; s < end; ++s) {
      // Gamma(a) = Gamma(a+1) * U^{1/a}, kept in log space so tiny
      // coordinates never underflow.
      for (std::size_t j = 0; j < dim; ++j)
        log_x[j] = std::log(gammas[j](rng)) + std::log(1.0 - uniform(rng)) / reference[j];
      const double norm = log_sum_exp(log_x);
      for (double& v : log_x) v -= norm;
      double log_base = base.offset;
      for (std::size_t j = 0; j < dim; ++j) log_base += base.exponent[j] * log_x[j];
      const double a = std::exp(log_mixture(kernels_g, log_x, scratch) - log_base);
      const double b = std::exp(log_mixture(kernels_h, log_x, scratch) - log_base);
      const double r = std::abs(a - b);
      stats.sum += r;
      stats.sum_sq += r * r;
      stats.max = std::max(stats.max, r);
      ++stats.count;
    }
    return stats;
  };

  std::vector<ChunkStats> results(chunks);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(chunks, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t c = w; c < chunks; c += workers) results[c] = run_chunk(c);
    }));
  for (auto& job : jobs) job.get();

  ChunkStats total;
  for (const auto& r : results) {
    total.sum += r.sum;
    total.sum_sq += r.sum_sq;
    total.max = std::max(total.max, r.max);
    total.count += r.count;
  }
  MonteCarloStats out;
  out.samples = total.count;
  out.mean_abs_rel = total.sum / static_cast<double>(total.count);
  out.max_abs_rel = total.max;
  const double variance = std::max(0.0, (total.sum_sq - total.count * out.mean_abs_rel * out.mean_abs_rel) /
                                            static_cast<double>(total.count - 1));
  out.std_err = std::sqrt(variance / static_cast<double>(total.count));
  return out;
}

// --- dispatch --------------------------------------------------------------------

namespace {

void check_comparable(Family a, Family b, std::size_t dim_a, std::size_t dim_b) {
  require_dirichlet_like(a);
  require(a == b, ErrorKind::InvalidArgument,
          "family mismatch: " + std::string(to_string(a)) + " vs " + std::string(to_string(b)));
  require(dim_a == dim_b, ErrorKind::DimensionMismatch, "measures have different J");
}

}  // namespace

RelationCertificate decide_equality(const ExactMeasure& g, const ExactMeasure& g_prime) {
  check_comparable(g.family(), g_prime.family(), g.dim(), g_prime.dim());
  RelationCertificate cert;
  cert.method = Method::ExactPolynomial;
  Rational residual = 0;
  std::size_t positives = 0, negatives = 0;
  for (const auto& rel : relation_from_measures(g, g_prime)) {
    const auto form = degree_elevate(rel, rel.max_degree());
    for (const auto& [u, a] : form.coefficients) residual = std::max<Rational>(residual, abs(a));
    const auto counts = sign_counts(rel);
    positives += counts.positives;
    negatives += counts.negatives;
  }
  cert.verdict = sgn(residual) == 0 ? Verdict::Equal : Verdict::NotEqual;
  cert.residual = to_double(residual);
  cert.exact_residual = std::move(residual);
  cert.sign_counts = std::make_pair(positives, negatives);
  return cert;
}

RelationCertificate decide_equality(const Measure& g, const Measure& g_prime, const EqualityOptions& options) {
  check_comparable(g.family(), g_prime.family(), g.dim(), g_prime.dim());
  bool feasible = true;
  for (const auto* m : {&g, &g_prime})
    for (const auto* n : {&g, &g_prime})
      for (const auto& a : m->atoms())
        for (const auto& b : n->atoms()) feasible = feasible && inner_product_feasible(a.param, b.param);

  RelationCertificate cert;
  if (feasible) {
    cert.method = Method::ClosedFormL2;
    cert.residual = l2_distance(g, g_prime);
    cert.scale = l2_norm(g);
    cert.verdict = cert.residual <= options.l2_rel_tol * cert.scale ? Verdict::Equal : Verdict::NotEqual;
    return cert;
  }

  // Reference parameter below every atom keeps the density ratio bounded.
  std::vector<double> reference(g.dim(), std::numeric_limits<double>::infinity());
  for (const auto* m : {&g, &g_prime})
    for (const auto& a : m->atoms())
      for (std::size_t j = 0; j < g.dim(); ++j) reference[j] = std::min(reference[j], a.param[j]);
  const auto stats = mc_discrepancy(g, g_prime, Alpha(reference), options.mc_samples, options.seed);
  cert.method = Method::MonteCarlo;
  cert.residual = stats.max_abs_rel;
  cert.scale = stats.std_err;
  cert.verdict = stats.max_abs_rel > 10.0 * stats.std_err + 1e-8 ? Verdict::NotEqual : Verdict::Inconclusive;
  return cert;
}

RelationCertificate decide_equality(const AnyMeasure& g, const AnyMeasure& g_prime, const EqualityOptions& options) {
  if (std::holds_alternative<ExactMeasure>(g) && std::holds_alternative<ExactMeasure>(g_prime))
    return decide_equality(std::get<ExactMeasure>(g), std::get<ExactMeasure>(g_prime));
  auto as_float = [](const AnyMeasure& m) {
    return std::visit(
        [](const auto& v) -> Measure {
          if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ExactMeasure>) {
            return to_double(v);
          } else {
            return v;
          }
        },
        m);
  };
  return decide_equality(as_float(g), as_float(g_prime), options);
}

}  // namespace dirimix
