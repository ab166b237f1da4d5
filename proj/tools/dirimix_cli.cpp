// dirimix: command-line front end.
//
// Exit codes: 0 verified / equal, 1 refuted / not equal, 2 inconclusive,
// 3 usage or input error, 4 feasibility or numerical limit, 5 internal error.
// Errors are printed to stderr as {"error": {"kind": ..., "message": ...}}.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dirimix/equivalence.hpp"
#include "dirimix/exactpoly.hpp"
#include "dirimix/json_io.hpp"
#include "dirimix/kernels.hpp"
#include "dirimix/series.hpp"
#include "dirimix/transports.hpp"
#include "dirimix/witnesses.hpp"

using namespace dirimix;

namespace {

constexpr int kExitEqual = 0;
constexpr int kExitNotEqual = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;
constexpr int kExitLimit = 4;
constexpr int kExitInternal = 5;

struct RunConfig {
  std::uint64_t seed = 0x5eed;
  std::optional<std::string> mode;
  double tol_int = 1e-9;
  double tol_rank = 1e-10;
  std::string output;

  std::optional<Mode> resolved_mode() const {
    if (mode) return parse_mode(*mode);
    return mode_from_env();
  }
};

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Equal: return kExitEqual;
    case Verdict::NotEqual: return kExitNotEqual;
    case Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitInternal;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_rational(item));
  require(!out.empty(), ErrorKind::Parse, "empty vector");
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& r : parse_rationals(text)) out.push_back(to_double(r));
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (const auto& r : parse_rationals(text)) {
    require(is_integer(r), ErrorKind::Parse, "expected integers, got " + to_string(r));
    out.push_back(static_cast<int>(r.get_num().get_si()));
  }
  return out;
}

std::string read_source(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit(const RunConfig& cfg, const Json& value) {
  const std::string text = dump(value);
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  require(static_cast<bool>(out), ErrorKind::InvalidArgument, "cannot write '" + cfg.output + "'");
  out << text;
}

/// Uniform points of the simplex interior (Dir(1,...,1)).
std::vector<SimplexPoint> random_simplex_points(std::size_t dim, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<SimplexPoint> out;
  while (out.size() < count) {
    std::vector<double> x(dim);
    double total = 0.0;
    for (auto& v : x) total += (v = expo(rng));
    for (auto& v : x) v /= total;
    try {
      out.push_back(SimplexPoint::from_full(x));
    } catch (const Error&) {
      // Rounding pushed the sum outside tolerance; draw again.
    }
  }
  return out;
}

Measure as_float(const AnyMeasure& g) {
  if (const auto* exact = std::get_if<ExactMeasure>(&g)) return to_double(*exact);
  return std::get<Measure>(g);
}

Family family_option(const std::string& text) { return parse_family(text); }

// --- witness ------------------------------------------------------------------

struct WitnessArgs {
  std::string alpha;
  std::string family = "dirichlet";
  int expand = 0;
  int n = 3;
  std::string beta;
  std::string document;
  std::size_t samples = 100000;
};

template <class T>
int finish_shift_witness(const RunConfig& cfg, WitnessPair<T> pair, const WitnessArgs& args) {
  for (int step = 0; step < args.expand; ++step) pair.g1 = expand_atom(pair.g1, 0);
  EqualityOptions options;
  options.seed = cfg.seed;
  options.mc_samples = args.samples;
  RelationCertificate cert;
  if constexpr (is_exact_v<T>) {
    cert = decide_equality(pair.g0, pair.g1);
  } else {
    cert = decide_equality(pair.g0, pair.g1, options);
  }
  // Pointwise check on the simplex (the inverted family shares it through the chart).
  const Alpha alpha = [&] {
    if constexpr (is_exact_v<T>) {
      return to_double(pair.g0[0].param);
    } else {
      return pair.g0[0].param;
    }
  }();
  double worst = 0.0;
  for (const auto& x : random_simplex_points(alpha.size(), 1000, cfg.seed))
    worst = std::max(worst, std::abs(shift_residual(alpha, x)) / std::exp(dirichlet_log_density(alpha, x)));

  Json out = to_json(pair);
  out["verification"] = {{"certificate", to_json(cert)}, {"max_rel_pointwise_residual", worst}, {"points", 1000}};
  emit(cfg, out);
  if (cert.verdict == Verdict::Inconclusive && worst <= 1e-10) return kExitEqual;
  return verdict_exit(cert.verdict);
}

int run_witness_shift(const RunConfig& cfg, const WitnessArgs& args) {
  const Family family = family_option(args.family);
  require(family == Family::Dirichlet || family == Family::InvertedDirichlet, ErrorKind::InvalidArgument,
          "witness shift supports the dirichlet and inverted_dirichlet families; use 'witness dm|lda|embed' otherwise");
  require(args.expand >= 0, ErrorKind::InvalidArgument, "--expand must be >= 0");
  if (cfg.resolved_mode().value_or(Mode::Exact) == Mode::Exact)
    return finish_shift_witness(cfg, shift_witness(ExactAlpha(parse_rationals(args.alpha)), family), args);
  return finish_shift_witness(cfg, shift_witness(Alpha(parse_doubles(args.alpha)), family), args);
}

int run_witness_dm(const RunConfig& cfg, const WitnessArgs& args) {
  require(args.n >= 0, ErrorKind::InvalidArgument, "--n must be >= 0");
  const ExactAlpha alpha(parse_rationals(args.alpha));
  const auto pair = shift_witness(alpha, Family::DirichletMultinomial);
  Rational worst = 0;
  std::size_t points = 0;
  for (const auto& x : compositions(alpha.size(), args.n)) {
    worst = std::max<Rational>(worst, abs(dm_shift_residual(args.n, alpha, x)));
    ++points;
  }
  Json out = to_json(pair);
  out["n"] = args.n;
  out["verification"] = {{"max_abs_residual", to_json(worst)}, {"support_points", points}};
  emit(cfg, out);
  return sgn(worst) == 0 ? kExitEqual : kExitNotEqual;
}

TopicMatrix<Rational> parse_topics(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : split(text, ';')) rows.push_back(parse_rationals(row));
  return TopicMatrix<Rational>(std::move(rows));
}

int run_witness_lda(const RunConfig& cfg, const WitnessArgs& args) {
  const ExactAlpha alpha(parse_rationals(args.alpha));
  const auto beta = parse_topics(args.beta);
  require(beta.topics() == alpha.size(), ErrorKind::DimensionMismatch, "beta needs one row per topic (K = |alpha|)");
  const Document document = parse_ints(args.document);
  const Rational residual = lda_shift_residual(alpha, beta, document);
  const auto pair = shift_witness(alpha, Family::LdaMarginal);
  Json beta_json = Json::array();
  for (const auto& row : beta.rows()) {
    Json r = Json::array();
    for (const auto& p : row) r.push_back(to_json(p));
    beta_json.push_back(std::move(r));
  }
  Json out = to_json(pair);
  out["beta"] = std::move(beta_json);
  out["document"] = document;
  out["verification"] = {{"abs_residual", to_json(abs(residual))}};
  emit(cfg, out);
  return sgn(residual) == 0 ? kExitEqual : kExitNotEqual;
}

int run_witness_embed(const RunConfig& cfg, const WitnessArgs& args) {
  const Family target = family_option(args.family);
  const Alpha alpha(parse_doubles(args.alpha));
  const KernelSpec embedded = embed(alpha, target);
  const bool inverted = target == Family::InvertedBetaLiouville;
  const KernelSpec source = inverted ? KernelSpec(InvertedDirichletKernel{alpha}) : KernelSpec(DirichletKernel{alpha});
  double worst = 0.0;
  for (const auto& x : random_simplex_points(alpha.size(), 100, cfg.seed)) {
    double diff;
    if (inverted) {
      const OrthantPoint y = chart_inverse(x);
      diff = kernel_log_density(embedded, y) - kernel_log_density(source, y);
    } else {
      diff = kernel_log_density(embedded, x) - kernel_log_density(source, x);
    }
    worst = std::max(worst, std::abs(diff));
  }
  const auto pair = shift_witness(alpha, inverted ? Family::InvertedDirichlet : Family::Dirichlet);
  Json out = to_json(pair);
  out["provenance"] = "embedding of the " + std::string(to_string(family_of(source))) + " kernel into the " +
                      std::string(to_string(target)) + " family; the unit-shift witness carries over unchanged";
  out["source_kernel"] = to_json(source);
  out["embedded_kernel"] = to_json(embedded);
  out["verification"] = {{"max_abs_log_density_diff", worst}, {"points", 100}};
  emit(cfg, out);
  return worst <= 1e-12 ? kExitEqual : kExitNotEqual;
}

// --- equal / certify ----------------------------------------------------------------

std::pair<AnyMeasure, AnyMeasure> load_pair(const RunConfig& cfg, const std::vector<std::string>& files) {
  require(files.size() <= 2, ErrorKind::InvalidArgument, "expected at most two measure files");
  const auto mode = cfg.resolved_mode();
  if (files.size() == 2)
    return {measure_from_json(parse_json(read_source(files[0])), mode),
            measure_from_json(parse_json(read_source(files[1])), mode)};
  const Json doc = parse_json(read_source(files.empty() ? "-" : files[0]));
  return std::visit([](auto&& p) -> std::pair<AnyMeasure, AnyMeasure> { return {p.g0, p.g1}; },
                    witness_from_json(doc, mode));
}

void write_grid(const std::string& path, const Measure& g, const Measure& g_prime, int steps) {
  const std::size_t dim = g.dim();
  require(steps > static_cast<int>(dim), ErrorKind::InvalidArgument, "--grid must exceed J");
  const auto cells = compositions(dim, steps - static_cast<int>(dim));
  require(cells.size() <= 1000000, ErrorKind::Feasibility, "density grid exceeds 10^6 points; lower --grid");
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  const bool inverted = g.family() == Family::InvertedDirichlet;
  const std::size_t coords = inverted ? dim - 1 : dim;
  for (std::size_t j = 0; j < coords; ++j) out << (inverted ? "y" : "x") << j + 1 << ',';
  out << "m_G,m_G_prime,abs_diff\n";
  out.precision(17);
  for (const auto& cell : cells) {
    std::vector<double> x(dim);
    for (std::size_t j = 0; j < dim; ++j) x[j] = (cell[j] + 1.0) / steps;
    const SimplexPoint point = SimplexPoint::from_full(x);
    double a, b;
    if (inverted) {
      const OrthantPoint y = chart_inverse(point);
      for (double v : y.coords()) out << v << ',';
      a = std::exp(mixture_log_density(g, y));
      b = std::exp(mixture_log_density(g_prime, y));
    } else {
      for (double v : x) out << v << ',';
      a = std::exp(mixture_log_density(g, point));
      b = std::exp(mixture_log_density(g_prime, point));
    }
    out << a << ',' << b << ',' << std::abs(a - b) << '\n';
  }
}

struct EqualArgs {
  std::vector<std::string> files;
  std::size_t samples = 100000;
  std::string csv;
  int grid = 16;
};

int run_equal(const RunConfig& cfg, const EqualArgs& args) {
  const auto [g, g_prime] = load_pair(cfg, args.files);
  EqualityOptions options;
  options.seed = cfg.seed;
  options.mc_samples = args.samples;
  const auto cert = decide_equality(g, g_prime, options);
  if (!args.csv.empty()) write_grid(args.csv, as_float(g), as_float(g_prime), args.grid);
  emit(cfg, to_json(cert));
  return verdict_exit(cert.verdict);
}

int run_certify(const RunConfig& cfg, const std::vector<std::string>& files) {
  require(!files.empty() && files.size() <= 2, ErrorKind::InvalidArgument, "certify takes one or two measure files");
  const auto mode = cfg.resolved_mode();
  std::vector<AnyMeasure> measures;
  for (const auto& f : files) measures.push_back(measure_from_json(parse_json(read_source(f)), mode));
  const bool exact = std::all_of(measures.begin(), measures.end(),
                                 [](const AnyMeasure& m) { return std::holds_alternative<ExactMeasure>(m); });
  std::vector<IdentifiabilityCertificate> certs;
  if (exact) {
    const auto& g = std::get<ExactMeasure>(measures[0]);
    certs = measures.size() == 1 ? certify(g) : certify(g, std::get<ExactMeasure>(measures[1]));
  } else {
    const auto g = as_float(measures[0]);
    certs = measures.size() == 1 ? certify(g) : certify(g, as_float(measures[1]));
  }
  Json list = Json::array();
  for (const auto& c : certs) list.push_back(to_json(c));
  emit(cfg, {{"certificates", std::move(list)}});
  return certs.empty() ? kExitNotEqual : kExitEqual;
}

// --- relations / gram --------------------------------------------------------------

struct RelationsArgs {
  std::size_t dim = 2;
  int max_degree = 3;
  std::size_t combinations = 0;
};

int run_relations(const RunConfig& cfg, const RelationsArgs& args) {
  require(args.dim >= 2, ErrorKind::InvalidArgument, "--J must be >= 2");
  require(args.max_degree >= 0, ErrorKind::InvalidArgument, "--max-degree must be >= 0");
  const auto exponents = lattice_up_to(args.dim, args.max_degree);
  const auto basis = null_relation_basis(exponents, args.dim);
  bool all_hold = true;
  Json basis_json = Json::array();
  for (const auto& coeffs : basis) {
    const auto rel = make_relation(exponents, coeffs);
    const auto counts = sign_counts(rel);
    all_hold = all_hold && counts.bound_check;
    basis_json.push_back({{"relation", to_json(rel)},
                          {"sign_counts", {counts.positives, counts.negatives}},
                          {"bound_holds", counts.bound_check}});
  }
  Json out = {{"J", args.dim}, {"max_degree", args.max_degree}, {"monomials", exponents.size()},
              {"basis", std::move(basis_json)}};
  if (args.combinations > 0 && !basis.empty()) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 7);
    std::size_t held = 0;
    for (std::size_t trial = 0; trial < args.combinations; ++trial) {
      std::vector<Rational> combo(exponents.size(), Rational(0));
      bool nonzero = false;
      while (!nonzero) {
        std::vector<Rational> weights;
        for (std::size_t b = 0; b < basis.size(); ++b) weights.push_back(make_rational(num(rng), den(rng)));
        for (std::size_t i = 0; i < exponents.size(); ++i) {
          combo[i] = 0;
          for (std::size_t b = 0; b < basis.size(); ++b) combo[i] += weights[b] * basis[b][i];
          nonzero = nonzero || sgn(combo[i]) != 0;
        }
      }
      const auto [pos, neg] = count_signs(combo);
      if (std::max(pos, neg) >= args.dim) ++held;
    }
    all_hold = all_hold && held == args.combinations;
    out["random_combinations"] = {{"count", args.combinations}, {"bound_holds", held}};
  }
  out["all_bounds_hold"] = all_hold;
  emit(cfg, out);
  return all_hold ? kExitEqual : kExitNotEqual;
}

struct GramArgs {
  std::string params;
  std::string file;
};

int run_gram(const RunConfig& cfg, const GramArgs& args) {
  std::vector<Alpha> params;
  if (!args.file.empty()) {
    const auto g = as_float(measure_from_json(parse_json(read_source(args.file)), cfg.resolved_mode()));
    for (const auto& atom : g.atoms()) params.push_back(atom.param);
  } else {
    require(!args.params.empty(), ErrorKind::InvalidArgument, "give --params or --file");
    for (const auto& p : split(args.params, ';')) params.emplace_back(parse_doubles(p));
  }
  const auto gram = gram_matrix(params);
  const auto null = numerical_null_space(gram, cfg.tol_rank);
  Json matrix = Json::array();
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < gram.cols(); ++k) row.push_back(gram(i, k));
    matrix.push_back(std::move(row));
  }
  Json eigenvalues = Json::array();
  for (Eigen::Index i = 0; i < null.eigenvalues.size(); ++i) eigenvalues.push_back(null.eigenvalues(i));
  Json vectors = Json::array();
  for (const auto& v : null.vectors) vectors.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  Json out = {{"gram", std::move(matrix)},
              {"eigenvalues", std::move(eigenvalues)},
              {"null_vectors", std::move(vectors)},
              {"tol_rank", cfg.tol_rank}};
  out["condition"] = std::isfinite(null.condition) ? Json(null.condition) : Json("inf");
  emit(cfg, out);
  return null.vectors.empty() ? kExitEqual : kExitNotEqual;
}

// --- transport / series -------------------------------------------------------------

struct TransportArgs {
  std::string kind;
  std::string x;
  std::string t;
  std::string y;
  std::string alpha;
};

int run_transport(const RunConfig& cfg, const TransportArgs& args) {
  const int given = !args.x.empty() + !args.t.empty() + !args.y.empty();
  require(given == 1, ErrorKind::InvalidArgument, "give exactly one of --x, --t, --y");
  auto simplex = [](const std::string& text) {
    auto v = parse_doubles(text);
    double s = 0.0;
    for (double c : v) s += c;
    return std::abs(s - 1.0) <= 1e-12 ? SimplexPoint::from_full(std::move(v))
                                      : SimplexPoint::from_interior(std::move(v));
  };
  std::optional<Alpha> alpha;
  if (!args.alpha.empty()) alpha.emplace(parse_doubles(args.alpha));
  Json out = {{"chart", args.kind}};
  if (args.kind == "alr") {
    require(args.y.empty(), ErrorKind::InvalidArgument, "the alr chart takes --x or --t");
    const SimplexPoint x = args.x.empty() ? alr_inverse(LogRatioPoint(parse_doubles(args.t))) : simplex(args.x);
    const LogRatioPoint t = alr_transform(x);
    out["x"] = std::vector<double>(x.coords().begin(), x.coords().end());
    out["t"] = std::vector<double>(t.coords().begin(), t.coords().end());
    out["jacobian_det"] = alr_jacobian_det(x);
    if (alpha) {
      out["simplex_density"] = std::exp(dirichlet_log_density(*alpha, x));
      out["alr_density"] = alr_density(*alpha, t);
    }
  } else if (args.kind == "chart") {
    require(args.t.empty(), ErrorKind::InvalidArgument, "the orthant chart takes --x or --y");
    const OrthantPoint y = args.y.empty() ? chart_inverse(simplex(args.x)) : OrthantPoint(parse_doubles(args.y));
    const SimplexPoint x = chart_transform(y);
    out["x"] = std::vector<double>(x.coords().begin(), x.coords().end());
    out["y"] = std::vector<double>(y.coords().begin(), y.coords().end());
    out["jacobian_det"] = chart_jacobian_det(y);
    if (alpha) {
      out["simplex_density"] = std::exp(dirichlet_log_density(*alpha, x));
      out["orthant_density"] = std::exp(inverted_dirichlet_log_density(*alpha, y));
    }
  } else {
    fail(ErrorKind::InvalidArgument, "transport chart must be 'alr' or 'chart', got '" + args.kind + "'");
  }
  emit(cfg, out);
  return kExitEqual;
}

struct SeriesArgs {
  std::string alpha;
  std::string y;
  int order = 40;
  std::vector<std::string> coeffs;
};

int run_series(const RunConfig& cfg, const SeriesArgs& args) {
  const Alpha alpha(parse_doubles(args.alpha));
  Json out = {{"alpha", alpha.entries()}};
  if (!args.coeffs.empty()) {
    Json terms = Json::array();
    for (const auto& m : args.coeffs) {
      const MultiIndex index(parse_ints(m));
      const auto term = h_series_coeff(alpha, index);
      terms.push_back({{"m", parse_ints(m)}, {"exponent", term.exponent}, {"coefficient", term.coefficient}});
    }
    out["coefficients"] = std::move(terms);
  }
  int code = kExitEqual;
  if (!args.y.empty()) {
    const OrthantPoint y(parse_doubles(args.y));
    const auto eval = h_series_eval(alpha, y, args.order);
    const double exact = std::exp(inverted_dirichlet_log_density(alpha, y));
    const bool within = std::abs(eval.value - exact) <= eval.tail_bound;
    out["evaluation"] = {{"y", std::vector<double>(y.coords().begin(), y.coords().end())},
                         {"order", args.order},
                         {"value", eval.value},
                         {"tail_bound", eval.tail_bound},
                         {"truncation_bound", eval.truncation_bound},
                         {"rounding_allowance", eval.rounding_allowance},
                         {"ratio", eval.ratio},
                         {"closed_form", exact},
                         {"abs_error", std::abs(eval.value - exact)},
                         {"within_bound", within}};
    code = within ? kExitEqual : kExitNotEqual;
  }
  emit(cfg, out);
  return code;
}

int exit_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Feasibility:
    case ErrorKind::Range:
    case ErrorKind::Ambiguity:
    case ErrorKind::Unsupported: return kExitLimit;
    default: return kExitUsage;
  }
}

void report(const Error& e) { std::cerr << error_json(e).dump() << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Witnesses, equality decisions and identifiability certificates for finite Dirichlet mixtures",
               "dirimix"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Seed for every stochastic step")->capture_default_str();
  app.add_option("--mode", cfg.mode, "Scalar mode: float or exact (default: DIRIMIX_MODE, else inferred)")
      ->check(CLI::IsMember({"float", "exact"}));
  app.add_option("--tol-int", cfg.tol_int, "Integer tolerance for float congruence tests")->capture_default_str();
  app.add_option("--tol-rank", cfg.tol_rank, "Relative eigenvalue tolerance for numerical rank")
      ->capture_default_str();
  app.add_option("-o,--output", cfg.output, "Write the JSON result here instead of stdout");

  int code = kExitInternal;

  auto* witness = app.add_subcommand("witness", "Build and verify non-identifiability witnesses");
  witness->require_subcommand(1);
  WitnessArgs wargs;
  auto* shift = witness->add_subcommand("shift", "Unit-shift witness delta_alpha vs sum_j (alpha_j/alpha_+) delta_{alpha+e_j}");
  shift->add_option("--alpha", wargs.alpha, "Comma-separated parameter, e.g. 1,1 or 3/2,1/2")->required();
  shift->add_option("--family", wargs.family, "dirichlet or inverted_dirichlet")->capture_default_str();
  shift->add_option("--expand", wargs.expand, "Apply expand_atom to the first atom of G1 this many times");
  shift->add_option("--samples", wargs.samples, "Monte Carlo samples when the L2 path is infeasible");
  shift->callback([&] { code = run_witness_shift(cfg, wargs); });

  auto* dm = witness->add_subcommand("dm", "Dirichlet-multinomial witness, checked exactly on all counts");
  dm->add_option("--alpha", wargs.alpha, "Comma-separated parameter")->required();
  dm->add_option("--n", wargs.n, "Number of trials")->capture_default_str();
  dm->callback([&] { code = run_witness_dm(cfg, wargs); });

  auto* lda = witness->add_subcommand("lda", "LDA-marginal witness, checked exactly on one document");
  lda->add_option("--alpha", wargs.alpha, "Comma-separated topic parameter (K entries)")->required();
  lda->add_option("--beta", wargs.beta, "Topic rows separated by ';', entries by ','")->required();
  lda->add_option("--doc", wargs.document, "Comma-separated 1-based word indices")->required();
  lda->callback([&] { code = run_witness_lda(cfg, wargs); });

  auto* emb = witness->add_subcommand("embed", "Embed a Dirichlet kernel into GD, BL or IBL and compare densities");
  emb->add_option("--alpha", wargs.alpha, "Comma-separated parameter")->required();
  emb->add_option("--family", wargs.family, "generalized_dirichlet, beta_liouville or inverted_beta_liouville")
      ->required();
  emb->callback([&] { code = run_witness_embed(cfg, wargs); });

  EqualArgs eargs;
  auto* equal = app.add_subcommand("equal", "Decide m_G = m_G' for two measure files, or a witness pair (stdin)");
  equal->add_option("files", eargs.files, "Zero or one witness-pair file, or two measure files ('-' = stdin)");
  equal->add_option("--samples", eargs.samples, "Monte Carlo samples")->capture_default_str();
  equal->add_option("--csv", eargs.csv, "Also write a density grid CSV here");
  equal->add_option("--grid", eargs.grid, "Grid resolution for --csv")->capture_default_str();
  equal->callback([&] { code = run_equal(cfg, eargs); });

  std::vector<std::string> cert_files;
  auto* cert = app.add_subcommand("certify", "List identifiability regimes holding for one or two measures");
  cert->add_option("files", cert_files, "One or two measure files")->required();
  cert->callback([&] { code = run_certify(cfg, cert_files); });

  RelationsArgs rargs;
  auto* rel = app.add_subcommand("relations", "Null relations among simplex monomials of degree <= N and their signs");
  rel->add_option("--J", rargs.dim, "Number of simplex coordinates")->required();
  rel->add_option("--max-degree", rargs.max_degree, "Largest total degree")->required();
  rel->add_option("--combinations", rargs.combinations, "Also test this many random rational combinations");
  rel->callback([&] { code = run_relations(cfg, rargs); });

  GramArgs gargs;
  auto* gram = app.add_subcommand("gram", "Kernel Gram matrix and its numerical null space");
  gram->add_option("--params", gargs.params, "Parameters separated by ';', entries by ','");
  gram->add_option("--file", gargs.file, "Measure file whose atoms are used");
  gram->callback([&] { code = run_gram(cfg, gargs); });

  TransportArgs targs;
  auto* transport = app.add_subcommand("transport", "Convert points between the simplex, ALR and orthant charts");
  transport->add_option("chart", targs.kind, "alr or chart")->required();
  transport->add_option("--x", targs.x, "Simplex point (J-1 or J coordinates)");
  transport->add_option("--t", targs.t, "ALR point");
  transport->add_option("--y", targs.y, "Orthant point");
  transport->add_option("--alpha", targs.alpha, "Also report densities for this parameter");
  transport->callback([&] { code = run_transport(cfg, targs); });

  SeriesArgs sargs;
  auto* series = app.add_subcommand("series", "Series coefficients and tail-bounded evaluation of h_alpha near 0");
  series->add_option("--alpha", sargs.alpha, "Comma-separated parameter")->required();
  series->add_option("--y", sargs.y, "Orthant point with Y < 1/2");
  series->add_option("--order", sargs.order, "Truncation order")->capture_default_str();
  series->add_option("--coeff", sargs.coeffs, "Multi-index m (J-1 entries); repeatable");
  series->callback([&] { code = run_series(cfg, sargs); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report(Error(ErrorKind::InvalidArgument, e.what()));
    return kExitUsage;
  } catch (const Error& e) {
    report(e);
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << Json({{"error", {{"kind", "internal"}, {"message", e.what()}}}}).dump() << '\n';
    return kExitInternal;
  }
  return code;
}
