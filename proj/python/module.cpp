#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "dirimix/equivalence.hpp"
#include "dirimix/exactpoly.hpp"
#include "dirimix/json_io.hpp"
#include "dirimix/kernels.hpp"
#include "dirimix/series.hpp"
#include "dirimix/transports.hpp"
#include "dirimix/witnesses.hpp"

namespace py = pybind11;
using namespace dirimix;

namespace {

std::optional<Mode> optional_mode(const std::optional<std::string>& mode) {
  if (mode) return parse_mode(*mode);
  return mode_from_env();
}

std::vector<Rational> rationals(const std::vector<std::string>& values) {
  std::vector<Rational> out;
  for (const auto& v : values) out.push_back(parse_rational(v));
  return out;
}

std::vector<double> coords(std::span<const double> values) { return {values.begin(), values.end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite Dirichlet mixture identifiability toolkit (JSON in, JSON out).";

  // Released on purpose: the type object lives as long as the interpreter.
  static py::handle error_type = py::exception<Error>(m, "DirimixError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error_type.ptr(), (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def(
      "shift_witness",
      [](const std::vector<std::string>& alpha, const std::string& family, bool exact) {
        const Family f = parse_family(family);
        if (exact) return dump(to_json(shift_witness(ExactAlpha(rationals(alpha)), f)));
        return dump(to_json(shift_witness(to_double(ExactAlpha(rationals(alpha))), f)));
      },
      py::arg("alpha"), py::arg("family") = "dirichlet", py::arg("exact") = true);

  m.def(
      "expand_atom",
      [](const std::string& measure, std::size_t index, std::optional<std::string> mode) {
        const auto g = measure_from_json(parse_json(measure), optional_mode(mode));
        return std::visit([&](const auto& v) { return dump(to_json(expand_atom(v, index))); }, g);
      },
      py::arg("measure"), py::arg("index"), py::arg("mode") = py::none());

  m.def(
      "decide_equality",
      [](const std::string& g, const std::string& g_prime, std::uint64_t seed, std::size_t samples,
         std::optional<std::string> mode) {
        const auto md = optional_mode(mode);
        EqualityOptions options;
        options.seed = seed;
        options.mc_samples = samples;
        const auto a = measure_from_json(parse_json(g), md);
        const auto b = measure_from_json(parse_json(g_prime), md);
        py::gil_scoped_release release;
        return dump(to_json(decide_equality(a, b, options)));
      },
      py::arg("g"), py::arg("g_prime"), py::arg("seed") = 0x5eed, py::arg("samples") = 100000,
      py::arg("mode") = py::none());

  m.def(
      "certify",
      [](const std::string& g, std::optional<std::string> g_prime, std::optional<std::string> mode) {
        const auto md = optional_mode(mode);
        auto a = measure_from_json(parse_json(g), md);
        std::optional<AnyMeasure> b;
        if (g_prime) b = measure_from_json(parse_json(*g_prime), md);
        std::vector<IdentifiabilityCertificate> certs;
        const bool exact = std::holds_alternative<ExactMeasure>(a) && (!b || std::holds_alternative<ExactMeasure>(*b));
        auto as_float = [](const AnyMeasure& x) {
          return std::holds_alternative<ExactMeasure>(x) ? to_double(std::get<ExactMeasure>(x)) : std::get<Measure>(x);
        };
        if (exact) {
          certs = b ? certify(std::get<ExactMeasure>(a), std::get<ExactMeasure>(*b)) : certify(std::get<ExactMeasure>(a));
        } else {
          certs = b ? certify(as_float(a), as_float(*b)) : certify(as_float(a));
        }
        Json list = Json::array();
        for (const auto& c : certs) list.push_back(to_json(c));
        return dump(list);
      },
      py::arg("g"), py::arg("g_prime") = py::none(), py::arg("mode") = py::none());

  m.def(
      "null_relation_basis",
      [](std::size_t dim, int max_degree) {
        const auto exponents = lattice_up_to(dim, max_degree);
        Json out = Json::array();
        for (const auto& coeffs : null_relation_basis(exponents, dim)) out.push_back(to_json(make_relation(exponents, coeffs)));
        return dump(out);
      },
      py::arg("J"), py::arg("max_degree"));

  m.def(
      "sign_counts",
      [](const std::string& relation) {
        const auto c = sign_counts(relation_from_json(parse_json(relation)));
        return std::make_pair(c.positives, c.negatives);
      },
      py::arg("relation"));

  m.def(
      "l2_distance",
      [](const std::string& g, const std::string& g_prime) {
        auto a = measure_from_json(parse_json(g), Mode::Float);
        auto b = measure_from_json(parse_json(g_prime), Mode::Float);
        return l2_distance(std::get<Measure>(a), std::get<Measure>(b));
      },
      py::arg("g"), py::arg("g_prime"));

  m.def(
      "inner_product", [](const std::vector<double>& a, const std::vector<double>& b) { return inner_product(Alpha(a), Alpha(b)); },
      py::arg("alpha"), py::arg("beta"));

  m.def(
      "gram_null_space",
      [](const std::vector<std::vector<double>>& params, double tol) {
        std::vector<Alpha> alphas(params.begin(), params.end());
        const auto gram = gram_matrix(alphas);
        const auto null = numerical_null_space(gram, tol);
        std::vector<std::vector<double>> vectors;
        for (const auto& v : null.vectors) vectors.emplace_back(v.data(), v.data() + v.size());
        return std::make_pair(vectors, null.condition);
      },
      py::arg("params"), py::arg("tol") = 1e-10);

  m.def(
      "dirichlet_log_density",
      [](const std::vector<double>& alpha, const std::vector<double>& x) {
        return dirichlet_log_density(Alpha(alpha), SimplexPoint::from_interior(x));
      },
      py::arg("alpha"), py::arg("x"), "x holds the first J-1 coordinates.");

  m.def(
      "inverted_dirichlet_log_density",
      [](const std::vector<double>& alpha, const std::vector<double>& y) {
        return inverted_dirichlet_log_density(Alpha(alpha), OrthantPoint(y));
      },
      py::arg("alpha"), py::arg("y"));

  m.def(
      "dm_pmf",
      [](int n, const std::vector<std::string>& alpha, const std::vector<int>& x) {
        return to_string(dm_pmf_exact(n, ExactAlpha(rationals(alpha)), MultiIndex(x)));
      },
      py::arg("n"), py::arg("alpha"), py::arg("x"));

  m.def(
      "lda_marginal",
      [](const std::vector<std::string>& alpha, const std::vector<std::vector<std::string>>& beta,
         const std::vector<int>& document) {
        std::vector<std::vector<Rational>> rows;
        for (const auto& r : beta) rows.push_back(rationals(r));
        return to_string(lda_marginal_exact(ExactAlpha(rationals(alpha)), TopicMatrix<Rational>(rows), document));
      },
      py::arg("alpha"), py::arg("beta"), py::arg("document"));

  m.def(
      "dirichlet_moment",
      [](const std::vector<std::string>& alpha, const std::vector<int>& m) {
        return to_string(dirichlet_moment(ExactAlpha(rationals(alpha)), MultiIndex(m)));
      },
      py::arg("alpha"), py::arg("m"));

  m.def("alr_transform", [](const std::vector<double>& x) { return coords(alr_transform(SimplexPoint::from_full(x)).coords()); },
        py::arg("x"));
  m.def("alr_inverse", [](const std::vector<double>& t) { return coords(alr_inverse(LogRatioPoint(t)).coords()); },
        py::arg("t"));
  m.def("chart_transform", [](const std::vector<double>& y) { return coords(chart_transform(OrthantPoint(y)).coords()); },
        py::arg("y"));
  m.def("chart_inverse", [](const std::vector<double>& x) { return coords(chart_inverse(SimplexPoint::from_full(x)).coords()); },
        py::arg("x"));

  m.def(
      "h_series_eval",
      [](const std::vector<double>& alpha, const std::vector<double>& y, int order) {
        const auto e = h_series_eval(Alpha(alpha), OrthantPoint(y), order);
        py::dict out;
        out["value"] = e.value;
        out["tail_bound"] = e.tail_bound;
        out["truncation_bound"] = e.truncation_bound;
        out["rounding_allowance"] = e.rounding_allowance;
        out["ratio"] = e.ratio;
        return out;
      },
      py::arg("alpha"), py::arg("y"), py::arg("order") = 40);
}
