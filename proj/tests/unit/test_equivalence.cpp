#include <doctest.h>

#include <cmath>
#include <set>

#include "dirimix/equivalence.hpp"
#include "dirimix/exactpoly.hpp"
#include "dirimix/kernels.hpp"
#include "dirimix/witnesses.hpp"
#include "oracles.hpp"

using namespace dirimix;

namespace {

/// Best rational approximation with denominator <= max_den (continued fractions).
Rational rationalize(double value, long max_den = 100000) {
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = value;
  for (int step = 0; step < 64; ++step) {
    const double a = std::floor(x);
    const long ai = static_cast<long>(a);
    const long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - value) < 1e-13) break;
    x = 1.0 / (x - a);
  }
  return make_rational(p1, q1);
}

/// J=2 L2 distance between two Dirichlet point masses by the trapezoid rule.
double l2_trapezoid(const std::vector<double>& a, const std::vector<double>& b) {
  const double sq = oracle::trapezoid(
      [&](double t) {
        const std::vector<double> x{t, 1 - t};
        const double d = oracle::dirichlet_density(a, x) - oracle::dirichlet_density(b, x);
        return d * d;
      },
      0.0, 1.0, 200000);
  return std::sqrt(sq);
}

/// k distinct atoms on the slice alpha_+ = total with every entry >= floor.
std::vector<Alpha> slice_atoms(std::size_t k, std::size_t dim, double total, double floor) {
  std::vector<Alpha> atoms;
  while (atoms.size() < k) {
    auto x = oracle::simplex_coords(dim, floor / total);
    for (auto& v : x) v *= total;
    atoms.emplace_back(x);
  }
  return atoms;
}

/// d_i = c_i (r_+)_{|n|} / prod_j (r_j)_{n_j} for parameters r + n^(i).
std::vector<Rational> monomial_coefficients(const std::vector<Rational>& residue, const std::vector<MultiIndex>& exps,
                                            const std::vector<Rational>& c) {
  Rational r_total = 0;
  for (const auto& r : residue) r_total += r;
  std::vector<Rational> d;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    Rational value = c[i];
    int order = 0;
    for (std::size_t j = 0; j < residue.size(); ++j) {
      for (int k = 0; k < exps[i][j]; ++k) value /= residue[j] + k;
      order += exps[i][j];
    }
    for (int k = 0; k < order; ++k) value *= r_total + k;
    d.push_back(value);
  }
  return d;
}

ExactMeasure random_exact_measure(std::size_t atoms, std::size_t dim, int hi) {
  std::vector<ExactMeasure::Atom> out;
  std::vector<Rational> raw;
  Rational total = 0;
  while (out.size() < atoms) {
    ExactAlpha alpha(oracle::positive_rationals(dim, hi, 3));
    bool fresh = true;
    for (const auto& a : out) fresh = fresh && !(a.param == alpha);
    if (!fresh) continue;
    raw.push_back(Rational(oracle::uniform_int(1, 9)));
    total += raw.back();
    out.push_back({alpha, Rational(0)});
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k].weight = raw[k] / total;
  return ExactMeasure(Family::Dirichlet, std::move(out));
}

ExactMeasure exact_measure(const std::vector<ExactAlpha>& params, const std::vector<Rational>& raw) {
  Rational total = 0;
  for (const auto& w : raw) total += w;
  std::vector<ExactMeasure::Atom> atoms;
  for (std::size_t k = 0; k < params.size(); ++k) atoms.push_back({params[k], raw[k] / total});
  return ExactMeasure(Family::Dirichlet, std::move(atoms));
}

std::vector<Rational> random_weights(std::size_t k) {
  std::vector<Rational> w;
  for (std::size_t i = 0; i < k; ++i) w.push_back(Rational(oracle::uniform_int(1, 9)));
  return w;
}

}  // namespace

TEST_SUITE("equivalence") {
  TEST_CASE("inner product examples") {
    CHECK(inner_product(Alpha{1, 1}, Alpha{1, 1}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(inner_product(Alpha{2, 1}, Alpha{1, 2}) == doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK(inner_product(Alpha{2, 2}, Alpha{2, 2}) == doctest::Approx(6.0 / 5).epsilon(1e-14));
    CHECK_FALSE(inner_product_feasible(Alpha{0.4, 1}, Alpha{0.5, 1}));
    try {
      inner_product(Alpha{0.4, 1}, Alpha{0.5, 1});
      FAIL("expected a feasibility error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Feasibility);
    }
  }

  TEST_CASE("inner product matches the trapezoid oracle for J=2") {
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = oracle::uniform_vector(2, 1.0, 4.0);
      const auto b = oracle::uniform_vector(2, 1.0, 4.0);
      const double numeric = oracle::trapezoid(
          [&](double t) {
            const std::vector<double> x{t, 1 - t};
            return oracle::dirichlet_density(a, x) * oracle::dirichlet_density(b, x);
          },
          0.0, 1.0, 100000);
      CHECK(inner_product(Alpha(a), Alpha(b)) == doctest::Approx(numeric).epsilon(1e-6));
    }
  }

  TEST_CASE("l2 distance examples") {
    const auto g = Measure::point_mass(Family::Dirichlet, Alpha{2, 3});
    CHECK(l2_distance(g, g) == 0.0);
    const auto pair = shift_witness(Alpha{2, 2});
    CHECK(l2_distance(pair.g0, pair.g1) <= 1e-10);
    const auto a = Measure::point_mass(Family::Dirichlet, Alpha{2, 2});
    const auto b = Measure::point_mass(Family::Dirichlet, Alpha{3, 2});
    const double d = l2_distance(a, b);
    CHECK(d > 0.0);
    CHECK(std::abs(d - l2_trapezoid({2, 2}, {3, 2})) <= 1e-4);
    CHECK(l2_norm(a) == doctest::Approx(std::sqrt(6.0 / 5)));
    const auto tiny = Measure::point_mass(Family::Dirichlet, Alpha{0.4, 2});
    CHECK_THROWS_AS(l2_distance(tiny, tiny), Error);
  }

  TEST_CASE("l2 distance of random mixtures matches the trapezoid oracle") {
    for (int trial = 0; trial < 10; ++trial) {
      const auto a1 = oracle::uniform_vector(2, 1.5, 4.0), a2 = oracle::uniform_vector(2, 1.5, 4.0);
      const auto b1 = oracle::uniform_vector(2, 1.5, 4.0);
      const double w = oracle::uniform(0.1, 0.9);
      const Measure g(Family::Dirichlet, {{Alpha(a1), w}, {Alpha(a2), 1 - w}});
      const auto h = Measure::point_mass(Family::Dirichlet, Alpha(b1));
      const double sq = oracle::trapezoid(
          [&](double t) {
            const std::vector<double> x{t, 1 - t};
            const double d = w * oracle::dirichlet_density(a1, x) + (1 - w) * oracle::dirichlet_density(a2, x) -
                             oracle::dirichlet_density(b1, x);
            return d * d;
          },
          0.0, 1.0, 100000);
      CHECK(std::abs(l2_distance(g, h) - std::sqrt(sq)) <= 1e-5);
    }
  }

  TEST_CASE("gram null space examples") {
    const Alpha alpha{2, 2, 2};
    std::vector<Alpha> params{alpha};
    for (std::size_t j = 0; j < 3; ++j) params.push_back(alpha.unit_shift(j));
    const auto gram = gram_matrix(params);
    CHECK((gram - gram.transpose()).norm() == 0.0);
    const auto ns = numerical_null_space(gram, 1e-10);
    REQUIRE(ns.vectors.size() == 1);
    const Eigen::Vector4d expected(1, -1.0 / 3, -1.0 / 3, -1.0 / 3);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(ns.vectors[0][i] - expected[i]) <= 1e-8);
    CHECK(ns.condition > 1e8);

    const auto single = numerical_null_space(gram_matrix({Alpha{1.5, 2.5}}), 1e-10);
    CHECK(single.vectors.empty());
    CHECK(single.condition == doctest::Approx(1.0));
  }

  TEST_CASE("slice independence: 6 atoms on alpha_+ = 10 have no null vector") {
    for (int trial = 0; trial < 20; ++trial) {
      const auto atoms = slice_atoms(6, 3, 10.0, 0.6);
      const auto ns = numerical_null_space(gram_matrix(atoms), 1e-10);
      CHECK(ns.vectors.empty());
    }
  }

  TEST_CASE("monte carlo examples") {
    const auto g = Measure::point_mass(Family::Dirichlet, Alpha{0.4, 0.7});
    CHECK(mc_discrepancy(g, g, Alpha{0.4, 0.7}, 10000, 1).max_abs_rel <= 1e-12);
    const auto pair = shift_witness(Alpha{0.4, 0.7});
    const auto stats = mc_discrepancy(pair.g0, pair.g1, Alpha{0.4, 0.7}, 100000, 7);
    CHECK(stats.max_abs_rel <= 1e-10);
    CHECK(stats.samples == 100000);
    const auto flat = Measure::point_mass(Family::Dirichlet, Alpha{1, 1});
    const auto bump = Measure::point_mass(Family::Dirichlet, Alpha{2, 2});
    CHECK(mc_discrepancy(flat, bump, Alpha{1, 1}, 20000, 3).mean_abs_rel > 0.1);
    CHECK_THROWS_AS(mc_discrepancy(flat, bump, Alpha{1, 1}, 999, 3), Error);
  }

  TEST_CASE("monte carlo is deterministic given seed, count and chunk size") {
    const auto flat = Measure::point_mass(Family::Dirichlet, Alpha{1, 1, 1});
    const auto other = Measure::point_mass(Family::Dirichlet, Alpha{1.5, 0.8, 1.2});
    const auto a = mc_discrepancy(flat, other, Alpha{1, 0.8, 1}, 50000, 42);
    const auto b = mc_discrepancy(flat, other, Alpha{1, 0.8, 1}, 50000, 42);
    CHECK(a.mean_abs_rel == b.mean_abs_rel);
    CHECK(a.max_abs_rel == b.max_abs_rel);
    CHECK(a.std_err == b.std_err);
    const auto c = mc_discrepancy(flat, other, Alpha{1, 0.8, 1}, 50000, 43);
    CHECK(c.mean_abs_rel != a.mean_abs_rel);
    // Different seeds estimate the same quantity.
    CHECK(std::abs(c.mean_abs_rel - a.mean_abs_rel) <= 6 * (a.std_err + c.std_err));
  }

  TEST_CASE("monte carlo mean matches an independent sampler") {
    const std::vector<double> ref{1.2, 0.9, 1.5};
    const std::vector<double> p{2.0, 1.0, 1.5}, q{1.2, 1.4, 2.5};
    const auto g = Measure::point_mass(Family::Dirichlet, Alpha(p));
    const auto h = Measure::point_mass(Family::Dirichlet, Alpha(q));
    const auto stats = mc_discrepancy(g, h, Alpha(ref), 100000, 11);
    std::mt19937_64 engine(99);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const auto x = oracle::dirichlet_sample(ref, engine);
      sum += std::abs(oracle::dirichlet_density(p, x) - oracle::dirichlet_density(q, x)) /
             oracle::dirichlet_density(ref, x);
    }
    CHECK(std::abs(stats.mean_abs_rel - sum / n) <= 5 * std::sqrt(2.0) * stats.std_err);
  }

  TEST_CASE("certify examples") {
    const auto rat = [](int v) { return Rational(v); };
    const ExactMeasure slice(Family::Dirichlet, {{ExactAlpha{rat(1), rat(2), rat(3)}, make_rational(1, 3)},
                                                 {ExactAlpha{rat(2), rat(2), rat(2)}, make_rational(1, 3)},
                                                 {ExactAlpha{rat(3), rat(2), rat(1)}, make_rational(1, 3)}});
    const auto sc = certify(slice);
    REQUIRE(sc.size() == 1);
    CHECK(sc[0].regime() == Regime::FixedTotalSlice);
    CHECK(sc[0].total() == 6.0);
    CHECK(sc[0].exact_total() == std::optional<std::string>("6"));

    const Measure box(Family::Dirichlet, {{Alpha{0.2, 0.9, 5}, 0.5}, {Alpha{0.8, 0.3, 7}, 0.5}});
    const auto bc = certify(box);
    bool found_box = false, found_few = false;
    for (const auto& c : bc) {
      if (c.regime() == Regime::BoxRegion) {
        found_box = true;
        CHECK(c.baseline() == 2);
        REQUIRE(c.intervals().size() == 2);
        CHECK(c.intervals()[0].lo == 0.2);
        CHECK(c.intervals()[0].hi == 0.8);
        CHECK(c.intervals()[1].lo == 0.3);
        CHECK(c.intervals()[1].hi == 0.9);
      }
      if (c.regime() == Regime::FewAtoms) found_few = true;
      CHECK(c.regime() != Regime::FixedTotalSlice);
    }
    CHECK(found_box);
    CHECK(found_few);

    const Measure two(Family::Dirichlet, {{Alpha{1, 5, 9}, 0.25}, {Alpha{4, 1, 1}, 0.75}});
    const auto tc = certify(two);
    REQUIRE(tc.size() == 1);
    CHECK(tc[0].regime() == Regime::FewAtoms);
    CHECK(tc[0].atom_count() == 2);

    // Spread exactly 1 is not a box.
    CHECK_THROWS_AS(IdentifiabilityCertificate::box_region(std::vector<Alpha>{Alpha{1, 1}, Alpha{2, 1}}, 1), Error);
    CHECK_THROWS_AS(IdentifiabilityCertificate::few_atoms(3, 3), Error);
    CHECK_THROWS_AS(
        IdentifiabilityCertificate::fixed_total(std::vector<Alpha>{Alpha{1, 2}, Alpha{1, 2.0000001}}), Error);
    CHECK_NOTHROW(IdentifiabilityCertificate::fixed_total(std::vector<Alpha>{Alpha{1, 2}, Alpha{1.5, 1.5}}));
    // Shifted atoms share a total, so the slice applies to G1 alone.
    const auto shifted = certify(shift_witness(Alpha{1, 1, 1}).g1);
    REQUIRE(shifted.size() == 1);
    CHECK(shifted[0].total() == 4.0);
    const Measure none(Family::Dirichlet, {{Alpha{1, 1, 1}, 0.25}, {Alpha{2, 1, 1}, 0.25}, {Alpha{1, 2, 1}, 0.25},
                                           {Alpha{1, 1, 3}, 0.25}});
    CHECK(certify(none).empty());
  }

  TEST_CASE("certify on pairs and inverted measures") {
    const auto pair = shift_witness(ExactAlpha{Rational(2), Rational(3), Rational(1)}, Family::InvertedDirichlet);
    CHECK(certify(pair.g0, pair.g1).empty());
    // A point mass sits in a slice, in a box for every baseline, and has few atoms.
    const auto single = certify(pair.g0);
    REQUIRE(single.size() == 5);
    CHECK(single.back().regime() == Regime::FewAtoms);
    const auto g = Measure::point_mass(Family::Dirichlet, Alpha{1, 2});
    const auto h = Measure::point_mass(Family::InvertedDirichlet, Alpha{1, 2});
    CHECK_THROWS_AS(certify(g, h), Error);
    CHECK_THROWS_AS(certify(Measure::point_mass(Family::Dirichlet, Alpha{1, 2, 3}), g), Error);
  }

  TEST_CASE("decide_equality examples") {
    const auto exact = shift_witness(ExactAlpha{Rational(1), Rational(1)});
    const auto c = decide_equality(exact.g0, exact.g1);
    CHECK(c.verdict == Verdict::Equal);
    CHECK(c.method == Method::ExactPolynomial);
    REQUIRE(c.exact_residual.has_value());
    CHECK(*c.exact_residual == 0);
    REQUIRE(c.sign_counts.has_value());
    CHECK(c.sign_counts->first == 2);
    CHECK(c.sign_counts->second == 1);

    const auto flat = Measure::point_mass(Family::Dirichlet, Alpha{1, 1});
    const auto bump = Measure::point_mass(Family::Dirichlet, Alpha{1.5, 1.5});
    const auto l2 = decide_equality(flat, bump);
    CHECK(l2.verdict == Verdict::NotEqual);
    CHECK(l2.method == Method::ClosedFormL2);
    CHECK(l2.residual > 0.1);

    const auto feasible = shift_witness(Alpha{std::sqrt(2.0), M_PI});
    const auto expanded = expand_atom(feasible.g1, 1);
    const auto eq = decide_equality(feasible.g0, expanded);
    CHECK(eq.verdict == Verdict::Equal);
    CHECK(eq.method == Method::ClosedFormL2);

    const auto small = shift_witness(Alpha{std::sqrt(0.1), M_PI / 10});
    const auto mc = decide_equality(small.g0, expand_atom(small.g1, 0));
    CHECK(mc.verdict == Verdict::Inconclusive);
    CHECK(mc.method == Method::MonteCarlo);

    const auto mc_diff = decide_equality(Measure::point_mass(Family::Dirichlet, Alpha{0.3, 0.4}),
                                         Measure::point_mass(Family::Dirichlet, Alpha{0.4, 0.3}));
    CHECK(mc_diff.verdict == Verdict::NotEqual);
    CHECK(mc_diff.method == Method::MonteCarlo);

    CHECK_THROWS_AS(decide_equality(flat, Measure::point_mass(Family::InvertedDirichlet, Alpha{1, 1})), Error);
    CHECK_THROWS_AS(decide_equality(flat, Measure::point_mass(Family::Dirichlet, Alpha{1, 1, 1})), Error);
  }

  TEST_CASE("decide_equality on mixed representations takes the float path") {
    const AnyMeasure exact = shift_witness(ExactAlpha{Rational(2), Rational(2)}).g1;
    const AnyMeasure floating = Measure::point_mass(Family::Dirichlet, Alpha{2, 2});
    const auto c = decide_equality(floating, exact);
    CHECK(c.verdict == Verdict::Equal);
    CHECK(c.method == Method::ClosedFormL2);
    const AnyMeasure exact0 = shift_witness(ExactAlpha{Rational(2), Rational(2)}).g0;
    CHECK(decide_equality(exact0, exact).method == Method::ExactPolynomial);
  }

  TEST_CASE("witness soundness") {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t dim = static_cast<std::size_t>(oracle::uniform_int(2, 4));
      const auto family = trial % 2 ? Family::Dirichlet : Family::InvertedDirichlet;
      auto exact = shift_witness(ExactAlpha(oracle::positive_rationals(dim, 4)), family);
      for (int s = oracle::uniform_int(0, 3); s > 0; --s)
        exact.g1 = expand_atom(exact.g1, static_cast<std::size_t>(oracle::uniform_int(0, static_cast<int>(exact.g1.size()) - 1)));
      const auto ce = decide_equality(exact.g0, exact.g1);
      CHECK(ce.verdict == Verdict::Equal);
      CHECK(*ce.exact_residual == 0);

      auto fl = shift_witness(Alpha(oracle::uniform_vector(dim, 0.6, 5.0)), family);
      for (int s = oracle::uniform_int(0, 2); s > 0; --s) fl.g1 = expand_atom(fl.g1, 0);
      const auto cf = decide_equality(fl.g0, fl.g1);
      CHECK(cf.verdict == Verdict::Equal);
      CHECK(cf.method == Method::ClosedFormL2);
    }
  }

  TEST_CASE("monte carlo never returns Equal") {
    for (int trial = 0; trial < 10; ++trial) {
      const auto pair = shift_witness(Alpha(oracle::uniform_vector(3, 0.1, 0.45)));
      const auto c = decide_equality(pair.g0, pair.g1, EqualityOptions{static_cast<std::uint64_t>(trial), 5000, 1e-10});
      CHECK(c.method == Method::MonteCarlo);
      CHECK(c.verdict == Verdict::Inconclusive);
    }
  }

  TEST_CASE("numerical null vectors pass the exact sign bound") {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t dim = static_cast<std::size_t>(oracle::uniform_int(2, 4));
      std::vector<Rational> base;
      for (std::size_t j = 0; j < dim; ++j) base.push_back(Rational(1) + oracle::positive_rational(2, 4));
      std::vector<ExactAlpha> params{ExactAlpha(base)};
      for (std::size_t j = 0; j < dim; ++j) {
        auto shifted = base;
        shifted[j] += 1;
        params.emplace_back(shifted);
      }
      std::vector<Alpha> fparams;
      for (const auto& p : params) fparams.push_back(to_double(p));
      const auto ns = numerical_null_space(gram_matrix(fparams), 1e-10);
      REQUIRE(ns.vectors.size() == 1);
      std::vector<Rational> c;
      for (Eigen::Index i = 0; i < ns.vectors[0].size(); ++i) c.push_back(rationalize(ns.vectors[0][i]));
      const auto dec = residue_decompose(params);
      const auto rel = make_relation(dec.exponents, monomial_coefficients(dec.residue, dec.exponents, c), dec.residue);
      CHECK(is_null_relation(rel));
      const auto counts = sign_counts(rel);
      CHECK(std::max(counts.positives, counts.negatives) >= dim);
      CHECK(counts.bound_check);
    }
  }

  TEST_CASE("certificate soundness over random pairs") {
    int certified = 0, equal = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t dim = static_cast<std::size_t>(oracle::uniform_int(2, 4));
      ExactMeasure g = random_exact_measure(1, dim, 3), h = g;
      switch (trial % 3) {
        case 0: {  // few atoms
          const auto k = static_cast<std::size_t>(oracle::uniform_int(1, static_cast<int>(dim) - 1));
          g = random_exact_measure(k, dim, 3);
          h = oracle::uniform_int(0, 3) == 0 ? g : random_exact_measure(k, dim, 3);
          break;
        }
        case 1: {  // atoms on the slice alpha_+ = 2J
          const auto k = static_cast<std::size_t>(oracle::uniform_int(dim, dim + 2));
          std::set<std::vector<Rational>> seen;
          std::vector<ExactAlpha> params;
          while (params.size() < k + 2) {
            auto p = oracle::positive_rationals(dim - 1, 2, 4);
            Rational rest = Rational(2 * static_cast<int>(dim));
            for (const auto& v : p) rest -= v;
            if (rest <= 0) continue;
            p.push_back(rest);
            if (seen.insert(p).second) params.emplace_back(p);
          }
          const std::vector<ExactAlpha> first(params.begin(), params.begin() + static_cast<long>(k));
          const std::vector<ExactAlpha> second(params.begin() + 2, params.end());
          g = exact_measure(first, random_weights(first.size()));
          h = oracle::uniform_int(0, 3) == 0 ? g : exact_measure(second, random_weights(second.size()));
          break;
        }
        default: {  // box with baseline J: other coordinates in [1, 1 + 5/6]
          const auto k = static_cast<std::size_t>(oracle::uniform_int(dim, dim + 2));
          std::set<std::vector<Rational>> seen;
          std::vector<ExactAlpha> params;
          while (params.size() < k + 1) {
            std::vector<Rational> p;
            for (std::size_t j = 0; j + 1 < dim; ++j) p.push_back(Rational(1) + make_rational(oracle::uniform_int(0, 5), 6));
            p.push_back(oracle::positive_rational(6, 2));
            if (seen.insert(p).second) params.emplace_back(p);
          }
          const std::vector<ExactAlpha> first(params.begin(), params.begin() + static_cast<long>(k));
          const std::vector<ExactAlpha> second(params.begin() + 1, params.end());
          g = exact_measure(first, random_weights(first.size()));
          h = oracle::uniform_int(0, 3) == 0 ? g : exact_measure(second, random_weights(second.size()));
          break;
        }
      }
      if (certify(g, h).empty()) continue;
      ++certified;
      const auto c = decide_equality(g, h);
      if (c.verdict == Verdict::Equal) {
        ++equal;
        CHECK(same_measure(g, h));
        CHECK(same_measure(to_double(g), to_double(h), 1e-9));
      } else {
        CHECK_FALSE(same_measure(g, h));
      }
    }
    CHECK(certified >= 250);
    CHECK(equal >= 20);
  }
}
