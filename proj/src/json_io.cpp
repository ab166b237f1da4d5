#include "dirimix/json_io.hpp"

#include <cstdlib>

namespace dirimix {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const Json& field(const Json& object, const char* key) {
  require(object.is_object(), ErrorKind::Parse, std::string("expected a JSON object holding '") + key + "'");
  const auto it = object.find(key);
  require(it != object.end(), ErrorKind::Parse, std::string("missing field '") + key + "'");
  return *it;
}

const Json& array_field(const Json& object, const char* key) {
  const Json& value = field(object, key);
  require(value.is_array(), ErrorKind::Parse, std::string("field '") + key + "' must be an array");
  return value;
}

std::string string_field(const Json& object, const char* key) {
  const Json& value = field(object, key);
  require(value.is_string(), ErrorKind::Parse, std::string("field '") + key + "' must be a string");
  return value.get<std::string>();
}

long long integer_from_json(const Json& value, const char* what) {
  require(value.is_number_integer(), ErrorKind::Parse, std::string(what) + " must be an integer");
  return value.get<long long>();
}

std::size_t size_field(const Json& object, const char* key) {
  const long long v = integer_from_json(field(object, key), key);
  require(v >= 0, ErrorKind::Parse, std::string("field '") + key + "' must be >= 0");
  return static_cast<std::size_t>(v);
}

std::vector<double> doubles_from_json(const Json& array) {
  require(array.is_array(), ErrorKind::Parse, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : array) out.push_back(double_from_json(v));
  return out;
}

std::vector<Rational> rationals_from_json(const Json& array) {
  require(array.is_array(), ErrorKind::Parse, "expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& v : array) out.push_back(rational_from_json(v));
  return out;
}

Json rationals_to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_json(v));
  return out;
}

Json indices_to_json(const MultiIndex& m) {
  Json out = Json::array();
  for (int v : m) out.push_back(v);
  return out;
}

MultiIndex indices_from_json(const Json& array) {
  require(array.is_array(), ErrorKind::Parse, "expected an integer array");
  std::vector<int> out;
  for (const auto& v : array) out.push_back(static_cast<int>(integer_from_json(v, "multi-index entry")));
  return MultiIndex(std::move(out));
}

template <class T>
Json measure_to_json(const MixingMeasure<T>& g) {
  Json atoms = Json::array();
  for (const auto& atom : g.atoms()) {
    Json alpha = Json::array();
    for (const auto& a : atom.param) {
      if constexpr (is_exact_v<T>) {
        alpha.push_back(to_json(a));
      } else {
        alpha.push_back(a);
      }
    }
    Json weight;
    if constexpr (is_exact_v<T>) {
      weight = to_json(atom.weight);
    } else {
      weight = atom.weight;
    }
    atoms.push_back({{"alpha", std::move(alpha)}, {"weight", std::move(weight)}});
  }
  return {{"family", std::string(to_string(g.family()))}, {"J", g.dim()}, {"atoms", std::move(atoms)}};
}

template <class T>
MixingMeasure<T> measure_from_json_as(const Json& value) {
  const Family family = parse_family(string_field(value, "family"));
  const Json& atoms_json = array_field(value, "atoms");
  require(!atoms_json.empty(), ErrorKind::Parse, "measure needs at least one atom");
  std::vector<typename MixingMeasure<T>::Atom> atoms;
  for (const auto& a : atoms_json) {
    const Json& alpha = array_field(a, "alpha");
    if constexpr (is_exact_v<T>) {
      atoms.push_back({PositiveVector<T>(rationals_from_json(alpha)), rational_from_json(field(a, "weight"))});
    } else {
      atoms.push_back({PositiveVector<T>(doubles_from_json(alpha)), double_from_json(field(a, "weight"))});
    }
  }
  MixingMeasure<T> g(family, std::move(atoms));
  if (value.contains("J"))
    require(size_field(value, "J") == g.dim(), ErrorKind::DimensionMismatch,
            "declared J = " + std::to_string(size_field(value, "J")) + " but atoms have dimension " +
                std::to_string(g.dim()));
  return g;
}

bool has_string_entries(const Json& measure) {
  if (!measure.is_object() || !measure.contains("atoms") || !measure["atoms"].is_array()) return false;
  for (const auto& a : measure["atoms"]) {
    if (!a.is_object()) continue;
    if (a.contains("weight") && a["weight"].is_string()) return true;
    if (a.contains("alpha") && a["alpha"].is_array())
      for (const auto& v : a["alpha"])
        if (v.is_string()) return true;
  }
  return false;
}

template <class T>
Json witness_to_json(const WitnessPair<T>& pair) {
  return {{"provenance", pair.provenance}, {"g0", to_json(pair.g0)}, {"g1", to_json(pair.g1)}};
}

}  // namespace

std::string_view to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "float"; }

Mode parse_mode(std::string_view text) {
  if (text == "float") return Mode::Float;
  if (text == "exact") return Mode::Exact;
  fail(ErrorKind::Parse, "mode must be 'float' or 'exact', got '" + std::string(text) + "'");
}

std::optional<Mode> mode_from_env() {
  const char* value = std::getenv("DIRIMIX_MODE");
  if (value == nullptr || *value == '\0') return std::nullopt;
  return parse_mode(value);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::exception& e) {
    fail(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const Json& value) { return value.dump(2) + "\n"; }

Json error_json(const Error& error) {
  return {{"error", {{"kind", std::string(to_string(error.kind()))}, {"message", error.what()}}}};
}

Json to_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long>());
  if (value.is_number_float()) return rational_from_double(value.get<double>());
  fail(ErrorKind::Parse, "expected a rational string or number, got " + value.dump());
}

double double_from_json(const Json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return to_double(parse_rational(value.get<std::string>()));
  fail(ErrorKind::Parse, "expected a number, got " + value.dump());
}

Json to_json(const Measure& g) { return measure_to_json(g); }
Json to_json(const ExactMeasure& g) { return measure_to_json(g); }
Json to_json(const AnyMeasure& g) {
  return std::visit([](const auto& m) { return to_json(m); }, g);
}

AnyMeasure measure_from_json(const Json& value, std::optional<Mode> mode) {
  const Mode m = mode.value_or(has_string_entries(value) ? Mode::Exact : Mode::Float);
  if (m == Mode::Exact) return measure_from_json_as<Rational>(value);
  return measure_from_json_as<double>(value);
}

Json to_json(const WitnessPair<double>& pair) { return witness_to_json(pair); }
Json to_json(const WitnessPair<Rational>& pair) { return witness_to_json(pair); }

AnyWitnessPair witness_from_json(const Json& value, std::optional<Mode> mode) {
  const std::string provenance = value.contains("provenance") ? string_field(value, "provenance") : "";
  const Json& g0 = field(value, "g0");
  const Json& g1 = field(value, "g1");
  const Mode m = mode.value_or(has_string_entries(g0) || has_string_entries(g1) ? Mode::Exact : Mode::Float);
  if (m == Mode::Exact)
    return WitnessPair<Rational>{measure_from_json_as<Rational>(g0), measure_from_json_as<Rational>(g1), provenance};
  return WitnessPair<double>{measure_from_json_as<double>(g0), measure_from_json_as<double>(g1), provenance};
}

Json to_json(const KernelSpec& spec) {
  Json out = std::visit(
      Overloaded{
          [](const DirichletKernel& k) -> Json { return {{"alpha", k.alpha.entries()}}; },
          [](const InvertedDirichletKernel& k) -> Json { return {{"alpha", k.alpha.entries()}}; },
          [](const GeneralizedDirichletKernel& k) -> Json { return {{"a", k.a}, {"b", k.b}}; },
          [](const BetaLiouvilleKernel& k) -> Json { return {{"a_vec", k.a_vec}, {"a", k.a}, {"b", k.b}}; },
          [](const InvertedBetaLiouvilleKernel& k) -> Json {
            return {{"a_vec", k.a_vec}, {"a", k.a}, {"b", k.b}, {"lambda", k.lambda}};
          },
          [](const DirichletMultinomialKernel& k) -> Json { return {{"n", k.n}, {"alpha", k.alpha.entries()}}; },
          [](const LdaMarginalKernel& k) -> Json {
            return {{"alpha", k.alpha.entries()}, {"beta", k.beta.rows()}, {"document", k.document}};
          },
      },
      spec);
  out["family"] = std::string(to_string(family_of(spec)));
  return out;
}

KernelSpec kernel_from_json(const Json& value) {
  const Family family = parse_family(string_field(value, "family"));
  auto alpha = [&] { return Alpha(doubles_from_json(array_field(value, "alpha"))); };
  switch (family) {
    case Family::Dirichlet: return DirichletKernel{alpha()};
    case Family::InvertedDirichlet: return InvertedDirichletKernel{alpha()};
    case Family::GeneralizedDirichlet:
      return GeneralizedDirichletKernel(doubles_from_json(array_field(value, "a")),
                                        doubles_from_json(array_field(value, "b")));
    case Family::BetaLiouville:
      return BetaLiouvilleKernel(doubles_from_json(array_field(value, "a_vec")), double_from_json(field(value, "a")),
                                 double_from_json(field(value, "b")));
    case Family::InvertedBetaLiouville:
      return InvertedBetaLiouvilleKernel(doubles_from_json(array_field(value, "a_vec")),
                                         double_from_json(field(value, "a")), double_from_json(field(value, "b")),
                                         double_from_json(field(value, "lambda")));
    case Family::DirichletMultinomial:
      return DirichletMultinomialKernel(static_cast<int>(integer_from_json(field(value, "n"), "n")), alpha());
    case Family::LdaMarginal: {
      std::vector<std::vector<double>> rows;
      for (const auto& row : array_field(value, "beta")) rows.push_back(doubles_from_json(row));
      Document document;
      for (const auto& w : array_field(value, "document"))
        document.push_back(static_cast<int>(integer_from_json(w, "document word")));
      return LdaMarginalKernel(alpha(), TopicMatrix<double>(std::move(rows)), std::move(document));
    }
  }
  fail(ErrorKind::Parse, "unsupported kernel family");
}

Json to_json(const MonomialRelation& rel) {
  Json terms = Json::array();
  for (const auto& t : rel.terms)
    terms.push_back({{"exponent", indices_to_json(t.exponent)}, {"coefficient", to_json(t.coefficient)}});
  return {{"J", rel.dim}, {"residue", rationals_to_json(rel.residue)}, {"terms", std::move(terms)}};
}

MonomialRelation relation_from_json(const Json& value) {
  MonomialRelation rel;
  rel.dim = size_field(value, "J");
  rel.residue = rationals_from_json(array_field(value, "residue"));
  for (const auto& t : array_field(value, "terms"))
    rel.terms.push_back({indices_from_json(field(t, "exponent")), rational_from_json(field(t, "coefficient"))});
  rel.validate();
  return rel;
}

Json to_json(const RelationCertificate& cert) {
  Json out = {{"verdict", std::string(to_string(cert.verdict))}, {"method", std::string(to_string(cert.method))}};
  if (cert.exact_residual) {
    out["residual"] = to_json(*cert.exact_residual);
  } else {
    out["residual"] = cert.residual;
    out["scale"] = cert.scale;
  }
  if (cert.sign_counts) out["sign_counts"] = {cert.sign_counts->first, cert.sign_counts->second};
  return out;
}

RelationCertificate relation_certificate_from_json(const Json& value) {
  RelationCertificate cert;
  cert.verdict = parse_verdict(string_field(value, "verdict"));
  cert.method = parse_method(string_field(value, "method"));
  const Json& residual = field(value, "residual");
  if (residual.is_string()) {
    cert.exact_residual = rational_from_json(residual);
    cert.residual = to_double(*cert.exact_residual);
  } else {
    cert.residual = double_from_json(residual);
  }
  if (value.contains("scale")) cert.scale = double_from_json(value["scale"]);
  if (value.contains("sign_counts")) {
    const Json& counts = array_field(value, "sign_counts");
    require(counts.size() == 2, ErrorKind::Parse, "sign_counts must hold two integers");
    cert.sign_counts = std::make_pair(static_cast<std::size_t>(integer_from_json(counts[0], "sign count")),
                                      static_cast<std::size_t>(integer_from_json(counts[1], "sign count")));
  }
  return cert;
}

Json to_json(const IdentifiabilityCertificate& cert) {
  Json out = {{"regime", std::string(to_string(cert.regime()))}, {"J", cert.dim()}, {"atom_count", cert.atom_count()}};
  switch (cert.regime()) {
    case Regime::FixedTotalSlice:
      out["total"] = cert.total();
      if (cert.exact_total()) out["exact_total"] = *cert.exact_total();
      break;
    case Regime::BoxRegion: {
      out["baseline"] = cert.baseline() + 1;
      Json intervals = Json::array();
      for (const auto& iv : cert.intervals()) intervals.push_back({iv.lo, iv.hi});
      out["intervals"] = std::move(intervals);
      break;
    }
    case Regime::FewAtoms:
      break;
  }
  return out;
}

IdentifiabilityCertificate identifiability_from_json(const Json& value) {
  const Regime regime = parse_regime(string_field(value, "regime"));
  const std::size_t dim = size_field(value, "J");
  const std::size_t atom_count = size_field(value, "atom_count");
  double total = 0.0;
  std::optional<std::string> exact_total;
  std::size_t baseline = 0;
  std::vector<IdentifiabilityCertificate::Interval> intervals;
  if (regime == Regime::FixedTotalSlice) {
    total = double_from_json(field(value, "total"));
    if (value.contains("exact_total")) exact_total = string_field(value, "exact_total");
  } else if (regime == Regime::BoxRegion) {
    const std::size_t one_based = size_field(value, "baseline");
    require(one_based >= 1, ErrorKind::Parse, "baseline is 1-based");
    baseline = one_based - 1;
    for (const auto& iv : array_field(value, "intervals")) {
      require(iv.is_array() && iv.size() == 2, ErrorKind::Parse, "interval must be [lo, hi]");
      intervals.push_back({double_from_json(iv[0]), double_from_json(iv[1])});
    }
  }
  return IdentifiabilityCertificate::from_parts(regime, dim, atom_count, total, std::move(exact_total), baseline,
                                                std::move(intervals));
}

}  // namespace dirimix
