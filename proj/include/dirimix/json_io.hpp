#pragma once

// JSON encoding of the library's values. Rationals are "p/q" strings (or "p"
// when integral); float values are JSON numbers. Keys are emitted sorted, so
// equal values always serialize to identical text.

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "dirimix/equivalence.hpp"
#include "dirimix/exactpoly.hpp"
#include "dirimix/kernels.hpp"
#include "dirimix/measure.hpp"
#include "dirimix/witnesses.hpp"

namespace dirimix {

using Json = nlohmann::json;

enum class Mode { Float, Exact };
std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);
/// Value of DIRIMIX_MODE, if set.
std::optional<Mode> mode_from_env();

/// Parses text, mapping syntax errors to ErrorKind::Parse.
Json parse_json(std::string_view text);
/// Two-space indented, sorted keys, trailing newline.
std::string dump(const Json& value);

Json error_json(const Error& error);

Json to_json(const Rational& value);
/// Accepts "p/q" strings and JSON numbers (floats by their shortest decimal).
Rational rational_from_json(const Json& value);
double double_from_json(const Json& value);

Json to_json(const Measure& g);
Json to_json(const ExactMeasure& g);
Json to_json(const AnyMeasure& g);
/// With no mode, the measure is exact iff any alpha entry or weight is a string.
AnyMeasure measure_from_json(const Json& value, std::optional<Mode> mode = std::nullopt);

using AnyWitnessPair = std::variant<WitnessPair<double>, WitnessPair<Rational>>;
Json to_json(const WitnessPair<double>& pair);
Json to_json(const WitnessPair<Rational>& pair);
AnyWitnessPair witness_from_json(const Json& value, std::optional<Mode> mode = std::nullopt);

Json to_json(const KernelSpec& spec);
KernelSpec kernel_from_json(const Json& value);

Json to_json(const MonomialRelation& rel);
MonomialRelation relation_from_json(const Json& value);

Json to_json(const RelationCertificate& cert);
RelationCertificate relation_certificate_from_json(const Json& value);

/// Baseline coordinate is written 1-based.
Json to_json(const IdentifiabilityCertificate& cert);
IdentifiabilityCertificate identifiability_from_json(const Json& value);

}  // namespace dirimix
