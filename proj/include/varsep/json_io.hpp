#pragma once

#include <string>

#include <json.hpp>

#include "varsep/partition.hpp"
#include "varsep/polynomial.hpp"
#include "varsep/sep_exact.hpp"
#include "varsep/sep_numeric.hpp"

namespace varsep {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "varsep/1";

/// {"vars": [...], "terms": [{"exp": [...], "coef": "p/q"}, ...]}, terms in
/// graded-lex descending order.
Json polynomial_to_json(const Polynomial& p);

/// Inverse of polynomial_to_json. Throws InvalidArgument on schema violations.
Polynomial polynomial_from_json(const Json& j);

/// Blocks as lists of variable names.
Json partition_to_json(const Partition& partition, const VariableList& vars);

/// {"schema", "constant", "blocks", "factors", "verified"}.
Json separation_to_json(const SeparationResult& result, const VariableList& vars);

/// Re-reads factors written by separation_to_json over `vars`.
SeparationResult separation_from_json(const Json& j, const VariableList& vars);

/// {"schema", "vars", "blocks", "vanishes"}.
Json report_to_json(const SepMatrixReport& report, const VariableList& vars);

/// {"schema", "vars", "verdict", "blocks", "tolerance", "anchor", "residuals", "samples", "skipped"}.
Json numeric_verdict_to_json(const NumericVerdict& verdict);

/// Compact serialization with stable field order.
std::string emit_json(const Json& j);

}  // namespace varsep
