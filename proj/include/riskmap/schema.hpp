#pragma once

#include "riskmap/canonical_json.hpp"

#include <string>
#include <vector>

namespace riskmap {

/// Validates `instance` against a JSON Schema restricted to the keywords the
/// shipped schemas use: type, enum, required, properties,
/// additionalProperties, items, minimum/maximum, minLength/maxLength,
/// minItems/maxItems and local "$ref": "#/$defs/<name>".
///
/// Returns one "<path>: <problem>" line per violation.
std::vector<std::string> validate_against_schema(const Json& schema, const Json& instance);

}  // namespace riskmap
