#pragma once

#include "json.hpp"

#include <string>
#include <string_view>

namespace riskmap {

using Json = nlohmann::json;

/// Canonical bytes: keys sorted, no insignificant whitespace, doubles in their
/// shortest round-trip form (at most 17 significant digits).
/// Shortest round-trip decimal form of a double.
std::string format_number(double value);

std::string canonical_dump(const Json& value);

/// Lowercase hex SHA-256 of arbitrary bytes.
std::string sha256_hex(std::string_view bytes);

/// sha256_hex(canonical_dump(value)).
std::string fingerprint(const Json& value);

/// Parses UTF-8 JSON text, mapping nlohmann failures to ParseError.
Json parse_json_text(std::string_view text, const std::string& origin);

/// Reads a whole file; throws IoError when unreadable.
std::string read_file(const std::string& path);

}  // namespace riskmap
