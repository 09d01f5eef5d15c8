#pragma once

// Typed field access over parsed JSON; every failure names the JSON path.

#include "riskmap/canonical_json.hpp"
#include "riskmap/errors.hpp"

#include <optional>
#include <string>
#include <vector>

namespace riskmap::detail {

inline std::string child_path(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

inline std::string index_path(const std::string& parent, std::size_t index) {
    return parent + "[" + std::to_string(index) + "]";
}

inline const Json& require_object(const Json& j, const std::string& path) {
    if (!j.is_object()) throw ParseError(path.empty() ? "$" : path, "expected an object");
    return j;
}

inline const Json& require_array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array");
    return j;
}

inline const Json& require_key(const Json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(child_path(path, key), "missing required key");
    return *it;
}

inline std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path, "expected a string");
    return j.get<std::string>();
}

inline double as_number(const Json& j, const std::string& path) {
    if (!j.is_number()) throw ParseError(path, "expected a number");
    return j.get<double>();
}

inline bool as_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) throw ParseError(path, "expected a boolean");
    return j.get<bool>();
}

inline std::string get_string(const Json& obj, const std::string& key, const std::string& path) {
    return as_string(require_key(obj, key, path), child_path(path, key));
}

inline double get_number(const Json& obj, const std::string& key, const std::string& path) {
    return as_number(require_key(obj, key, path), child_path(path, key));
}

inline std::optional<double> get_optional_number(const Json& obj, const std::string& key,
                                                 const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    return as_number(*it, child_path(path, key));
}

inline std::vector<std::string> get_string_list(const Json& obj, const std::string& key,
                                                const std::string& path) {
    std::vector<std::string> out;
    auto it = obj.find(key);
    if (it == obj.end()) return out;
    const std::string p = child_path(path, key);
    require_array(*it, p);
    for (std::size_t i = 0; i < it->size(); ++i) out.push_back(as_string((*it)[i], index_path(p, i)));
    return out;
}

inline std::vector<double> as_number_list(const Json& j, const std::string& path) {
    require_array(j, path);
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], index_path(path, i)));
    return out;
}

}  // namespace riskmap::detail
