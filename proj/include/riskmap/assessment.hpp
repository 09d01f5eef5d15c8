#pragma once

#include "riskmap/canonical_json.hpp"

#include <map>
#include <optional>
#include <string>

namespace riskmap {

struct SeverityOverride {
    std::optional<double> likelihood;
    std::optional<double> impact;

    bool operator==(const SeverityOverride&) const = default;
};

/// One platform's view of the catalog: which attacks apply (Z), how well each
/// defense is deployed (μ), and per-attack likelihood/impact replacements.
struct PlatformAssessment {
    std::string platform;
    std::map<std::string, int> applicability;       // attack id -> 0/1
    std::map<std::string, double> implementation;   // defense id -> level
    std::map<std::string, SeverityOverride> overrides;
    std::string notes;

    bool operator==(const PlatformAssessment&) const = default;
};

PlatformAssessment assessment_from_json(const Json& j);
PlatformAssessment load_assessment_file(const std::string& path);
Json assessment_to_json(const PlatformAssessment& assessment);
std::string assessment_fingerprint(const PlatformAssessment& assessment);

}  // namespace riskmap
