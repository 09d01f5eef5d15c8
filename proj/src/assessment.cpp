#include "riskmap/assessment.hpp"

#include "json_fields.hpp"

namespace riskmap {

using detail::child_path;

PlatformAssessment assessment_from_json(const Json& j) {
    detail::require_object(j, "");
    PlatformAssessment a;
    a.platform = detail::get_string(j, "platform", "");

    const Json& z = detail::require_object(detail::require_key(j, "applicability", ""), "applicability");
    for (const auto& [id, value] : z.items()) {
        const std::string path = child_path("applicability", id);
        int flag = -1;
        if (value.is_boolean()) {
            flag = value.get<bool>() ? 1 : 0;
        } else if (value.is_number()) {
            const double v = value.get<double>();
            if (v == 0.0 || v == 1.0) flag = static_cast<int>(v);
        }
        if (flag < 0) throw ParseError(path, "applicability must be 0 or 1");
        a.applicability.emplace(id, flag);
    }

    const Json& mu = detail::require_object(detail::require_key(j, "implementation", ""), "implementation");
    for (const auto& [id, value] : mu.items()) a.implementation.emplace(id, detail::as_number(value, child_path("implementation", id)));

    if (auto it = j.find("overrides"); it != j.end()) {
        detail::require_object(*it, "overrides");
        for (const auto& [id, value] : it->items()) {
            const std::string path = child_path("overrides", id);
            detail::require_object(value, path);
            SeverityOverride o;
            o.likelihood = detail::get_optional_number(value, "likelihood", path);
            o.impact = detail::get_optional_number(value, "impact", path);
            a.overrides.emplace(id, o);
        }
    }
    if (auto it = j.find("notes"); it != j.end()) a.notes = detail::as_string(*it, "notes");
    return a;
}

PlatformAssessment load_assessment_file(const std::string& path) {
    return assessment_from_json(parse_json_text(read_file(path), path));
}

Json assessment_to_json(const PlatformAssessment& a) {
    Json j = Json::object();
    j["platform"] = a.platform;
    j["applicability"] = Json::object();
    for (const auto& [id, flag] : a.applicability) j["applicability"][id] = flag;
    j["implementation"] = Json::object();
    for (const auto& [id, level] : a.implementation) j["implementation"][id] = level;
    j["overrides"] = Json::object();
    for (const auto& [id, o] : a.overrides) {
        Json entry = Json::object();
        if (o.likelihood) entry["likelihood"] = *o.likelihood;
        if (o.impact) entry["impact"] = *o.impact;
        j["overrides"][id] = std::move(entry);
    }
    j["notes"] = a.notes;
    return j;
}

std::string assessment_fingerprint(const PlatformAssessment& a) { return fingerprint(assessment_to_json(a)); }

}  // namespace riskmap
