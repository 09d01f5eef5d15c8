#include "riskmap/catalog.hpp"

#include "embedded_data.hpp"
#include "json_fields.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <regex>
#include <set>

namespace riskmap {

namespace {

using detail::child_path;
using detail::index_path;

bool in_unit_interval(double v) noexcept { return v >= 0.0 && v <= 1.0; }

// "<LAYER>-<kind><n>"; returns the layer prefix on match.
bool split_id(const std::string& id, char kind, std::string& prefix) {
    static const std::regex attack_re(R"(^([A-Z]{1,2})-A([1-9][0-9]*)$)");
    static const std::regex defense_re(R"(^([A-Z]{1,2})-D([1-9][0-9]*)$)");
    std::smatch m;
    if (!std::regex_match(id, m, kind == 'A' ? attack_re : defense_re)) return false;
    if (!parse_layer_code(m[1].str())) return false;
    prefix = m[1].str();
    return true;
}

void check_id(const std::string& id, LayerId layer, char kind, const std::string& path,
              std::vector<Violation>& out) {
    std::string prefix;
    if (!split_id(id, kind, prefix)) {
        out.push_back({"ID_FORMAT", child_path(path, "id"),
                       "id '" + id + "' does not match <LAYER>-" + std::string(1, kind) + "<n>"});
        return;
    }
    if (prefix != layer_code(layer)) {
        out.push_back({"ID_LAYER_MISMATCH", child_path(path, "layer"),
                       "id '" + id + "' has prefix " + prefix + " but layer is " +
                           std::string(layer_code(layer))});
    }
}

LayerId read_layer(const Json& obj, const std::string& path, std::vector<Violation>& loader_violations) {
    const std::string code = detail::get_string(obj, "layer", path);
    if (auto layer = parse_layer_code(code)) return *layer;
    loader_violations.push_back({"UNKNOWN_LAYER", child_path(path, "layer"), "unknown layer code '" + code + "'"});
    return LayerId::P;
}

}  // namespace

bool is_impact_level(double value) noexcept {
    return std::find(kImpactLevels.begin(), kImpactLevels.end(), value) != kImpactLevels.end();
}

bool is_coverage_level(double value) noexcept {
    return std::find(kCoverageLevels.begin(), kCoverageLevels.end(), value) != kCoverageLevels.end();
}

bool ValidationReport::has(std::string_view code) const noexcept {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; });
}

namespace {

std::string validation_message(const ValidationReport& report) {
    std::string msg = "validation failed";
    for (const auto& v : report.violations) msg += "\n  " + v.code + " " + v.path + ": " + v.message;
    return msg;
}

}  // namespace

ValidationError::ValidationError(ValidationReport report)
    : Error(validation_message(report)), report_(std::move(report)) {}

ValidationReport validate_catalog(const Catalog& catalog, const CatalogOptions& options) {
    ValidationReport report;
    auto& out = report.violations;

    if (catalog.attacks.empty()) out.push_back({"NO_ATTACKS", "attacks", "catalog has no attacks"});

    std::set<std::string> seen;
    auto check_unique = [&](const std::string& id, const std::string& path) {
        if (!seen.insert(id).second) out.push_back({"DUPLICATE_ID", child_path(path, "id"), "duplicate id '" + id + "'"});
    };

    for (std::size_t i = 0; i < catalog.attacks.size(); ++i) {
        const auto& a = catalog.attacks[i];
        const std::string path = index_path("attacks", i);
        check_id(a.id, a.layer, 'A', path, out);
        check_unique(a.id, path);
        if (!in_unit_interval(a.likelihood)) {
            out.push_back({"LIKELIHOOD_RANGE", child_path(path, "likelihood"),
                           "likelihood " + format_number(a.likelihood) + " outside [0,1]"});
        }
        if (!in_unit_interval(a.impact)) {
            out.push_back({"IMPACT_RANGE", child_path(path, "impact"), "impact " + format_number(a.impact) + " outside [0,1]"});
        } else if (!options.allow_continuous && !is_impact_level(a.impact)) {
            out.push_back({"IMPACT_LEVEL", child_path(path, "impact"),
                           "impact " + format_number(a.impact) + " is not one of 0,0.2,0.4,0.6,0.8,1"});
        }
        if (!(a.detectability > 0.0 && a.detectability <= 1.0)) {
            out.push_back({"DETECTABILITY_RANGE", child_path(path, "detectability"),
                           "detectability " + format_number(a.detectability) + " outside (0,1]"});
        }
    }
    for (std::size_t j = 0; j < catalog.defenses.size(); ++j) {
        const auto& d = catalog.defenses[j];
        const std::string path = index_path("defenses", j);
        check_id(d.id, d.layer, 'D', path, out);
        check_unique(d.id, path);
    }

    if (catalog.gamma.size() != catalog.attacks.size()) {
        out.push_back({"DIM_MISMATCH", "gamma",
                       "gamma has " + std::to_string(catalog.gamma.size()) + " rows but catalog has " +
                           std::to_string(catalog.attacks.size()) + " attacks"});
    }
    for (std::size_t i = 0; i < catalog.gamma.size(); ++i) {
        const auto& row = catalog.gamma[i];
        const std::string row_path = index_path("gamma", i);
        if (row.size() != catalog.defenses.size()) {
            out.push_back({"DIM_MISMATCH", row_path,
                           "row has " + std::to_string(row.size()) + " columns but catalog has " +
                               std::to_string(catalog.defenses.size()) + " defenses"});
        }
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double g = row[j];
            if (!in_unit_interval(g)) {
                out.push_back({"GAMMA_RANGE", index_path(row_path, j), "gamma " + format_number(g) + " outside [0,1]"});
            } else if (!options.allow_continuous && !is_coverage_level(g)) {
                out.push_back({"GAMMA_LEVEL", index_path(row_path, j),
                               "gamma " + format_number(g) + " is not one of 0,0.25,0.5,0.75,1"});
            }
        }
    }
    return report;
}

Catalog catalog_from_json(const Json& j, const CatalogOptions& options) {
    detail::require_object(j, "");
    std::vector<Violation> loader;
    Catalog c;
    c.version = detail::get_string(j, "version", "");
    if (auto it = j.find("illustrative"); it != j.end()) c.illustrative = detail::as_bool(*it, "illustrative");

    const Json& layers = detail::require_array(detail::require_key(j, "layers", ""), "layers");
    bool layers_ok = layers.size() == kLayerCount;
    for (std::size_t i = 0; layers_ok && i < kLayerCount; ++i) {
        layers_ok = layers[i].is_string() && layers[i].get<std::string>() == layer_code(layer_from_ordinal(i));
    }
    if (!layers_ok) loader.push_back({"LAYERS_MISMATCH", "layers", "layers must be [P,SP,DP,MW,DM,AP,SI]"});

    const Json& attacks = detail::require_array(detail::require_key(j, "attacks", ""), "attacks");
    for (std::size_t i = 0; i < attacks.size(); ++i) {
        const std::string path = index_path("attacks", i);
        const Json& obj = detail::require_object(attacks[i], path);
        AttackVector a;
        a.id = detail::get_string(obj, "id", path);
        a.layer = read_layer(obj, path, loader);
        a.name = detail::get_string(obj, "name", path);
        a.likelihood = detail::get_number(obj, "likelihood", path);
        a.impact = detail::get_number(obj, "impact", path);
        a.detectability = detail::get_optional_number(obj, "detectability", path).value_or(1.0);
        a.references = detail::get_string_list(obj, "references", path);
        c.attacks.push_back(std::move(a));
    }

    const Json& defenses = detail::require_array(detail::require_key(j, "defenses", ""), "defenses");
    for (std::size_t i = 0; i < defenses.size(); ++i) {
        const std::string path = index_path("defenses", i);
        const Json& obj = detail::require_object(defenses[i], path);
        DefenseMechanism d;
        d.id = detail::get_string(obj, "id", path);
        d.layer = read_layer(obj, path, loader);
        d.name = detail::get_string(obj, "name", path);
        d.references = detail::get_string_list(obj, "references", path);
        c.defenses.push_back(std::move(d));
    }

    const Json& gamma = detail::require_array(detail::require_key(j, "gamma", ""), "gamma");
    for (std::size_t i = 0; i < gamma.size(); ++i) c.gamma.push_back(detail::as_number_list(gamma[i], index_path("gamma", i)));

    ValidationReport report = validate_catalog(c, options);
    report.violations.insert(report.violations.begin(), loader.begin(), loader.end());
    if (!report.ok()) throw ValidationError(std::move(report));

    c.fingerprint = catalog_fingerprint(c);
    return c;
}

Catalog load_catalog(std::istream& in, const CatalogOptions& options) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return catalog_from_json(parse_json_text(text, "catalog"), options);
}

Catalog load_catalog_file(const std::string& path, const CatalogOptions& options) {
    return catalog_from_json(parse_json_text(read_file(path), path), options);
}

Catalog default_catalog() {
    static const Catalog shipped = catalog_from_json(parse_json_text(embedded::default_catalog_json(), "<default catalog>"));
    return shipped;
}

Json catalog_to_json(const Catalog& catalog) {
    Json j = Json::object();
    j["version"] = catalog.version;
    j["illustrative"] = catalog.illustrative;
    Json layers = Json::array();
    for (LayerId l : kAllLayers) layers.push_back(std::string(layer_code(l)));
    j["layers"] = std::move(layers);

    Json attacks = Json::array();
    for (const auto& a : catalog.attacks) {
        attacks.push_back({{"id", a.id},
                           {"layer", std::string(layer_code(a.layer))},
                           {"name", a.name},
                           {"likelihood", a.likelihood},
                           {"impact", a.impact},
                           {"detectability", a.detectability},
                           {"references", a.references}});
    }
    j["attacks"] = std::move(attacks);

    Json defenses = Json::array();
    for (const auto& d : catalog.defenses) {
        defenses.push_back({{"id", d.id},
                            {"layer", std::string(layer_code(d.layer))},
                            {"name", d.name},
                            {"references", d.references}});
    }
    j["defenses"] = std::move(defenses);

    Json gamma = Json::array();
    for (const auto& row : catalog.gamma) {
        Json r = Json::array();
        for (double g : row) r.push_back(g);
        gamma.push_back(std::move(r));
    }
    j["gamma"] = std::move(gamma);
    return j;
}

std::string catalog_fingerprint(const Catalog& catalog) { return fingerprint(catalog_to_json(catalog)); }

PerLayer<LayerBucket> layer_partition(const Catalog& catalog) {
    PerLayer<LayerBucket> buckets;
    for (const auto& a : catalog.attacks) buckets[ordinal(a.layer)].attack_ids.push_back(a.id);
    for (const auto& d : catalog.defenses) buckets[ordinal(d.layer)].defense_ids.push_back(d.id);
    return buckets;
}

}  // namespace riskmap
