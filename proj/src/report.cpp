#include "riskmap/report.hpp"

#include "embedded_data.hpp"
#include "json_fields.hpp"
#include "riskmap/errors.hpp"
#include "riskmap/schema.hpp"
#include "riskmap/version.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <numbers>
#include <sstream>

namespace riskmap {

namespace {

Json layer_values_to_json(const PerLayer<double>& values) {
    Json j = Json::object();
    for (LayerId l : kAllLayers) j[std::string(layer_code(l))] = values[ordinal(l)];
    return j;
}

PerLayer<double> layer_values_from_json(const Json& j, const std::string& path) {
    PerLayer<double> out{};
    for (LayerId l : kAllLayers) out[ordinal(l)] = detail::get_number(j, std::string(layer_code(l)), path);
    return out;
}

LayerId layer_from_json(const Json& j, const std::string& path) {
    const std::string code = detail::as_string(j, path);
    if (auto l = parse_layer_code(code)) return *l;
    throw ParseError(path, "unknown layer code '" + code + "'");
}

Json breakdown_to_json(const ScoreBreakdown& b) {
    Json attacks = Json::array();
    for (std::size_t i = 0; i < b.attack_ids.size(); ++i) {
        Json eps = Json::array();
        for (double e : b.epsilon.row(i)) eps.push_back(e);
        attacks.push_back({{"id", b.attack_ids[i]},
                           {"layer", std::string(layer_code(b.attack_layers[i]))},
                           {"omega", b.omega[i]},
                           {"omega_adjusted", b.omega_adjusted[i]},
                           {"kappa", b.kappa[i]},
                           {"epsilon", std::move(eps)}});
    }
    Json defenses = Json::array();
    for (std::size_t j = 0; j < b.defense_ids.size(); ++j) {
        defenses.push_back({{"id", b.defense_ids[j]}, {"layer", std::string(layer_code(b.defense_layers[j]))}});
    }
    return Json{{"catalog_fingerprint", b.catalog_fingerprint},
                {"attacks", std::move(attacks)},
                {"defenses", std::move(defenses)},
                {"aggregate_percent", b.aggregate_percent},
                {"layer_scores", layer_values_to_json(b.layer_scores)}};
}

ScoreBreakdown breakdown_from_json(const Json& j) {
    const std::string path = "breakdown";
    ScoreBreakdown b;
    b.catalog_fingerprint = detail::get_string(j, "catalog_fingerprint", path);
    const Json& defenses = detail::require_array(detail::require_key(j, "defenses", path), path + ".defenses");
    for (std::size_t k = 0; k < defenses.size(); ++k) {
        const std::string p = detail::index_path(path + ".defenses", k);
        b.defense_ids.push_back(detail::get_string(defenses[k], "id", p));
        b.defense_layers.push_back(layer_from_json(detail::require_key(defenses[k], "layer", p), p + ".layer"));
    }
    const Json& attacks = detail::require_array(detail::require_key(j, "attacks", path), path + ".attacks");
    b.epsilon = Matrix(attacks.size(), defenses.size());
    for (std::size_t i = 0; i < attacks.size(); ++i) {
        const std::string p = detail::index_path(path + ".attacks", i);
        const Json& a = attacks[i];
        b.attack_ids.push_back(detail::get_string(a, "id", p));
        b.attack_layers.push_back(layer_from_json(detail::require_key(a, "layer", p), p + ".layer"));
        b.omega.push_back(detail::get_number(a, "omega", p));
        b.omega_adjusted.push_back(detail::get_number(a, "omega_adjusted", p));
        b.kappa.push_back(detail::get_number(a, "kappa", p));
        const auto eps = detail::as_number_list(detail::require_key(a, "epsilon", p), p + ".epsilon");
        if (eps.size() != defenses.size()) throw ParseError(p + ".epsilon", "row length does not match defenses");
        std::copy(eps.begin(), eps.end(), b.epsilon.row(i).begin());
    }
    b.aggregate_percent = detail::get_number(j, "aggregate_percent", path);
    b.layer_scores = layer_values_from_json(detail::require_key(j, "layer_scores", path), path + ".layer_scores");
    return b;
}

Json summary_to_json(const DistributionSummary& s) {
    return Json{{"mean", s.mean},   {"std_dev", s.std_dev}, {"median", s.median},
                {"p5", s.p5},       {"p95", s.p95},         {"iterations", s.iterations},
                {"point_estimate", s.point_estimate}};
}

DistributionSummary summary_from_json(const Json& j, const std::string& path) {
    DistributionSummary s;
    s.mean = detail::get_number(j, "mean", path);
    s.std_dev = detail::get_number(j, "std_dev", path);
    s.median = detail::get_number(j, "median", path);
    s.p5 = detail::get_number(j, "p5", path);
    s.p95 = detail::get_number(j, "p95", path);
    s.iterations = detail::require_key(j, "iterations", path).get<std::size_t>();
    s.point_estimate = detail::get_number(j, "point_estimate", path);
    return s;
}

Json path_to_json(const CascadePath& p) {
    Json layers = Json::array();
    for (LayerId l : p.layers) layers.push_back(std::string(layer_code(l)));
    return Json{{"layers", std::move(layers)},
                {"hops", Json::array({p.hop_strengths[0], p.hop_strengths[1]})},
                {"strength", p.strength}};
}

CascadePath path_from_json(const Json& j, const std::string& path) {
    CascadePath p;
    const Json& layers = detail::require_array(detail::require_key(j, "layers", path), path + ".layers");
    if (layers.size() != 3) throw ParseError(path + ".layers", "expected three layers");
    for (std::size_t i = 0; i < 3; ++i) p.layers[i] = layer_from_json(layers[i], detail::index_path(path + ".layers", i));
    const auto hops = detail::as_number_list(detail::require_key(j, "hops", path), path + ".hops");
    if (hops.size() != 2) throw ParseError(path + ".hops", "expected two hop strengths");
    p.hop_strengths = {hops[0], hops[1]};
    p.strength = detail::get_number(j, "strength", path);
    return p;
}

Json cascades_to_json(const CascadeAnalysis& a) {
    Json matrix = Json::array();
    for (const auto& row : a.coupling) {
        Json r = Json::array();
        for (double v : row) r.push_back(v);
        matrix.push_back(std::move(r));
    }
    Json paths = Json::array();
    for (const auto& p : a.paths) paths.push_back(path_to_json(p));
    Json ranked = Json::array();
    for (const auto& r : a.ranked) {
        ranked.push_back({{"path", path_to_json(r.path)},
                          {"attack_id", r.attack_id},
                          {"attack_weight", r.attack_weight},
                          {"defense_gap", r.defense_gap},
                          {"crr", r.crr},
                          {"cci", r.cci}});
    }
    return Json{{"present", true},
                {"catalog_fingerprint", a.catalog_fingerprint},
                {"coupling_fingerprint", a.coupling_fingerprint},
                {"coupling_matrix", std::move(matrix)},
                {"layer_coverage", layer_values_to_json(a.coverage)},
                {"paths", std::move(paths)},
                {"ranked", std::move(ranked)}};
}

CascadeAnalysis cascades_from_json(const Json& j) {
    const std::string path = "cascades";
    CascadeAnalysis a;
    a.catalog_fingerprint = detail::get_string(j, "catalog_fingerprint", path);
    a.coupling_fingerprint = detail::get_string(j, "coupling_fingerprint", path);
    const Json& matrix = detail::require_array(detail::require_key(j, "coupling_matrix", path), path + ".coupling_matrix");
    if (matrix.size() != kLayerCount) throw ParseError(path + ".coupling_matrix", "expected 7 rows");
    for (std::size_t i = 0; i < kLayerCount; ++i) {
        const auto row = detail::as_number_list(matrix[i], detail::index_path(path + ".coupling_matrix", i));
        if (row.size() != kLayerCount) throw ParseError(path + ".coupling_matrix", "expected 7 columns");
        std::copy(row.begin(), row.end(), a.coupling[i].begin());
    }
    a.coverage = layer_values_from_json(detail::require_key(j, "layer_coverage", path), path + ".layer_coverage");
    const Json& paths = detail::require_array(detail::require_key(j, "paths", path), path + ".paths");
    for (std::size_t i = 0; i < paths.size(); ++i) a.paths.push_back(path_from_json(paths[i], detail::index_path(path + ".paths", i)));
    const Json& ranked = detail::require_array(detail::require_key(j, "ranked", path), path + ".ranked");
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const std::string p = detail::index_path(path + ".ranked", i);
        CascadeRisk r;
        r.path = path_from_json(detail::require_key(ranked[i], "path", p), p + ".path");
        r.attack_id = detail::get_string(ranked[i], "attack_id", p);
        r.attack_weight = detail::get_number(ranked[i], "attack_weight", p);
        r.defense_gap = detail::get_number(ranked[i], "defense_gap", p);
        r.crr = detail::get_number(ranked[i], "crr", p);
        r.cci = detail::get_number(ranked[i], "cci", p);
        a.ranked.push_back(std::move(r));
    }
    return a;
}

Json config_to_json(const ConfigEcho& c) {
    Json targets = Json::array();
    std::istringstream names(noise_targets_to_string(c.monte_carlo.noise.targets));
    for (std::string name; std::getline(names, name, ',');) targets.push_back(name);
    return Json{
        {"scoring", {{"allow_continuous", c.allow_continuous}}},
        {"cascade",
         {{"alpha", c.alpha},
          {"beta", c.beta},
          {"epsilon_hop", c.cascade.epsilon_hop},
          {"min_prop", c.cascade.min_prop},
          {"hops", c.cascade.hops},
          {"top_k", c.cascade.top_k},
          {"require_distinct_endpoints", c.cascade.require_distinct_endpoints},
          {"layer_coverage", std::string(to_string(c.cascade.coverage_mode))},
          {"attack_pairing", std::string(to_string(c.cascade.pairing))}}},
        {"monte_carlo",
         {{"iterations", c.monte_carlo.iterations},
          {"seed", c.monte_carlo.seed},
          {"noise_fraction", c.monte_carlo.noise.fraction},
          {"noise_targets", std::move(targets)},
          {"noise_mode", std::string(to_string(c.monte_carlo.noise.mode))},
          {"rng", std::string(kRngName)}}},
        {"whatif", {{"cumulative", c.cumulative}}}};
}

ConfigEcho config_from_json(const Json& j) {
    ConfigEcho c;
    const Json& scoring = detail::require_key(j, "scoring", "config");
    c.allow_continuous = detail::as_bool(detail::require_key(scoring, "allow_continuous", "config.scoring"), "config.scoring.allow_continuous");

    const std::string cp = "config.cascade";
    const Json& cascade = detail::require_key(j, "cascade", "config");
    c.alpha = detail::get_number(cascade, "alpha", cp);
    c.beta = detail::get_number(cascade, "beta", cp);
    c.cascade.epsilon_hop = detail::get_number(cascade, "epsilon_hop", cp);
    c.cascade.min_prop = detail::get_number(cascade, "min_prop", cp);
    c.cascade.hops = detail::require_key(cascade, "hops", cp).get<int>();
    c.cascade.top_k = detail::require_key(cascade, "top_k", cp).get<std::size_t>();
    c.cascade.require_distinct_endpoints =
        detail::as_bool(detail::require_key(cascade, "require_distinct_endpoints", cp), cp + ".require_distinct_endpoints");
    c.cascade.coverage_mode = parse_layer_coverage_mode(detail::get_string(cascade, "layer_coverage", cp));
    c.cascade.pairing = parse_attack_pairing(detail::get_string(cascade, "attack_pairing", cp));

    const std::string mp = "config.monte_carlo";
    const Json& mc = detail::require_key(j, "monte_carlo", "config");
    c.monte_carlo.iterations = detail::require_key(mc, "iterations", mp).get<std::size_t>();
    c.monte_carlo.seed = detail::require_key(mc, "seed", mp).get<std::uint64_t>();
    c.monte_carlo.noise.fraction = detail::get_number(mc, "noise_fraction", mp);
    std::string targets;
    for (const auto& t : detail::get_string_list(mc, "noise_targets", mp)) targets += (targets.empty() ? "" : ",") + t;
    c.monte_carlo.noise.targets = parse_noise_targets(targets);
    c.monte_carlo.noise.mode = parse_noise_mode(detail::get_string(mc, "noise_mode", mp));
    if (detail::get_string(mc, "rng", mp) != kRngName) throw ParseError(mp + ".rng", "report produced by a different generator");

    c.cumulative = detail::as_bool(detail::require_key(detail::require_key(j, "whatif", "config"), "cumulative", "config.whatif"),
                                   "config.whatif.cumulative");
    return c;
}

const Json& report_schema() {
    static const Json schema = parse_json_text(embedded::report_schema_json(), "<report schema>");
    return schema;
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

}  // namespace

std::string utc_now_iso8601() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<std::string> check_report_schema(const Json& report_json) {
    return validate_against_schema(report_schema(), report_json);
}

AssessmentReport build_report(const ReportParts& parts) {
    if (parts.catalog == nullptr || parts.assessment == nullptr) throw SchemaError("report needs a catalog and an assessment");
    const std::string& catalog_fp = parts.catalog->fingerprint;
    auto expect_catalog = [&](const std::string& section, const std::string& fp) {
        if (fp != catalog_fp) {
            throw SchemaError(section + " was computed against catalog " + fp + ", report catalog is " + catalog_fp);
        }
    };
    expect_catalog("breakdown", parts.breakdown.catalog_fingerprint);
    if (parts.mc) expect_catalog("monte carlo section", parts.mc->catalog_fingerprint);

    AssessmentReport r;
    if (parts.cascades) {
        expect_catalog("cascade section", parts.cascades->catalog_fingerprint);
        if (parts.coupling == nullptr) throw SchemaError("cascade section present without coupling inputs");
        const std::string coupling_fp = coupling_fingerprint(*parts.coupling);
        if (parts.cascades->coupling_fingerprint != coupling_fp) {
            throw SchemaError("cascade section was computed against coupling " + parts.cascades->coupling_fingerprint +
                              ", report coupling is " + coupling_fp);
        }
    }
    if (parts.coupling) r.coupling_fingerprint = coupling_fingerprint(*parts.coupling);

    r.tool_version = std::string(kToolVersion);
    r.generated_at = parts.generated_at.value_or(utc_now_iso8601());
    r.platform = parts.assessment->platform;
    r.catalog_fingerprint = catalog_fp;
    r.catalog_illustrative = parts.catalog->illustrative;
    r.assessment_fingerprint = assessment_fingerprint(*parts.assessment);
    r.config = parts.config;
    r.config.monte_carlo.threads = 0;
    if (parts.coupling) {
        r.config.alpha = parts.coupling->alpha;
        r.config.beta = parts.coupling->beta;
    }
    r.breakdown = parts.breakdown;
    r.mc = parts.mc;
    r.cascades = parts.cascades;

    if (const auto problems = check_report_schema(report_to_json(r)); !problems.empty()) {
        std::string msg = "report violates schema:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw SchemaError(msg);
    }
    return r;
}

Json report_to_json(const AssessmentReport& r) {
    Json j = Json::object();
    j["schema_version"] = std::string(kReportSchemaVersion);
    j["tool_version"] = r.tool_version;
    j["generated_at"] = r.generated_at;
    j["platform"] = r.platform;
    j["inputs"] = {{"catalog_fingerprint", r.catalog_fingerprint},
                   {"catalog_illustrative", r.catalog_illustrative},
                   {"assessment_fingerprint", r.assessment_fingerprint},
                   {"coupling_fingerprint", r.coupling_fingerprint ? Json(*r.coupling_fingerprint) : Json(nullptr)}};
    j["config"] = config_to_json(r.config);
    j["breakdown"] = breakdown_to_json(r.breakdown);
    if (r.mc) {
        Json metrics = Json::object();
        for (const auto& [name, s] : r.mc->metrics) metrics[name] = summary_to_json(s);
        j["mc"] = {{"present", true}, {"catalog_fingerprint", r.mc->catalog_fingerprint}, {"metrics", std::move(metrics)}};
    } else {
        j["mc"] = {{"present", false}};
    }
    j["cascades"] = r.cascades ? cascades_to_json(*r.cascades) : Json{{"present", false}};
    return j;
}

AssessmentReport report_from_json(const Json& j) {
    detail::require_object(j, "");
    if (const auto problems = check_report_schema(j); !problems.empty()) throw ParseError("report", problems.front());
    AssessmentReport r;
    r.tool_version = detail::get_string(j, "tool_version", "");
    r.generated_at = detail::get_string(j, "generated_at", "");
    r.platform = detail::get_string(j, "platform", "");
    const Json& inputs = j.at("inputs");
    r.catalog_fingerprint = inputs.at("catalog_fingerprint").get<std::string>();
    r.catalog_illustrative = inputs.at("catalog_illustrative").get<bool>();
    r.assessment_fingerprint = inputs.at("assessment_fingerprint").get<std::string>();
    if (!inputs.at("coupling_fingerprint").is_null()) r.coupling_fingerprint = inputs.at("coupling_fingerprint").get<std::string>();
    r.config = config_from_json(j.at("config"));
    r.breakdown = breakdown_from_json(j.at("breakdown"));
    if (const Json& mc = j.at("mc"); mc.at("present").get<bool>()) {
        MonteCarloResult m;
        m.catalog_fingerprint = detail::get_string(mc, "catalog_fingerprint", "mc");
        for (const auto& [name, s] : detail::require_key(mc, "metrics", "mc").items()) {
            m.metrics.emplace(name, summary_from_json(s, "mc.metrics." + name));
        }
        r.mc = std::move(m);
    }
    if (const Json& c = j.at("cascades"); c.at("present").get<bool>()) r.cascades = cascades_from_json(c);
    return r;
}

std::string emit_json(const AssessmentReport& report) { return canonical_dump(report_to_json(report)); }

std::string emit_json_for_comparison(const AssessmentReport& report) {
    AssessmentReport copy = report;
    copy.generated_at = std::string(kZeroTimestamp);
    return emit_json(copy);
}

std::map<std::string, std::string> emit_csv(const AssessmentReport& r) {
    std::map<std::string, std::string> tables;

    std::string scores = std::string(kScoresCsvHeader) + "\n";
    const auto& b = r.breakdown;
    for (std::size_t i = 0; i < b.attack_ids.size(); ++i) {
        scores += b.attack_ids[i] + "," + format_number(b.omega[i]) + "," + format_number(b.omega_adjusted[i]) + "," +
                  format_number(b.kappa[i]) + "\n";
    }
    tables["scores.csv"] = std::move(scores);

    std::string layers = std::string(kLayersCsvHeader) + "\n";
    for (LayerId l : kAllLayers) layers += std::string(layer_code(l)) + "," + format_number(b.layer_scores[ordinal(l)]) + "\n";
    tables["layers.csv"] = std::move(layers);

    std::string cascades = std::string(kCascadesCsvHeader) + "\n";
    if (r.cascades) {
        for (const auto& c : r.cascades->ranked) {
            cascades += c.path.label() + "," + c.attack_id + "," + format_number(c.path.strength) + "," +
                        format_number(c.defense_gap) + "," + format_number(c.crr) + "," + format_number(c.cci) + "\n";
        }
    }
    tables["cascades.csv"] = std::move(cascades);

    std::string mc = std::string(kMcCsvHeader) + "\n";
    if (r.mc) {
        for (const auto& [name, s] : r.mc->metrics) {
            mc += name + "," + format_number(s.mean) + "," + format_number(s.std_dev) + "," + format_number(s.median) +
                  "," + format_number(s.p5) + "," + format_number(s.p95) + "\n";
        }
    }
    tables["mc.csv"] = std::move(mc);
    return tables;
}

std::string emit_radar_svg(const RadarSeries& primary, const std::optional<RadarSeries>& overlay) {
    for (const RadarSeries* s : {&primary, overlay ? &*overlay : nullptr}) {
        if (s == nullptr) continue;
        for (double v : s->scores) {
            if (!(v >= 0.0 && v <= 5.0)) throw DomainError("radar: layer score " + format_number(v) + " outside [0,5]");
        }
    }

    constexpr double kCenter = 400.0;
    constexpr double kRadius = 300.0;  // score 5
    auto point = [&](std::size_t axis, double score) {
        const double angle = -std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * static_cast<double>(axis) / kLayerCount;
        const double r = kRadius * score / 5.0;
        return std::make_pair(kCenter + r * std::cos(angle), kCenter + r * std::sin(angle));
    };
    auto polygon_points = [&](const PerLayer<double>& scores) {
        std::string pts;
        for (std::size_t k = 0; k < kLayerCount; ++k) {
            const auto [x, y] = point(k, scores[k]);
            if (!pts.empty()) pts += " ";
            pts += fixed(x, 3) + "," + fixed(y, 3);
        }
        return pts;
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
    svg += "<title>" + xml_escape(primary.label) + (overlay ? " vs " + xml_escape(overlay->label) : "") +
           " layer scores</title>\n";
    svg += "<rect width=\"800\" height=\"800\" fill=\"#ffffff\"/>\n";

    svg += "<g class=\"grid\" fill=\"none\" stroke=\"#c8c8c8\" stroke-width=\"1\">\n";
    for (int ring = 1; ring <= 5; ++ring) {
        PerLayer<double> level{};
        level.fill(static_cast<double>(ring));
        svg += "<polygon points=\"" + polygon_points(level) + "\"/>\n";
    }
    svg += "</g>\n";

    svg += "<g class=\"axes\" stroke=\"#969696\" stroke-width=\"1\">\n";
    for (std::size_t k = 0; k < kLayerCount; ++k) {
        const auto [x, y] = point(k, 5.0);
        svg += "<line x1=\"400.000\" y1=\"400.000\" x2=\"" + fixed(x, 3) + "\" y2=\"" + fixed(y, 3) + "\"/>\n";
    }
    svg += "</g>\n";

    svg += "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#646464\">\n";
    for (int ring = 1; ring <= 5; ++ring) {
        const auto [x, y] = point(0, static_cast<double>(ring));
        svg += "<text x=\"" + fixed(x + 6.0, 3) + "\" y=\"" + fixed(y + 4.0, 3) + "\">" + std::to_string(ring) + "</text>\n";
    }
    svg += "</g>\n";

    svg += "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"16\" fill=\"#222222\">\n";
    for (std::size_t k = 0; k < kLayerCount; ++k) {
        const auto [x, y] = point(k, 5.6);
        const char* anchor = std::abs(x - kCenter) < 1.0 ? "middle" : (x > kCenter ? "start" : "end");
        const LayerId l = layer_from_ordinal(k);
        svg += "<text x=\"" + fixed(x, 3) + "\" y=\"" + fixed(y + 5.0, 3) + "\" text-anchor=\"" + anchor + "\">" +
               std::string(layer_code(l)) + " " + xml_escape(layer_display_name(l)) + "</text>\n";
    }
    svg += "</g>\n";

    auto series = [&](const RadarSeries& s, const char* colour, int index) {
        svg += "<polygon class=\"series\" points=\"" + polygon_points(s.scores) + "\" fill=\"" + colour +
               "\" fill-opacity=\"0.25\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
        const std::string y = fixed(30.0 + 22.0 * index, 3);
        svg += "<rect x=\"20.000\" y=\"" + fixed(18.0 + 22.0 * index, 3) + "\" width=\"14\" height=\"14\" fill=\"" +
               colour + "\"/>\n";
        svg += "<text x=\"42.000\" y=\"" + y + "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#222222\">" +
               xml_escape(s.label) + "</text>\n";
    };
    series(primary, "#1f77b4", 0);
    if (overlay) series(*overlay, "#ff7f0e", 1);
    svg += "</svg>\n";
    return svg;
}

std::string emit_text(const AssessmentReport& r) {
    std::ostringstream os;
    os << "RISK-MAP assessment: " << r.platform << "\n";
    os << "catalog " << r.catalog_fingerprint.substr(0, 12) << (r.catalog_illustrative ? " (illustrative values)" : "")
       << "\n\n";
    os << "Aggregate score: " << fixed(r.breakdown.aggregate_percent, 2) << "%\n";
    if (r.mc) {
        if (auto it = r.mc->metrics.find("aggregate_percent"); it != r.mc->metrics.end()) {
            const auto& s = it->second;
            os << "  Monte Carlo (" << s.iterations << " runs): " << fixed(s.mean, 2) << "% +/- " << fixed(s.std_dev, 2)
               << "; median " << fixed(s.median, 2) << "% [p5 " << fixed(s.p5, 2) << ", p95 " << fixed(s.p95, 2) << "]\n";
        }
    }
    os << "\nLayer scores (0-5):\n";
    for (LayerId l : kAllLayers) {
        char line[96];
        std::snprintf(line, sizeof line, "  %-3s %-24s %5.2f", std::string(layer_code(l)).c_str(),
                      std::string(layer_display_name(l)).c_str(), r.breakdown.layer_scores[ordinal(l)]);
        os << line;
        if (r.mc) {
            const auto it = r.mc->metrics.find("layer_score." + std::string(layer_code(l)));
            if (it != r.mc->metrics.end()) {
                os << "  [" << fixed(it->second.p5, 2) << ", " << fixed(it->second.p95, 2) << "]";
            }
        }
        os << "\n";
    }
    if (r.cascades) {
        os << "\nTop cascades (" << r.cascades->paths.size() << " qualifying paths):\n";
        if (r.cascades->ranked.empty()) os << "  none\n";
        std::size_t rank = 1;
        for (const auto& c : r.cascades->ranked) {
            char line[160];
            std::snprintf(line, sizeof line, "  %zu. %-10s %-7s P=%.3f U=%.3f CRR=%.4f CCI=%.4f", rank++,
                          c.path.label().c_str(), c.attack_id.c_str(), c.path.strength, c.defense_gap, c.crr, c.cci);
            os << line << "\n";
        }
    }
    return os.str();
}

std::vector<Proposal> full_upgrade_proposals(const Catalog& catalog, const PlatformAssessment& assessment) {
    std::vector<Proposal> out;
    for (const auto& d : catalog.defenses) {
        const auto it = assessment.implementation.find(d.id);
        if (it != assessment.implementation.end() && it->second < 1.0) out.push_back({d.id, 1.0});
    }
    return out;
}

DeltaReport whatif(const Catalog& catalog, const PlatformAssessment& assessment, const std::vector<Proposal>& proposals,
                   bool cumulative, const CatalogOptions& options) {
    std::vector<std::string> unknown, invalid;
    for (const auto& p : proposals) {
        const bool known = std::any_of(catalog.defenses.begin(), catalog.defenses.end(),
                                       [&](const DefenseMechanism& d) { return d.id == p.defense_id; });
        if (!known) unknown.push_back(p.defense_id);
        const bool in_range = p.level >= 0.0 && p.level <= 1.0;
        if (!in_range || (!options.allow_continuous && !is_coverage_level(p.level))) {
            invalid.push_back(p.defense_id + ": level " + format_number(p.level) + " is not a valid implementation level");
        }
    }
    if (!unknown.empty() || !invalid.empty()) throw BindError({}, std::move(unknown), std::move(invalid));

    DeltaReport delta;
    delta.cumulative = cumulative;
    delta.baseline_percent = score_platform(catalog, assessment, options).aggregate_percent;

    PlatformAssessment running = assessment;
    double previous = delta.baseline_percent;
    for (const auto& p : proposals) {
        PlatformAssessment trial = cumulative ? running : assessment;
        DeltaEntry e;
        e.defense_id = p.defense_id;
        e.previous_level = trial.implementation.at(p.defense_id);
        e.proposed_level = p.level;
        trial.implementation[p.defense_id] = p.level;
        e.new_percent = score_platform(catalog, trial, options).aggregate_percent;
        e.gain = e.new_percent - (cumulative ? previous : delta.baseline_percent);
        if (cumulative) {
            running = std::move(trial);
            previous = e.new_percent;
        }
        delta.entries.push_back(std::move(e));
    }
    if (!cumulative) {
        std::stable_sort(delta.entries.begin(), delta.entries.end(), [](const DeltaEntry& a, const DeltaEntry& b) {
            if (a.gain != b.gain) return a.gain > b.gain;
            return a.defense_id < b.defense_id;
        });
    }
    return delta;
}

Json whatif_to_json(const DeltaReport& d) {
    Json entries = Json::array();
    for (const auto& e : d.entries) {
        entries.push_back({{"defense_id", e.defense_id},
                           {"previous_level", e.previous_level},
                           {"proposed_level", e.proposed_level},
                           {"new_percent", e.new_percent},
                           {"gain", e.gain}});
    }
    return Json{{"baseline_percent", d.baseline_percent}, {"cumulative", d.cumulative}, {"entries", std::move(entries)}};
}

std::string whatif_csv(const DeltaReport& d) {
    std::string out = std::string(kWhatifCsvHeader) + "\n";
    for (const auto& e : d.entries) {
        out += e.defense_id + "," + format_number(e.previous_level) + "," + format_number(e.proposed_level) + "," +
               format_number(e.new_percent) + "," + format_number(e.gain) + "\n";
    }
    return out;
}

std::string whatif_text(const DeltaReport& d) {
    std::ostringstream os;
    os << "Baseline aggregate: " << fixed(d.baseline_percent, 2) << "%"
       << (d.cumulative ? " (proposals applied cumulatively)" : "") << "\n";
    for (const auto& e : d.entries) {
        char line[128];
        std::snprintf(line, sizeof line, "  %-7s %.2f -> %.2f  %6.2f%%  %+6.2f pp", e.defense_id.c_str(), e.previous_level,
                      e.proposed_level, e.new_percent, e.gain);
        os << line << "\n";
    }
    return os.str();
}

}  // namespace riskmap
