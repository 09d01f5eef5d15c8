#include "riskmap/cascade.hpp"

#include "json_fields.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace riskmap {

namespace {

using detail::index_path;

bool in_unit_interval(double v) noexcept { return v >= 0.0 && v <= 1.0; }

auto code_triple(const CascadePath& p) {
    return std::make_tuple(layer_code(p.layers[0]), layer_code(p.layers[1]), layer_code(p.layers[2]));
}

LayerMatrix read_layer_matrix(const Json& obj, const std::string& key) {
    const Json& rows = detail::require_array(detail::require_key(obj, key, ""), key);
    if (rows.size() != kLayerCount) throw ParseError(key, "expected 7 rows, got " + std::to_string(rows.size()));
    LayerMatrix m{};
    for (std::size_t i = 0; i < kLayerCount; ++i) {
        const std::string row_path = index_path(key, i);
        const auto values = detail::as_number_list(rows[i], row_path);
        if (values.size() != kLayerCount) {
            throw ParseError(row_path, "expected 7 columns, got " + std::to_string(values.size()));
        }
        std::copy(values.begin(), values.end(), m[i].begin());
    }
    return m;
}

Json layer_matrix_to_json(const LayerMatrix& m) {
    Json rows = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (double v : row) r.push_back(v);
        rows.push_back(std::move(r));
    }
    return rows;
}

void check_matrix(const LayerMatrix& m, const char* name, std::vector<Violation>& out) {
    for (std::size_t i = 0; i < kLayerCount; ++i) {
        for (std::size_t j = 0; j < kLayerCount; ++j) {
            if (!in_unit_interval(m[i][j])) {
                out.push_back({"MATRIX_RANGE", index_path(index_path(name, i), j),
                               std::string(name) + " entry " + format_number(m[i][j]) + " outside [0,1]"});
            }
        }
    }
}

}  // namespace

std::string CascadePath::label() const {
    return std::string(layer_code(layers[0])) + ">" + std::string(layer_code(layers[1])) + ">" +
           std::string(layer_code(layers[2]));
}

ValidationReport validate_coupling(const CouplingInputs& in) {
    ValidationReport report;
    auto& out = report.violations;
    if (!(in.alpha >= 0.0)) out.push_back({"WEIGHT_RANGE", "alpha", "alpha must be >= 0"});
    if (!(in.beta >= 0.0)) out.push_back({"WEIGHT_RANGE", "beta", "beta must be >= 0"});
    if (!(std::abs(in.alpha + in.beta - 1.0) <= 1e-9)) {
        out.push_back({"ALPHA_BETA_SUM", "alpha", "alpha + beta must equal 1"});
    }
    check_matrix(in.structural, "S", out);
    check_matrix(in.evidence, "E", out);
    check_matrix(in.mitigation, "M", out);
    return report;
}

CouplingInputs coupling_from_json(const Json& j) {
    detail::require_object(j, "");
    CouplingInputs in;
    in.alpha = detail::get_optional_number(j, "alpha", "").value_or(kDefaultAlpha);
    in.beta = detail::get_optional_number(j, "beta", "").value_or(kDefaultBeta);
    in.structural = read_layer_matrix(j, "S");
    in.evidence = read_layer_matrix(j, "E");
    in.mitigation = read_layer_matrix(j, "M");
    if (auto it = j.find("illustrative"); it != j.end()) in.illustrative = detail::as_bool(*it, "illustrative");
    if (auto it = j.find("notes"); it != j.end()) in.notes = detail::as_string(*it, "notes");
    ValidationReport report = validate_coupling(in);
    if (!report.ok()) throw ValidationError(std::move(report));
    return in;
}

CouplingInputs load_coupling_file(const std::string& path) {
    return coupling_from_json(parse_json_text(read_file(path), path));
}

Json coupling_to_json(const CouplingInputs& in) {
    return Json{{"alpha", in.alpha},
                {"beta", in.beta},
                {"S", layer_matrix_to_json(in.structural)},
                {"E", layer_matrix_to_json(in.evidence)},
                {"M", layer_matrix_to_json(in.mitigation)},
                {"illustrative", in.illustrative},
                {"notes", in.notes}};
}

std::string coupling_fingerprint(const CouplingInputs& in) { return fingerprint(coupling_to_json(in)); }

void validate_cascade_config(const CascadeConfig& config) {
    if (config.hops != 2) {
        throw UnsupportedConfig("only two-hop cascades are implemented (hops=" + std::to_string(config.hops) + ")");
    }
    if (!in_unit_interval(config.epsilon_hop)) throw DomainError("epsilon_hop must lie in [0,1]");
    if (!in_unit_interval(config.min_prop)) throw DomainError("min_prop must lie in [0,1]");
}

LayerMatrix coupling_matrix(const CouplingInputs& in) {
    if (const auto report = validate_coupling(in); !report.ok()) {
        throw DomainError("invalid coupling inputs: " + report.violations.front().path + ": " +
                          report.violations.front().message);
    }
    LayerMatrix d{};
    for (std::size_t i = 0; i < kLayerCount; ++i) {
        for (std::size_t j = 0; j < kLayerCount; ++j) {
            if (i == j) {
                d[i][j] = 1.0;
                continue;
            }
            const double spread = in.alpha * in.structural[i][j] + in.beta * in.evidence[i][j];
            d[i][j] = std::clamp(spread * (1.0 - in.mitigation[i][j]), 0.0, 1.0);
        }
    }
    return d;
}

std::vector<CascadePath> enumerate_two_hop_paths(const LayerMatrix& coupling, const CascadeConfig& config) {
    validate_cascade_config(config);

    // Qualifying hops, grouped by source layer; the diagonal is never a hop.
    PerLayer<std::vector<std::size_t>> out_edges;
    for (std::size_t i = 0; i < kLayerCount; ++i) {
        for (std::size_t j = 0; j < kLayerCount; ++j) {
            if (i != j && coupling[i][j] >= config.epsilon_hop) out_edges[i].push_back(j);
        }
    }

    std::vector<CascadePath> paths;
    for (std::size_t i = 0; i < kLayerCount; ++i) {
        for (std::size_t j : out_edges[i]) {
            for (std::size_t k : out_edges[j]) {
                if (config.require_distinct_endpoints && k == i) continue;
                const double strength = coupling[i][j] * coupling[j][k];
                if (strength < config.min_prop) continue;
                paths.push_back({{layer_from_ordinal(i), layer_from_ordinal(j), layer_from_ordinal(k)},
                                 {coupling[i][j], coupling[j][k]},
                                 strength});
            }
        }
    }
    std::sort(paths.begin(), paths.end(), [](const CascadePath& a, const CascadePath& b) {
        if (a.strength != b.strength) return a.strength > b.strength;
        return code_triple(a) < code_triple(b);
    });
    return paths;
}

LayerCoverageVector layer_coverage(const ScoreBreakdown& b, LayerCoverageMode mode) {
    LayerCoverageVector c{};
    if (mode == LayerCoverageMode::LayerScore) {
        for (std::size_t l = 0; l < kLayerCount; ++l) c[l] = std::clamp(b.layer_scores[l] / 5.0, 0.0, 1.0);
        return c;
    }
    PerLayer<double> weight{};
    PerLayer<double> covered{};
    for (std::size_t i = 0; i < b.omega_adjusted.size(); ++i) {
        const std::size_t l = ordinal(b.attack_layers[i]);
        weight[l] += b.omega_adjusted[i];
        covered[l] += b.omega_adjusted[i] * b.kappa[i];
    }
    for (std::size_t l = 0; l < kLayerCount; ++l) {
        c[l] = weight[l] > 0.0 ? std::clamp(covered[l] / weight[l], 0.0, 1.0) : 0.0;
    }
    return c;
}

double defense_gap(const LayerCoverageVector& coverage, const CascadePath& path) {
    double gap = 1.0;
    for (LayerId l : path.layers) gap *= 1.0 - coverage[ordinal(l)];
    return gap;
}

CascadeRisk cascade_residual_risk(const CascadePath& path, std::string attack_id, double attack_weight,
                                  double gap) {
    CascadeRisk r;
    r.path = path;
    r.attack_id = std::move(attack_id);
    r.attack_weight = attack_weight;
    r.defense_gap = gap;
    r.crr = std::min(1.0, std::max(0.0, path.strength * attack_weight * gap));
    r.cci = 1.0 - r.crr;
    return r;
}

std::vector<CascadeRisk> top_k_cascades(std::vector<CascadeRisk> risks, std::size_t k) {
    auto better = [](const CascadeRisk& a, const CascadeRisk& b) {
        if (a.crr != b.crr) return a.crr > b.crr;
        const auto ta = code_triple(a.path);
        const auto tb = code_triple(b.path);
        if (ta != tb) return ta < tb;
        return a.attack_id < b.attack_id;
    };
    if (k < risks.size()) {
        std::partial_sort(risks.begin(), risks.begin() + static_cast<std::ptrdiff_t>(k), risks.end(), better);
        risks.resize(k);
    } else {
        std::sort(risks.begin(), risks.end(), better);
    }
    return risks;
}

std::vector<double> attack_weights(const ScoreBreakdown& b, std::span<const double> detectability) {
    if (detectability.size() != b.omega_adjusted.size()) {
        throw LengthMismatch("attack_weights: detectability does not align with attacks");
    }
    std::vector<double> w(b.omega_adjusted.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = b.omega_adjusted[i] * detectability[i];
    return w;
}

std::vector<CascadeRisk> cascade_candidates(const std::vector<CascadePath>& paths, const ScoreBreakdown& b,
                                            std::span<const double> weights, const LayerCoverageVector& coverage,
                                            AttackPairing pairing) {
    std::vector<CascadeRisk> out;
    for (const auto& path : paths) {
        const double gap = defense_gap(coverage, path);
        for (std::size_t i = 0; i < b.attack_ids.size(); ++i) {
            if (!(b.omega_adjusted[i] > 0.0)) continue;
            if (pairing == AttackPairing::OriginLayer && b.attack_layers[i] != path.layers[0]) continue;
            out.push_back(cascade_residual_risk(path, b.attack_ids[i], weights[i], gap));
        }
    }
    return out;
}

CascadeAnalysis analyze_cascades(const ScoreBreakdown& breakdown, const ScoringInputs& inputs,
                                 const CouplingInputs& coupling, const CascadeConfig& config) {
    validate_cascade_config(config);
    CascadeAnalysis a;
    a.coupling = coupling_matrix(coupling);
    a.paths = enumerate_two_hop_paths(a.coupling, config);
    a.coverage = layer_coverage(breakdown, config.coverage_mode);
    const auto weights = attack_weights(breakdown, inputs.detectability);
    a.ranked = top_k_cascades(cascade_candidates(a.paths, breakdown, weights, a.coverage, config.pairing), config.top_k);
    a.catalog_fingerprint = breakdown.catalog_fingerprint;
    a.coupling_fingerprint = coupling_fingerprint(coupling);
    return a;
}

std::string_view to_string(LayerCoverageMode mode) noexcept {
    return mode == LayerCoverageMode::LayerScore ? "layer_score" : "resident_attacks";
}

std::string_view to_string(AttackPairing pairing) noexcept {
    return pairing == AttackPairing::OriginLayer ? "origin_layer" : "all_attacks";
}

LayerCoverageMode parse_layer_coverage_mode(std::string_view text) {
    if (text == "layer_score") return LayerCoverageMode::LayerScore;
    if (text == "resident_attacks") return LayerCoverageMode::ResidentAttacks;
    throw UnsupportedConfig("unknown layer coverage mode '" + std::string(text) + "'");
}

AttackPairing parse_attack_pairing(std::string_view text) {
    if (text == "origin_layer") return AttackPairing::OriginLayer;
    if (text == "all_attacks") return AttackPairing::AllAttacks;
    throw UnsupportedConfig("unknown attack pairing '" + std::string(text) + "'");
}

}  // namespace riskmap
