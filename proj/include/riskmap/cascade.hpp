#pragma once

#include "riskmap/canonical_json.hpp"
#include "riskmap/catalog.hpp"
#include "riskmap/layer.hpp"
#include "riskmap/scoring.hpp"

#include <array>
#include <string>
#include <vector>

namespace riskmap {

using LayerMatrix = std::array<std::array<double, kLayerCount>, kLayerCount>;

inline constexpr double kDefaultAlpha = 0.6;
inline constexpr double kDefaultBeta = 0.4;

/// Inter-layer spread evidence, indexed [from][to] by layer ordinal.
struct CouplingInputs {
    LayerMatrix structural{};   // S
    LayerMatrix evidence{};     // E
    LayerMatrix mitigation{};   // M
    double alpha = kDefaultAlpha;
    double beta = kDefaultBeta;
    bool illustrative = false;
    std::string notes;

    bool operator==(const CouplingInputs&) const = default;
};

ValidationReport validate_coupling(const CouplingInputs& inputs);
CouplingInputs coupling_from_json(const Json& j);
CouplingInputs load_coupling_file(const std::string& path);
Json coupling_to_json(const CouplingInputs& inputs);
std::string coupling_fingerprint(const CouplingInputs& inputs);

/// How C(ℓ) is derived from a score breakdown.
enum class LayerCoverageMode {
    LayerScore,       // C(ℓ) = LayerScore_ℓ / 5
    ResidentAttacks,  // severity-weighted κ over the attacks resident in ℓ
};

/// Which attacks are paired with each path when forming CRR records.
enum class AttackPairing {
    OriginLayer,  // attacks resident in the path's first layer
    AllAttacks,   // every applicable attack
};

struct CascadeConfig {
    double epsilon_hop = 0.3;
    double min_prop = 0.1;
    int hops = 2;
    std::size_t top_k = 3;
    bool require_distinct_endpoints = true;
    LayerCoverageMode coverage_mode = LayerCoverageMode::LayerScore;
    AttackPairing pairing = AttackPairing::OriginLayer;

    bool operator==(const CascadeConfig&) const = default;
};

/// Throws UnsupportedConfig for hops != 2 and DomainError for thresholds outside [0,1].
void validate_cascade_config(const CascadeConfig& config);

struct CascadePath {
    std::array<LayerId, 3> layers{};
    std::array<double, 2> hop_strengths{};
    double strength = 0.0;  // P(π) = D_ij · D_jk

    std::string label() const;  // "DP>DM>AP"
    bool operator==(const CascadePath&) const = default;
};

struct CascadeRisk {
    CascadePath path;
    std::string attack_id;
    double attack_weight = 0.0;  // w_a
    double defense_gap = 0.0;    // U
    double crr = 0.0;
    double cci = 1.0;

    bool operator==(const CascadeRisk&) const = default;
};

using LayerCoverageVector = PerLayer<double>;

/// D = (αS + βE) ∘ (1 − M) off the diagonal, D_ii = 1.
LayerMatrix coupling_matrix(const CouplingInputs& inputs);

/// Every ℓi→ℓj→ℓk that clears both hop gates and the path-strength gate,
/// sorted by strength descending then by layer-code triple.
std::vector<CascadePath> enumerate_two_hop_paths(const LayerMatrix& coupling, const CascadeConfig& config);

LayerCoverageVector layer_coverage(const ScoreBreakdown& breakdown,
                                   LayerCoverageMode mode = LayerCoverageMode::LayerScore);

/// U = Π over the path's layers of (1 − C(ℓ)).
double defense_gap(const LayerCoverageVector& coverage, const CascadePath& path);

CascadeRisk cascade_residual_risk(const CascadePath& path, std::string attack_id, double attack_weight,
                                  double defense_gap);

/// k highest-CRR records; ties by (layer-code triple, attack id).
std::vector<CascadeRisk> top_k_cascades(std::vector<CascadeRisk> risks, std::size_t k);

/// w_a = ω̃_a · δ_a.
std::vector<double> attack_weights(const ScoreBreakdown& breakdown, std::span<const double> detectability);

struct CascadeAnalysis {
    LayerMatrix coupling{};
    std::vector<CascadePath> paths;
    LayerCoverageVector coverage{};
    std::vector<CascadeRisk> ranked;  // top-k
    std::string catalog_fingerprint;
    std::string coupling_fingerprint;

    bool operator==(const CascadeAnalysis&) const = default;
};

/// Candidate CRR records for a fixed set of paths.
std::vector<CascadeRisk> cascade_candidates(const std::vector<CascadePath>& paths, const ScoreBreakdown& breakdown,
                                            std::span<const double> weights, const LayerCoverageVector& coverage,
                                            AttackPairing pairing);

CascadeAnalysis analyze_cascades(const ScoreBreakdown& breakdown, const ScoringInputs& inputs,
                                 const CouplingInputs& coupling, const CascadeConfig& config);

std::string_view to_string(LayerCoverageMode mode) noexcept;
std::string_view to_string(AttackPairing pairing) noexcept;
LayerCoverageMode parse_layer_coverage_mode(std::string_view text);
AttackPairing parse_attack_pairing(std::string_view text);

}  // namespace riskmap
