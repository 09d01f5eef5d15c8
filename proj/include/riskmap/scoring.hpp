#pragma once

#include "riskmap/assessment.hpp"
#include "riskmap/catalog.hpp"
#include "riskmap/layer.hpp"
#include "riskmap/matrix.hpp"

#include <span>
#include <string>
#include <vector>

namespace riskmap {

/// Everything the closed-form pipeline needs, aligned to catalog order.
///
/// Produced by bind_assessment(); the Monte Carlo driver perturbs a copy of
/// it, which is why entries here are only required to lie in [0,1] rather
/// than on the discrete scales.
struct ScoringInputs {
    std::vector<std::string> attack_ids;
    std::vector<LayerId> attack_layers;
    std::vector<std::string> defense_ids;
    std::vector<LayerId> defense_layers;

    std::vector<double> likelihood;   // λ, overrides already applied
    std::vector<double> impact;       // ι, overrides already applied
    std::vector<double> detectability;
    std::vector<int> applicability;   // Z
    Matrix gamma;                     // Γ, attacks × defenses
    std::vector<double> implementation;  // μ

    std::string catalog_fingerprint;

    std::size_t attack_count() const noexcept { return attack_ids.size(); }
    std::size_t defense_count() const noexcept { return defense_ids.size(); }
};

struct ScoreBreakdown {
    std::vector<std::string> attack_ids;
    std::vector<LayerId> attack_layers;
    std::vector<std::string> defense_ids;
    std::vector<LayerId> defense_layers;

    std::vector<double> omega;           // ω_i = λ_i ι_i
    std::vector<double> omega_adjusted;  // ω̃_i = Z_i ω_i
    Matrix epsilon;                      // ε_ij = γ_ij μ_j
    std::vector<double> kappa;           // κ_i = 1 − Π_j (1 − ε_ij)
    double aggregate_percent = 0.0;
    PerLayer<double> layer_scores{};     // 0–5

    std::string catalog_fingerprint;

    bool operator==(const ScoreBreakdown&) const = default;
};

double severity(double likelihood, double impact);
std::vector<double> adjusted_severity(std::span<const double> omega, std::span<const int> applicability);
Matrix effective_coverage(const Matrix& gamma, std::span<const double> implementation);

/// 1 − Π(1 − ε). Uses summed log1p terms unless some factor is exactly zero.
double total_coverage(std::span<const double> epsilon_row);

/// Severity-weighted mean coverage as a percentage. Throws NoApplicableThreats
/// when the severity weights sum to zero.
double riskmap_score(std::span<const double> omega_adjusted, std::span<const double> kappa);

/// Per-layer diagnostic on 0–5: the aggregate restricted to the defenses
/// resident in each layer. `defense_layers[j]` is the layer of column j.
PerLayer<double> layer_scores(std::span<const double> omega_adjusted, const Matrix& epsilon,
                              std::span<const LayerId> defense_layers);

/// Aligns an assessment to the catalog. Throws BindError listing every
/// missing id, extra id and out-of-scale value.
ScoringInputs bind_assessment(const Catalog& catalog, const PlatformAssessment& assessment,
                              const CatalogOptions& options = {});

/// Non-throwing counterpart of the checks bind_assessment performs.
ValidationReport validate_assessment(const Catalog& catalog, const PlatformAssessment& assessment,
                                     const CatalogOptions& options = {});

ScoreBreakdown score(const ScoringInputs& inputs);
ScoreBreakdown score_platform(const Catalog& catalog, const PlatformAssessment& assessment,
                              const CatalogOptions& options = {});

}  // namespace riskmap
