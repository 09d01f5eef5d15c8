#include "riskmap/scoring.hpp"

#include "riskmap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace riskmap {

namespace {

bool in_unit_interval(double v) noexcept { return v >= 0.0 && v <= 1.0; }

void require_unit(double v, const char* what) {
    if (!in_unit_interval(v)) throw DomainError(std::string(what) + " " + format_number(v) + " outside [0,1]");
}

// Σ ω̃_i κ_i / Σ ω̃_i, on [0,1].
template <typename KappaAt>
double weighted_fraction(std::span<const double> omega_adjusted, KappaAt kappa_at) {
    double weight = 0.0;
    double covered = 0.0;
    for (std::size_t i = 0; i < omega_adjusted.size(); ++i) {
        weight += omega_adjusted[i];
        covered += omega_adjusted[i] * kappa_at(i);
    }
    if (!(weight > 0.0)) throw NoApplicableThreats();
    return covered / weight;
}

// The aggregate goes through the 0–5 layer scale so that a layer whose
// restricted coverage equals the full coverage satisfies LayerScore×20 ==
// aggregate bit-for-bit.
double to_layer_scale(double fraction) { return fraction * 5.0; }
double to_percent(double fraction) { return to_layer_scale(fraction) * 20.0; }

}  // namespace

double severity(double likelihood, double impact) {
    require_unit(likelihood, "likelihood");
    require_unit(impact, "impact");
    return likelihood * impact;
}

std::vector<double> adjusted_severity(std::span<const double> omega, std::span<const int> applicability) {
    if (omega.size() != applicability.size()) {
        throw LengthMismatch("adjusted_severity: " + std::to_string(omega.size()) + " severities vs " +
                             std::to_string(applicability.size()) + " applicability flags");
    }
    std::vector<double> out(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) out[i] = applicability[i] != 0 ? omega[i] : 0.0;
    return out;
}

Matrix effective_coverage(const Matrix& gamma, std::span<const double> implementation) {
    if (implementation.size() != gamma.cols()) {
        throw LengthMismatch("effective_coverage: " + std::to_string(implementation.size()) +
                             " implementation levels vs " + std::to_string(gamma.cols()) + " defense columns");
    }
    Matrix eps(gamma.rows(), gamma.cols());
    for (std::size_t i = 0; i < gamma.rows(); ++i) {
        for (std::size_t j = 0; j < gamma.cols(); ++j) eps(i, j) = gamma(i, j) * implementation[j];
    }
    return eps;
}

double total_coverage(std::span<const double> epsilon_row) {
    double log_residual = 0.0;
    bool blocked = false;
    for (double e : epsilon_row) {
        require_unit(e, "effective coverage");
        if (e == 1.0) blocked = true;
        log_residual += std::log1p(-e);
    }
    if (blocked) return 1.0;
    if (log_residual == 0.0) return 0.0;
    return -std::expm1(log_residual);
}

double riskmap_score(std::span<const double> omega_adjusted, std::span<const double> kappa) {
    if (omega_adjusted.size() != kappa.size()) {
        throw LengthMismatch("riskmap_score: " + std::to_string(omega_adjusted.size()) + " weights vs " +
                             std::to_string(kappa.size()) + " coverages");
    }
    return to_percent(weighted_fraction(omega_adjusted, [&](std::size_t i) { return kappa[i]; }));
}

PerLayer<double> layer_scores(std::span<const double> omega_adjusted, const Matrix& epsilon,
                              std::span<const LayerId> defense_layers) {
    if (omega_adjusted.size() != epsilon.rows()) {
        throw LengthMismatch("layer_scores: " + std::to_string(omega_adjusted.size()) + " weights vs " +
                             std::to_string(epsilon.rows()) + " coverage rows");
    }
    if (defense_layers.size() != epsilon.cols()) {
        throw LengthMismatch("layer_scores: partition covers " + std::to_string(defense_layers.size()) +
                             " of " + std::to_string(epsilon.cols()) + " defense columns");
    }
    PerLayer<std::vector<std::size_t>> columns;
    for (std::size_t j = 0; j < defense_layers.size(); ++j) columns[ordinal(defense_layers[j])].push_back(j);

    PerLayer<double> scores{};
    std::vector<double> restricted;
    for (std::size_t l = 0; l < kLayerCount; ++l) {
        const auto& cols = columns[l];
        scores[l] = to_layer_scale(weighted_fraction(omega_adjusted, [&](std::size_t i) {
            restricted.clear();
            for (std::size_t j : cols) restricted.push_back(epsilon(i, j));
            return total_coverage(restricted);
        }));
    }
    return scores;
}

ValidationReport validate_assessment(const Catalog& catalog, const PlatformAssessment& assessment,
                                     const CatalogOptions& options) {
    ValidationReport report;
    auto& out = report.violations;

    std::set<std::string> attack_ids;
    for (const auto& a : catalog.attacks) {
        attack_ids.insert(a.id);
        if (!assessment.applicability.count(a.id)) {
            out.push_back({"MISSING_ID", "applicability." + a.id, "no applicability flag for attack " + a.id});
        }
    }
    for (const auto& [id, flag] : assessment.applicability) {
        if (!attack_ids.count(id)) out.push_back({"EXTRA_ID", "applicability." + id, "unknown attack id " + id});
        if (flag != 0 && flag != 1) out.push_back({"Z_VALUE", "applicability." + id, "applicability must be 0 or 1"});
    }

    std::set<std::string> defense_ids;
    for (const auto& d : catalog.defenses) {
        defense_ids.insert(d.id);
        if (!assessment.implementation.count(d.id)) {
            out.push_back({"MISSING_ID", "implementation." + d.id, "no implementation level for defense " + d.id});
        }
    }
    for (const auto& [id, level] : assessment.implementation) {
        const std::string path = "implementation." + id;
        if (!defense_ids.count(id)) out.push_back({"EXTRA_ID", path, "unknown defense id " + id});
        if (!in_unit_interval(level)) {
            out.push_back({"MU_RANGE", path, "implementation " + format_number(level) + " outside [0,1]"});
        } else if (!options.allow_continuous && !is_coverage_level(level)) {
            out.push_back({"MU_LEVEL", path, "implementation " + format_number(level) + " is not one of 0,0.25,0.5,0.75,1"});
        }
    }

    for (const auto& [id, o] : assessment.overrides) {
        const std::string path = "overrides." + id;
        if (!attack_ids.count(id)) out.push_back({"EXTRA_ID", path, "override for unknown attack id " + id});
        if (o.likelihood && !in_unit_interval(*o.likelihood)) {
            out.push_back({"LIKELIHOOD_RANGE", path + ".likelihood", "likelihood " + format_number(*o.likelihood) + " outside [0,1]"});
        }
        if (o.impact) {
            if (!in_unit_interval(*o.impact)) {
                out.push_back({"IMPACT_RANGE", path + ".impact", "impact " + format_number(*o.impact) + " outside [0,1]"});
            } else if (!options.allow_continuous && !is_impact_level(*o.impact)) {
                out.push_back({"IMPACT_LEVEL", path + ".impact", "impact " + format_number(*o.impact) + " is not one of 0,0.2,0.4,0.6,0.8,1"});
            }
        }
    }
    return report;
}

ScoringInputs bind_assessment(const Catalog& catalog, const PlatformAssessment& assessment,
                              const CatalogOptions& options) {
    if (catalog.gamma.size() != catalog.attacks.size()) throw LengthMismatch("catalog gamma rows do not match attacks");
    for (const auto& row : catalog.gamma) {
        if (row.size() != catalog.defenses.size()) throw LengthMismatch("catalog gamma columns do not match defenses");
    }

    const ValidationReport report = validate_assessment(catalog, assessment, options);
    if (!report.ok()) {
        std::vector<std::string> missing, extra, invalid;
        for (const auto& v : report.violations) {
            const std::string id = v.path.substr(v.path.find('.') + 1);
            if (v.code == "MISSING_ID") {
                missing.push_back(id);
            } else if (v.code == "EXTRA_ID") {
                extra.push_back(id);
            } else {
                invalid.push_back(v.path + ": " + v.message);
            }
        }
        throw BindError(std::move(missing), std::move(extra), std::move(invalid));
    }

    ScoringInputs in;
    const std::size_t n = catalog.attacks.size();
    const std::size_t m = catalog.defenses.size();
    in.catalog_fingerprint = catalog.fingerprint;
    in.gamma = Matrix(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = catalog.attacks[i];
        in.attack_ids.push_back(a.id);
        in.attack_layers.push_back(a.layer);
        double lambda = a.likelihood;
        double iota = a.impact;
        if (auto it = assessment.overrides.find(a.id); it != assessment.overrides.end()) {
            lambda = it->second.likelihood.value_or(lambda);
            iota = it->second.impact.value_or(iota);
        }
        in.likelihood.push_back(lambda);
        in.impact.push_back(iota);
        in.detectability.push_back(a.detectability);
        in.applicability.push_back(assessment.applicability.at(a.id));
        for (std::size_t j = 0; j < m; ++j) in.gamma(i, j) = catalog.gamma[i][j];
    }
    for (const auto& d : catalog.defenses) {
        in.defense_ids.push_back(d.id);
        in.defense_layers.push_back(d.layer);
        in.implementation.push_back(assessment.implementation.at(d.id));
    }
    return in;
}

ScoreBreakdown score(const ScoringInputs& in) {
    const std::size_t n = in.attack_count();
    if (in.likelihood.size() != n || in.impact.size() != n || in.applicability.size() != n ||
        in.attack_layers.size() != n || in.gamma.rows() != n) {
        throw LengthMismatch("score: attack-aligned inputs disagree in length");
    }
    if (in.defense_layers.size() != in.defense_count() || in.gamma.cols() != in.defense_count()) {
        throw LengthMismatch("score: defense-aligned inputs disagree in length");
    }

    ScoreBreakdown b;
    b.attack_ids = in.attack_ids;
    b.attack_layers = in.attack_layers;
    b.defense_ids = in.defense_ids;
    b.defense_layers = in.defense_layers;
    b.catalog_fingerprint = in.catalog_fingerprint;

    b.omega.resize(n);
    for (std::size_t i = 0; i < n; ++i) b.omega[i] = severity(in.likelihood[i], in.impact[i]);
    b.omega_adjusted = adjusted_severity(b.omega, in.applicability);
    b.epsilon = effective_coverage(in.gamma, in.implementation);
    b.kappa.resize(n);
    for (std::size_t i = 0; i < n; ++i) b.kappa[i] = total_coverage(b.epsilon.row(i));
    b.aggregate_percent = riskmap_score(b.omega_adjusted, b.kappa);
    b.layer_scores = layer_scores(b.omega_adjusted, b.epsilon, b.defense_layers);
    return b;
}

ScoreBreakdown score_platform(const Catalog& catalog, const PlatformAssessment& assessment,
                              const CatalogOptions& options) {
    return score(bind_assessment(catalog, assessment, options));
}

}  // namespace riskmap
