#pragma once

#include "riskmap/cascade.hpp"
#include "riskmap/catalog.hpp"
#include "riskmap/scoring.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <tuple>
#include <vector>

namespace riskmap::testing {

inline std::string source_path(const std::string& relative) { return std::string(RISKMAP_SOURCE_DIR) + "/" + relative; }

struct Instance {
    Catalog catalog;
    PlatformAssessment assessment;
};

/// Random catalog + assessment with at least one applicable attack of
/// positive severity. `discrete` keeps every value on its published scale.
inline Instance random_instance(std::mt19937_64& rng, std::size_t max_attacks, std::size_t max_defenses, bool discrete) {
    std::uniform_int_distribution<std::size_t> attacks_n(1, max_attacks), defenses_n(1, max_defenses);
    std::uniform_int_distribution<std::size_t> layer_pick(0, kLayerCount - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::bernoulli_distribution coin(0.5), sparse(0.4);
    auto level = [&](auto const& levels) { return levels[std::uniform_int_distribution<std::size_t>(0, levels.size() - 1)(rng)]; };

    Instance inst;
    Catalog& c = inst.catalog;
    c.version = "random";
    PerLayer<int> attack_seq{}, defense_seq{};
    const std::size_t na = attacks_n(rng), nd = defenses_n(rng);
    for (std::size_t i = 0; i < na; ++i) {
        AttackVector a;
        a.layer = layer_from_ordinal(layer_pick(rng));
        a.id = std::string(layer_code(a.layer)) + "-A" + std::to_string(++attack_seq[ordinal(a.layer)]);
        a.name = a.id;
        a.likelihood = discrete ? level(kCoverageLevels) : unit(rng);
        a.impact = discrete ? level(kImpactLevels) : unit(rng);
        a.detectability = discrete ? 1.0 : std::max(1e-3, unit(rng));
        c.attacks.push_back(a);
    }
    for (std::size_t j = 0; j < nd; ++j) {
        DefenseMechanism d;
        d.layer = layer_from_ordinal(layer_pick(rng));
        d.id = std::string(layer_code(d.layer)) + "-D" + std::to_string(++defense_seq[ordinal(d.layer)]);
        d.name = d.id;
        c.defenses.push_back(d);
    }
    c.gamma.assign(na, std::vector<double>(nd, 0.0));
    for (auto& row : c.gamma) {
        for (double& g : row) {
            if (sparse(rng)) g = discrete ? level(kCoverageLevels) : unit(rng);
        }
    }

    PlatformAssessment& a = inst.assessment;
    a.platform = "random";
    for (const auto& atk : c.attacks) a.applicability[atk.id] = coin(rng) ? 1 : 0;
    for (const auto& d : c.defenses) a.implementation[d.id] = discrete ? level(kCoverageLevels) : unit(rng);
    // Guarantee a positive weight somewhere.
    auto& first = c.attacks.front();
    if (first.likelihood == 0.0) first.likelihood = 0.5;
    if (first.impact == 0.0) first.impact = 0.6;
    a.applicability[first.id] = 1;
    c.fingerprint = catalog_fingerprint(c);
    return inst;
}

inline CouplingInputs random_coupling(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::bernoulli_distribution zero(0.2);
    CouplingInputs in;
    for (std::size_t i = 0; i < kLayerCount; ++i) {
        for (std::size_t j = 0; j < kLayerCount; ++j) {
            in.structural[i][j] = zero(rng) ? 0.0 : unit(rng);
            in.evidence[i][j] = zero(rng) ? 0.0 : unit(rng);
            in.mitigation[i][j] = zero(rng) ? 0.0 : 0.5 * unit(rng);
        }
    }
    return in;
}

// ---- oracles ---------------------------------------------------------------

struct OracleScore {
    std::vector<double> omega_adjusted;
    std::vector<double> kappa;
    PerLayer<double> layer_scores{};
    double aggregate_percent = 0.0;
};

inline double direct_product_coverage(const std::vector<double>& eps) {
    double residual = 1.0;
    for (double e : eps) residual *= 1.0 - e;
    return 1.0 - residual;
}

/// Σ over nonempty subsets with alternating sign. Exponential; small rows only.
inline double inclusion_exclusion_coverage(const std::vector<double>& eps) {
    const std::size_t n = eps.size();
    double total = 0.0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        double term = 1.0;
        int bits = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (std::size_t{1} << j)) {
                term *= eps[j];
                ++bits;
            }
        }
        total += (bits % 2 ? 1.0 : -1.0) * term;
    }
    return total;
}

/// Applies overrides, then the closed form with plain products.
inline OracleScore oracle_score(const Catalog& c, const PlatformAssessment& a) {
    OracleScore s;
    double weight = 0.0, covered = 0.0;
    PerLayer<double> layer_covered{};
    for (std::size_t i = 0; i < c.attacks.size(); ++i) {
        const auto& atk = c.attacks[i];
        double lam = atk.likelihood, imp = atk.impact;
        if (auto it = a.overrides.find(atk.id); it != a.overrides.end()) {
            lam = it->second.likelihood.value_or(lam);
            imp = it->second.impact.value_or(imp);
        }
        const double w = a.applicability.at(atk.id) ? lam * imp : 0.0;
        std::vector<double> eps;
        PerLayer<std::vector<double>> eps_by_layer;
        for (std::size_t j = 0; j < c.defenses.size(); ++j) {
            const double e = c.gamma[i][j] * a.implementation.at(c.defenses[j].id);
            eps.push_back(e);
            eps_by_layer[ordinal(c.defenses[j].layer)].push_back(e);
        }
        const double k = direct_product_coverage(eps);
        s.omega_adjusted.push_back(w);
        s.kappa.push_back(k);
        weight += w;
        covered += w * k;
        for (std::size_t l = 0; l < kLayerCount; ++l) layer_covered[l] += w * direct_product_coverage(eps_by_layer[l]);
    }
    s.aggregate_percent = 100.0 * covered / weight;
    for (std::size_t l = 0; l < kLayerCount; ++l) s.layer_scores[l] = 5.0 * layer_covered[l] / weight;
    return s;
}

/// Every ordered triple of the 7 layers, filtered and sorted independently.
inline std::vector<CascadePath> triple_loop_paths(const LayerMatrix& d, double epsilon_hop, double min_prop) {
    std::vector<CascadePath> out;
    for (std::size_t i = 0; i < kLayerCount; ++i) {
        for (std::size_t j = 0; j < kLayerCount; ++j) {
            for (std::size_t k = 0; k < kLayerCount; ++k) {
                if (i == j || j == k || i == k) continue;
                if (d[i][j] < epsilon_hop || d[j][k] < epsilon_hop) continue;
                const double p = d[i][j] * d[j][k];
                if (p < min_prop) continue;
                out.push_back({{layer_from_ordinal(i), layer_from_ordinal(j), layer_from_ordinal(k)}, {d[i][j], d[j][k]}, p});
            }
        }
    }
    auto key = [](const CascadePath& p) {
        return std::make_tuple(-p.strength, std::string(layer_code(p.layers[0])), std::string(layer_code(p.layers[1])),
                               std::string(layer_code(p.layers[2])));
    };
    std::sort(out.begin(), out.end(), [&](const CascadePath& a, const CascadePath& b) { return key(a) < key(b); });
    return out;
}

}  // namespace riskmap::testing
