#pragma once

#include "riskmap/cascade.hpp"
#include "riskmap/scoring.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace riskmap {

enum class NoiseTarget : unsigned {
    Likelihood = 1u << 0,
    Impact = 1u << 1,
    Gamma = 1u << 2,
    Mu = 1u << 3,
    AttackWeight = 1u << 4,
};

enum class NoiseMode {
    Multiplicative,  // v · (1 + f·u)
    Additive,        // v + f·u
};

inline constexpr unsigned kDefaultNoiseTargets =
    static_cast<unsigned>(NoiseTarget::Likelihood) | static_cast<unsigned>(NoiseTarget::Impact) |
    static_cast<unsigned>(NoiseTarget::Gamma) | static_cast<unsigned>(NoiseTarget::Mu);

/// γ, μ and w_a only.
inline constexpr unsigned kCascadeNoiseTargets = static_cast<unsigned>(NoiseTarget::Gamma) |
                                                 static_cast<unsigned>(NoiseTarget::Mu) |
                                                 static_cast<unsigned>(NoiseTarget::AttackWeight);

struct NoiseSpec {
    double fraction = 0.25;
    unsigned targets = kDefaultNoiseTargets;
    NoiseMode mode = NoiseMode::Multiplicative;

    bool has(NoiseTarget t) const noexcept { return (targets & static_cast<unsigned>(t)) != 0; }
    bool operator==(const NoiseSpec&) const = default;
};

/// Seed used when neither a flag nor RISKMAP_SEED provides one.
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Identifier of the counter-based generator behind uniform_draw(); echoed in reports.
inline constexpr std::string_view kRngName = "splitmix64-counter/v1";

struct McConfig {
    std::size_t iterations = 1000;
    std::uint64_t seed = kDefaultSeed;
    NoiseSpec noise;
    unsigned threads = 0;  // 0 = hardware concurrency; never affects results

    bool operator==(const McConfig&) const = default;
};

struct DistributionSummary {
    double mean = 0.0;
    double std_dev = 0.0;  // population
    double median = 0.0;
    double p5 = 0.0;
    double p95 = 0.0;
    std::size_t iterations = 0;
    double point_estimate = 0.0;

    bool operator==(const DistributionSummary&) const = default;
};

struct MonteCarloResult {
    std::map<std::string, DistributionSummary> metrics;
    std::string catalog_fingerprint;

    bool operator==(const MonteCarloResult&) const = default;
};

struct CascadeSetup {
    CouplingInputs coupling;
    CascadeConfig config;
};

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Uniform draw on [−1, 1) keyed by (seed, iteration, input index). Stateless,
/// so any iteration can be evaluated on any thread in any order.
double uniform_draw(std::uint64_t seed, std::uint64_t iteration, std::uint64_t index) noexcept;

/// clip_[0,1](value · (1 + fraction·u)), or the additive variant.
double perturb(double value, double fraction, double u, NoiseMode mode = NoiseMode::Multiplicative) noexcept;

/// Linear interpolation between closest ranks on an ascending sample.
double percentile(std::span<const double> sorted, double q);

DistributionSummary summarize(std::vector<double> samples, double point_estimate);

/// Stream indices of each perturbed input, laid out per target so enabling one
/// target never shifts another's draws.
struct NoiseLayout {
    std::size_t attacks = 0;
    std::size_t defenses = 0;

    std::uint64_t likelihood(std::size_t i) const noexcept { return i; }
    std::uint64_t impact(std::size_t i) const noexcept { return attacks + i; }
    std::uint64_t gamma(std::size_t i, std::size_t j) const noexcept { return 2 * attacks + i * defenses + j; }
    std::uint64_t mu(std::size_t j) const noexcept { return 2 * attacks + attacks * defenses + j; }
    std::uint64_t attack_weight(std::size_t i) const noexcept {
        return 2 * attacks + attacks * defenses + defenses + i;
    }
};

/// Applies one iteration's noise to a copy of the baseline inputs.
ScoringInputs perturb_inputs(const ScoringInputs& base, const NoiseSpec& noise, std::uint64_t seed,
                             std::uint64_t iteration);

/// Metric names: "aggregate_percent", "layer_score.<CODE>", and for each
/// baseline top-k cascade "crr.<PATH>.<ATTACK>".
MonteCarloResult run_monte_carlo(const ScoringInputs& inputs, const std::optional<CascadeSetup>& cascade,
                                 const McConfig& config);

std::string noise_targets_to_string(unsigned targets);
unsigned parse_noise_targets(std::string_view csv);
std::string_view to_string(NoiseMode mode) noexcept;
NoiseMode parse_noise_mode(std::string_view text);

}  // namespace riskmap
