#include "riskmap/uncertainty.hpp"

#include "riskmap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace riskmap {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double uniform_draw(std::uint64_t seed, std::uint64_t iteration, std::uint64_t index) noexcept {
    const std::uint64_t bits = splitmix64(splitmix64(splitmix64(seed) ^ iteration) ^ index);
    const double unit = static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0,1)
    return 2.0 * unit - 1.0;
}

double perturb(double value, double fraction, double u, NoiseMode mode) noexcept {
    const double noisy = mode == NoiseMode::Multiplicative ? value * (1.0 + fraction * u) : value + fraction * u;
    return std::clamp(noisy, 0.0, 1.0);
}

double percentile(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw EmptySample();
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("percentile: q must lie in [0,1]");
    const double h = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    const double v = sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
    return std::clamp(v, sorted[lo], sorted[lo + 1]);
}

DistributionSummary summarize(std::vector<double> samples, double point_estimate) {
    if (samples.empty()) throw EmptySample();
    const auto n = static_cast<double>(samples.size());
    // Shifted by the first sample so a constant sample reproduces itself exactly.
    const double shift = samples.front();
    double dev = 0.0;
    for (double x : samples) dev += x - shift;
    const double mean = shift + dev / n;
    double sq = 0.0;
    for (double x : samples) sq += (x - mean) * (x - mean);

    std::sort(samples.begin(), samples.end());
    DistributionSummary s;
    s.mean = mean;
    s.std_dev = std::sqrt(sq / n);
    s.median = percentile(samples, 0.5);
    s.p5 = percentile(samples, 0.05);
    s.p95 = percentile(samples, 0.95);
    s.iterations = samples.size();
    s.point_estimate = point_estimate;
    return s;
}

ScoringInputs perturb_inputs(const ScoringInputs& base, const NoiseSpec& noise, std::uint64_t seed,
                             std::uint64_t iteration) {
    ScoringInputs in = base;
    const NoiseLayout layout{base.attack_count(), base.defense_count()};
    auto draw = [&](std::uint64_t index) { return uniform_draw(seed, iteration, index); };
    for (std::size_t i = 0; i < in.attack_count(); ++i) {
        if (noise.has(NoiseTarget::Likelihood)) {
            in.likelihood[i] = perturb(in.likelihood[i], noise.fraction, draw(layout.likelihood(i)), noise.mode);
        }
        if (noise.has(NoiseTarget::Impact)) {
            in.impact[i] = perturb(in.impact[i], noise.fraction, draw(layout.impact(i)), noise.mode);
        }
    }
    if (noise.has(NoiseTarget::Gamma)) {
        for (std::size_t i = 0; i < in.gamma.rows(); ++i) {
            for (std::size_t j = 0; j < in.gamma.cols(); ++j) {
                in.gamma(i, j) = perturb(in.gamma(i, j), noise.fraction, draw(layout.gamma(i, j)), noise.mode);
            }
        }
    }
    if (noise.has(NoiseTarget::Mu)) {
        for (std::size_t j = 0; j < in.defense_count(); ++j) {
            in.implementation[j] = perturb(in.implementation[j], noise.fraction, draw(layout.mu(j)), noise.mode);
        }
    }
    return in;
}

namespace {

struct TrackedCascade {
    CascadeRisk baseline;
    std::size_t attack_index = 0;
};

struct IterationValues {
    double aggregate = 0.0;
    PerLayer<double> layers{};
    std::vector<double> crr;
};

IterationValues evaluate(const ScoringInputs& inputs, const std::optional<CascadeSetup>& cascade,
                         const std::vector<TrackedCascade>& tracked, const NoiseSpec& noise, std::uint64_t seed,
                         std::uint64_t iteration) {
    const ScoringInputs noisy = perturb_inputs(inputs, noise, seed, iteration);
    IterationValues v;
    ScoreBreakdown b;
    try {
        b = score(noisy);
    } catch (const NoApplicableThreats&) {
        // Only reachable in additive mode when every severity clips to zero:
        // nothing is weighted, so nothing is covered.
        v.crr.assign(tracked.size(), 0.0);
        return v;
    }
    v.aggregate = b.aggregate_percent;
    v.layers = b.layer_scores;
    if (cascade) {
        const auto coverage = layer_coverage(b, cascade->config.coverage_mode);
        const NoiseLayout layout{inputs.attack_count(), inputs.defense_count()};
        for (const auto& t : tracked) {
            double w = b.omega_adjusted[t.attack_index] * noisy.detectability[t.attack_index];
            if (noise.has(NoiseTarget::AttackWeight)) {
                w = perturb(w, noise.fraction, uniform_draw(seed, iteration, layout.attack_weight(t.attack_index)),
                            noise.mode);
            }
            v.crr.push_back(cascade_residual_risk(t.baseline.path, t.baseline.attack_id, w,
                                                  defense_gap(coverage, t.baseline.path))
                                .crr);
        }
    }
    return v;
}

std::string crr_metric_name(const CascadeRisk& r) { return "crr." + r.path.label() + "." + r.attack_id; }

}  // namespace

MonteCarloResult run_monte_carlo(const ScoringInputs& inputs, const std::optional<CascadeSetup>& cascade,
                                 const McConfig& config) {
    if (config.iterations < 1) throw DomainError("monte carlo: iterations must be >= 1");
    if (!(config.noise.fraction >= 0.0 && config.noise.fraction < 1.0)) {
        throw DomainError("monte carlo: noise fraction must lie in [0,1)");
    }

    // Baseline first: a failing noise-free score is the caller's error.
    const ScoreBreakdown baseline = score(inputs);
    std::vector<TrackedCascade> tracked;
    if (cascade) {
        const CascadeAnalysis analysis = analyze_cascades(baseline, inputs, cascade->coupling, cascade->config);
        for (const auto& r : analysis.ranked) {
            const auto it = std::find(inputs.attack_ids.begin(), inputs.attack_ids.end(), r.attack_id);
            tracked.push_back({r, static_cast<std::size_t>(it - inputs.attack_ids.begin())});
        }
    }

    const std::size_t n = config.iterations;
    std::vector<IterationValues> results(n);
    unsigned workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));

    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&](unsigned worker) {
        try {
            for (std::size_t t = worker; t < n; t += workers) {
                results[t] = evaluate(inputs, cascade, tracked, config.noise, config.seed, t);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    if (failure) std::rethrow_exception(failure);

    MonteCarloResult out;
    out.catalog_fingerprint = inputs.catalog_fingerprint;
    std::vector<double> samples(n);

    for (std::size_t t = 0; t < n; ++t) samples[t] = results[t].aggregate;
    out.metrics.emplace("aggregate_percent", summarize(samples, baseline.aggregate_percent));
    for (std::size_t l = 0; l < kLayerCount; ++l) {
        for (std::size_t t = 0; t < n; ++t) samples[t] = results[t].layers[l];
        out.metrics.emplace("layer_score." + std::string(layer_code(layer_from_ordinal(l))),
                            summarize(samples, baseline.layer_scores[l]));
    }
    for (std::size_t c = 0; c < tracked.size(); ++c) {
        for (std::size_t t = 0; t < n; ++t) samples[t] = results[t].crr[c];
        out.metrics.emplace(crr_metric_name(tracked[c].baseline), summarize(samples, tracked[c].baseline.crr));
    }
    return out;
}

std::string noise_targets_to_string(unsigned targets) {
    static constexpr std::pair<NoiseTarget, std::string_view> kNames[] = {
        {NoiseTarget::Likelihood, "likelihood"}, {NoiseTarget::Impact, "impact"},
        {NoiseTarget::Gamma, "gamma"},           {NoiseTarget::Mu, "mu"},
        {NoiseTarget::AttackWeight, "attack_weight"}};
    std::string out;
    for (const auto& [target, name] : kNames) {
        if (targets & static_cast<unsigned>(target)) {
            if (!out.empty()) out += ",";
            out += name;
        }
    }
    return out;
}

unsigned parse_noise_targets(std::string_view csv) {
    if (csv == "default") return kDefaultNoiseTargets;
    if (csv == "cascade") return kCascadeNoiseTargets;
    unsigned targets = 0;
    while (!csv.empty()) {
        const auto comma = csv.find(',');
        const std::string_view item = csv.substr(0, comma);
        if (item == "likelihood") {
            targets |= static_cast<unsigned>(NoiseTarget::Likelihood);
        } else if (item == "impact") {
            targets |= static_cast<unsigned>(NoiseTarget::Impact);
        } else if (item == "gamma") {
            targets |= static_cast<unsigned>(NoiseTarget::Gamma);
        } else if (item == "mu") {
            targets |= static_cast<unsigned>(NoiseTarget::Mu);
        } else if (item == "attack_weight") {
            targets |= static_cast<unsigned>(NoiseTarget::AttackWeight);
        } else if (!item.empty()) {
            throw UnsupportedConfig("unknown noise target '" + std::string(item) + "'");
        }
        if (comma == std::string_view::npos) break;
        csv.remove_prefix(comma + 1);
    }
    return targets;
}

std::string_view to_string(NoiseMode mode) noexcept {
    return mode == NoiseMode::Multiplicative ? "multiplicative" : "additive";
}

NoiseMode parse_noise_mode(std::string_view text) {
    if (text == "multiplicative") return NoiseMode::Multiplicative;
    if (text == "additive") return NoiseMode::Additive;
    throw UnsupportedConfig("unknown noise mode '" + std::string(text) + "'");
}

}  // namespace riskmap
