#include "cli.hpp"

#include "riskmap/errors.hpp"
#include "riskmap/report.hpp"
#include "riskmap/version.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace riskmap::cli {

namespace {

struct Options {
    std::string catalog_path;
    std::string assessment_path;
    std::string coupling_path;
    std::string overlay_path;
    std::string out_dir;
    std::string format = "json";
    bool allow_continuous = false;
    bool cumulative = false;
    bool no_mc = false;
    std::optional<std::uint64_t> seed;
    std::size_t iterations = McConfig{}.iterations;
    double noise = NoiseSpec{}.fraction;
    std::string noise_targets = "default";
    std::string noise_mode = "multiplicative";
    unsigned threads = 0;
    std::size_t top_k = CascadeConfig{}.top_k;
    double epsilon_hop = CascadeConfig{}.epsilon_hop;
    double min_prop = CascadeConfig{}.min_prop;
    std::string layer_coverage = "layer_score";
    std::string attack_pairing = "origin_layer";
    std::vector<std::string> proposals;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_inputs(CLI::App* cmd, Options& o, bool assessment_required, bool coupling_required) {
    cmd->add_option("--catalog", o.catalog_path, "Catalog JSON (default: the shipped catalog)");
    auto* a = cmd->add_option("--assessment", o.assessment_path, "Platform assessment JSON");
    if (assessment_required) a->required();
    auto* c = cmd->add_option("--coupling", o.coupling_path, "Inter-layer coupling JSON");
    if (coupling_required) c->required();
    cmd->add_flag("--allow-continuous", o.allow_continuous, "Accept values between the discrete levels");
}

void add_output(CLI::App* cmd, Options& o, std::vector<std::string> formats) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(std::move(formats)));
    cmd->add_option("--out-dir", o.out_dir, "Write artifacts into this directory instead of the output stream");
}

void add_cascade(CLI::App* cmd, Options& o) {
    cmd->add_option("--top-k", o.top_k, "Ranked cascades to keep")->check(CLI::PositiveNumber);
    cmd->add_option("--epsilon-hop", o.epsilon_hop, "Minimum strength of each hop")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--min-prop", o.min_prop, "Minimum two-hop path strength")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--layer-coverage", o.layer_coverage, "Per-layer coverage used in the defense gap")
        ->check(CLI::IsMember({"layer_score", "resident_attacks"}));
    cmd->add_option("--attack-pairing", o.attack_pairing, "Attacks paired with each path")
        ->check(CLI::IsMember({"origin_layer", "all_attacks"}));
}

void add_mc(CLI::App* cmd, Options& o) {
    cmd->add_option("--seed", o.seed, "RNG seed (fallback: RISKMAP_SEED, then 42)");
    cmd->add_option("--iterations", o.iterations, "Monte Carlo iterations")->check(CLI::PositiveNumber);
    cmd->add_option("--noise", o.noise, "Perturbation fraction")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--noise-targets", o.noise_targets,
                    "default, cascade, or a comma list of likelihood,impact,gamma,mu,attack_weight");
    cmd->add_option("--noise-mode", o.noise_mode, "Perturbation form")
        ->check(CLI::IsMember({"multiplicative", "additive"}));
    cmd->add_option("--threads", o.threads, "Worker threads (0: all cores); results do not depend on it");
}

struct Loaded {
    Catalog catalog;
    PlatformAssessment assessment;
    std::optional<CouplingInputs> coupling;
    CatalogOptions options;
};

Catalog load_catalog_input(const Options& o, const CatalogOptions& options) {
    return o.catalog_path.empty() ? default_catalog() : load_catalog_file(o.catalog_path, options);
}

Loaded load_inputs(const Options& o) {
    Loaded l;
    l.options.allow_continuous = o.allow_continuous;
    l.catalog = load_catalog_input(o, l.options);
    l.assessment = load_assessment_file(o.assessment_path);
    if (!o.coupling_path.empty()) l.coupling = load_coupling_file(o.coupling_path);
    return l;
}

std::uint64_t resolve_seed(const Options& o, const std::optional<std::string>& env) {
    if (o.seed) return *o.seed;
    if (env && !env->empty()) {
        std::uint64_t v = 0;
        const auto* end = env->data() + env->size();
        const auto [ptr, ec] = std::from_chars(env->data(), end, v);
        if (ec != std::errc{} || ptr != end) throw UsageError("RISKMAP_SEED is not an unsigned integer: '" + *env + "'");
        return v;
    }
    return kDefaultSeed;
}

ConfigEcho make_config(const Options& o, const std::optional<std::string>& seed_env) {
    ConfigEcho c;
    c.allow_continuous = o.allow_continuous;
    c.cascade.top_k = o.top_k;
    c.cascade.epsilon_hop = o.epsilon_hop;
    c.cascade.min_prop = o.min_prop;
    c.cascade.coverage_mode = parse_layer_coverage_mode(o.layer_coverage);
    c.cascade.pairing = parse_attack_pairing(o.attack_pairing);
    c.monte_carlo.iterations = o.iterations;
    c.monte_carlo.seed = resolve_seed(o, seed_env);
    c.monte_carlo.noise.fraction = o.noise;
    try {
        c.monte_carlo.noise.targets = parse_noise_targets(o.noise_targets);
    } catch (const UnsupportedConfig& e) {
        throw UsageError(std::string("--noise-targets: ") + e.what());
    }
    c.monte_carlo.noise.mode = parse_noise_mode(o.noise_mode);
    c.monte_carlo.threads = o.threads;
    c.cumulative = o.cumulative;
    return c;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << bytes;
    if (!f) throw IoError("failed writing " + path.string());
}

/// Named artifacts go to files under --out-dir, or concatenated to `out`.
void deliver(const Options& o, const std::vector<std::pair<std::string, std::string>>& artifacts, std::ostream& out) {
    if (!o.out_dir.empty()) {
        std::filesystem::create_directories(o.out_dir);
        for (const auto& [name, bytes] : artifacts) write_file(std::filesystem::path(o.out_dir) / name, bytes);
        return;
    }
    const bool label = artifacts.size() > 1;
    for (std::size_t i = 0; i < artifacts.size(); ++i) {
        if (label) out << (i ? "\n" : "") << "# " << artifacts[i].first << "\n";
        out << artifacts[i].second;
    }
}

RadarSeries radar_of(const AssessmentReport& r) { return {r.platform, r.breakdown.layer_scores}; }

std::vector<std::pair<std::string, std::string>> artifacts_for(const Options& o, const AssessmentReport& r,
                                                               const std::vector<std::string>& csv_tables,
                                                               const Loaded& inputs) {
    if (o.format == "json") return {{"report.json", emit_json(r) + "\n"}};
    if (o.format == "text") return {{"report.txt", emit_text(r)}};
    if (o.format == "svg") {
        std::optional<RadarSeries> overlay;
        if (!o.overlay_path.empty()) {
            const auto other = load_assessment_file(o.overlay_path);
            overlay = RadarSeries{other.platform, score_platform(inputs.catalog, other, inputs.options).layer_scores};
        }
        return {{"radar.svg", emit_radar_svg(radar_of(r), overlay)}};
    }
    const auto tables = emit_csv(r);
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& name : csv_tables) out.emplace_back(name, tables.at(name));
    return out;
}

enum class Sections { Score, Cascade, Mc, Full };

AssessmentReport compute(const Options& o, const Loaded& in, Sections sections, const ConfigEcho& config) {
    const ScoringInputs bound = bind_assessment(in.catalog, in.assessment, in.options);
    ReportParts parts;
    parts.catalog = &in.catalog;
    parts.assessment = &in.assessment;
    parts.coupling = in.coupling ? &*in.coupling : nullptr;
    parts.config = config;
    parts.breakdown = score(bound);

    const bool want_cascades = in.coupling && (sections == Sections::Cascade || sections == Sections::Full ||
                                               sections == Sections::Mc);
    if (want_cascades) parts.cascades = analyze_cascades(parts.breakdown, bound, *in.coupling, config.cascade);
    const bool want_mc = sections == Sections::Mc || (sections == Sections::Full && !o.no_mc);
    if (want_mc) {
        std::optional<CascadeSetup> setup;
        if (in.coupling) setup = CascadeSetup{*in.coupling, config.cascade};
        parts.mc = run_monte_carlo(bound, setup, config.monte_carlo);
    }
    if (sections == Sections::Mc) parts.cascades.reset();
    return build_report(parts);
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
    CatalogOptions options{o.allow_continuous};
    bool failed = false;
    auto report_violations = [&](const std::string& what, const ValidationReport& report) {
        for (const auto& v : report.violations) err << what << ": " << v.code << " at " << v.path << ": " << v.message << "\n";
        failed = failed || !report.ok();
    };

    std::optional<Catalog> catalog;
    try {
        catalog = load_catalog_input(o, options);
        out << "catalog ok: " << catalog->attacks.size() << " attacks, " << catalog->defenses.size()
            << " defenses, fingerprint " << catalog->fingerprint << "\n";
    } catch (const ValidationError& e) {
        report_violations("catalog", e.report());
    }
    if (!o.assessment_path.empty()) {
        const auto assessment = load_assessment_file(o.assessment_path);
        if (catalog) {
            const auto report = validate_assessment(*catalog, assessment, options);
            report_violations("assessment", report);
            if (report.ok()) out << "assessment ok: " << assessment.platform << "\n";
        } else {
            err << "assessment: not checked against an invalid catalog\n";
        }
    }
    if (!o.coupling_path.empty()) {
        try {
            const auto coupling = load_coupling_file(o.coupling_path);
            out << "coupling ok: fingerprint " << coupling_fingerprint(coupling) << "\n";
        } catch (const ValidationError& e) {
            report_violations("coupling", e.report());
        }
    }
    return failed ? kExitValidation : kExitOk;
}

std::vector<Proposal> parse_proposals(const std::vector<std::string>& specs) {
    std::vector<Proposal> out;
    for (const auto& s : specs) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--propose expects DEFENSE_ID=LEVEL, got '" + s + "'");
        Proposal p{s.substr(0, eq), 0.0};
        const std::string level = s.substr(eq + 1);
        const auto [ptr, ec] = std::from_chars(level.data(), level.data() + level.size(), p.level);
        if (ec != std::errc{} || ptr != level.data() + level.size()) {
            throw UsageError("--propose level is not a number: '" + s + "'");
        }
        out.push_back(std::move(p));
    }
    return out;
}

int cmd_whatif(const Options& o, std::ostream& out) {
    const Loaded in = load_inputs(o);
    auto proposals = parse_proposals(o.proposals);
    if (proposals.empty()) proposals = full_upgrade_proposals(in.catalog, in.assessment);
    const DeltaReport delta = whatif(in.catalog, in.assessment, proposals, o.cumulative, in.options);
    if (o.format == "json") {
        deliver(o, {{"whatif.json", canonical_dump(whatif_to_json(delta)) + "\n"}}, out);
    } else if (o.format == "csv") {
        deliver(o, {{"whatif.csv", whatif_csv(delta)}}, out);
    } else {
        deliver(o, {{"whatif.txt", whatif_text(delta)}}, out);
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& seed_env) {
    CLI::App app{"Layered security risk scoring for humanoid robot platforms", "riskmap"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    Options o;

    auto* validate = app.add_subcommand("validate", "Lint catalog, assessment and coupling inputs");
    add_inputs(validate, o, false, false);

    auto* score_cmd = app.add_subcommand("score", "Per-attack breakdown, layer scores and aggregate");
    add_inputs(score_cmd, o, true, false);
    add_output(score_cmd, o, {"json", "csv", "svg", "text"});
    score_cmd->add_option("--overlay", o.overlay_path, "Second assessment drawn on the radar (svg)");

    auto* cascade = app.add_subcommand("cascade", "Two-hop cascade paths and residual risk ranking");
    add_inputs(cascade, o, true, true);
    add_output(cascade, o, {"json", "csv", "text"});
    add_cascade(cascade, o);

    auto* mc = app.add_subcommand("mc", "Monte Carlo distribution summaries");
    add_inputs(mc, o, true, false);
    add_output(mc, o, {"json", "csv", "text"});
    add_mc(mc, o);
    add_cascade(mc, o);

    auto* report = app.add_subcommand("report", "Full assessment bundle");
    add_inputs(report, o, true, false);
    add_output(report, o, {"json", "csv", "svg", "text"});
    add_mc(report, o);
    add_cascade(report, o);
    report->add_option("--overlay", o.overlay_path, "Second assessment drawn on the radar (svg)");
    report->add_flag("--no-mc", o.no_mc, "Skip the Monte Carlo section");

    auto* whatif_cmd = app.add_subcommand("whatif", "Score gain of defense upgrades");
    add_inputs(whatif_cmd, o, true, false);
    add_output(whatif_cmd, o, {"json", "csv", "text"});
    whatif_cmd->add_option("--propose", o.proposals, "DEFENSE_ID=LEVEL (repeatable; default: raise every defense to 1)");
    whatif_cmd->add_flag("--cumulative", o.cumulative, "Apply proposals in order on top of one another");

    std::vector<std::string> argv_storage{"riskmap"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kExitOk;
    } catch (const CLI::Success&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::RequiredError) ||
            e.get_exit_code() == static_cast<int>(CLI::ExitCodes::ValidationError)) {
            err << "run 'riskmap " << (app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name() + " ")
                << "--help' for options\n";
        }
        return kExitUsage;
    }

    try {
        const ConfigEcho config = make_config(o, seed_env);
        if (validate->parsed()) return cmd_validate(o, out, err);
        if (whatif_cmd->parsed()) return cmd_whatif(o, out);

        const Loaded in = load_inputs(o);
        if (score_cmd->parsed()) {
            const auto r = compute(o, in, Sections::Score, config);
            deliver(o, artifacts_for(o, r, {"scores.csv", "layers.csv"}, in), out);
        } else if (cascade->parsed()) {
            const auto r = compute(o, in, Sections::Cascade, config);
            deliver(o, artifacts_for(o, r, {"cascades.csv"}, in), out);
        } else if (mc->parsed()) {
            const auto r = compute(o, in, Sections::Mc, config);
            deliver(o, artifacts_for(o, r, {"mc.csv"}, in), out);
        } else if (report->parsed()) {
            const auto r = compute(o, in, Sections::Full, config);
            if (!o.out_dir.empty() && o.format == "json") {
                std::vector<std::pair<std::string, std::string>> bundle{{"report.json", emit_json(r) + "\n"},
                                                                        {"report.txt", emit_text(r)}};
                for (auto& [name, bytes] : emit_csv(r)) bundle.emplace_back(name, bytes);
                Options svg = o;
                svg.format = "svg";
                bundle.push_back(artifacts_for(svg, r, {}, in).front());
                deliver(o, bundle, out);
            } else {
                deliver(o, artifacts_for(o, r, {"scores.csv", "layers.csv", "cascades.csv", "mc.csv"}, in), out);
            }
        }
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "validation failed: " << e.what() << "\n";
        return kExitValidation;
    } catch (const BindError& e) {
        err << "assessment does not match catalog: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NoApplicableThreats& e) {
        err << "computation error: " << e.what() << "\n";
        return kExitComputation;
    } catch (const Error& e) {
        err << "computation error: " << e.what() << "\n";
        return kExitComputation;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace riskmap::cli
