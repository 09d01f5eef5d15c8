#include "doctest.h"
#include "test_support.hpp"

#include "riskmap/assessment.hpp"
#include "riskmap/errors.hpp"

using namespace riskmap;
using namespace riskmap::testing;

namespace {

CouplingInputs uniform(double s, double e, double m) {
    CouplingInputs in;
    for (auto* mat : {&in.structural, &in.evidence, &in.mitigation}) {
        const double v = mat == &in.structural ? s : mat == &in.evidence ? e : m;
        for (auto& row : *mat) row.fill(v);
    }
    return in;
}

LayerMatrix off_diagonal(double v) {
    LayerMatrix d{};
    for (std::size_t i = 0; i < kLayerCount; ++i) {
        for (std::size_t j = 0; j < kLayerCount; ++j) d[i][j] = i == j ? 1.0 : v;
    }
    return d;
}

CascadePath path(LayerId a, LayerId b, LayerId c, double p) { return {{a, b, c}, {p, 1.0}, p}; }

}  // namespace

TEST_CASE("coupling matrix construction") {
    auto d = coupling_matrix(uniform(0.5, 0.5, 0.0));
    for (std::size_t i = 0; i < kLayerCount; ++i) {
        for (std::size_t j = 0; j < kLayerCount; ++j) CHECK(d[i][j] == doctest::Approx(i == j ? 1.0 : 0.5).epsilon(1e-15));
    }
    d = coupling_matrix(uniform(1.0, 0.5, 0.2));
    CHECK(d[0][1] == doctest::Approx(0.64).epsilon(1e-15));
    auto in = uniform(1.0, 1.0, 0.0);
    in.mitigation[2][3] = 1.0;
    CHECK(coupling_matrix(in)[2][3] == 0.0);
    CHECK(coupling_matrix(in)[3][3] == 1.0);

    in.alpha = 0.7;
    CHECK(validate_coupling(in).has("ALPHA_BETA_SUM"));
    CHECK_THROWS_AS(coupling_matrix(in), DomainError);
    in = uniform(1.2, 0.0, 0.0);
    CHECK(validate_coupling(in).has("MATRIX_RANGE"));
}

TEST_CASE("coupling JSON defaults and round-trip") {
    const auto c = load_coupling_file(source_path("data/fixtures/digit.coupling.json"));
    Json j = coupling_to_json(c);
    j.erase("alpha");
    j.erase("beta");
    const auto back = coupling_from_json(j);
    CHECK(back.alpha == 0.6);
    CHECK(back.beta == 0.4);
    CHECK(coupling_fingerprint(coupling_from_json(coupling_to_json(c))) == coupling_fingerprint(c));
    j["S"].erase(j["S"].begin());
    CHECK_THROWS_AS(coupling_from_json(j), ParseError);
}

TEST_CASE("two-hop enumeration gates") {
    LayerMatrix d = off_diagonal(0.0);
    d[0][1] = 0.5;
    d[1][2] = 0.4;
    const auto paths = enumerate_two_hop_paths(d, {});
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].label() == "P>SP>DP");
    CHECK(paths[0].strength == doctest::Approx(0.2).epsilon(1e-15));

    CHECK(enumerate_two_hop_paths(off_diagonal(0.29), {}).empty());
    // 0.31² < 0.1: every hop passes, no path does.
    CHECK(enumerate_two_hop_paths(off_diagonal(0.31), {}).empty());
    CHECK(enumerate_two_hop_paths(off_diagonal(0.4), {}).size() == 7 * 6 * 5);

    CascadeConfig loops;
    loops.require_distinct_endpoints = false;
    CHECK(enumerate_two_hop_paths(off_diagonal(0.4), loops).size() == 7 * 6 * 6);

    CascadeConfig three;
    three.hops = 3;
    CHECK_THROWS_AS(enumerate_two_hop_paths(d, three), UnsupportedConfig);
    CascadeConfig bad;
    bad.min_prop = 1.5;
    CHECK_THROWS_AS(enumerate_two_hop_paths(d, bad), DomainError);
}

TEST_CASE("equal strengths fall back to code order") {
    const auto paths = enumerate_two_hop_paths(off_diagonal(0.5), {});
    for (std::size_t i = 1; i < paths.size(); ++i) {
        const auto a = std::make_tuple(layer_code(paths[i - 1].layers[0]), layer_code(paths[i - 1].layers[1]),
                                       layer_code(paths[i - 1].layers[2]));
        const auto b = std::make_tuple(layer_code(paths[i].layers[0]), layer_code(paths[i].layers[1]),
                                       layer_code(paths[i].layers[2]));
        REQUIRE(a < b);
    }
    CHECK(paths.front().label() == "AP>DM>DP");
}

TEST_CASE("enumeration matches the triple loop on random matrices") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 100; ++t) {
        const auto d = coupling_matrix(random_coupling(rng));
        REQUIRE(enumerate_two_hop_paths(d, {}) == triple_loop_paths(d, 0.3, 0.1));
    }
}

TEST_CASE("raising a mitigation never strengthens or adds paths") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        auto in = random_coupling(rng);
        const auto before = enumerate_two_hop_paths(coupling_matrix(in), {});
        const std::size_t i = rng() % kLayerCount, j = (i + 1 + rng() % (kLayerCount - 1)) % kLayerCount;
        in.mitigation[i][j] = std::min(1.0, in.mitigation[i][j] + 0.3);
        const auto after = enumerate_two_hop_paths(coupling_matrix(in), {});
        for (const auto& p : after) {
            const auto it = std::find_if(before.begin(), before.end(), [&](const CascadePath& q) { return q.layers == p.layers; });
            REQUIRE(it != before.end());
            REQUIRE(p.strength <= it->strength);
        }
    }
}

TEST_CASE("layer coverage and defense gap") {
    ScoreBreakdown b;
    b.layer_scores = {5.0, 0.0, 2.5, 0, 0, 0, 0};
    const auto c = layer_coverage(b);
    CHECK(c[0] == 1.0);
    CHECK(c[1] == 0.0);
    CHECK(c[2] == 0.5);
    CHECK(defense_gap(c, path(LayerId::SP, LayerId::MW, LayerId::DM, 0.5)) == 1.0);
    CHECK(defense_gap(c, path(LayerId::P, LayerId::SP, LayerId::DP, 0.5)) == 0.0);
    LayerCoverageVector halves{};
    halves.fill(0.5);
    CHECK(defense_gap(halves, path(LayerId::P, LayerId::SP, LayerId::DP, 0.5)) == 0.125);
}

TEST_CASE("resident-attack coverage mode") {
    ScoreBreakdown b;
    b.attack_layers = {LayerId::P, LayerId::P, LayerId::SP};
    b.omega_adjusted = {0.5, 0.5, 0.0};
    b.kappa = {1.0, 0.5, 0.9};
    const auto c = layer_coverage(b, LayerCoverageMode::ResidentAttacks);
    CHECK(c[0] == 0.75);
    CHECK(c[1] == 0.0);
    CHECK(c[2] == 0.0);
}

TEST_CASE("residual risk and containment") {
    auto r = cascade_residual_risk(path(LayerId::P, LayerId::SP, LayerId::DP, 0.2), "P-A1", 0.5, 0.5);
    CHECK(r.crr == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(r.crr + r.cci == 1.0);
    r = cascade_residual_risk(path(LayerId::P, LayerId::SP, LayerId::DP, 0.2), "P-A1", 0.0, 0.5);
    CHECK(r.crr == 0.0);
    CHECK(r.cci == 1.0);
    r = cascade_residual_risk(path(LayerId::P, LayerId::SP, LayerId::DP, 1.0), "P-A1", 1.0, 1.0);
    CHECK(r.crr == 1.0);
    CHECK(r.cci == 0.0);
    r = cascade_residual_risk(path(LayerId::P, LayerId::SP, LayerId::DP, 3.0), "P-A1", 2.0, 1.0);
    CHECK(r.crr == 1.0);
    r = cascade_residual_risk(path(LayerId::P, LayerId::SP, LayerId::DP, 0.5), "P-A1", -1.0, 1.0);
    CHECK(r.crr == 0.0);
}

TEST_CASE("top-k ranking") {
    std::vector<CascadeRisk> risks{
        cascade_residual_risk(path(LayerId::DM, LayerId::AP, LayerId::SI, 1.0), "DM-A1", 0.02, 1.0),
        cascade_residual_risk(path(LayerId::DP, LayerId::DM, LayerId::AP, 1.0), "DP-A1", 0.11, 1.0),
        cascade_residual_risk(path(LayerId::MW, LayerId::DM, LayerId::AP, 1.0), "MW-A1", 0.07, 1.0)};
    auto top = top_k_cascades(risks, 3);
    CHECK(top[0].attack_id == "DP-A1");
    CHECK(top[1].attack_id == "MW-A1");
    CHECK(top[2].attack_id == "DM-A1");
    CHECK(top_k_cascades(risks, 10).size() == 3);
    CHECK(top_k_cascades(risks, 1).size() == 1);

    std::vector<CascadeRisk> ties{
        cascade_residual_risk(path(LayerId::SP, LayerId::DP, LayerId::MW, 0.5), "SP-A1", 0.2, 1.0),
        cascade_residual_risk(path(LayerId::AP, LayerId::DM, LayerId::DP, 0.5), "AP-A2", 0.2, 1.0),
        cascade_residual_risk(path(LayerId::AP, LayerId::DM, LayerId::DP, 0.5), "AP-A1", 0.2, 1.0)};
    top = top_k_cascades(ties, 3);
    CHECK(top[0].attack_id == "AP-A1");
    CHECK(top[1].attack_id == "AP-A2");
    CHECK(top[2].attack_id == "SP-A1");
}

TEST_CASE("higher layer coverage never raises residual risk") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 500; ++t) {
        LayerCoverageVector c{};
        for (double& v : c) v = unit(rng);
        const auto p = path(LayerId::P, LayerId::DM, LayerId::SI, unit(rng));
        const double w = unit(rng);
        const double before = cascade_residual_risk(p, "P-A1", w, defense_gap(c, p)).crr;
        c[ordinal(p.layers[t % 3])] = std::min(1.0, c[ordinal(p.layers[t % 3])] + unit(rng));
        REQUIRE(cascade_residual_risk(p, "P-A1", w, defense_gap(c, p)).crr <= before);
    }
}

TEST_CASE("shipped fixture top-3 matches the independent script") {
    const Json golden = parse_json_text(read_file(source_path("tests/golden/digit.top3.expected.json")), "golden");
    const auto a = load_assessment_file(source_path("data/fixtures/digit.assessment.json"));
    const auto coupling = load_coupling_file(source_path("data/fixtures/digit.coupling.json"));
    const auto inputs = bind_assessment(default_catalog(), a);
    const auto analysis = analyze_cascades(score(inputs), inputs, coupling, {});
    REQUIRE(analysis.ranked.size() == golden.size());
    for (std::size_t i = 0; i < golden.size(); ++i) {
        CHECK(analysis.ranked[i].path.label() == golden[i]["path"].get<std::string>());
        CHECK(analysis.ranked[i].attack_id == golden[i]["attack_id"].get<std::string>());
        CHECK(std::abs(analysis.ranked[i].crr - golden[i]["crr"].get<double>()) < 1e-12);
    }
}

TEST_CASE("pairing modes") {
    const auto a = load_assessment_file(source_path("data/fixtures/digit.assessment.json"));
    const auto coupling = load_coupling_file(source_path("data/fixtures/digit.coupling.json"));
    const auto inputs = bind_assessment(default_catalog(), a);
    const auto b = score(inputs);
    CascadeConfig all;
    all.pairing = AttackPairing::AllAttacks;
    all.top_k = 1000000;
    CascadeConfig origin = all;
    origin.pairing = AttackPairing::OriginLayer;
    const auto wide = analyze_cascades(b, inputs, coupling, all);
    const auto narrow = analyze_cascades(b, inputs, coupling, origin);
    CHECK(wide.ranked.size() > narrow.ranked.size());
    for (const auto& r : narrow.ranked) CHECK(r.attack_id.rfind(std::string(layer_code(r.path.layers[0])) + "-", 0) == 0);
    for (const auto& r : wide.ranked) CHECK(r.attack_weight > 0.0);
}
