#include "doctest.h"
#include "test_support.hpp"

#include "cli.hpp"
#include "riskmap/canonical_json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using riskmap::testing::source_path;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args, std::optional<std::string> seed_env = std::nullopt) {
    std::ostringstream out, err;
    const int code = riskmap::cli::run(args, out, err, seed_env);
    return {code, out.str(), err.str()};
}

const std::string kDigit = source_path("data/fixtures/digit.assessment.json");
const std::string kDigitCoupling = source_path("data/fixtures/digit.coupling.json");

std::string without_timestamp(const std::string& json) {
    auto j = riskmap::parse_json_text(json, "cli");
    j["generated_at"] = "";
    return riskmap::canonical_dump(j);
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("riskmap_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) { return riskmap::read_file(p.string()); }

}  // namespace

TEST_CASE("score prints a JSON report") {
    const auto r = cli({"score", "--assessment", kDigit});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    const auto j = riskmap::parse_json_text(r.out, "out");
    CHECK(j["platform"] == "Digit");
    CHECK(j["mc"]["present"] == false);
}

TEST_CASE("validate flags an off-scale gamma") {
    const auto r = cli({"validate", "--catalog", source_path("tests/fixtures/invalid_gamma_level.catalog.json")});
    CHECK(r.code == 1);
    CHECK(r.err.find("GAMMA_LEVEL") != std::string::npos);
    CHECK(cli({"validate", "--assessment", kDigit, "--coupling", kDigitCoupling}).code == 0);
}

TEST_CASE("exit codes") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"score"}).code == 2);
    CHECK(cli({"score", "--assessment", "/nonexistent.json"}).code == 2);
    CHECK(cli({"score", "--assessment", kDigit, "--format", "pdf"}).code == 2);
    CHECK(cli({"mc", "--assessment", kDigit, "--noise", "2"}).code == 2);
    CHECK(cli({"mc", "--assessment", kDigit}, "not-a-number").code == 2);
    CHECK(cli({"whatif", "--assessment", kDigit, "--propose", "P-D1"}).code == 2);
    CHECK(cli({"whatif", "--assessment", kDigit, "--propose", "ZZ-D1=1"}).code == 1);
    CHECK(cli({"score", "--catalog", source_path("tests/fixtures/invalid_dims.catalog.json"), "--assessment", kDigit})
              .code == 1);
    CHECK(cli({"score", "--assessment", kDigitCoupling}).code == 1);
    CHECK(cli({"--help"}).code == 0);
    CHECK(cli({"--version"}).code == 0);

    const fs::path dir = scratch("noapp");
    fs::create_directories(dir);
    auto j = riskmap::parse_json_text(riskmap::read_file(source_path("tests/fixtures/tiny.assessment.json")), "a");
    j["applicability"]["P-A1"] = 0;
    j["applicability"]["SP-A1"] = 0;
    {
        std::ofstream(dir / "a.json") << j.dump();
    }
    const auto r = cli({"score", "--catalog", source_path("tests/fixtures/tiny.catalog.json"), "--assessment",
                        (dir / "a.json").string()});
    CHECK(r.code == 3);
    CHECK(r.err.find("applicable") != std::string::npos);
}

TEST_CASE("mc output is reproducible for a fixed seed") {
    const auto a = cli({"mc", "--assessment", kDigit, "--seed", "9", "--format", "csv", "--iterations", "300"});
    const auto b = cli({"mc", "--assessment", kDigit, "--seed", "9", "--format", "csv", "--iterations", "300", "--threads", "3"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("metric,mean,std,median,p5,p95\n", 0) == 0);
    const auto c = cli({"mc", "--assessment", kDigit, "--seed", "10", "--format", "csv", "--iterations", "300"});
    CHECK(c.out != a.out);
}

TEST_CASE("seed falls back to the environment, then the constant") {
    auto seed_of = [](const Result& r) { return riskmap::parse_json_text(r.out, "o")["config"]["monte_carlo"]["seed"].get<std::uint64_t>(); };
    CHECK(seed_of(cli({"mc", "--assessment", kDigit, "--iterations", "10"})) == 42);
    CHECK(seed_of(cli({"mc", "--assessment", kDigit, "--iterations", "10"}, "77")) == 77);
    CHECK(seed_of(cli({"mc", "--assessment", kDigit, "--iterations", "10", "--seed", "5"}, "77")) == 5);
}

TEST_CASE("report bundle writes every artifact") {
    const fs::path dir = scratch("bundle");
    const auto r = cli({"report", "--assessment", kDigit, "--coupling", kDigitCoupling, "--iterations", "200", "--out-dir",
                        dir.string()});
    REQUIRE(r.code == 0);
    for (const char* f : {"report.json", "report.txt", "radar.svg", "scores.csv", "layers.csv", "cascades.csv", "mc.csv"}) {
        CHECK(fs::exists(dir / f));
    }
    const auto again = cli({"report", "--assessment", kDigit, "--coupling", kDigitCoupling, "--iterations", "200"});
    CHECK(without_timestamp(again.out) == without_timestamp(slurp(dir / "report.json")));
}

TEST_CASE("cascade and whatif formats") {
    const auto c = cli({"cascade", "--assessment", kDigit, "--coupling", kDigitCoupling, "--format", "csv"});
    CHECK(c.code == 0);
    CHECK(c.out.rfind("path,attack,P,U,crr,cci\n", 0) == 0);
    CHECK(cli({"cascade", "--assessment", kDigit}).code == 2);

    const auto w = cli({"whatif", "--assessment", kDigit, "--propose", "P-D1=1", "--propose", "SI-D2=1", "--format", "csv"});
    CHECK(w.code == 0);
    CHECK(w.out.rfind("defense_id,previous_level,proposed_level,new_percent,gain\n", 0) == 0);
    const auto all = cli({"whatif", "--assessment", kDigit, "--format", "json"});
    CHECK(all.code == 0);
    for (const auto& e : riskmap::parse_json_text(all.out, "w")["entries"]) CHECK(e["gain"].get<double>() >= 0.0);

    const auto svg = cli({"score", "--assessment", kDigit, "--format", "svg", "--overlay",
                          source_path("data/fixtures/pepper.assessment.json")});
    CHECK(svg.code == 0);
    CHECK(svg.out.find("Pepper") != std::string::npos);
}
