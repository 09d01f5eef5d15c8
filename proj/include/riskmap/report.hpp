#pragma once

#include "riskmap/cascade.hpp"
#include "riskmap/catalog.hpp"
#include "riskmap/scoring.hpp"
#include "riskmap/uncertainty.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace riskmap {

/// Every knob that influences results, with defaults materialized.
struct ConfigEcho {
    bool allow_continuous = false;
    double alpha = kDefaultAlpha;
    double beta = kDefaultBeta;
    CascadeConfig cascade;
    McConfig monte_carlo;  // `threads` is not echoed: it never changes results
    bool cumulative = false;

    bool operator==(const ConfigEcho&) const = default;
};

struct AssessmentReport {
    std::string tool_version;
    std::string generated_at;  // UTC, ISO-8601
    std::string platform;
    std::string catalog_fingerprint;
    bool catalog_illustrative = false;
    std::string assessment_fingerprint;
    std::optional<std::string> coupling_fingerprint;
    ConfigEcho config;
    ScoreBreakdown breakdown;
    std::optional<MonteCarloResult> mc;
    std::optional<CascadeAnalysis> cascades;

    bool operator==(const AssessmentReport&) const = default;
};

struct ReportParts {
    const Catalog* catalog = nullptr;
    const PlatformAssessment* assessment = nullptr;
    const CouplingInputs* coupling = nullptr;  // optional
    ConfigEcho config;
    ScoreBreakdown breakdown;
    std::optional<MonteCarloResult> mc;
    std::optional<CascadeAnalysis> cascades;
    std::optional<std::string> generated_at;  // defaults to now
};

/// Assembles and schema-checks a report. Throws SchemaError when sections
/// disagree on the catalog (or coupling) fingerprint or the result does not
/// satisfy the published report schema.
AssessmentReport build_report(const ReportParts& parts);

Json report_to_json(const AssessmentReport& report);
AssessmentReport report_from_json(const Json& j);

/// Violations of the published report schema; empty when valid.
std::vector<std::string> check_report_schema(const Json& report_json);

std::string emit_json(const AssessmentReport& report);

/// Timestamp replaced by a fixed epoch so two runs compare byte-for-byte.
inline constexpr std::string_view kZeroTimestamp = "1970-01-01T00:00:00Z";
std::string emit_json_for_comparison(const AssessmentReport& report);

/// "scores.csv", "layers.csv", "cascades.csv", "mc.csv"; absent sections are header-only.
std::map<std::string, std::string> emit_csv(const AssessmentReport& report);

inline constexpr std::string_view kScoresCsvHeader = "attack_id,omega,omega_adjusted,kappa";
inline constexpr std::string_view kLayersCsvHeader = "layer,layer_score";
inline constexpr std::string_view kCascadesCsvHeader = "path,attack,P,U,crr,cci";
inline constexpr std::string_view kMcCsvHeader = "metric,mean,std,median,p5,p95";

struct RadarSeries {
    std::string label;
    PerLayer<double> scores{};
};

/// 800×800 radar over the seven layers, rings at 1..5. Throws DomainError on
/// scores outside [0,5].
std::string emit_radar_svg(const RadarSeries& primary, const std::optional<RadarSeries>& overlay = std::nullopt);

std::string emit_text(const AssessmentReport& report);

struct Proposal {
    std::string defense_id;
    double level = 0.0;
};

struct DeltaEntry {
    std::string defense_id;
    double previous_level = 0.0;
    double proposed_level = 0.0;
    double new_percent = 0.0;
    double gain = 0.0;  // percentage points

    bool operator==(const DeltaEntry&) const = default;
};

struct DeltaReport {
    double baseline_percent = 0.0;
    bool cumulative = false;
    std::vector<DeltaEntry> entries;

    bool operator==(const DeltaReport&) const = default;
};

/// Evaluates each proposal against the baseline (sorted by gain, descending),
/// or in order on top of one another when `cumulative`.
DeltaReport whatif(const Catalog& catalog, const PlatformAssessment& assessment, const std::vector<Proposal>& proposals,
                   bool cumulative = false, const CatalogOptions& options = {});

/// One proposal per defense not yet at full implementation, raising it to 1.0.
std::vector<Proposal> full_upgrade_proposals(const Catalog& catalog, const PlatformAssessment& assessment);

Json whatif_to_json(const DeltaReport& delta);
std::string whatif_csv(const DeltaReport& delta);
std::string whatif_text(const DeltaReport& delta);

inline constexpr std::string_view kWhatifCsvHeader = "defense_id,previous_level,proposed_level,new_percent,gain";

std::string utc_now_iso8601();

}  // namespace riskmap
