#pragma once

#include "riskmap/canonical_json.hpp"
#include "riskmap/errors.hpp"
#include "riskmap/layer.hpp"

#include <array>
#include <istream>
#include <string>
#include <vector>

namespace riskmap {

/// Discrete scores accepted for impact (ι) in strict mode.
inline constexpr std::array<double, 6> kImpactLevels = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};

/// Five-level scale shared by coverage (γ) and implementation (μ).
inline constexpr std::array<double, 5> kCoverageLevels = {0.0, 0.25, 0.5, 0.75, 1.0};

bool is_impact_level(double value) noexcept;
bool is_coverage_level(double value) noexcept;

struct AttackVector {
    std::string id;  // "<LAYER>-A<n>"
    LayerId layer = LayerId::P;
    std::string name;
    double likelihood = 0.0;
    double impact = 0.0;
    double detectability = 1.0;
    std::vector<std::string> references;

    bool operator==(const AttackVector&) const = default;
};

struct DefenseMechanism {
    std::string id;  // "<LAYER>-D<n>"
    LayerId layer = LayerId::P;
    std::string name;
    std::vector<std::string> references;

    bool operator==(const DefenseMechanism&) const = default;
};

/// Attack/defense taxonomy plus the baseline coverage matrix Γ.
///
/// `gamma` is stored as nested rows so that a malformed catalog can be
/// represented and reported on; validate_catalog() checks it is rectangular.
/// Immutable once loaded.
struct Catalog {
    std::string version;
    bool illustrative = false;
    std::vector<AttackVector> attacks;
    std::vector<DefenseMechanism> defenses;
    std::vector<std::vector<double>> gamma;  // rows = attacks, cols = defenses
    std::string fingerprint;                 // SHA-256 of the canonical form

    bool operator==(const Catalog&) const = default;
};

struct Violation {
    std::string code;  // stable machine-readable id, e.g. "DIM_MISMATCH"
    std::string path;  // JSON-style location, e.g. "gamma[3][4]"
    std::string message;

    bool operator==(const Violation&) const = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool has(std::string_view code) const noexcept;
};

/// Thrown when loaded data parses but breaks an invariant.
class ValidationError : public Error {
public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

struct CatalogOptions {
    /// Relax γ and ι from their discrete levels to the closed interval [0,1].
    bool allow_continuous = false;
};

ValidationReport validate_catalog(const Catalog& catalog, const CatalogOptions& options = {});

Catalog load_catalog(std::istream& in, const CatalogOptions& options = {});
Catalog load_catalog_file(const std::string& path, const CatalogOptions& options = {});
Catalog catalog_from_json(const Json& j, const CatalogOptions& options = {});

/// The catalog shipped with the tool (illustrative placeholder values).
Catalog default_catalog();

/// Catalog file representation; the fingerprint itself is not part of it.
Json catalog_to_json(const Catalog& catalog);
std::string catalog_fingerprint(const Catalog& catalog);

struct LayerBucket {
    std::vector<std::string> attack_ids;
    std::vector<std::string> defense_ids;
};

PerLayer<LayerBucket> layer_partition(const Catalog& catalog);

}  // namespace riskmap
