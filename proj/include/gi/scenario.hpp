#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gi/composite.hpp"

namespace gi::scenario {

inline constexpr int kHorizonStart = 2026;
inline constexpr int kHorizonEnd = 2030;

struct ScenarioSpec {
    std::string name;
    int first_year = kHorizonStart;
    int last_year = kHorizonEnd;
    std::vector<double> pillar_shocks; // one offset per horizon year
    std::vector<double> gi_shocks;     // used in table-replication mode

    int span() const { return last_year - first_year + 1; }
};

// Baseline plus the stylized adverse/optimistic schedules.
std::vector<ScenarioSpec> default_specs();

struct EndpointPair {
    double v2026 = 0.0;
    double v2030 = 0.0;
};

struct CountryEndpoints {
    std::string country;
    std::optional<EndpointPair> irs, lnsr, ifc, gi;
};

enum class GiMode { RecomputeGi, TableReplication };

struct ScenarioYear {
    int year = 0;
    std::optional<double> gi;
    std::string band;
    std::optional<double> irs, lnsr, ifc;
    std::string binding_pillar; // empty when a pillar is missing
    std::optional<double> binding_score;
};

struct ScenarioPath {
    std::string country;
    std::string scenario;
    std::vector<ScenarioYear> years;
};

double interpolate_baseline(double v2026, double v2030, int year);

// clip(base + shock, 0, 100)
double apply_shock(double base, double shock);

struct BindingResult {
    std::string pillar; // "IRS" | "LNSR" | "IFC"
    double score = 0.0;
};

// Minimum pillar; ties break in the fixed order IRS, LNSR, IFC.
BindingResult binding_pillar(double irs, double lnsr, double ifc);

// Half-open bands [0,25) [25,50) [50,75) [75,100].
std::string classify_band(double gi);

struct BuildOptions {
    GiMode mode = GiMode::RecomputeGi;
    composite::GiWeights weights;
    double epsilon_floor = 0.0;
    // Optional explicit per-year baseline GI path per country, overriding
    // endpoint interpolation in table-replication mode.
    std::map<std::string, std::vector<double>> baseline_gi_override;
};

struct BuildResult {
    std::vector<ScenarioPath> paths;
    std::vector<std::string> skipped; // countries missing endpoints
};

BuildResult build_scenario_paths(const std::vector<CountryEndpoints>& endpoints,
                                 const std::vector<ScenarioSpec>& specs,
                                 const BuildOptions& options = {});

} // namespace gi::scenario
