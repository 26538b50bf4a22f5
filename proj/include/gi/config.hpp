#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gi/composite.hpp"
#include "gi/ifc.hpp"
#include "gi/irs.hpp"
#include "gi/lnsr.hpp"
#include "gi/scenario.hpp"

namespace gi::config {

// Minimal TOML-style key/value store: [section] headers, scalar values
// (number, string, bool) and flat arrays. Unknown keys are hard errors at
// the schema layer.
struct TomlValue {
    std::variant<double, bool, std::string, std::vector<double>, std::vector<std::string>> data;

    double as_number() const;
    int as_int() const;
    bool as_bool() const;
    const std::string& as_string() const;
    const std::vector<double>& as_number_array() const;
    const std::vector<std::string>& as_string_array() const;
};

// Dotted-key map, e.g. "scenario.adverse.gi_shocks".
using TomlTable = std::map<std::string, TomlValue>;

TomlTable parse_toml(const std::string& text);

enum class OutputFormat { Csv, Json, Both };

struct RunConfig {
    std::string input_path;
    std::string output_dir;
    OutputFormat format = OutputFormat::Csv;
    bool raw_precision = false;
    int cutoff = 2024;
    int window = 5;
    unsigned seed = 42;
    double lower_q = 0.05;
    double upper_q = 0.95;
    bool r2_direct = false; // score R^2 as 100*R^2 instead of pooled bounds
    composite::GiWeights pillar_weights;
    double epsilon_floor = 0.0;
    irs::IrsWeights irs_weights;
    int irs_min_obs = 8;
    int irs_smoothing_window = 5;
    lnsr::LnsrWeights lnsr_weights;
    std::string mu_source = panel::codes::m3_growth_derived;
    ifc::IfcWeights ifc_weights;
    ifc::IfcConfig ifc;
    scenario::GiMode scenario_mode = scenario::GiMode::RecomputeGi;
    std::string endpoints_path; // CSV of scenario endpoints
    std::vector<scenario::ScenarioSpec> scenarios = scenario::default_specs();
    std::map<std::string, std::vector<std::string>> regions; // code -> member ISO3 list

    // echo of the parsed file for the manifest
    std::string source_text;
};

// Parses and validates a config file; unknown keys and out-of-range values
// raise ConfigError.
RunConfig load_config(const std::string& path);
RunConfig config_from_text(const std::string& text);

std::vector<scenario::CountryEndpoints> parse_endpoints_csv(std::istream& in);

} // namespace gi::config
