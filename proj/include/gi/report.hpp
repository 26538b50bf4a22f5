#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "gi/config.hpp"
#include "gi/panel.hpp"
#include "gi/pipeline.hpp"
#include "gi/scenario.hpp"

namespace gi::report {

inline constexpr const char* kEngineVersion = "0.1.0";

// FNV-1a 64-bit content digest, hex encoded.
std::string digest_hex(const std::string& bytes);

struct Formatting {
    bool raw_precision = false; // summary tables use 2 decimals unless set
};

void write_pillars_csv(std::ostream& out, const std::vector<pipeline::CountryScores>& scores,
                       const Formatting& fmt);
void write_gi_csv(std::ostream& out, const std::vector<pipeline::CountryScores>& scores,
                  const Formatting& fmt);
// Long-format component table: every raw metric, its pooled score, and a
// machine-readable reason code for each blank.
void write_components_csv(std::ostream& out, const pipeline::PipelineResult& result);
void write_contributions_csv(std::ostream& out, const std::vector<pipeline::CountryScores>& scores);
void write_snapshot_csv(std::ostream& out, const panel::Snapshot& snapshot);
void write_forecasts_csv(std::ostream& out, const pipeline::PipelineResult& result);
void write_bounds_csv(std::ostream& out, const pipeline::BoundsSet& bounds);

void write_scenario_gi_csv(std::ostream& out, const scenario::BuildResult& result,
                           const Formatting& fmt);
void write_scenario_pillars_csv(std::ostream& out, const scenario::BuildResult& result,
                                const Formatting& fmt);

void write_regions_csv(std::ostream& out, const std::vector<composite::RegionRow>& rows,
                       const Formatting& fmt);

// JSON mirrors of the summary tables (full precision).
std::string pillars_json(const std::vector<pipeline::CountryScores>& scores);
std::string gi_json(const std::vector<pipeline::CountryScores>& scores);
std::string scenario_json(const scenario::BuildResult& result);

// Run manifest: input digest, config echo, engine version, seed, and the
// documented-inconsistency disclosures.
std::string manifest_json(const std::string& input_digest, const config::RunConfig& config,
                          const std::string& timestamp);

} // namespace gi::report
