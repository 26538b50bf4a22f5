#pragma once

#include <string>
#include <vector>

#include "gi/composite.hpp"
#include "gi/config.hpp"
#include "gi/ifc.hpp"
#include "gi/irs.hpp"
#include "gi/lnsr.hpp"
#include "gi/panel.hpp"

namespace gi::pipeline {

enum class ExecutionMode { Serial, Parallel };

// Per-country raw diagnostics before pooled scaling (stage 1).
struct CountryRaw {
    std::string country;
    std::optional<numerics::OlsFit> irs_fit;
    TimeSeries abs_dgini;
    TimeSeries smoothing;
    lnsr::LnsrRaw lnsr;
    ifc::CountryIfcRaw ifc;
};

// Pooled p5/p95 bounds for every scored metric (stage 2).
struct BoundsSet {
    irs::IrsBounds irs;
    lnsr::LnsrBounds lnsr;
    ifc::IfcBounds ifc;
};

// Scored pillar and composite results per country-year (stage 3).
struct CountryScores {
    std::string country;
    std::vector<irs::IrsComponents> irs;
    std::vector<lnsr::LnsrComponents> lnsr;
    std::vector<ifc::IfcComponents> ifc;
    std::vector<composite::GiRecord> gi;
};

struct PipelineResult {
    std::vector<CountryRaw> raw;       // country order matches the panel
    BoundsSet bounds;
    std::vector<CountryScores> scores;
};

// Full three-stage computation. The parallel mode distributes stage 1 and
// stage 3 per-country work over OpenMP threads; results are identical to
// the serial reference by construction (each country writes its own slot).
PipelineResult run(const panel::Panel& panel, const config::RunConfig& config,
                   ExecutionMode mode = ExecutionMode::Parallel);

} // namespace gi::pipeline
