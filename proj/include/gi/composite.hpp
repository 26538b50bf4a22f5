#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gi/time_series.hpp"

namespace gi::composite {

struct GiWeights {
    double irs = 0.35;
    double lnsr = 0.35;
    double ifc = 0.30;
    double total() const { return irs + lnsr + ifc; }
};

struct PillarTriple {
    std::optional<double> irs;
    std::optional<double> lnsr;
    std::optional<double> ifc;
};

struct GiRecord {
    std::string country;
    int year = 0;
    PillarTriple pillars;
    std::optional<double> gi;
    // Delta-log contributions versus the previous year, defined only when
    // both years have all three pillars strictly positive.
    std::optional<std::array<double, 3>> contributions;
};

// Weighted geometric mean over present pillars with weights renormalized to
// sum to 1. A pillar at exactly 0 with floor 0 yields GI = 0.
std::optional<double> aggregate_gi(const PillarTriple& pillars, const GiWeights& weights = {},
                                   double epsilon_floor = 0.0);

// c_i = (w_i/W) * (log p_i,t - log p_i,t-1); the triple sums to
// log(GI_t) - log(GI_{t-1}) when both composites use full pillars.
std::optional<std::array<double, 3>> decompose_dlog(const PillarTriple& prev,
                                                    const PillarTriple& curr,
                                                    const GiWeights& weights = {});

struct RegionField {
    std::optional<double> mean;
    int n = 0;
};

struct RegionRow {
    std::string region;
    RegionField gi, irs, lnsr, ifc;
};

struct MemberScores {
    std::optional<double> gi;
    PillarTriple pillars;
};

// Field-wise arithmetic mean with per-field member counts; all fields absent
// for an empty region.
RegionRow regional_mean(const std::vector<MemberScores>& members, const std::string& region);

struct DescriptiveStats {
    std::optional<double> mean, std_dev, min, max, last;
    int n = 0;
};

DescriptiveStats descriptive_stats(const TimeSeries& series);

} // namespace gi::composite
