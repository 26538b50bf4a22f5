#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gi/panel.hpp"
#include "gi/scaling.hpp"
#include "gi/time_series.hpp"

namespace gi::lnsr {

struct LnsrWeights {
    double var_v = 0.35;
    double rms_eps = 0.35;
    double align = 0.30;
};

struct LnsrComponents {
    std::string country;
    int year = 0;
    std::optional<double> v;        // liquidity-speed proxy
    std::optional<double> dv;
    std::optional<double> var_v;    // rolling sample variance of v
    std::optional<double> eps;      // residual force, percentage points
    std::optional<double> rms_eps;
    std::optional<double> align;    // |rolling corr(dv, g)| in [0,1]
    std::optional<double> score_var_v;
    std::optional<double> score_rms_eps;
    std::optional<double> score_align;
    std::optional<double> lnsr;     // in [0,100]
};

// v = 100 / M3GDP; missing for non-positive depth.
std::optional<double> liquidity_speed(double m3gdp);

// eps = pi - (mu - g + dv)
double residual_force(double pi, double mu, double g, double dv);

struct LnsrBounds {
    scaling::ScalingBounds inv_var_v;
    scaling::ScalingBounds inv_rms_eps;
    scaling::ScalingBounds align;
};

struct LnsrRaw {
    TimeSeries v, dv, var_v, eps, rms_eps, align;
};

// Raw per-year component series for one country. mu_source names the panel
// series used as the monetary-stance term (default broad money growth).
LnsrRaw compute_raw(const std::string& country, const panel::Panel& panel, int window = 5,
                    const std::string& mu_source = panel::codes::m3_growth_derived);

std::vector<LnsrComponents> compute_lnsr(const std::string& country, const panel::Panel& panel,
                                         const LnsrBounds& bounds, int window = 5,
                                         const LnsrWeights& weights = {},
                                         const std::string& mu_source = panel::codes::m3_growth_derived);

} // namespace gi::lnsr
