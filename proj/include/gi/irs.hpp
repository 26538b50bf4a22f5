#pragma once

#include <optional>
#include <string>

#include "gi/numerics.hpp"
#include "gi/panel.hpp"
#include "gi/scaling.hpp"
#include "gi/time_series.hpp"

namespace gi::irs {

struct IrsWeights {
    double r_squared = 0.40;
    double dgini = 0.40;
    double smoothing = 0.20;
};

struct IrsComponents {
    std::string country;
    int year = 0;
    std::optional<double> r_squared;      // per-country constant
    std::optional<double> abs_dgini;      // Gini points per year
    std::optional<double> smoothing;      // in (0,1]
    std::optional<double> score_r2;
    std::optional<double> score_dgini;    // of 1/(1+|dGini|)
    std::optional<double> score_smoothing;
    std::optional<double> irs;            // in [0,100]
};

// OLS of Gini on [1, inflation, unemployment, log GDP per capita] over years
// where all four are present; absent when usable years < min_obs or the
// design is singular.
std::optional<numerics::OlsFit> fit_inequality_model(const std::string& country,
                                                     const panel::Panel& panel, int min_obs = 8);

// |Gini_t - Gini_{t-1}| where consecutive years are both observed. No
// bridging across gaps.
TimeSeries delta_gini_series(const TimeSeries& gini);

// 1/(1 + rms of second differences over the trailing window); requires a
// fully observed window. Higher = smoother.
TimeSeries smoothing_signal(const TimeSeries& gini, int window);

struct IrsBounds {
    scaling::ScalingBounds r_squared;
    scaling::ScalingBounds inv_dgini;
    scaling::ScalingBounds smoothing;
};

IrsComponents compute_irs(const std::string& country, int year, std::optional<double> r_squared,
                          std::optional<double> abs_dgini, std::optional<double> smoothing,
                          const IrsBounds& bounds, const IrsWeights& weights = {});

} // namespace gi::irs
