#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gi/numerics.hpp"
#include "gi/panel.hpp"
#include "gi/scaling.hpp"
#include "gi/time_series.hpp"

namespace gi::ifc {

enum class ZetaMode { Magnitude, RealPart };

struct IfcConfig {
    int min_train = 8;            // expanding-window training gate
    int window = 5;               // rolling RMSE / diagnostic window
    double t0 = 10.0;             // zeta time-base offset
    double scale = 1.0;           // zeta time-base step per year
    int smoothing_window = 5;     // zeta centering reference
    ZetaMode zeta_mode = ZetaMode::Magnitude;
    double alpha_min = -3.0;
    double alpha_max = 3.0;
    double alpha_step = 0.1;
    double validation_fraction = 0.6; // leading share of forecastable years
    numerics::HmmConfig hmm;
};

struct IfcWeights {
    double d_fpas = 0.35;
    double d_ar = 0.25;
    double hmm_acc = 0.25;
    double zeta_match = 0.15;
};

struct ZetaSignal {
    std::vector<int> years;
    std::vector<double> raw;      // |zeta(0.5 + i t*)| (or real part)
    std::vector<double> centered; // raw minus trailing moving average
    double t_star_base = 0.0;
    double t_star_scale = 0.0;
    int smoothing_window = 1;

    std::optional<double> centered_at(int year) const {
        for (size_t i = 0; i < years.size(); ++i)
            if (years[i] == year) return centered[i];
        return std::nullopt;
    }
};

struct ForecastSet {
    std::string country;
    TimeSeries actual;     // pi
    TimeSeries ar1;
    TimeSeries fpas;
    std::vector<bool> fpas_fellback; // per year: ARX degenerated to AR(1)
    TimeSeries fpas_zeta;
    double alpha = 0.0;
};

struct IfcComponents {
    std::string country;
    int year = 0;
    std::optional<double> rmse_ar, rmse_fpas, rmse_fz;
    std::optional<double> d_fpas, d_ar;          // percent
    std::optional<double> d_fpas_pos, d_ar_pos;  // truncated gains
    std::optional<double> hmm_acc;               // in [0,1]
    std::optional<double> zeta_match;            // in [0,1]
    std::optional<double> score_d_fpas, score_d_ar, score_hmm, score_zeta;
    std::optional<double> ifc;                   // in [0,100]
};

// Expanding-window one-step-ahead AR(1) forecasts. For each target year
// with >= min_train prior consecutive observations, fit on data through
// t-1 and predict from pi_{t-1}. A variance-free training sample emits the
// training mean.
TimeSeries ar1_forecast(const TimeSeries& pi, int min_train);

// Expanding-window OLS of pi_t on [1, pi_{t-1}, g_{t-1}, u_{t-1}]; training
// rows require all regressors. Singular designs fall back to AR(1) for
// that year (flag set).
TimeSeries fpas_arx_forecast(const TimeSeries& pi, const TimeSeries& g, const TimeSeries& u,
                             int min_train, std::vector<bool>* fellback = nullptr);

ZetaSignal build_zeta_signal(const std::vector<int>& years, double t0, double scale,
                             int smoothing_window, ZetaMode mode = ZetaMode::Magnitude);

// Grid value minimizing validation RMSE of (actual - fpas - alpha*centered);
// ties break toward the smallest |alpha|, then toward the negative one.
double calibrate_alpha(const TimeSeries& fpas, const ZetaSignal& signal, const TimeSeries& actual,
                       int validation_first_year, int validation_last_year,
                       const std::vector<double>& grid);

TimeSeries fpas_zeta_forecast(const TimeSeries& fpas, const ZetaSignal& signal, double alpha);

// sqrt of the mean squared one-step error over the trailing window; needs a
// complete window of actuals and forecasts.
TimeSeries rolling_rmse(const TimeSeries& actual, const TimeSeries& forecast, int window = 5);

// 100*(base - new)/base. base == 0 maps to 0 when new == 0, else missing.
std::optional<double> delta_rmse(double rmse_base, double rmse_new);

double truncate_gain(double delta);

// Per-year fraction of the trailing window where the Viterbi state matches
// an above/below-median reference labeling of inflation.
TimeSeries regime_accuracy(const TimeSeries& pi, int window, const numerics::HmmConfig& config);

// |rolling corr(centered zeta signal, delta pi)|.
TimeSeries zeta_match(const ZetaSignal& signal, const TimeSeries& pi, int window);

struct IfcBounds {
    scaling::ScalingBounds d_fpas_pos;
    scaling::ScalingBounds d_ar_pos;
    scaling::ScalingBounds hmm_acc;
    scaling::ScalingBounds zeta_match;
};

IfcComponents compute_ifc(const std::string& country, int year, const IfcComponents& raw,
                          const IfcBounds& bounds, const IfcWeights& weights = {});

// Full per-country raw component computation (forecasts, rolling RMSE,
// deltas, diagnostics) before pooled scaling.
struct CountryIfcRaw {
    ForecastSet forecasts;
    ZetaSignal signal;
    TimeSeries rmse_ar, rmse_fpas, rmse_fz;
    TimeSeries d_fpas, d_ar, d_fpas_pos, d_ar_pos;
    TimeSeries hmm_acc, match;
};

CountryIfcRaw compute_raw(const std::string& country, const panel::Panel& panel,
                          const IfcConfig& config);

std::vector<double> alpha_grid(const IfcConfig& config);

} // namespace gi::ifc
