#include "gi/ifc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gi/error.hpp"

namespace gi::ifc {

namespace {

// Training pairs (pi_{s-1}, pi_s) with both sides observed, for targets
// strictly before index t.
struct Ar1Training {
    std::vector<double> lagged;
    std::vector<double> target;
};

Ar1Training ar1_training(const TimeSeries& pi, size_t t) {
    Ar1Training tr;
    for (size_t s = 1; s < t; ++s) {
        if (pi.values[s] && pi.values[s - 1]) {
            tr.lagged.push_back(*pi.values[s - 1]);
            tr.target.push_back(*pi.values[s]);
        }
    }
    return tr;
}

std::optional<double> ar1_predict(const Ar1Training& tr, double origin, int min_train) {
    if (static_cast<int>(tr.target.size()) < min_train) return std::nullopt;
    std::vector<std::vector<double>> design;
    design.reserve(tr.target.size());
    for (double x : tr.lagged) design.push_back({1.0, x});
    try {
        const auto fit = numerics::ols_fit(design, tr.target);
        return fit.coefficients[0] + fit.coefficients[1] * origin;
    } catch (const DomainError&) {
        // constant training sample: the best one-step prediction is the mean
        return std::accumulate(tr.target.begin(), tr.target.end(), 0.0) /
               static_cast<double>(tr.target.size());
    }
}

} // namespace

TimeSeries ar1_forecast(const TimeSeries& pi, int min_train) {
    if (min_train < 3) throw DomainError("ar1_forecast: min_train must be >= 3");
    TimeSeries out;
    out.years = pi.years;
    out.values.assign(pi.size(), std::nullopt);
    for (size_t t = 1; t < pi.size(); ++t) {
        if (!pi.values[t - 1]) continue;
        out.values[t] = ar1_predict(ar1_training(pi, t), *pi.values[t - 1], min_train);
    }
    return out;
}

TimeSeries fpas_arx_forecast(const TimeSeries& pi, const TimeSeries& g, const TimeSeries& u,
                             int min_train, std::vector<bool>* fellback) {
    if (min_train < 6) throw DomainError("fpas_arx_forecast: min_train must be >= regressors + 2");
    if (pi.years != g.years || pi.years != u.years)
        throw DomainError("fpas_arx_forecast: series not aligned");
    TimeSeries out;
    out.years = pi.years;
    out.values.assign(pi.size(), std::nullopt);
    if (fellback) fellback->assign(pi.size(), false);

    for (size_t t = 1; t < pi.size(); ++t) {
        if (!pi.values[t - 1] || !g.values[t - 1] || !u.values[t - 1]) continue;
        std::vector<std::vector<double>> design;
        std::vector<double> response;
        for (size_t s = 1; s < t; ++s) {
            if (pi.values[s] && pi.values[s - 1] && g.values[s - 1] && u.values[s - 1]) {
                design.push_back({1.0, *pi.values[s - 1], *g.values[s - 1], *u.values[s - 1]});
                response.push_back(*pi.values[s]);
            }
        }
        if (static_cast<int>(response.size()) < min_train) continue;
        try {
            const auto fit = numerics::ols_fit(design, response);
            out.values[t] = fit.coefficients[0] + fit.coefficients[1] * (*pi.values[t - 1]) +
                            fit.coefficients[2] * (*g.values[t - 1]) +
                            fit.coefficients[3] * (*u.values[t - 1]);
        } catch (const DomainError&) {
            out.values[t] = ar1_predict(ar1_training(pi, t), *pi.values[t - 1], 3);
            if (fellback && out.values[t]) (*fellback)[t] = true;
        }
    }
    return out;
}

ZetaSignal build_zeta_signal(const std::vector<int>& years, double t0, double scale,
                             int smoothing_window, ZetaMode mode) {
    if (scale <= 0.0) throw DomainError("build_zeta_signal: scale must be positive");
    if (smoothing_window < 1) throw DomainError("build_zeta_signal: smoothing_window must be >= 1");
    ZetaSignal sig;
    sig.years = years;
    sig.t_star_base = t0;
    sig.t_star_scale = scale;
    sig.smoothing_window = smoothing_window;
    sig.raw.reserve(years.size());
    for (size_t i = 0; i < years.size(); ++i) {
        const double t_star = t0 + scale * static_cast<double>(years[i] - years.front());
        const auto z = numerics::zeta_critical_line(t_star);
        sig.raw.push_back(mode == ZetaMode::Magnitude ? std::abs(z) : z.real());
    }
    sig.centered.resize(sig.raw.size());
    for (size_t i = 0; i < sig.raw.size(); ++i) {
        const size_t lo = i + 1 >= static_cast<size_t>(smoothing_window)
                              ? i + 1 - static_cast<size_t>(smoothing_window)
                              : 0;
        double mean = 0.0;
        for (size_t j = lo; j <= i; ++j) mean += sig.raw[j];
        mean /= static_cast<double>(i - lo + 1);
        sig.centered[i] = sig.raw[i] - mean;
    }
    return sig;
}

double calibrate_alpha(const TimeSeries& fpas, const ZetaSignal& signal, const TimeSeries& actual,
                       int validation_first_year, int validation_last_year,
                       const std::vector<double>& grid) {
    if (grid.empty()) throw DomainError("calibrate_alpha: empty grid");
    struct Row {
        double err;      // actual - fpas
        double centered;
    };
    std::vector<Row> rows;
    for (size_t i = 0; i < fpas.size(); ++i) {
        const int year = fpas.years[i];
        if (year < validation_first_year || year > validation_last_year) continue;
        if (!fpas.values[i] || !actual.values[i]) continue;
        const auto c = signal.centered_at(year);
        if (!c) continue;
        rows.push_back({*actual.values[i] - *fpas.values[i], *c});
    }
    if (rows.empty()) return 0.0;

    double best_alpha = grid.front();
    double best_rmse = std::numeric_limits<double>::infinity();
    for (double alpha : grid) {
        double ss = 0.0;
        for (const auto& r : rows) {
            const double e = r.err - alpha * r.centered;
            ss += e * e;
        }
        const double rmse = std::sqrt(ss / static_cast<double>(rows.size()));
        if (!std::isfinite(best_rmse)) {
            best_rmse = rmse;
            best_alpha = alpha;
            continue;
        }
        const double tol = 1e-12 * std::max(1.0, best_rmse);
        if (rmse < best_rmse - tol) {
            best_rmse = rmse;
            best_alpha = alpha;
        } else if (std::fabs(rmse - best_rmse) <= tol) {
            // tie: smallest |alpha| wins, then the negative one
            if (std::fabs(alpha) < std::fabs(best_alpha) - 1e-15 ||
                (std::fabs(std::fabs(alpha) - std::fabs(best_alpha)) <= 1e-15 && alpha < best_alpha))
                best_alpha = alpha;
        }
    }
    return best_alpha;
}

TimeSeries fpas_zeta_forecast(const TimeSeries& fpas, const ZetaSignal& signal, double alpha) {
    TimeSeries out;
    out.years = fpas.years;
    out.values.assign(fpas.size(), std::nullopt);
    for (size_t i = 0; i < fpas.size(); ++i) {
        if (!fpas.values[i]) continue;
        const auto c = signal.centered_at(fpas.years[i]);
        if (!c) continue;
        out.values[i] = *fpas.values[i] + alpha * (*c);
    }
    return out;
}

TimeSeries rolling_rmse(const TimeSeries& actual, const TimeSeries& forecast, int window) {
    if (window < 1) throw DomainError("rolling_rmse: window must be >= 1");
    if (actual.years != forecast.years) throw DomainError("rolling_rmse: series not aligned");
    TimeSeries errors;
    errors.years = actual.years;
    errors.values.assign(actual.size(), std::nullopt);
    for (size_t i = 0; i < actual.size(); ++i)
        if (actual.values[i] && forecast.values[i])
            errors.values[i] = *actual.values[i] - *forecast.values[i];
    return numerics::rolling_stat(errors, window, numerics::RollingKind::Rms);
}

std::optional<double> delta_rmse(double rmse_base, double rmse_new) {
    if (rmse_base < 0.0 || rmse_new < 0.0) throw DomainError("delta_rmse: negative RMSE");
    if (rmse_base == 0.0) {
        if (rmse_new == 0.0) return 0.0;
        return std::nullopt; // deterioration from a perfect baseline is unbounded
    }
    return 100.0 * (rmse_base - rmse_new) / rmse_base;
}

double truncate_gain(double delta) { return std::max(0.0, delta); }

TimeSeries regime_accuracy(const TimeSeries& pi, int window, const numerics::HmmConfig& config) {
    TimeSeries out;
    out.years = pi.years;
    out.values.assign(pi.size(), std::nullopt);

    std::vector<double> observed;
    std::vector<size_t> observed_idx;
    for (size_t i = 0; i < pi.size(); ++i) {
        if (pi.values[i]) {
            observed.push_back(*pi.values[i]);
            observed_idx.push_back(i);
        }
    }
    if (static_cast<int>(observed.size()) < 2 * config.n_states) return out;

    const auto model = numerics::hmm_fit(observed, config);
    if (model.degenerate) return out;
    const auto states = numerics::hmm_decode(model, observed); // 1 = high-mean state

    const double median = numerics::percentile(observed, 0.5);
    std::vector<std::optional<int>> match(pi.size(), std::nullopt);
    for (size_t k = 0; k < observed.size(); ++k) {
        const int reference = observed[k] > median ? 1 : 0;
        match[observed_idx[k]] = states[k] == reference ? 1 : 0;
    }

    for (size_t t = 0; t < pi.size(); ++t) {
        if (t + 1 < static_cast<size_t>(window)) continue;
        int agree = 0;
        bool complete = true;
        for (int k = 0; k < window; ++k) {
            const auto& m = match[t - static_cast<size_t>(k)];
            if (!m) {
                complete = false;
                break;
            }
            agree += *m;
        }
        if (complete) out.values[t] = static_cast<double>(agree) / static_cast<double>(window);
    }
    return out;
}

TimeSeries zeta_match(const ZetaSignal& signal, const TimeSeries& pi, int window) {
    if (window < 3) throw DomainError("zeta_match: window must be >= 3");
    TimeSeries dpi;
    dpi.years = pi.years;
    dpi.values.assign(pi.size(), std::nullopt);
    for (size_t i = 1; i < pi.size(); ++i)
        if (pi.values[i] && pi.values[i - 1]) dpi.values[i] = *pi.values[i] - *pi.values[i - 1];

    TimeSeries centered;
    centered.years = pi.years;
    centered.values.assign(pi.size(), std::nullopt);
    for (size_t i = 0; i < pi.size(); ++i) centered.values[i] = signal.centered_at(pi.years[i]);

    TimeSeries out = numerics::rolling_corr(centered, dpi, window);
    for (auto& v : out.values)
        if (v) v = std::fabs(*v);
    return out;
}

IfcComponents compute_ifc(const std::string& country, int year, const IfcComponents& raw,
                          const IfcBounds& bounds, const IfcWeights& weights) {
    IfcComponents c = raw;
    c.country = country;
    c.year = year;
    if (c.d_fpas_pos) c.score_d_fpas = scaling::score(*c.d_fpas_pos, bounds.d_fpas_pos).value;
    if (c.d_ar_pos) c.score_d_ar = scaling::score(*c.d_ar_pos, bounds.d_ar_pos).value;
    if (c.hmm_acc) c.score_hmm = scaling::score(*c.hmm_acc, bounds.hmm_acc).value;
    if (c.zeta_match) c.score_zeta = scaling::score(*c.zeta_match, bounds.zeta_match).value;
    c.ifc = scaling::weighted_mean_renormalized({{c.score_d_fpas, weights.d_fpas},
                                                 {c.score_d_ar, weights.d_ar},
                                                 {c.score_hmm, weights.hmm_acc},
                                                 {c.score_zeta, weights.zeta_match}});
    return c;
}

std::vector<double> alpha_grid(const IfcConfig& config) {
    std::vector<double> grid;
    const int n = static_cast<int>(std::round((config.alpha_max - config.alpha_min) / config.alpha_step));
    for (int i = 0; i <= n; ++i) grid.push_back(config.alpha_min + config.alpha_step * i);
    return grid;
}

CountryIfcRaw compute_raw(const std::string& country, const panel::Panel& panel,
                          const IfcConfig& config) {
    CountryIfcRaw out;
    const auto pi = panel.series(country, panel::codes::inflation);
    const auto g = panel.series(country, panel::codes::gdp_growth);
    const auto u = panel.series(country, panel::codes::unemployment);

    out.forecasts.country = country;
    out.forecasts.actual = pi;
    out.forecasts.ar1 = ar1_forecast(pi, config.min_train);
    out.forecasts.fpas =
        fpas_arx_forecast(pi, g, u, std::max(config.min_train, 6), &out.forecasts.fpas_fellback);
    out.signal = build_zeta_signal(pi.years, config.t0, config.scale, config.smoothing_window,
                                   config.zeta_mode);

    // Validation segment: leading fraction of forecastable years.
    std::vector<int> forecastable;
    for (size_t i = 0; i < out.forecasts.fpas.size(); ++i)
        if (out.forecasts.fpas.values[i] && pi.values[i])
            forecastable.push_back(out.forecasts.fpas.years[i]);
    double alpha = 0.0;
    if (!forecastable.empty()) {
        const size_t n_valid = std::max<size_t>(
            1, static_cast<size_t>(std::floor(config.validation_fraction *
                                              static_cast<double>(forecastable.size()))));
        alpha = calibrate_alpha(out.forecasts.fpas, out.signal, pi, forecastable.front(),
                                forecastable[n_valid - 1], alpha_grid(config));
    }
    out.forecasts.alpha = alpha;
    out.forecasts.fpas_zeta = fpas_zeta_forecast(out.forecasts.fpas, out.signal, alpha);

    out.rmse_ar = rolling_rmse(pi, out.forecasts.ar1, config.window);
    out.rmse_fpas = rolling_rmse(pi, out.forecasts.fpas, config.window);
    out.rmse_fz = rolling_rmse(pi, out.forecasts.fpas_zeta, config.window);

    const size_t n = pi.size();
    auto blank = [&] {
        TimeSeries ts;
        ts.years = pi.years;
        ts.values.assign(n, std::nullopt);
        return ts;
    };
    out.d_fpas = blank();
    out.d_ar = blank();
    out.d_fpas_pos = blank();
    out.d_ar_pos = blank();
    for (size_t i = 0; i < n; ++i) {
        if (out.rmse_fpas.values[i] && out.rmse_fz.values[i]) {
            out.d_fpas.values[i] = delta_rmse(*out.rmse_fpas.values[i], *out.rmse_fz.values[i]);
            if (out.d_fpas.values[i]) out.d_fpas_pos.values[i] = truncate_gain(*out.d_fpas.values[i]);
        }
        if (out.rmse_ar.values[i] && out.rmse_fz.values[i]) {
            out.d_ar.values[i] = delta_rmse(*out.rmse_ar.values[i], *out.rmse_fz.values[i]);
            if (out.d_ar.values[i]) out.d_ar_pos.values[i] = truncate_gain(*out.d_ar.values[i]);
        }
    }
    out.hmm_acc = regime_accuracy(pi, config.window, config.hmm);
    out.match = zeta_match(out.signal, pi, config.window);
    return out;
}

} // namespace gi::ifc
