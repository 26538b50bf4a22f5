#include "gi/irs.hpp"

#include <cmath>

#include "gi/error.hpp"

namespace gi::irs {

std::optional<numerics::OlsFit> fit_inequality_model(const std::string& country,
                                                     const panel::Panel& panel, int min_obs) {
    if (min_obs < 6) throw DomainError("fit_inequality_model: min_obs must cover regressors + 2");
    const auto gini = panel.series(country, panel::codes::gini);
    const auto pi = panel.series(country, panel::codes::inflation);
    const auto u = panel.series(country, panel::codes::unemployment);
    const auto logy = panel.series(country, panel::codes::log_gdppc_derived);

    std::vector<std::vector<double>> design;
    std::vector<double> response;
    for (size_t i = 0; i < gini.size(); ++i) {
        if (gini.values[i] && pi.values[i] && u.values[i] && logy.values[i]) {
            design.push_back({1.0, *pi.values[i], *u.values[i], *logy.values[i]});
            response.push_back(*gini.values[i]);
        }
    }
    if (static_cast<int>(design.size()) < min_obs) return std::nullopt;
    try {
        return numerics::ols_fit(design, response);
    } catch (const DomainError&) {
        return std::nullopt; // singular design over the sparse Gini years
    }
}

TimeSeries delta_gini_series(const TimeSeries& gini) {
    TimeSeries out;
    out.years = gini.years;
    out.values.assign(gini.size(), std::nullopt);
    for (size_t i = 1; i < gini.size(); ++i) {
        if (gini.values[i] && gini.values[i - 1])
            out.values[i] = std::fabs(*gini.values[i] - *gini.values[i - 1]);
    }
    return out;
}

TimeSeries smoothing_signal(const TimeSeries& gini, int window) {
    if (window < 3) throw DomainError("smoothing_signal: window must be >= 3");
    TimeSeries out;
    out.years = gini.years;
    out.values.assign(gini.size(), std::nullopt);
    for (size_t t = 0; t < gini.size(); ++t) {
        if (t + 1 < static_cast<size_t>(window)) continue;
        bool complete = true;
        std::vector<double> slice;
        for (int k = window - 1; k >= 0; --k) {
            const auto& v = gini.values[t - static_cast<size_t>(k)];
            if (!v) {
                complete = false;
                break;
            }
            slice.push_back(*v);
        }
        if (!complete) continue;
        double ss = 0.0;
        int n = 0;
        for (size_t i = 2; i < slice.size(); ++i) {
            const double d2 = slice[i] - 2.0 * slice[i - 1] + slice[i - 2];
            ss += d2 * d2;
            ++n;
        }
        out.values[t] = 1.0 / (1.0 + std::sqrt(ss / static_cast<double>(n)));
    }
    return out;
}

IrsComponents compute_irs(const std::string& country, int year, std::optional<double> r_squared,
                          std::optional<double> abs_dgini, std::optional<double> smoothing,
                          const IrsBounds& bounds, const IrsWeights& weights) {
    IrsComponents c;
    c.country = country;
    c.year = year;
    c.r_squared = r_squared;
    c.abs_dgini = abs_dgini;
    c.smoothing = smoothing;
    if (r_squared) c.score_r2 = scaling::score(*r_squared, bounds.r_squared).value;
    if (abs_dgini)
        c.score_dgini = scaling::score(scaling::invert_bad_metric(*abs_dgini), bounds.inv_dgini).value;
    if (smoothing) c.score_smoothing = scaling::score(*smoothing, bounds.smoothing).value;
    c.irs = scaling::weighted_mean_renormalized({{c.score_r2, weights.r_squared},
                                                 {c.score_dgini, weights.dgini},
                                                 {c.score_smoothing, weights.smoothing}});
    return c;
}

} // namespace gi::irs
