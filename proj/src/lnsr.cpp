#include "gi/lnsr.hpp"

#include <cmath>

#include "gi/numerics.hpp"

namespace gi::lnsr {

std::optional<double> liquidity_speed(double m3gdp) {
    if (m3gdp <= 0.0) return std::nullopt;
    return 100.0 / m3gdp;
}

double residual_force(double pi, double mu, double g, double dv) {
    return pi - (mu - g + dv);
}

LnsrRaw compute_raw(const std::string& country, const panel::Panel& panel, int window,
                    const std::string& mu_source) {
    const auto m3gdp = panel.series(country, panel::codes::m3_gdp);
    const auto pi = panel.series(country, panel::codes::inflation);
    const auto g = panel.series(country, panel::codes::gdp_growth);
    const auto mu = panel.series(country, mu_source);

    LnsrRaw raw;
    raw.v = TimeSeries::empty_range(panel.first_year(), panel.last_year());
    raw.dv = TimeSeries::empty_range(panel.first_year(), panel.last_year());
    raw.eps = TimeSeries::empty_range(panel.first_year(), panel.last_year());

    for (size_t i = 0; i < m3gdp.size(); ++i)
        if (m3gdp.values[i]) raw.v.values[i] = liquidity_speed(*m3gdp.values[i]);
    for (size_t i = 1; i < raw.v.size(); ++i)
        if (raw.v.values[i] && raw.v.values[i - 1])
            raw.dv.values[i] = *raw.v.values[i] - *raw.v.values[i - 1];
    for (size_t i = 0; i < raw.eps.size(); ++i) {
        if (pi.values[i] && mu.values[i] && g.values[i] && raw.dv.values[i])
            raw.eps.values[i] =
                residual_force(*pi.values[i], *mu.values[i], *g.values[i], *raw.dv.values[i]);
    }

    raw.var_v = numerics::rolling_stat(raw.v, window, numerics::RollingKind::Variance);
    raw.rms_eps = numerics::rolling_stat(raw.eps, window, numerics::RollingKind::Rms);
    raw.align = numerics::rolling_corr(raw.dv, g, window);
    for (auto& v : raw.align.values)
        if (v) v = std::fabs(*v);
    return raw;
}

std::vector<LnsrComponents> compute_lnsr(const std::string& country, const panel::Panel& panel,
                                         const LnsrBounds& bounds, int window,
                                         const LnsrWeights& weights, const std::string& mu_source) {
    const LnsrRaw raw = compute_raw(country, panel, window, mu_source);
    std::vector<LnsrComponents> out;
    out.reserve(raw.v.size());
    for (size_t i = 0; i < raw.v.size(); ++i) {
        LnsrComponents c;
        c.country = country;
        c.year = raw.v.years[i];
        c.v = raw.v.values[i];
        c.dv = raw.dv.values[i];
        c.var_v = raw.var_v.values[i];
        c.eps = raw.eps.values[i];
        c.rms_eps = raw.rms_eps.values[i];
        c.align = raw.align.values[i];
        if (c.var_v)
            c.score_var_v = scaling::score(scaling::invert_bad_metric(*c.var_v), bounds.inv_var_v).value;
        if (c.rms_eps)
            c.score_rms_eps =
                scaling::score(scaling::invert_bad_metric(*c.rms_eps), bounds.inv_rms_eps).value;
        if (c.align) c.score_align = scaling::score(*c.align, bounds.align).value;
        c.lnsr = scaling::weighted_mean_renormalized({{c.score_var_v, weights.var_v},
                                                      {c.score_rms_eps, weights.rms_eps},
                                                      {c.score_align, weights.align}});
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace gi::lnsr
