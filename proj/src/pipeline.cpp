#include "gi/pipeline.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gi/scaling.hpp"

namespace gi::pipeline {

namespace {

CountryRaw compute_country_raw(const std::string& country, const panel::Panel& panel,
                               const config::RunConfig& cfg) {
    CountryRaw raw;
    raw.country = country;
    raw.irs_fit = irs::fit_inequality_model(country, panel, cfg.irs_min_obs);
    const auto gini = panel.series(country, panel::codes::gini);
    raw.abs_dgini = irs::delta_gini_series(gini);
    raw.smoothing = irs::smoothing_signal(gini, cfg.irs_smoothing_window);
    raw.lnsr = lnsr::compute_raw(country, panel, cfg.window, cfg.mu_source);
    ifc::IfcConfig ifc_cfg = cfg.ifc;
    ifc_cfg.window = cfg.window;
    ifc_cfg.hmm.seed = cfg.seed;
    raw.ifc = ifc::compute_raw(country, panel, ifc_cfg);
    return raw;
}

void pool_series(std::vector<double>& pool, const TimeSeries& series) {
    for (const auto& v : series.values)
        if (v) pool.push_back(*v);
}

void pool_inverted(std::vector<double>& pool, const TimeSeries& series) {
    for (const auto& v : series.values)
        if (v) pool.push_back(scaling::invert_bad_metric(*v));
}

BoundsSet fit_all_bounds(const std::vector<CountryRaw>& raw, const panel::Panel& panel,
                         const config::RunConfig& cfg) {
    std::vector<double> p_r2, p_inv_dgini, p_smooth;
    std::vector<double> p_inv_var_v, p_inv_rms_eps, p_align;
    std::vector<double> p_d_fpas, p_d_ar, p_hmm, p_match;

    const size_t span = static_cast<size_t>(panel.last_year() - panel.first_year() + 1);
    for (const auto& r : raw) {
        if (r.irs_fit)
            p_r2.insert(p_r2.end(), span, r.irs_fit->r_squared); // constant per country-year
        pool_inverted(p_inv_dgini, r.abs_dgini);
        pool_series(p_smooth, r.smoothing);
        pool_inverted(p_inv_var_v, r.lnsr.var_v);
        pool_inverted(p_inv_rms_eps, r.lnsr.rms_eps);
        pool_series(p_align, r.lnsr.align);
        pool_series(p_d_fpas, r.ifc.d_fpas_pos);
        pool_series(p_d_ar, r.ifc.d_ar_pos);
        pool_series(p_hmm, r.ifc.hmm_acc);
        pool_series(p_match, r.ifc.match);
    }

    auto fit = [&](std::vector<double>& pool, const char* metric) -> scaling::ScalingBounds {
        if (pool.empty()) return {metric, 0.0, 0.0, 0}; // degenerate, scores to 50
        return scaling::fit_bounds(pool, metric, cfg.lower_q, cfg.upper_q);
    };

    BoundsSet b;
    if (cfg.r2_direct) {
        // direct mode maps R^2 in [0,1] straight onto 0..100
        b.irs.r_squared = {"irs.r2", 0.0, 1.0, static_cast<int>(p_r2.size())};
    } else {
        b.irs.r_squared = fit(p_r2, "irs.r2");
    }
    b.irs.inv_dgini = fit(p_inv_dgini, "irs.inv_dgini");
    b.irs.smoothing = fit(p_smooth, "irs.smoothing");
    b.lnsr.inv_var_v = fit(p_inv_var_v, "lnsr.inv_var_v");
    b.lnsr.inv_rms_eps = fit(p_inv_rms_eps, "lnsr.inv_rms_eps");
    b.lnsr.align = fit(p_align, "lnsr.align");
    b.ifc.d_fpas_pos = fit(p_d_fpas, "ifc.d_fpas_pos");
    b.ifc.d_ar_pos = fit(p_d_ar, "ifc.d_ar_pos");
    b.ifc.hmm_acc = fit(p_hmm, "ifc.hmm_acc");
    b.ifc.zeta_match = fit(p_match, "ifc.zeta_match");
    return b;
}

CountryScores score_country(const CountryRaw& raw, const BoundsSet& bounds,
                            const config::RunConfig& cfg, const panel::Panel& panel) {
    CountryScores out;
    out.country = raw.country;
    const int first = panel.first_year();
    const int last = panel.last_year();

    for (int year = first; year <= last; ++year) {
        const size_t i = static_cast<size_t>(year - first);
        std::optional<double> r2;
        if (raw.irs_fit) r2 = raw.irs_fit->r_squared;
        out.irs.push_back(irs::compute_irs(raw.country, year, r2, raw.abs_dgini.values[i],
                                           raw.smoothing.values[i], bounds.irs, cfg.irs_weights));
    }

    out.lnsr = lnsr::compute_lnsr(raw.country, panel, bounds.lnsr, cfg.window, cfg.lnsr_weights,
                                  cfg.mu_source);

    for (int year = first; year <= last; ++year) {
        const size_t i = static_cast<size_t>(year - first);
        ifc::IfcComponents c;
        c.rmse_ar = raw.ifc.rmse_ar.values[i];
        c.rmse_fpas = raw.ifc.rmse_fpas.values[i];
        c.rmse_fz = raw.ifc.rmse_fz.values[i];
        c.d_fpas = raw.ifc.d_fpas.values[i];
        c.d_ar = raw.ifc.d_ar.values[i];
        c.d_fpas_pos = raw.ifc.d_fpas_pos.values[i];
        c.d_ar_pos = raw.ifc.d_ar_pos.values[i];
        c.hmm_acc = raw.ifc.hmm_acc.values[i];
        c.zeta_match = raw.ifc.match.values[i];
        out.ifc.push_back(ifc::compute_ifc(raw.country, year, c, bounds.ifc, cfg.ifc_weights));
    }

    for (int year = first; year <= last; ++year) {
        const size_t i = static_cast<size_t>(year - first);
        composite::GiRecord rec;
        rec.country = raw.country;
        rec.year = year;
        rec.pillars = {out.irs[i].irs, out.lnsr[i].lnsr, out.ifc[i].ifc};
        rec.gi = composite::aggregate_gi(rec.pillars, cfg.pillar_weights, cfg.epsilon_floor);
        if (i > 0)
            rec.contributions =
                composite::decompose_dlog(out.gi.back().pillars, rec.pillars, cfg.pillar_weights);
        out.gi.push_back(std::move(rec));
    }
    return out;
}

} // namespace

PipelineResult run(const panel::Panel& panel, const config::RunConfig& cfg, ExecutionMode mode) {
    PipelineResult result;
    const auto& countries = panel.countries();
    const int n = static_cast<int>(countries.size());
    result.raw.resize(countries.size());

    if (mode == ExecutionMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i)
            result.raw[static_cast<size_t>(i)] = compute_country_raw(countries[static_cast<size_t>(i)], panel, cfg);
    } else {
        for (int i = 0; i < n; ++i)
            result.raw[static_cast<size_t>(i)] = compute_country_raw(countries[static_cast<size_t>(i)], panel, cfg);
    }

    result.bounds = fit_all_bounds(result.raw, panel, cfg);

    result.scores.resize(countries.size());
    if (mode == ExecutionMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i)
            result.scores[static_cast<size_t>(i)] =
                score_country(result.raw[static_cast<size_t>(i)], result.bounds, cfg, panel);
    } else {
        for (int i = 0; i < n; ++i)
            result.scores[static_cast<size_t>(i)] =
                score_country(result.raw[static_cast<size_t>(i)], result.bounds, cfg, panel);
    }
    return result;
}

} // namespace gi::pipeline
