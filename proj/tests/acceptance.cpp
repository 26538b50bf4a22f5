// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Run as: gi_acceptance <data-dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "gi/composite.hpp"
#include "gi/ifc.hpp"
#include "gi/numerics.hpp"
#include "gi/panel.hpp"
#include "gi/pipeline.hpp"
#include "gi/report.hpp"
#include "gi/scenario.hpp"
#include "oracles.hpp"
#include "table_fixtures.hpp"

using namespace gi;
using fixtures::kScenarioRows;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report_line(int n, bool ok, const std::string& what) {
    std::printf("criterion %2d: %s — %s\n", n, ok ? "pass" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

double elapsed_s(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<scenario::CountryEndpoints> fixture_endpoints() {
    std::map<std::string, scenario::CountryEndpoints> by_country;
    for (const auto& row : kScenarioRows) {
        if (std::string(row.scenario) != "Baseline") continue;
        auto& ep = by_country[row.country];
        ep.country = row.country;
        auto set = [&](std::optional<scenario::EndpointPair>& field, double v) {
            if (row.year == 2026) field = scenario::EndpointPair{v, 0.0};
            if (row.year == 2030 && field) field->v2030 = v;
        };
        set(ep.irs, row.irs);
        set(ep.lnsr, row.lnsr);
        set(ep.ifc, row.ifc);
        set(ep.gi, row.gi);
    }
    std::vector<scenario::CountryEndpoints> out;
    for (auto& [_, ep] : by_country) out.push_back(ep);
    return out;
}

std::map<std::string, std::vector<double>> baseline_gi_paths() {
    std::map<std::string, std::vector<double>> out;
    for (const auto& row : kScenarioRows)
        if (std::string(row.scenario) == "Baseline") out[row.country].push_back(row.gi);
    return out;
}

using YearMap =
    std::map<std::tuple<std::string, std::string, int>, const scenario::ScenarioYear*>;

YearMap index_paths(const scenario::BuildResult& result) {
    YearMap got;
    for (const auto& path : result.paths)
        for (const auto& y : path.years) got[{path.country, path.scenario, y.year}] = &y;
    return got;
}

// --- criterion 1: baseline composite paths from published endpoints --------

void criterion_1() {
    const auto t0 = Clock::now();
    scenario::BuildOptions opts;
    opts.mode = scenario::GiMode::TableReplication; // endpoint interpolation, no override
    const auto result =
        scenario::build_scenario_paths(fixture_endpoints(), scenario::default_specs(), opts);
    const auto got = index_paths(result);
    bool ok = result.skipped.empty();
    for (const auto& row : kScenarioRows) {
        if (std::string(row.scenario) != "Baseline") continue;
        const auto it = got.find({row.country, row.scenario, row.year});
        if (it == got.end() || !it->second->gi) {
            ok = false;
            continue;
        }
        const double tol = std::string(row.country) == "USA" ? 0.01 : 0.05;
        if (std::fabs(*it->second->gi - row.gi) > tol) ok = false;
    }
    ok = ok && elapsed_s(t0) < 1.0;
    report_line(1, ok, "baseline composite interpolation within 0.05 (USA 0.01), under 1s");
}

// --- criterion 2: binding pillar on every published row --------------------

void criterion_2() {
    const auto t0 = Clock::now();
    bool ok = true;
    for (const auto& row : kScenarioRows) {
        const auto b = scenario::binding_pillar(row.irs, row.lnsr, row.ifc);
        if (b.pillar != row.binding) ok = false;
        if (b.score != std::min({row.irs, row.lnsr, row.ifc})) ok = false;
        if (std::fabs(b.score - row.binding_score) > 1e-9) ok = false;
    }
    ok = ok && elapsed_s(t0) < 1.0;
    report_line(2, ok, "binding pillar name and minimum score exact on all 135 rows, under 1s");
}

// --- criterion 3: shock schedules recovered and tables regenerated ---------

void criterion_3() {
    bool ok = true;
    std::map<std::pair<std::string, int>, const fixtures::ScenarioRow*> baseline;
    for (const auto& row : kScenarioRows)
        if (std::string(row.scenario) == "Baseline") baseline[{row.country, row.year}] = &row;
    const auto specs = scenario::default_specs();
    for (const auto& row : kScenarioRows) {
        const std::string scen = row.scenario;
        if (scen == "Baseline") continue;
        const auto& spec = scen == "Adverse" ? specs[1] : specs[2];
        const auto* base = baseline.at({row.country, row.year});
        const auto k = static_cast<size_t>(row.year - 2026);
        if (std::fabs(row.gi - base->gi - spec.gi_shocks[k]) > 0.02) ok = false;
        for (double diff : {row.irs - base->irs, row.lnsr - base->lnsr, row.ifc - base->ifc})
            if (std::fabs(diff - spec.pillar_shocks[k]) > 0.02) ok = false;
    }

    scenario::BuildOptions opts;
    opts.mode = scenario::GiMode::TableReplication;
    opts.baseline_gi_override = baseline_gi_paths();
    const auto result = scenario::build_scenario_paths(fixture_endpoints(), specs, opts);
    const auto rows = index_paths(result);
    for (const auto& row : kScenarioRows) {
        const auto it = rows.find({row.country, row.scenario, row.year});
        if (it == rows.end() || !it->second->gi || std::fabs(*it->second->gi - row.gi) > 0.02 ||
            it->second->band != row.band)
            ok = false;
    }
    report_line(3, ok, "shock schedules within 0.02 and table regeneration within 0.02");
}

// --- criterion 4: band boundaries and monotonicity -------------------------

void criterion_4() {
    bool ok = scenario::classify_band(50.03) == "50–75" &&
              scenario::classify_band(49.93) == "25–50";
    auto rank = [](const std::string& b) {
        if (b == "0–25") return 0;
        if (b == "25–50") return 1;
        if (b == "50–75") return 2;
        return 3;
    };
    int prev = 0;
    for (int i = 0; i <= 10000; ++i) {
        const int r = rank(scenario::classify_band(i / 100.0));
        if (r < prev) ok = false;
        prev = r;
    }
    ok = ok && prev == 3;
    report_line(4, ok, "band boundary cases and 0.01-step monotonic sweep");
}

// --- criterion 5: forecast-gain formula and truncation ---------------------

void criterion_5() {
    const auto d = ifc::delta_rmse(4.345, 4.090);
    bool ok = d && std::fabs(*d - 5.868) <= 0.01;
    ok = ok && ifc::truncate_gain(-3.2) == 0.0 && ifc::truncate_gain(2.5) == 2.5 &&
         ifc::truncate_gain(0.0) == 0.0;
    report_line(5, ok, "delta-RMSE(4.345, 4.090) = 5.868 within 0.01, negative gains truncate");
}

// --- criterion 6: delta-log decomposition identity -------------------------

void criterion_6() {
    std::mt19937_64 rng(20260824);
    std::uniform_real_distribution<double> unif(0.5, 99.5);
    bool ok = true;
    composite::PillarTriple prev{unif(rng), unif(rng), unif(rng)};
    for (int i = 0; i < 1000; ++i) {
        composite::PillarTriple curr{unif(rng), unif(rng), unif(rng)};
        const auto c = composite::decompose_dlog(prev, curr);
        if (!c) {
            ok = false;
            break;
        }
        const double dlog = std::log(*composite::aggregate_gi(curr)) -
                            std::log(*composite::aggregate_gi(prev));
        if (std::fabs((*c)[0] + (*c)[1] + (*c)[2] - dlog) > 1e-12) ok = false;
        prev = curr;
    }
    report_line(6, ok, "1000 random trajectories: contribution sum matches dlog within 1e-12");
}

// --- criterion 7: composite bounds, idempotence, renormalization -----------

void criterion_7() {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> unif(0.5, 99.5);
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
        const double a = unif(rng), b = unif(rng), c = unif(rng);
        const double gi = *composite::aggregate_gi({a, b, c});
        if (gi < std::min({a, b, c}) - 1e-12 || gi > std::max({a, b, c}) + 1e-12) ok = false;

        const double e = unif(rng);
        if (std::fabs(*composite::aggregate_gi({e, e, e}) - e) > 1e-12) ok = false;

        const double two = *composite::aggregate_gi({a, std::nullopt, c});
        const double direct = std::exp((0.35 * std::log(a) + 0.30 * std::log(c)) / 0.65);
        if (std::fabs(two - direct) > 1e-12) ok = false;
    }
    report_line(7, ok, "1000 random triples: bounds, equal-pillar identity, two-pillar renormalization");
}

// --- criterion 8: numerics against independent oracles ---------------------

void criterion_8() {
    bool ok = true;

    std::mt19937_64 rng(99);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> unif(-5.0, 5.0);
    for (int f = 0; f < 100; ++f) {
        const int n = 12 + static_cast<int>(rng() % 30);
        std::vector<std::vector<double>> design;
        std::vector<double> y;
        for (int r = 0; r < n; ++r) {
            const double x1 = unif(rng), x2 = unif(rng), x3 = unif(rng);
            design.push_back({1.0, x1, x2, x3});
            y.push_back(2.0 + 0.7 * x1 - 1.3 * x2 + 0.4 * x3 + noise(rng));
        }
        const auto fit = numerics::ols_fit(design, y);
        const auto ref = oracles::ols_normal_equations(design, y);
        for (size_t i = 0; i < ref.coefficients.size(); ++i) {
            const double scale = std::max(1.0, std::fabs(ref.coefficients[i]));
            if (std::fabs(fit.coefficients[i] - ref.coefficients[i]) > 1e-9 * scale) ok = false;
        }
        if (std::fabs(fit.r_squared - ref.r_squared) > 1e-9) ok = false;
    }

    std::vector<int> years;
    std::vector<std::optional<double>> va, vb;
    for (int i = 0; i < 60; ++i) {
        years.push_back(2000 + i);
        va.push_back(i % 11 == 7 ? std::nullopt : std::optional<double>(std::sin(0.3 * i) + unif(rng)));
        vb.push_back(i % 13 == 4 ? std::nullopt : std::optional<double>(std::cos(0.2 * i) + unif(rng)));
    }
    const TimeSeries sa(years, va), sb(years, vb);
    for (int w : {3, 5, 8}) {
        const auto var = numerics::rolling_stat(sa, w, numerics::RollingKind::Variance);
        const auto rms = numerics::rolling_stat(sa, w, numerics::RollingKind::Rms);
        const auto corr = numerics::rolling_corr(sa, sb, w);
        for (size_t i = 0; i < years.size(); ++i) {
            const auto ov = oracles::slice_variance(va, i, w);
            const auto orms = oracles::slice_rms(va, i, w);
            const auto oc = oracles::slice_corr(va, vb, i, w);
            if (var.values[i].has_value() != ov.has_value() ||
                (ov && std::fabs(*var.values[i] - *ov) > 1e-12))
                ok = false;
            if (rms.values[i].has_value() != orms.has_value() ||
                (orms && std::fabs(*rms.values[i] - *orms) > 1e-12))
                ok = false;
            if (corr.values[i].has_value() != oc.has_value() ||
                (oc && std::fabs(*corr.values[i] - *oc) > 1e-12))
                ok = false;
        }
    }

    if (std::abs(numerics::zeta_critical_line(14.134725)) >= 1e-3) ok = false;
    if (std::fabs(numerics::zeta_critical_line(0.0).real() - (-1.46035)) > 1e-4) ok = false;
    for (double t : {2.0, 14.0, 25.01, 49.77, 101.3}) {
        if (std::abs(numerics::zeta_critical_line(t) - oracles::zeta_eta(t)) > 1e-8) ok = false;
    }
    if (std::fabs(numerics::student_t_sf(1.0, 1) - 0.25) > 1e-12) ok = false;
    if (std::fabs(numerics::student_t_sf(0.0, 7) - 0.5) > 1e-12) ok = false;

    report_line(8, ok, "regression, rolling stats, critical-line zeta, and t tail match oracles");
}

// --- criterion 9: forecast-correction calibration --------------------------

void criterion_9() {
    bool ok = true;
    std::vector<int> years;
    for (int y = 2000; y < 2020; ++y) years.push_back(y);
    const auto signal = ifc::build_zeta_signal(years, 18.0, 1.0, 5);
    const auto grid = ifc::alpha_grid(ifc::IfcConfig{});

    std::vector<std::optional<double>> base(years.size());
    for (size_t i = 0; i < years.size(); ++i) base[i] = 3.0 + 0.1 * static_cast<double>(i);
    const TimeSeries fpas(years, base);

    // no signal in the errors: alpha must calibrate to exactly zero
    if (ifc::calibrate_alpha(fpas, signal, fpas, 2000, 2019, grid) != 0.0) ok = false;

    // planted alpha = 2 on the centered signal must be recovered from the grid
    std::vector<std::optional<double>> planted(years.size());
    for (size_t i = 0; i < years.size(); ++i) planted[i] = *base[i] + 2.0 * signal.centered[i];
    if (ifc::calibrate_alpha(fpas, signal, TimeSeries(years, planted), 2000, 2019, grid) != 2.0)
        ok = false;

    // the corrected forecast at alpha = 0 is the uncorrected one: zero gain
    const auto fz = ifc::fpas_zeta_forecast(fpas, signal, 0.0);
    const auto rmse_f = ifc::rolling_rmse(TimeSeries(years, planted), fpas, 5);
    const auto rmse_z = ifc::rolling_rmse(TimeSeries(years, planted), fz, 5);
    for (size_t i = 0; i < years.size(); ++i) {
        if (rmse_f.values[i].has_value() != rmse_z.values[i].has_value()) ok = false;
        if (rmse_f.values[i]) {
            const auto d = ifc::delta_rmse(*rmse_f.values[i], *rmse_z.values[i]);
            if (!d || *d != 0.0) ok = false;
        }
    }

    // out-of-sample audit: one-step forecasts may not read the target year
    std::vector<std::optional<double>> pi(years.size());
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 0.5);
    pi[0] = 4.0;
    for (size_t i = 1; i < pi.size(); ++i) pi[i] = 1.0 + 0.7 * *pi[i - 1] + noise(rng);
    const TimeSeries orig(years, pi);
    auto mutated_values = pi;
    *mutated_values.back() += 50.0;
    const TimeSeries mutated(years, mutated_values);
    const auto fc_orig = ifc::ar1_forecast(orig, 8);
    const auto fc_mut = ifc::ar1_forecast(mutated, 8);
    if (!fc_orig.values.back() || !fc_mut.values.back() ||
        *fc_orig.values.back() != *fc_mut.values.back())
        ok = false;

    report_line(9, ok, "alpha calibrates to 0 on clean errors, recovers a planted 2, stays out of sample");
}

// --- criterion 10: end-to-end determinism ----------------------------------

std::string serialize_everything(const pipeline::PipelineResult& result) {
    std::ostringstream out;
    report::Formatting fmt;
    fmt.raw_precision = true;
    report::write_pillars_csv(out, result.scores, fmt);
    report::write_gi_csv(out, result.scores, fmt);
    report::write_components_csv(out, result);
    report::write_contributions_csv(out, result.scores);
    report::write_forecasts_csv(out, result);
    report::write_bounds_csv(out, result.bounds);
    out << report::pillars_json(result.scores) << report::gi_json(result.scores);
    return out.str();
}

void criterion_10(const std::string& data_dir) {
    const auto t0 = Clock::now();
    bool ok = true;
    std::ifstream in(data_dir + "/fixture_panel.csv");
    if (!in.good()) {
        report_line(10, false, "fixture panel not found under " + data_dir);
        return;
    }
    const auto panel =
        panel::derive_indicators(panel::parse_panel_csv(in, panel::IndicatorRegistry::defaults()));
    config::RunConfig cfg;
    const auto first = serialize_everything(pipeline::run(panel, cfg));
    const auto second = serialize_everything(pipeline::run(panel, cfg));
    ok = !first.empty() && first == second &&
         report::digest_hex(first) == report::digest_hex(second);
    ok = ok && elapsed_s(t0) < 10.0;
    report_line(10, ok, "two full runs on the bundled panel are byte-identical, under 10s");
}

} // namespace

int main(int argc, char** argv) {
    const std::string data_dir = argc > 1 ? argv[1] : "data";
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(data_dir);
    if (failures == 0) {
        std::printf("all 10 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", failures);
    return 1;
}
