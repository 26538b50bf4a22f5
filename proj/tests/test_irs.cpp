#include <doctest.h>

#include <cmath>
#include <random>

#include "gi/irs.hpp"
#include "gi/panel.hpp"
#include "oracles.hpp"

using namespace gi;

namespace {

// Builds a single-country panel with fully controlled series.
panel::Panel make_panel(const std::vector<std::optional<double>>& gini,
                        const std::vector<double>& pi, const std::vector<double>& u,
                        const std::vector<double>& gdppc, int first_year = 2010) {
    std::vector<panel::Observation> obs;
    for (size_t i = 0; i < pi.size(); ++i) {
        const int y = first_year + static_cast<int>(i);
        obs.push_back({"GEO", y, panel::codes::inflation, pi[i]});
        obs.push_back({"GEO", y, panel::codes::unemployment, u[i]});
        obs.push_back({"GEO", y, panel::codes::gdp_per_capita, gdppc[i]});
        if (i < gini.size() && gini[i]) obs.push_back({"GEO", y, panel::codes::gini, *gini[i]});
    }
    return panel::derive_indicators(
        panel::Panel(std::move(obs), panel::IndicatorRegistry::defaults()));
}

} // namespace

TEST_CASE("fit_inequality_model: exact linear Gini recovered") {
    std::vector<double> pi, u, gdppc;
    std::vector<std::optional<double>> gini;
    for (int i = 0; i < 12; ++i) {
        pi.push_back(2.0 + 0.7 * i + 0.13 * i * i);
        u.push_back(15.0 - 0.4 * i + ((i % 3) - 1));
        gdppc.push_back(3000.0 * std::exp(0.05 * i));
        gini.push_back(30.0 + 0.5 * pi.back() - 0.2 * u.back());
    }
    const auto p = make_panel(gini, pi, u, gdppc);
    const auto fit = irs::fit_inequality_model("GEO", p, 8);
    REQUIRE(fit.has_value());
    CHECK(fit->coefficients[0] == doctest::Approx(30.0).epsilon(1e-9));
    CHECK(fit->coefficients[1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(fit->coefficients[2] == doctest::Approx(-0.2).epsilon(1e-9));
    CHECK(std::fabs(fit->coefficients[3]) < 1e-8);
    CHECK(fit->r_squared == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fit_inequality_model: coverage gate") {
    std::vector<double> pi, u, gdppc;
    std::vector<std::optional<double>> gini;
    for (int i = 0; i < 12; ++i) {
        pi.push_back(2.0 + 0.1 * i);
        u.push_back(10.0);
        gdppc.push_back(3000.0 + 100.0 * i);
        gini.push_back(i < 5 ? std::optional<double>(35.0 + 0.3 * i) : std::nullopt);
    }
    CHECK_FALSE(irs::fit_inequality_model("GEO", make_panel(gini, pi, u, gdppc), 8).has_value());
}

TEST_CASE("fit_inequality_model: noisy fixture matches the normal-equation oracle") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> noise(0.0, 0.7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> pi, u, gdppc;
    std::vector<std::optional<double>> gini;
    for (int i = 0; i < 15; ++i) {
        pi.push_back(3.0 + 4.0 * unif(rng));
        u.push_back(8.0 + 6.0 * unif(rng));
        gdppc.push_back(2500.0 * std::exp(0.04 * i + 0.02 * unif(rng)));
        gini.push_back(28.0 + 0.4 * pi.back() - 0.1 * u.back() + noise(rng));
    }
    const auto p = make_panel(gini, pi, u, gdppc);
    const auto fit = irs::fit_inequality_model("GEO", p, 8);
    REQUIRE(fit.has_value());

    std::vector<std::vector<double>> X;
    std::vector<double> y;
    const auto logy = p.series("GEO", panel::codes::log_gdppc_derived);
    const auto gs = p.series("GEO", panel::codes::gini);
    for (size_t i = 0; i < gs.size(); ++i) {
        if (!gs.values[i]) continue;
        X.push_back({1.0, pi[i], u[i], *logy.values[i]});
        y.push_back(*gs.values[i]);
    }
    const auto ref = oracles::ols_normal_equations(X, y);
    for (size_t j = 0; j < 4; ++j) {
        const double scale = std::max(1.0, std::fabs(ref.coefficients[j]));
        CHECK(std::fabs(fit->coefficients[j] - ref.coefficients[j]) / scale < 1e-9);
    }
    CHECK(fit->r_squared == doctest::Approx(ref.r_squared).epsilon(1e-9));
}

TEST_CASE("delta_gini_series: consecutive diffs only, no gap bridging") {
    TimeSeries gini{{2019, 2020, 2021, 2022},
                    {36.0, 34.5, std::nullopt, 33.0}};
    const auto d = irs::delta_gini_series(gini);
    CHECK_FALSE(d.values[0].has_value());
    CHECK(*d.values[1] == doctest::Approx(1.5).epsilon(1e-14));
    CHECK_FALSE(d.values[2].has_value());
    CHECK_FALSE(d.values[3].has_value());
}

TEST_CASE("delta_gini_series: constant series gives zeros") {
    TimeSeries gini{{2019, 2020, 2021}, {35.0, 35.0, 35.0}};
    const auto d = irs::delta_gini_series(gini);
    CHECK(*d.values[1] == 0.0);
    CHECK(*d.values[2] == 0.0);
}

TEST_CASE("smoothing_signal: linear trend is perfectly smooth") {
    TimeSeries gini{{2010, 2011, 2012, 2013, 2014}, {30.0, 31.0, 32.0, 33.0, 34.0}};
    const auto s = irs::smoothing_signal(gini, 5);
    CHECK(*s.values[4] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("smoothing_signal: alternating series") {
    TimeSeries gini{{2010, 2011, 2012, 2013, 2014}, {30.0, 32.0, 30.0, 32.0, 30.0}};
    const auto s = irs::smoothing_signal(gini, 5);
    // second differences are -4, +4, -4 -> rms 4 -> 1/(1+4)
    CHECK(*s.values[4] == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("smoothing_signal: incomplete window is missing") {
    TimeSeries gini{{2010, 2011, 2012, 2013, 2014}, {30.0, std::nullopt, 32.0, 33.0, 34.0}};
    const auto s = irs::smoothing_signal(gini, 5);
    for (const auto& v : s.values) CHECK_FALSE(v.has_value());
}

TEST_CASE("compute_irs: aggregation and renormalization") {
    irs::IrsBounds bounds;
    bounds.r_squared = {"r2", 0.0, 1.0, 10};
    bounds.inv_dgini = {"inv", 0.0, 1.0, 10};
    bounds.smoothing = {"s", 0.0, 1.0, 10};

    // all component scores at 70 (dgini chosen so 1/(1+x) = 0.7)
    const auto c = irs::compute_irs("GEO", 2020, 0.7, 1.0 / 0.7 - 1.0, 0.7, bounds, {});
    REQUIRE(c.irs.has_value());
    CHECK(*c.irs == doctest::Approx(70.0).epsilon(1e-9));

    // (80, missing, 40) -> 66.666 via weight renormalization
    const auto partial = irs::compute_irs("GEO", 2020, 0.8, std::nullopt, 0.4, bounds, {});
    CHECK(*partial.irs == doctest::Approx(200.0 / 3.0).epsilon(1e-9));

    // all missing -> absent
    const auto empty = irs::compute_irs("GEO", 2020, std::nullopt, std::nullopt, std::nullopt,
                                        bounds, {});
    CHECK_FALSE(empty.irs.has_value());
}
