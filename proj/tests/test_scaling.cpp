#include <doctest.h>

#include <numeric>

#include "gi/error.hpp"
#include "gi/scaling.hpp"

using namespace gi;

TEST_CASE("fit_bounds: pool 1..100") {
    std::vector<double> pool(100);
    std::iota(pool.begin(), pool.end(), 1.0);
    const auto b = scaling::fit_bounds(pool, "m");
    CHECK(b.p5 == doctest::Approx(5.95).epsilon(1e-12));
    CHECK(b.p95 == doctest::Approx(95.05).epsilon(1e-12));
    CHECK(b.pool_size == 100);
    CHECK_FALSE(b.degenerate());
}

TEST_CASE("fit_bounds: constant pool is degenerate, empty pool throws") {
    const auto b = scaling::fit_bounds({7, 7, 7}, "m");
    CHECK(b.p5 == 7);
    CHECK(b.p95 == 7);
    CHECK(b.degenerate());
    CHECK_THROWS_AS(scaling::fit_bounds({}, "m"), DomainError);
}

TEST_CASE("fit_bounds: custom quantiles") {
    std::vector<double> pool(100);
    std::iota(pool.begin(), pool.end(), 1.0);
    const auto b = scaling::fit_bounds(pool, "m", 0.10, 0.90);
    CHECK(b.p5 == doctest::Approx(10.9).epsilon(1e-12));
    CHECK(b.p95 == doctest::Approx(90.1).epsilon(1e-12));
}

TEST_CASE("score: boundaries, midpoint, clipping") {
    const scaling::ScalingBounds b{"m", 2.0, 12.0, 10};
    CHECK(scaling::score(2.0, b).value == 0.0);
    CHECK(scaling::score(12.0, b).value == 100.0);
    CHECK(scaling::score(7.0, b).value == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(scaling::score(14.0, b).value == 100.0);
    CHECK(scaling::score(-3.0, b).value == 0.0);
    CHECK_FALSE(scaling::score(7.0, b).degenerate);
}

TEST_CASE("score: degenerate bounds map everything to 50") {
    const scaling::ScalingBounds b{"m", 7.0, 7.0, 3};
    const auto r = scaling::score(123.0, b);
    CHECK(r.value == 50.0);
    CHECK(r.degenerate);
}

TEST_CASE("invert_bad_metric: pinned points and domain") {
    CHECK(scaling::invert_bad_metric(0.0) == 1.0);
    CHECK(scaling::invert_bad_metric(1.0) == 0.5);
    CHECK(scaling::invert_bad_metric(4.0) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK_THROWS_AS(scaling::invert_bad_metric(-0.5), DomainError);
}

TEST_CASE("weighted_mean_renormalized: full, partial, empty") {
    using scaling::WeightedComponent;
    CHECK(*scaling::weighted_mean_renormalized(
              {{80.0, 0.4}, {60.0, 0.4}, {40.0, 0.2}}) == doctest::Approx(64.0).epsilon(1e-12));
    CHECK(*scaling::weighted_mean_renormalized(
              {{80.0, 0.4}, {std::nullopt, 0.4}, {40.0, 0.2}}) ==
          doctest::Approx(200.0 / 3.0).epsilon(1e-12));
    CHECK_FALSE(scaling::weighted_mean_renormalized(
                    {{std::nullopt, 0.4}, {std::nullopt, 0.6}})
                    .has_value());
}
