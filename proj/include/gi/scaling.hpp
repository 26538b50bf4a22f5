#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gi::scaling {

// Robust percentile bounds fitted on the pooled country-year sample.
struct ScalingBounds {
    std::string metric;
    double p5 = 0.0;
    double p95 = 0.0;
    int pool_size = 0;
    bool degenerate() const { return p95 <= p5; }
};

struct ScoreResult {
    double value = 0.0; // in [0,100]
    bool degenerate = false;
};

// Quantiles are configurable (p10/p90 robustness variants); defaults are
// the 5th/95th percentiles.
ScalingBounds fit_bounds(const std::vector<double>& pool, const std::string& metric,
                         double lower_q = 0.05, double upper_q = 0.95);

// 100*(x - p5)/(p95 - p5), clipped to [0,100]. Degenerate bounds score 50.
ScoreResult score(double x, const ScalingBounds& bounds);

// 1/(1+x) for x >= 0; maps "bad" magnitudes onto (0,1] with 0 -> 1.
double invert_bad_metric(double x);

struct WeightedComponent {
    std::optional<double> value;
    double weight = 0.0;
};

// Weighted mean over present components with weights of the present ones
// rescaled to sum to 1; absent when every component is missing.
std::optional<double> weighted_mean_renormalized(const std::vector<WeightedComponent>& components);

} // namespace gi::scaling
