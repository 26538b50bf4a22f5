#include "gi/scaling.hpp"

#include <algorithm>
#include <cmath>

#include "gi/error.hpp"
#include "gi/numerics.hpp"

namespace gi::scaling {

ScalingBounds fit_bounds(const std::vector<double>& pool, const std::string& metric,
                         double lower_q, double upper_q) {
    if (pool.empty()) throw DomainError("fit_bounds: empty pool for metric " + metric);
    if (!(lower_q < upper_q)) throw DomainError("fit_bounds: lower quantile must be below upper");
    ScalingBounds b;
    b.metric = metric;
    b.p5 = numerics::percentile(pool, lower_q);
    b.p95 = numerics::percentile(pool, upper_q);
    b.pool_size = static_cast<int>(pool.size());
    return b;
}

ScoreResult score(double x, const ScalingBounds& bounds) {
    if (bounds.degenerate()) return {50.0, true};
    const double raw = 100.0 * (x - bounds.p5) / (bounds.p95 - bounds.p5);
    return {std::clamp(raw, 0.0, 100.0), false};
}

double invert_bad_metric(double x) {
    if (x < 0.0) throw DomainError("invert_bad_metric: negative input");
    return 1.0 / (1.0 + x);
}

std::optional<double> weighted_mean_renormalized(const std::vector<WeightedComponent>& components) {
    double wsum = 0.0;
    double acc = 0.0;
    for (const auto& c : components) {
        if (c.weight <= 0.0) throw DomainError("weighted_mean_renormalized: non-positive weight");
        if (!c.value) continue;
        wsum += c.weight;
        acc += c.weight * (*c.value);
    }
    if (wsum == 0.0) return std::nullopt;
    return acc / wsum;
}

} // namespace gi::scaling
