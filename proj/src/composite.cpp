#include "gi/composite.hpp"

#include <algorithm>
#include <cmath>

#include "gi/error.hpp"

namespace gi::composite {

std::optional<double> aggregate_gi(const PillarTriple& pillars, const GiWeights& weights,
                                   double epsilon_floor) {
    if (weights.irs <= 0.0 || weights.lnsr <= 0.0 || weights.ifc <= 0.0)
        throw DomainError("aggregate_gi: weights must be positive");
    if (epsilon_floor < 0.0) throw DomainError("aggregate_gi: negative epsilon floor");

    double wsum = 0.0;
    std::vector<std::pair<double, double>> present; // (value, weight)
    auto add = [&](const std::optional<double>& p, double w) {
        if (!p) return;
        present.emplace_back(std::max(*p, epsilon_floor), w);
        wsum += w;
    };
    add(pillars.irs, weights.irs);
    add(pillars.lnsr, weights.lnsr);
    add(pillars.ifc, weights.ifc);
    if (present.empty()) return std::nullopt;

    // A zero pillar (with floor 0) annihilates the geometric mean.
    for (const auto& [v, w] : present)
        if (v == 0.0) return 0.0;

    double log_acc = 0.0;
    for (const auto& [v, w] : present) log_acc += (w / wsum) * std::log(v);
    return std::exp(log_acc);
}

std::optional<std::array<double, 3>> decompose_dlog(const PillarTriple& prev,
                                                    const PillarTriple& curr,
                                                    const GiWeights& weights) {
    auto positive = [](const std::optional<double>& v) { return v && *v > 0.0; };
    if (!positive(prev.irs) || !positive(prev.lnsr) || !positive(prev.ifc) ||
        !positive(curr.irs) || !positive(curr.lnsr) || !positive(curr.ifc))
        return std::nullopt;
    const double w = weights.total();
    return std::array<double, 3>{
        (weights.irs / w) * (std::log(*curr.irs) - std::log(*prev.irs)),
        (weights.lnsr / w) * (std::log(*curr.lnsr) - std::log(*prev.lnsr)),
        (weights.ifc / w) * (std::log(*curr.ifc) - std::log(*prev.ifc)),
    };
}

RegionRow regional_mean(const std::vector<MemberScores>& members, const std::string& region) {
    RegionRow row;
    row.region = region;
    auto fold = [&](auto getter) {
        RegionField field;
        double acc = 0.0;
        for (const auto& m : members) {
            const auto v = getter(m);
            if (v) {
                acc += *v;
                ++field.n;
            }
        }
        if (field.n > 0) field.mean = acc / field.n;
        return field;
    };
    row.gi = fold([](const MemberScores& m) { return m.gi; });
    row.irs = fold([](const MemberScores& m) { return m.pillars.irs; });
    row.lnsr = fold([](const MemberScores& m) { return m.pillars.lnsr; });
    row.ifc = fold([](const MemberScores& m) { return m.pillars.ifc; });
    return row;
}

DescriptiveStats descriptive_stats(const TimeSeries& series) {
    DescriptiveStats stats;
    std::vector<double> present;
    for (size_t i = 0; i < series.size(); ++i) {
        if (series.values[i]) {
            present.push_back(*series.values[i]);
            stats.last = *series.values[i];
        }
    }
    stats.n = static_cast<int>(present.size());
    if (present.empty()) return stats;
    double acc = 0.0;
    for (double v : present) acc += v;
    const double mean = acc / present.size();
    stats.mean = mean;
    stats.min = *std::min_element(present.begin(), present.end());
    stats.max = *std::max_element(present.begin(), present.end());
    if (present.size() >= 2) {
        double ss = 0.0;
        for (double v : present) ss += (v - mean) * (v - mean);
        stats.std_dev = std::sqrt(ss / (present.size() - 1.0));
    }
    return stats;
}

} // namespace gi::composite
