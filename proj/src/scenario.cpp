#include "gi/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "gi/error.hpp"

namespace gi::scenario {

std::vector<ScenarioSpec> default_specs() {
    ScenarioSpec baseline{"Baseline", kHorizonStart, kHorizonEnd, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}};
    ScenarioSpec adverse{"Adverse",
                         kHorizonStart,
                         kHorizonEnd,
                         {-5.0, -6.0, -7.0, -7.5, -8.0},
                         {-4.0, -5.0, -6.0, -6.5, -7.0}};
    ScenarioSpec optimistic{"Optimistic",
                            kHorizonStart,
                            kHorizonEnd,
                            {4.0, 4.5, 5.0, 5.5, 6.0},
                            {4.0, 4.5, 5.0, 5.5, 6.0}};
    return {baseline, adverse, optimistic};
}

double interpolate_baseline(double v2026, double v2030, int year) {
    if (year < kHorizonStart || year > kHorizonEnd)
        throw DomainError("interpolate_baseline: year outside horizon");
    return v2026 + (static_cast<double>(year - kHorizonStart) / 4.0) * (v2030 - v2026);
}

double apply_shock(double base, double shock) { return std::clamp(base + shock, 0.0, 100.0); }

BindingResult binding_pillar(double irs, double lnsr, double ifc) {
    BindingResult r{"IRS", irs};
    if (lnsr < r.score) r = {"LNSR", lnsr};
    if (ifc < r.score) r = {"IFC", ifc};
    return r;
}

std::string classify_band(double gi) {
    if (gi < 0.0 || gi > 100.0) throw DomainError("classify_band: value outside [0,100]");
    if (gi < 25.0) return "0–25";
    if (gi < 50.0) return "25–50";
    if (gi < 75.0) return "50–75";
    return "75–100";
}

BuildResult build_scenario_paths(const std::vector<CountryEndpoints>& endpoints,
                                 const std::vector<ScenarioSpec>& specs,
                                 const BuildOptions& options) {
    BuildResult result;
    for (const auto& spec : specs) {
        if (static_cast<int>(spec.pillar_shocks.size()) != spec.span() ||
            static_cast<int>(spec.gi_shocks.size()) != spec.span())
            throw DomainError("build_scenario_paths: shock list does not cover horizon for " +
                              spec.name);
    }

    for (const auto& ep : endpoints) {
        if (!ep.irs || !ep.lnsr || !ep.ifc ||
            (options.mode == GiMode::TableReplication && !ep.gi &&
             options.baseline_gi_override.find(ep.country) == options.baseline_gi_override.end())) {
            result.skipped.push_back(ep.country);
            continue;
        }
        const auto override_it = options.baseline_gi_override.find(ep.country);
        for (const auto& spec : specs) {
            ScenarioPath path;
            path.country = ep.country;
            path.scenario = spec.name;
            for (int year = spec.first_year; year <= spec.last_year; ++year) {
                const int k = year - spec.first_year;
                ScenarioYear sy;
                sy.year = year;
                sy.irs = apply_shock(interpolate_baseline(ep.irs->v2026, ep.irs->v2030, year),
                                     spec.pillar_shocks[k]);
                sy.lnsr = apply_shock(interpolate_baseline(ep.lnsr->v2026, ep.lnsr->v2030, year),
                                      spec.pillar_shocks[k]);
                sy.ifc = apply_shock(interpolate_baseline(ep.ifc->v2026, ep.ifc->v2030, year),
                                     spec.pillar_shocks[k]);

                if (options.mode == GiMode::RecomputeGi) {
                    sy.gi = composite::aggregate_gi({sy.irs, sy.lnsr, sy.ifc}, options.weights,
                                                    options.epsilon_floor);
                } else {
                    const double gi_base =
                        override_it != options.baseline_gi_override.end()
                            ? override_it->second.at(static_cast<size_t>(k))
                            : interpolate_baseline(ep.gi->v2026, ep.gi->v2030, year);
                    sy.gi = apply_shock(gi_base, spec.gi_shocks[k]);
                }
                if (sy.gi) sy.band = classify_band(*sy.gi);
                const auto binding = binding_pillar(*sy.irs, *sy.lnsr, *sy.ifc);
                sy.binding_pillar = binding.pillar;
                sy.binding_score = binding.score;
                path.years.push_back(std::move(sy));
            }
            result.paths.push_back(std::move(path));
        }
    }
    return result;
}

} // namespace gi::scenario
