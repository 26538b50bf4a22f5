#include "gi/report.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace gi::report {

namespace {

using nlohmann::json;

std::string fmt_number(double v, bool raw) {
    char buf[64];
    if (raw)
        std::snprintf(buf, sizeof(buf), "%.12g", v);
    else
        std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string cell(const std::optional<double>& v, const Formatting& fmt) {
    return v ? fmt_number(*v, fmt.raw_precision) : std::string();
}

std::string cell_raw(const std::optional<double>& v) {
    return v ? fmt_number(*v, true) : std::string();
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

} // namespace

std::string digest_hex(const std::string& bytes) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

void write_pillars_csv(std::ostream& out, const std::vector<pipeline::CountryScores>& scores,
                       const Formatting& fmt) {
    out << "country,year,irs,lnsr,ifc\n";
    for (const auto& cs : scores) {
        for (size_t i = 0; i < cs.gi.size(); ++i) {
            out << cs.country << ',' << cs.gi[i].year << ',' << cell(cs.irs[i].irs, fmt) << ','
                << cell(cs.lnsr[i].lnsr, fmt) << ',' << cell(cs.ifc[i].ifc, fmt) << '\n';
        }
    }
}

void write_gi_csv(std::ostream& out, const std::vector<pipeline::CountryScores>& scores,
                  const Formatting& fmt) {
    out << "country,year,gi\n";
    for (const auto& cs : scores)
        for (const auto& rec : cs.gi)
            out << cs.country << ',' << rec.year << ',' << cell(rec.gi, fmt) << '\n';
}

namespace {

void component_row(std::ostream& out, const std::string& country, int year, const char* name,
                   const std::optional<double>& raw, const std::optional<double>& score,
                   const char* blank_reason) {
    out << country << ',' << year << ',' << name << ',' << cell_raw(raw) << ',' << cell_raw(score)
        << ',' << (raw ? "ok" : blank_reason) << '\n';
}

} // namespace

void write_components_csv(std::ostream& out, const pipeline::PipelineResult& result) {
    out << "country,year,component,raw,score,reason\n";
    for (size_t ci = 0; ci < result.scores.size(); ++ci) {
        const auto& cs = result.scores[ci];
        const auto& raw = result.raw[ci];
        for (size_t i = 0; i < cs.gi.size(); ++i) {
            const int year = cs.gi[i].year;
            component_row(out, cs.country, year, "irs.r2", cs.irs[i].r_squared, cs.irs[i].score_r2,
                          "below_min_obs");
            component_row(out, cs.country, year, "irs.abs_dgini", cs.irs[i].abs_dgini,
                          cs.irs[i].score_dgini, "missing_input");
            component_row(out, cs.country, year, "irs.smoothing", cs.irs[i].smoothing,
                          cs.irs[i].score_smoothing, "insufficient_history");
            component_row(out, cs.country, year, "lnsr.v", cs.lnsr[i].v, std::nullopt,
                          "missing_input");
            component_row(out, cs.country, year, "lnsr.dv", cs.lnsr[i].dv, std::nullopt,
                          "missing_input");
            component_row(out, cs.country, year, "lnsr.var_v", cs.lnsr[i].var_v,
                          cs.lnsr[i].score_var_v, "insufficient_history");
            component_row(out, cs.country, year, "lnsr.eps", cs.lnsr[i].eps, std::nullopt,
                          "missing_input");
            component_row(out, cs.country, year, "lnsr.rms_eps", cs.lnsr[i].rms_eps,
                          cs.lnsr[i].score_rms_eps, "insufficient_history");
            component_row(out, cs.country, year, "lnsr.align", cs.lnsr[i].align,
                          cs.lnsr[i].score_align, "insufficient_history");
            component_row(out, cs.country, year, "ifc.rmse_ar", cs.ifc[i].rmse_ar, std::nullopt,
                          "insufficient_history");
            component_row(out, cs.country, year, "ifc.rmse_fpas", cs.ifc[i].rmse_fpas, std::nullopt,
                          "insufficient_history");
            component_row(out, cs.country, year, "ifc.rmse_fpas_zeta", cs.ifc[i].rmse_fz,
                          std::nullopt, "insufficient_history");
            component_row(out, cs.country, year, "ifc.d_fpas_pos", cs.ifc[i].d_fpas_pos,
                          cs.ifc[i].score_d_fpas, "insufficient_history");
            component_row(out, cs.country, year, "ifc.d_ar_pos", cs.ifc[i].d_ar_pos,
                          cs.ifc[i].score_d_ar, "insufficient_history");
            component_row(out, cs.country, year, "ifc.hmm_acc", cs.ifc[i].hmm_acc,
                          cs.ifc[i].score_hmm, "degenerate_or_sparse");
            component_row(out, cs.country, year, "ifc.zeta_match", cs.ifc[i].zeta_match,
                          cs.ifc[i].score_zeta, "insufficient_history");
            component_row(out, cs.country, year, "ifc.zeta_centered",
                          raw.ifc.signal.centered_at(year), std::nullopt, "missing_input");
        }
    }
}

void write_contributions_csv(std::ostream& out, const std::vector<pipeline::CountryScores>& scores) {
    out << "country,year,dlog_gi,c_irs,c_lnsr,c_ifc,residual,reason\n";
    for (const auto& cs : scores) {
        for (size_t i = 0; i < cs.gi.size(); ++i) {
            const auto& rec = cs.gi[i];
            out << cs.country << ',' << rec.year << ',';
            if (i == 0 || !rec.contributions || !rec.gi || !cs.gi[i - 1].gi || *cs.gi[i - 1].gi <= 0.0 ||
                *rec.gi <= 0.0) {
                out << ",,,,,"
                    << (i == 0 ? "first_year" : "missing_pillar") << '\n';
                continue;
            }
            const double dlog = std::log(*rec.gi) - std::log(*cs.gi[i - 1].gi);
            const auto& c = *rec.contributions;
            const double residual = dlog - (c[0] + c[1] + c[2]);
            out << fmt_number(dlog, true) << ',' << fmt_number(c[0], true) << ','
                << fmt_number(c[1], true) << ',' << fmt_number(c[2], true) << ','
                << fmt_number(residual, true) << ",ok\n";
        }
    }
}

void write_snapshot_csv(std::ostream& out, const panel::Snapshot& snapshot) {
    out << "country,indicator,value,source_year\n";
    for (const auto& [key, entry] : snapshot)
        out << key.first << ',' << key.second << ',' << fmt_number(entry.value, true) << ','
            << entry.source_year << '\n';
}

void write_forecasts_csv(std::ostream& out, const pipeline::PipelineResult& result) {
    out << "country,year,actual,ar1,fpas,fpas_zeta,alpha,fpas_fallback\n";
    for (const auto& raw : result.raw) {
        const auto& f = raw.ifc.forecasts;
        for (size_t i = 0; i < f.actual.size(); ++i) {
            out << raw.country << ',' << f.actual.years[i] << ',' << cell_raw(f.actual.values[i])
                << ',' << cell_raw(f.ar1.values[i]) << ',' << cell_raw(f.fpas.values[i]) << ','
                << cell_raw(f.fpas_zeta.values[i]) << ',' << fmt_number(f.alpha, true) << ','
                << (i < f.fpas_fellback.size() && f.fpas_fellback[i] ? "1" : "0") << '\n';
        }
    }
}

void write_bounds_csv(std::ostream& out, const pipeline::BoundsSet& b) {
    out << "metric,p_lower,p_upper,pool_size\n";
    auto row = [&](const scaling::ScalingBounds& s) {
        out << s.metric << ',' << fmt_number(s.p5, true) << ',' << fmt_number(s.p95, true) << ','
            << s.pool_size << '\n';
    };
    row(b.irs.r_squared);
    row(b.irs.inv_dgini);
    row(b.irs.smoothing);
    row(b.lnsr.inv_var_v);
    row(b.lnsr.inv_rms_eps);
    row(b.lnsr.align);
    row(b.ifc.d_fpas_pos);
    row(b.ifc.d_ar_pos);
    row(b.ifc.hmm_acc);
    row(b.ifc.zeta_match);
}

void write_scenario_gi_csv(std::ostream& out, const scenario::BuildResult& result,
                           const Formatting& fmt) {
    out << "country,scenario,year,gi,band\n";
    for (const auto& path : result.paths)
        for (const auto& y : path.years)
            out << path.country << ',' << path.scenario << ',' << y.year << ',' << cell(y.gi, fmt)
                << ',' << y.band << '\n';
}

void write_scenario_pillars_csv(std::ostream& out, const scenario::BuildResult& result,
                                const Formatting& fmt) {
    out << "country,scenario,year,gi,band,irs,lnsr,ifc,binding_pillar,binding_score\n";
    for (const auto& path : result.paths) {
        for (const auto& y : path.years) {
            out << path.country << ',' << path.scenario << ',' << y.year << ',' << cell(y.gi, fmt)
                << ',' << y.band << ',' << cell(y.irs, fmt) << ',' << cell(y.lnsr, fmt) << ','
                << cell(y.ifc, fmt) << ',' << y.binding_pillar << ',' << cell(y.binding_score, fmt)
                << '\n';
        }
    }
}

void write_regions_csv(std::ostream& out, const std::vector<composite::RegionRow>& rows,
                       const Formatting& fmt) {
    out << "region,gi,gi_n,irs,irs_n,lnsr,lnsr_n,ifc,ifc_n\n";
    for (const auto& r : rows) {
        out << r.region << ',' << cell(r.gi.mean, fmt) << ',' << r.gi.n << ',' << cell(r.irs.mean, fmt)
            << ',' << r.irs.n << ',' << cell(r.lnsr.mean, fmt) << ',' << r.lnsr.n << ','
            << cell(r.ifc.mean, fmt) << ',' << r.ifc.n << '\n';
    }
}

std::string pillars_json(const std::vector<pipeline::CountryScores>& scores) {
    json rows = json::array();
    for (const auto& cs : scores) {
        for (size_t i = 0; i < cs.gi.size(); ++i) {
            rows.push_back({{"country", cs.country},
                            {"year", cs.gi[i].year},
                            {"irs", opt_json(cs.irs[i].irs)},
                            {"lnsr", opt_json(cs.lnsr[i].lnsr)},
                            {"ifc", opt_json(cs.ifc[i].ifc)}});
        }
    }
    return rows.dump(2) + "\n";
}

std::string gi_json(const std::vector<pipeline::CountryScores>& scores) {
    json rows = json::array();
    for (const auto& cs : scores)
        for (const auto& rec : cs.gi)
            rows.push_back({{"country", cs.country}, {"year", rec.year}, {"gi", opt_json(rec.gi)}});
    return rows.dump(2) + "\n";
}

std::string scenario_json(const scenario::BuildResult& result) {
    json rows = json::array();
    for (const auto& path : result.paths) {
        for (const auto& y : path.years) {
            rows.push_back({{"country", path.country},
                            {"scenario", path.scenario},
                            {"year", y.year},
                            {"gi", opt_json(y.gi)},
                            {"band", y.band},
                            {"irs", opt_json(y.irs)},
                            {"lnsr", opt_json(y.lnsr)},
                            {"ifc", opt_json(y.ifc)},
                            {"binding_pillar", y.binding_pillar},
                            {"binding_score", opt_json(y.binding_score)}});
        }
    }
    return rows.dump(2) + "\n";
}

std::string manifest_json(const std::string& input_digest, const config::RunConfig& cfg,
                          const std::string& timestamp) {
    json m;
    m["engine_version"] = kEngineVersion;
    m["timestamp"] = timestamp;
    m["input_digest"] = input_digest;
    m["seed"] = cfg.seed;
    m["config_digest"] = digest_hex(cfg.source_text);
    m["config_text"] = cfg.source_text;
    m["disclosures"] = json::array(
        {"Composite values published alongside the source methodology are not reproducible from "
         "the published pillar values via the weighted geometric aggregation; this engine applies "
         "the aggregation formula literally and offers a table-replication scenario mode that "
         "shocks the composite path directly.",
         "The source methodology states two conflicting band conventions (0-40/40-60/60-80/80-100 "
         "and 0-25/25-50/50-75/75-100); scenario outputs use the 25-point thresholds, which match "
         "the published scenario tables."});
    return m.dump(2) + "\n";
}

} // namespace gi::report
