// Batch CLI for the index engine: compute pillar and composite scores,
// decompose composite changes, build scenario projections, aggregate
// regional means, or emit the full report bundle.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "gi/composite.hpp"
#include "gi/config.hpp"
#include "gi/error.hpp"
#include "gi/panel.hpp"
#include "gi/pipeline.hpp"
#include "gi/report.hpp"
#include "gi/scenario.hpp"

namespace fs = std::filesystem;
using namespace gi;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

struct CliOptions {
    std::string input_path;
    std::string config_path;
    std::string out_dir;
    std::string endpoints_path;
    std::string format;
    std::string scenario_mode;
    int cutoff = 0;
    bool serial = false;
    bool raw_precision = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path, 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

config::RunConfig resolve_config(const CliOptions& cli) {
    config::RunConfig cfg;
    if (!cli.config_path.empty()) cfg = config::load_config(cli.config_path);
    if (!cli.input_path.empty()) cfg.input_path = cli.input_path;
    if (!cli.out_dir.empty()) cfg.output_dir = cli.out_dir;
    if (!cli.endpoints_path.empty()) cfg.endpoints_path = cli.endpoints_path;
    if (cli.cutoff != 0) cfg.cutoff = cli.cutoff;
    if (cli.raw_precision) cfg.raw_precision = true;
    if (!cli.format.empty()) {
        if (cli.format == "csv")
            cfg.format = config::OutputFormat::Csv;
        else if (cli.format == "json")
            cfg.format = config::OutputFormat::Json;
        else if (cli.format == "both")
            cfg.format = config::OutputFormat::Both;
        else
            throw ConfigError("unknown format: " + cli.format);
    }
    if (!cli.scenario_mode.empty()) {
        if (cli.scenario_mode == "recompute")
            cfg.scenario_mode = scenario::GiMode::RecomputeGi;
        else if (cli.scenario_mode == "table")
            cfg.scenario_mode = scenario::GiMode::TableReplication;
        else
            throw ConfigError("unknown scenario mode: " + cli.scenario_mode);
    }
    if (cfg.output_dir.empty()) throw ConfigError("output directory is required (--out)");
    return cfg;
}

panel::Panel load_panel(const config::RunConfig& cfg) {
    if (cfg.input_path.empty()) throw ConfigError("input panel is required (--input)");
    std::ifstream in(cfg.input_path, std::ios::binary);
    if (!in) throw ParseError("cannot open panel: " + cfg.input_path, 0);
    auto p = panel::parse_panel_csv(in, panel::IndicatorRegistry::defaults());
    std::vector<std::string> warnings;
    p = panel::derive_indicators(p, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return p;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write: " + path.string());
    out << text;
}

template <typename Fn>
void write_stream(const fs::path& path, Fn&& fn) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write: " + path.string());
    fn(out);
}

bool wants_csv(const config::RunConfig& cfg) { return cfg.format != config::OutputFormat::Json; }
bool wants_json(const config::RunConfig& cfg) { return cfg.format != config::OutputFormat::Csv; }

std::string run_timestamp() {
    // Honors SOURCE_DATE_EPOCH so repeated runs produce identical bytes.
    if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) return e;
    return "unset";
}

pipeline::PipelineResult run_pipeline(const panel::Panel& p, const config::RunConfig& cfg,
                                      bool serial) {
    return pipeline::run(p, cfg,
                         serial ? pipeline::ExecutionMode::Serial : pipeline::ExecutionMode::Parallel);
}

void emit_compute(const fs::path& dir, const pipeline::PipelineResult& result,
                  const panel::Panel& p, const config::RunConfig& cfg) {
    report::Formatting fmt{cfg.raw_precision};
    if (wants_csv(cfg)) {
        write_stream(dir / "pillars.csv", [&](std::ostream& o) { report::write_pillars_csv(o, result.scores, fmt); });
        write_stream(dir / "gi.csv", [&](std::ostream& o) { report::write_gi_csv(o, result.scores, fmt); });
        write_stream(dir / "components.csv", [&](std::ostream& o) { report::write_components_csv(o, result); });
        write_stream(dir / "forecasts.csv", [&](std::ostream& o) { report::write_forecasts_csv(o, result); });
        write_stream(dir / "scaling_bounds.csv", [&](std::ostream& o) { report::write_bounds_csv(o, result.bounds); });
        const auto snapshot = panel::carry_forward_latest(p, cfg.cutoff);
        write_stream(dir / "snapshot.csv", [&](std::ostream& o) { report::write_snapshot_csv(o, snapshot); });
    }
    if (wants_json(cfg)) {
        write_text(dir / "pillars.json", report::pillars_json(result.scores));
        write_text(dir / "gi.json", report::gi_json(result.scores));
    }
}

void emit_decompose(const fs::path& dir, const pipeline::PipelineResult& result) {
    write_stream(dir / "contributions.csv",
                 [&](std::ostream& o) { report::write_contributions_csv(o, result.scores); });
}

scenario::BuildResult build_scenarios(const config::RunConfig& cfg) {
    if (cfg.endpoints_path.empty())
        throw ConfigError("scenario projections need an endpoints file (--endpoints)");
    std::ifstream in(cfg.endpoints_path, std::ios::binary);
    if (!in) throw ParseError("cannot open endpoints: " + cfg.endpoints_path, 0);
    const auto endpoints = config::parse_endpoints_csv(in);
    scenario::BuildOptions opts;
    opts.mode = cfg.scenario_mode;
    opts.weights = cfg.pillar_weights;
    opts.epsilon_floor = cfg.epsilon_floor;
    return scenario::build_scenario_paths(endpoints, cfg.scenarios, opts);
}

void emit_scenario(const fs::path& dir, const scenario::BuildResult& result,
                   const config::RunConfig& cfg) {
    report::Formatting fmt{cfg.raw_precision};
    if (wants_csv(cfg)) {
        write_stream(dir / "scenario_gi.csv",
                     [&](std::ostream& o) { report::write_scenario_gi_csv(o, result, fmt); });
        write_stream(dir / "scenario_pillars.csv",
                     [&](std::ostream& o) { report::write_scenario_pillars_csv(o, result, fmt); });
    }
    if (wants_json(cfg)) write_text(dir / "scenario.json", report::scenario_json(result));
    for (const auto& c : result.skipped) std::cerr << "warning: no endpoints for " << c << "\n";
}

void emit_regions(const fs::path& dir, const pipeline::PipelineResult& result,
                  const config::RunConfig& cfg) {
    report::Formatting fmt{cfg.raw_precision};
    std::vector<composite::RegionRow> rows;
    for (const auto& [region, members] : cfg.regions) {
        std::vector<composite::MemberScores> scores;
        for (const auto& iso : members) {
            for (const auto& cs : result.scores) {
                if (cs.country != iso) continue;
                for (const auto& rec : cs.gi) {
                    if (rec.year != cfg.cutoff) continue;
                    scores.push_back({rec.gi, rec.pillars});
                }
            }
        }
        rows.push_back(composite::regional_mean(scores, region));
    }
    write_stream(dir / "regions.csv",
                 [&](std::ostream& o) { report::write_regions_csv(o, rows, fmt); });
}

int run(const std::string& command, const CliOptions& cli) {
    const auto cfg = resolve_config(cli);
    fs::create_directories(cfg.output_dir);
    const fs::path dir = cfg.output_dir;

    if (command == "scenario") {
        emit_scenario(dir, build_scenarios(cfg), cfg);
        return 0;
    }

    const auto p = load_panel(cfg);
    const auto result = run_pipeline(p, cfg, cli.serial);

    if (command == "compute") {
        emit_compute(dir, result, p, cfg);
    } else if (command == "decompose") {
        emit_decompose(dir, result);
    } else if (command == "region") {
        emit_regions(dir, result, cfg);
    } else if (command == "report") {
        emit_compute(dir, result, p, cfg);
        emit_decompose(dir, result);
        if (!cfg.endpoints_path.empty()) emit_scenario(dir, build_scenarios(cfg), cfg);
        if (!cfg.regions.empty()) emit_regions(dir, result, cfg);
    }

    write_text(dir / "manifest.json",
               report::manifest_json(report::digest_hex(read_file(cfg.input_path)), cfg,
                                     run_timestamp()));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Country stability index engine"};
    app.require_subcommand(1);

    CliOptions cli;
    std::string command;
    const std::map<std::string, std::string> descriptions{
        {"compute", "pillar and composite scores per country-year"},
        {"decompose", "delta-log contribution table"},
        {"scenario", "2026-2030 projection paths from endpoints"},
        {"region", "regional mean table at the cutoff year"},
        {"report", "all outputs in one directory"},
    };
    for (const char* name : {"compute", "decompose", "scenario", "region", "report"}) {
        auto* sub = app.add_subcommand(name, descriptions.at(name));
        sub->add_option("-i,--input", cli.input_path, "panel CSV (long format)");
        sub->add_option("-c,--config", cli.config_path, "run configuration file");
        sub->add_option("-o,--out", cli.out_dir, "output directory")->required();
        sub->add_option("--endpoints", cli.endpoints_path, "scenario endpoints CSV");
        sub->add_option("--format", cli.format, "csv|json|both");
        sub->add_option("--cutoff", cli.cutoff, "snapshot cutoff year");
        sub->add_option("--mode", cli.scenario_mode, "scenario composite mode: recompute|table");
        sub->add_flag("--serial", cli.serial, "disable the parallel pipeline");
        sub->add_flag("--raw", cli.raw_precision, "full-precision summary tables");
        sub->callback([&, name] { command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        return run(command, cli);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ConflictError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
