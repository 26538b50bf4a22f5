#include "gi/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "gi/error.hpp"

namespace gi::config {

double TomlValue::as_number() const {
    if (const auto* d = std::get_if<double>(&data)) return *d;
    throw ConfigError("config: expected a number");
}

int TomlValue::as_int() const {
    const double d = as_number();
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d) throw ConfigError("config: expected an integer");
    return i;
}

bool TomlValue::as_bool() const {
    if (const auto* b = std::get_if<bool>(&data)) return *b;
    throw ConfigError("config: expected a boolean");
}

const std::string& TomlValue::as_string() const {
    if (const auto* s = std::get_if<std::string>(&data)) return *s;
    throw ConfigError("config: expected a string");
}

const std::vector<double>& TomlValue::as_number_array() const {
    if (const auto* a = std::get_if<std::vector<double>>(&data)) return *a;
    throw ConfigError("config: expected an array of numbers");
}

const std::vector<std::string>& TomlValue::as_string_array() const {
    if (const auto* a = std::get_if<std::vector<std::string>>(&data)) return *a;
    throw ConfigError("config: expected an array of strings");
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

TomlValue parse_scalar(const std::string& raw, long lineno) {
    const std::string s = trim(raw);
    if (s.empty()) throw ConfigError("config: empty value (line " + std::to_string(lineno) + ")");
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"')
            throw ConfigError("config: unterminated string (line " + std::to_string(lineno) + ")");
        return {std::string(s.substr(1, s.size() - 2))};
    }
    if (s == "true") return {true};
    if (s == "false") return {false};
    double d = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ConfigError("config: malformed value '" + s + "' (line " + std::to_string(lineno) + ")");
    return {d};
}

TomlValue parse_array(const std::string& body, long lineno) {
    std::vector<std::string> items;
    std::string cur;
    for (char c : body) {
        if (c == ',') {
            items.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) items.push_back(trim(cur));
    if (items.empty()) return {std::vector<double>{}};
    if (items.front().front() == '"') {
        std::vector<std::string> out;
        for (const auto& it : items) out.push_back(parse_scalar(it, lineno).as_string());
        return {out};
    }
    std::vector<double> out;
    for (const auto& it : items) out.push_back(parse_scalar(it, lineno).as_number());
    return {out};
}

} // namespace

TomlTable parse_toml(const std::string& text) {
    TomlTable table;
    std::istringstream in(text);
    std::string line;
    std::string section;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section header (line " + std::to_string(lineno) + ")");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("config: empty section name (line " + std::to_string(lineno) + ")");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value (line " + std::to_string(lineno) + ")");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: empty key (line " + std::to_string(lineno) + ")");
        const std::string full = section.empty() ? key : section + "." + key;
        if (table.count(full)) throw ConfigError("config: duplicate key " + full);
        if (!value.empty() && value.front() == '[') {
            if (value.back() != ']')
                throw ConfigError("config: unterminated array (line " + std::to_string(lineno) + ")");
            table[full] = parse_array(value.substr(1, value.size() - 2), lineno);
        } else {
            table[full] = parse_scalar(value, lineno);
        }
    }
    return table;
}

namespace {

class SchemaReader {
  public:
    explicit SchemaReader(TomlTable table) : table_(std::move(table)) {}

    std::optional<TomlValue> take(const std::string& key) {
        auto it = table_.find(key);
        if (it == table_.end()) return std::nullopt;
        TomlValue v = it->second;
        table_.erase(it);
        return v;
    }

    // Consume every key under a section prefix, e.g. "regions.".
    std::map<std::string, TomlValue> take_section(const std::string& prefix) {
        std::map<std::string, TomlValue> out;
        for (auto it = table_.begin(); it != table_.end();) {
            if (it->first.rfind(prefix, 0) == 0) {
                out.emplace(it->first.substr(prefix.size()), it->second);
                it = table_.erase(it);
            } else {
                ++it;
            }
        }
        return out;
    }

    void ensure_empty() const {
        if (!table_.empty()) throw ConfigError("config: unknown key '" + table_.begin()->first + "'");
    }

  private:
    TomlTable table_;
};

void check_range(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("config: " + what);
}

} // namespace

RunConfig config_from_text(const std::string& text) {
    RunConfig cfg;
    cfg.source_text = text;
    SchemaReader reader(parse_toml(text));

    if (auto v = reader.take("run.cutoff")) cfg.cutoff = v->as_int();
    if (auto v = reader.take("run.window")) cfg.window = v->as_int();
    if (auto v = reader.take("run.seed")) cfg.seed = static_cast<unsigned>(v->as_int());
    if (auto v = reader.take("run.format")) {
        const auto& s = v->as_string();
        if (s == "csv") cfg.format = OutputFormat::Csv;
        else if (s == "json") cfg.format = OutputFormat::Json;
        else if (s == "both") cfg.format = OutputFormat::Both;
        else throw ConfigError("config: run.format must be csv|json|both");
    }
    if (auto v = reader.take("run.raw_precision")) cfg.raw_precision = v->as_bool();

    if (auto v = reader.take("scaling.lower_q")) cfg.lower_q = v->as_number();
    if (auto v = reader.take("scaling.upper_q")) cfg.upper_q = v->as_number();
    if (auto v = reader.take("scaling.r2_direct")) cfg.r2_direct = v->as_bool();
    check_range(cfg.lower_q >= 0.0 && cfg.lower_q < cfg.upper_q && cfg.upper_q <= 1.0,
                "scaling quantiles must satisfy 0 <= lower < upper <= 1");

    if (auto v = reader.take("pillar_weights.irs")) cfg.pillar_weights.irs = v->as_number();
    if (auto v = reader.take("pillar_weights.lnsr")) cfg.pillar_weights.lnsr = v->as_number();
    if (auto v = reader.take("pillar_weights.ifc")) cfg.pillar_weights.ifc = v->as_number();
    check_range(cfg.pillar_weights.irs > 0 && cfg.pillar_weights.lnsr > 0 && cfg.pillar_weights.ifc > 0,
                "pillar weights must be positive");

    if (auto v = reader.take("composite.epsilon_floor")) cfg.epsilon_floor = v->as_number();
    check_range(cfg.epsilon_floor >= 0.0, "composite.epsilon_floor must be non-negative");

    if (auto v = reader.take("irs.min_obs")) cfg.irs_min_obs = v->as_int();
    if (auto v = reader.take("irs.smoothing_window")) cfg.irs_smoothing_window = v->as_int();
    if (auto v = reader.take("irs.weights")) {
        const auto& a = v->as_number_array();
        check_range(a.size() == 3, "irs.weights must have 3 entries");
        cfg.irs_weights = {a[0], a[1], a[2]};
    }
    check_range(cfg.irs_min_obs >= 6, "irs.min_obs must be >= 6");
    check_range(cfg.irs_smoothing_window >= 3, "irs.smoothing_window must be >= 3");

    if (auto v = reader.take("lnsr.weights")) {
        const auto& a = v->as_number_array();
        check_range(a.size() == 3, "lnsr.weights must have 3 entries");
        cfg.lnsr_weights = {a[0], a[1], a[2]};
    }
    if (auto v = reader.take("lnsr.mu_source")) cfg.mu_source = v->as_string();

    if (auto v = reader.take("ifc.weights")) {
        const auto& a = v->as_number_array();
        check_range(a.size() == 4, "ifc.weights must have 4 entries");
        cfg.ifc_weights = {a[0], a[1], a[2], a[3]};
    }
    if (auto v = reader.take("ifc.min_train")) cfg.ifc.min_train = v->as_int();
    if (auto v = reader.take("ifc.t0")) cfg.ifc.t0 = v->as_number();
    if (auto v = reader.take("ifc.scale")) cfg.ifc.scale = v->as_number();
    if (auto v = reader.take("ifc.smoothing_window")) cfg.ifc.smoothing_window = v->as_int();
    if (auto v = reader.take("ifc.zeta_mode")) {
        const auto& s = v->as_string();
        if (s == "magnitude") cfg.ifc.zeta_mode = ifc::ZetaMode::Magnitude;
        else if (s == "real") cfg.ifc.zeta_mode = ifc::ZetaMode::RealPart;
        else throw ConfigError("config: ifc.zeta_mode must be magnitude|real");
    }
    if (auto v = reader.take("ifc.alpha_min")) cfg.ifc.alpha_min = v->as_number();
    if (auto v = reader.take("ifc.alpha_max")) cfg.ifc.alpha_max = v->as_number();
    if (auto v = reader.take("ifc.alpha_step")) cfg.ifc.alpha_step = v->as_number();
    if (auto v = reader.take("ifc.validation_fraction")) cfg.ifc.validation_fraction = v->as_number();
    if (auto v = reader.take("ifc.hmm_max_iter")) cfg.ifc.hmm.max_iter = v->as_int();
    if (auto v = reader.take("ifc.hmm_tol")) cfg.ifc.hmm.tol = v->as_number();
    check_range(cfg.ifc.min_train >= 3, "ifc.min_train must be >= 3");
    check_range(cfg.ifc.scale > 0.0, "ifc.scale must be positive");
    check_range(cfg.ifc.smoothing_window >= 1, "ifc.smoothing_window must be >= 1");
    check_range(cfg.ifc.alpha_step > 0.0 && cfg.ifc.alpha_min <= cfg.ifc.alpha_max,
                "ifc alpha grid malformed");
    check_range(cfg.ifc.validation_fraction > 0.0 && cfg.ifc.validation_fraction <= 1.0,
                "ifc.validation_fraction must be in (0,1]");

    if (auto v = reader.take("scenario.mode")) {
        const auto& s = v->as_string();
        if (s == "recompute_gi") cfg.scenario_mode = scenario::GiMode::RecomputeGi;
        else if (s == "table_replication") cfg.scenario_mode = scenario::GiMode::TableReplication;
        else throw ConfigError("config: scenario.mode must be recompute_gi|table_replication");
    }
    if (auto v = reader.take("scenario.endpoints")) cfg.endpoints_path = v->as_string();

    // Named scenario sections override/extend the default schedule set.
    const auto scenario_keys = reader.take_section("scenario.");
    std::map<std::string, scenario::ScenarioSpec> by_name;
    for (auto& spec : cfg.scenarios) by_name[spec.name] = spec;
    for (const auto& [key, value] : scenario_keys) {
        const auto dot = key.find('.');
        if (dot == std::string::npos)
            throw ConfigError("config: unknown key 'scenario." + key + "'");
        std::string name = key.substr(0, dot);
        const std::string field = key.substr(dot + 1);
        if (!name.empty()) name[0] = static_cast<char>(std::toupper(name[0]));
        auto& spec = by_name[name];
        spec.name = name;
        if (spec.pillar_shocks.empty()) spec.pillar_shocks.assign(5, 0.0);
        if (spec.gi_shocks.empty()) spec.gi_shocks.assign(5, 0.0);
        const auto& a = value.as_number_array();
        check_range(a.size() == 5, "scenario shock lists must cover the 5-year horizon");
        if (field == "pillar_shocks") spec.pillar_shocks = a;
        else if (field == "gi_shocks") spec.gi_shocks = a;
        else throw ConfigError("config: unknown key 'scenario." + key + "'");
    }
    cfg.scenarios.clear();
    for (auto& [name, spec] : by_name) cfg.scenarios.push_back(spec);
    std::sort(cfg.scenarios.begin(), cfg.scenarios.end(),
              [](const auto& a, const auto& b) {
                  auto rank = [](const std::string& n) {
                      if (n == "Baseline") return 0;
                      if (n == "Adverse") return 1;
                      if (n == "Optimistic") return 2;
                      return 3;
                  };
                  return std::make_pair(rank(a.name), a.name) < std::make_pair(rank(b.name), b.name);
              });

    for (const auto& [code, value] : reader.take_section("regions."))
        cfg.regions[code] = value.as_string_array();

    reader.ensure_empty();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_text(ss.str());
}

std::vector<scenario::CountryEndpoints> parse_endpoints_csv(std::istream& in) {
    std::string line;
    long lineno = 0;
    if (!std::getline(in, line)) throw ParseError("endpoints CSV: empty input");
    ++lineno;
    // header: country,field,value_2026,value_2030
    std::map<std::string, scenario::CountryEndpoints> by_country;
    std::vector<std::string> order;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                fields.push_back(trim(cur));
                cur.clear();
            } else if (c != '\r') {
                cur += c;
            }
        }
        fields.push_back(trim(cur));
        if (fields.size() != 4)
            throw ParseError("endpoints CSV: expected 4 columns", lineno);
        scenario::EndpointPair pair;
        try {
            pair.v2026 = std::stod(fields[2]);
            pair.v2030 = std::stod(fields[3]);
        } catch (const std::exception&) {
            throw ParseError("endpoints CSV: non-numeric endpoint", lineno);
        }
        auto [it, inserted] = by_country.try_emplace(fields[0]);
        if (inserted) {
            it->second.country = fields[0];
            order.push_back(fields[0]);
        }
        const std::string& f = fields[1];
        if (f == "irs") it->second.irs = pair;
        else if (f == "lnsr") it->second.lnsr = pair;
        else if (f == "ifc") it->second.ifc = pair;
        else if (f == "gi") it->second.gi = pair;
        else throw ParseError("endpoints CSV: unknown field '" + f + "'", lineno);
    }
    std::vector<scenario::CountryEndpoints> out;
    for (const auto& c : order) out.push_back(by_country[c]);
    return out;
}

} // namespace gi::config
