#include "gi/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "gi/error.hpp"

namespace gi::panel {

IndicatorRegistry IndicatorRegistry::defaults() {
    IndicatorRegistry r;
    r.add(codes::inflation);
    r.add(codes::gdp_growth);
    r.add(codes::unemployment);
    r.add(codes::m3_gdp);
    r.add(codes::gdp_per_capita);
    r.add(codes::gini);
    r.add(codes::broad_money_level);
    r.add(codes::broad_money_growth);
    r.add(codes::m3_growth_derived);
    r.add(codes::log_gdppc_derived);
    return r;
}

Panel::Panel(std::vector<Observation> observations, IndicatorRegistry registry,
             std::map<std::string, std::string> country_names)
    : registry_(std::move(registry)), country_names_(std::move(country_names)) {
    if (observations.empty()) throw DomainError("Panel: no observations");

    int lo = std::numeric_limits<int>::max();
    int hi = std::numeric_limits<int>::min();
    std::set<std::string> country_set;
    for (const auto& obs : observations) {
        if (!std::isfinite(obs.value))
            throw DomainError("Panel: non-finite value for " + obs.country + "/" + obs.indicator);
        if (!registry_.contains(obs.indicator))
            throw LookupError("Panel: unregistered indicator " + obs.indicator);
        lo = std::min(lo, obs.year);
        hi = std::max(hi, obs.year);
        country_set.insert(obs.country);
    }
    first_year_ = lo;
    last_year_ = hi;
    countries_.assign(country_set.begin(), country_set.end());

    const size_t span = static_cast<size_t>(last_year_ - first_year_ + 1);
    for (const auto& obs : observations) {
        auto& slot = data_[{obs.country, obs.indicator}];
        if (slot.empty()) slot.assign(span, std::nullopt);
        auto& cell = slot[static_cast<size_t>(obs.year - first_year_)];
        if (cell && *cell != obs.value)
            throw ConflictError("Panel: conflicting values for " + obs.country + "/" +
                                std::to_string(obs.year) + "/" + obs.indicator);
        cell = obs.value;
    }
}

const std::string& Panel::country_name(const std::string& iso3) const {
    static const std::string empty;
    auto it = country_names_.find(iso3);
    return it == country_names_.end() ? empty : it->second;
}

bool Panel::has_country(const std::string& iso3) const {
    return std::binary_search(countries_.begin(), countries_.end(), iso3);
}

std::optional<double> Panel::value(const std::string& iso3, int year, const std::string& indicator) const {
    if (year < first_year_ || year > last_year_) return std::nullopt;
    auto it = data_.find({iso3, indicator});
    if (it == data_.end()) return std::nullopt;
    return it->second[static_cast<size_t>(year - first_year_)];
}

TimeSeries Panel::series(const std::string& iso3, const std::string& indicator) const {
    if (!has_country(iso3)) throw LookupError("Panel: unknown country " + iso3);
    if (!registry_.contains(indicator)) throw LookupError("Panel: unknown indicator " + indicator);
    TimeSeries ts = TimeSeries::empty_range(first_year_, last_year_);
    auto it = data_.find({iso3, indicator});
    if (it != data_.end()) ts.values = it->second;
    return ts;
}

size_t Panel::observation_count() const {
    size_t n = 0;
    for (const auto& [key, vals] : data_)
        for (const auto& v : vals)
            if (v) ++n;
    return n;
}

std::vector<Observation> Panel::observations() const {
    std::vector<Observation> out;
    for (const auto& [key, vals] : data_) {
        for (size_t i = 0; i < vals.size(); ++i) {
            if (vals[i])
                out.push_back({key.first, first_year_ + static_cast<int>(i), key.second, *vals[i]});
        }
    }
    std::sort(out.begin(), out.end(), [](const Observation& a, const Observation& b) {
        return std::tie(a.country, a.year, a.indicator) < std::tie(b.country, b.year, b.indicator);
    });
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

bool parse_number(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

bool parse_int(const std::string& s, int& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

} // namespace

Panel parse_panel_csv(std::istream& in, const IndicatorRegistry& registry) {
    std::string line;
    long lineno = 0;
    if (!std::getline(in, line)) throw ParseError("panel CSV: empty input");
    ++lineno;
    if (split_csv_line(line) !=
        std::vector<std::string>{"country_iso3", "country_name", "year", "indicator", "value"})
        throw ParseError("panel CSV: unexpected header", lineno);

    std::vector<Observation> observations;
    std::map<std::string, std::string> names;
    std::map<std::tuple<std::string, int, std::string>, double> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 5)
            throw ParseError("panel CSV: expected 5 columns, got " + std::to_string(fields.size()),
                             lineno);
        Observation obs;
        obs.country = fields[0];
        obs.indicator = fields[3];
        if (!registry.contains(obs.indicator))
            throw ParseError("panel CSV: unregistered indicator " + obs.indicator, lineno);
        if (!parse_int(fields[2], obs.year))
            throw ParseError("panel CSV: non-numeric year '" + fields[2] + "'", lineno);
        if (fields[4].empty()) continue; // blank value cell -> missing
        if (!parse_number(fields[4], obs.value) || !std::isfinite(obs.value))
            throw ParseError("panel CSV: non-numeric value '" + fields[4] + "'", lineno);
        auto key = std::make_tuple(obs.country, obs.year, obs.indicator);
        auto it = seen.find(key);
        if (it != seen.end()) {
            if (it->second != obs.value)
                throw ConflictError("panel CSV: conflicting duplicate for " + obs.country + "/" +
                                    fields[2] + "/" + obs.indicator + " at line " +
                                    std::to_string(lineno));
            continue; // exact duplicate, deduplicate silently
        }
        seen.emplace(key, obs.value);
        if (!fields[1].empty()) names[obs.country] = fields[1];
        observations.push_back(obs);
    }
    if (observations.empty()) throw ParseError("panel CSV: no observations");
    return Panel(std::move(observations), registry, std::move(names));
}

std::string serialize_panel_csv(const Panel& panel) {
    std::ostringstream out;
    out << "country_iso3,country_name,year,indicator,value\n";
    out.precision(17);
    for (const auto& obs : panel.observations()) {
        out << obs.country << ',' << panel.country_name(obs.country) << ',' << obs.year << ','
            << obs.indicator << ',' << obs.value << '\n';
    }
    return out.str();
}

Panel derive_indicators(const Panel& panel, std::vector<std::string>* warnings) {
    auto observations = panel.observations();
    std::map<std::string, std::string> names;
    for (const auto& c : panel.countries())
        if (!panel.country_name(c).empty()) names[c] = panel.country_name(c);

    auto emit = [&](const std::string& country, int year, const char* code, double value) {
        // never overwrite anything already present
        if (panel.value(country, year, code)) return;
        observations.push_back({country, year, code, value});
    };

    for (const auto& country : panel.countries()) {
        // Broad money growth: provided series wins, then derivation from levels.
        auto growth = panel.series(country, codes::broad_money_growth);
        auto level = panel.series(country, codes::broad_money_level);
        for (size_t i = 0; i < growth.size(); ++i) {
            const int year = growth.years[i];
            if (growth.values[i]) {
                emit(country, year, codes::m3_growth_derived, *growth.values[i]);
            } else if (i > 0 && level.values[i] && level.values[i - 1]) {
                const double prev = *level.values[i - 1];
                if (prev != 0.0)
                    emit(country, year, codes::m3_growth_derived,
                         100.0 * (*level.values[i] - prev) / prev);
            }
        }
        auto gdppc = panel.series(country, codes::gdp_per_capita);
        for (size_t i = 0; i < gdppc.size(); ++i) {
            if (!gdppc.values[i]) continue;
            const double x = *gdppc.values[i];
            if (x <= 0.0) {
                if (warnings)
                    warnings->push_back("derive: non-positive GDP per capita for " + country + "/" +
                                        std::to_string(gdppc.years[i]) + "; log skipped");
                continue;
            }
            emit(country, gdppc.years[i], codes::log_gdppc_derived, std::log(x));
        }
    }
    return Panel(std::move(observations), panel.registry(), std::move(names));
}

Snapshot carry_forward_latest(const Panel& panel, int cutoff) {
    if (cutoff < panel.first_year() || cutoff > panel.last_year())
        throw DomainError("carry_forward_latest: cutoff outside panel year range");
    Snapshot snap;
    for (const auto& country : panel.countries()) {
        for (const auto& indicator : panel.registry().all()) {
            for (int y = cutoff; y >= panel.first_year(); --y) {
                auto v = panel.value(country, y, indicator);
                if (v) {
                    snap[{country, indicator}] = {*v, y};
                    break;
                }
            }
        }
    }
    return snap;
}

} // namespace gi::panel
