#pragma once

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gi/time_series.hpp"

namespace gi::panel {

// Canonical WDI-style indicator codes accepted on input.
namespace codes {
inline constexpr const char* inflation = "FP.CPI.TOTL.ZG";
inline constexpr const char* gdp_growth = "NY.GDP.MKTP.KD.ZG";
inline constexpr const char* unemployment = "SL.UEM.TOTL.ZS";
inline constexpr const char* m3_gdp = "FM.LBL.BMNY.GD.ZS";
inline constexpr const char* gdp_per_capita = "NY.GDP.PCAP.CD";
inline constexpr const char* gini = "SI.POV.GINI";
inline constexpr const char* broad_money_level = "BROAD_MONEY_LEVEL";
inline constexpr const char* broad_money_growth = "BROAD_MONEY_GROWTH";
// Derived series, filled by derive_indicators().
inline constexpr const char* m3_growth_derived = "DERIVED.M3_GROWTH";
inline constexpr const char* log_gdppc_derived = "DERIVED.LOG_GDPPC";
} // namespace codes

class IndicatorRegistry {
  public:
    static IndicatorRegistry defaults();
    void add(const std::string& code) { codes_.insert(code); }
    bool contains(const std::string& code) const { return codes_.count(code) > 0; }
    const std::set<std::string>& all() const { return codes_; }

  private:
    std::set<std::string> codes_;
};

struct Observation {
    std::string country;
    int year = 0;
    std::string indicator;
    double value = 0.0;
};

// Immutable country-year indicator store. Years form a contiguous range;
// absent observations are missing, never zero.
class Panel {
  public:
    Panel(std::vector<Observation> observations, IndicatorRegistry registry,
          std::map<std::string, std::string> country_names = {});

    const std::vector<std::string>& countries() const { return countries_; }
    const std::string& country_name(const std::string& iso3) const;
    int first_year() const { return first_year_; }
    int last_year() const { return last_year_; }
    const IndicatorRegistry& registry() const { return registry_; }

    bool has_country(const std::string& iso3) const;
    std::optional<double> value(const std::string& iso3, int year, const std::string& indicator) const;
    TimeSeries series(const std::string& iso3, const std::string& indicator) const;

    size_t observation_count() const;
    std::vector<Observation> observations() const;

  private:
    IndicatorRegistry registry_;
    std::vector<std::string> countries_;
    std::map<std::string, std::string> country_names_;
    int first_year_ = 0;
    int last_year_ = 0;
    // (country, indicator) -> values aligned to [first_year_, last_year_]
    std::map<std::pair<std::string, std::string>, std::vector<std::optional<double>>> data_;
};

Panel parse_panel_csv(std::istream& in, const IndicatorRegistry& registry);
std::string serialize_panel_csv(const Panel& panel);

// Adds DERIVED.M3_GROWTH and DERIVED.LOG_GDPPC where inputs exist. A
// provided growth series wins over derivation from levels; provided
// observations are never overwritten. Idempotent. Non-positive inputs to
// log become missing with a warning, never an exception.
Panel derive_indicators(const Panel& panel, std::vector<std::string>* warnings = nullptr);

struct SnapshotEntry {
    double value = 0.0;
    int source_year = 0;
};

// (country, indicator) -> latest non-missing observation at or before cutoff.
using Snapshot = std::map<std::pair<std::string, std::string>, SnapshotEntry>;

Snapshot carry_forward_latest(const Panel& panel, int cutoff);

} // namespace gi::panel
