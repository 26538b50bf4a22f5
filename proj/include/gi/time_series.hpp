#pragma once

#include <optional>
#include <vector>

#include "gi/error.hpp"

namespace gi {

// Annual series aligned to a strictly increasing year axis. Absent
// observations are std::nullopt, never sentinel numbers.
struct TimeSeries {
    std::vector<int> years;
    std::vector<std::optional<double>> values;

    TimeSeries() = default;
    TimeSeries(std::vector<int> ys, std::vector<std::optional<double>> vs)
        : years(std::move(ys)), values(std::move(vs)) {
        if (years.size() != values.size())
            throw DomainError("TimeSeries: years/values length mismatch");
        for (size_t i = 1; i < years.size(); ++i)
            if (years[i] <= years[i - 1])
                throw DomainError("TimeSeries: years must be strictly increasing");
    }

    static TimeSeries empty_range(int first_year, int last_year) {
        TimeSeries ts;
        for (int y = first_year; y <= last_year; ++y) {
            ts.years.push_back(y);
            ts.values.emplace_back(std::nullopt);
        }
        return ts;
    }

    size_t size() const { return years.size(); }

    std::optional<double> at_year(int year) const {
        for (size_t i = 0; i < years.size(); ++i)
            if (years[i] == year) return values[i];
        return std::nullopt;
    }

    void set_year(int year, std::optional<double> v) {
        for (size_t i = 0; i < years.size(); ++i) {
            if (years[i] == year) {
                values[i] = v;
                return;
            }
        }
        throw LookupError("TimeSeries: year not on axis: " + std::to_string(year));
    }

    size_t count_present() const {
        size_t n = 0;
        for (const auto& v : values)
            if (v) ++n;
        return n;
    }
};

} // namespace gi
