// Annual time series and aligned tables of them.
#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace tsecon {

struct time_series {
    std::string name;
    int start_year = 0;
    std::vector<double> values;
    std::string unit;

    std::size_t size() const noexcept { return values.size(); }
    int end_year() const noexcept {
        return start_year + static_cast<int>(values.size()) - 1;
    }
    bool covers(int year) const noexcept {
        return year >= start_year && year <= end_year();
    }
    double at_year(int year) const {
        if (!covers(year))
            throw data_error("YearOutOfRange",
                             name + " has no observation for " + std::to_string(year));
        return values[static_cast<std::size_t>(year - start_year)];
    }
};

// Columns share one year axis; names are unique.
struct data_table {
    std::vector<int> year_axis;
    std::vector<time_series> columns;

    std::size_t rows() const noexcept { return year_axis.size(); }
    std::size_t cols() const noexcept { return columns.size(); }

    bool has(const std::string& name) const noexcept {
        return std::any_of(columns.begin(), columns.end(),
                           [&](const time_series& s) { return s.name == name; });
    }

    const time_series& column(const std::string& name) const {
        for (const auto& s : columns)
            if (s.name == name) return s;
        throw data_error("MissingColumn", "no column named " + name);
    }

    void add(time_series s) {
        if (has(s.name))
            throw data_error("DuplicateColumn", "column " + s.name + " already present");
        if (!year_axis.empty()) {
            if (s.values.size() != year_axis.size() || s.start_year != year_axis.front())
                throw data_error("MisalignedColumn",
                                 "column " + s.name + " does not match the table year axis");
        } else {
            year_axis.resize(s.values.size());
            for (std::size_t i = 0; i < s.values.size(); ++i)
                year_axis[i] = s.start_year + static_cast<int>(i);
        }
        columns.push_back(std::move(s));
    }
};

} // namespace tsecon
