// CSV ingestion and the variable constructions: deflation to constant prices,
// per-capita-to-total aggregation, log transform, differencing.
#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "errors.hpp"
#include "timeseries.hpp"

namespace tsecon {

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' '))
            cell.pop_back();
        std::size_t b = 0;
        while (b < cell.size() && cell[b] == ' ') ++b;
        out.push_back(cell.substr(b));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_cell(const std::string& cell, std::size_t row, const std::string& col) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = first + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw data_error("UnparsableCell", "row " + std::to_string(row) + ", column " + col +
                                               ": cannot parse '" + cell + "'");
    return v;
}

inline std::string format_cell(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace detail

// Reads a CSV whose first column is `year` (strictly increasing by one).
// `schema` lists data columns that must be present; extra columns are kept.
inline data_table load_csv(const std::string& path, const std::vector<std::string>& schema = {}) {
    std::ifstream in(path);
    if (!in)
        throw data_error("FileNotFound", "cannot open " + path);

    std::string line;
    if (!std::getline(in, line))
        throw data_error("EmptyFile", path + " has no header row");
    auto header = detail::split_csv_line(line);
    if (header.empty() || header[0] != "year")
        throw data_error("MissingColumn", "first header column must be 'year' in " + path);

    for (const auto& want : schema) {
        bool found = false;
        for (std::size_t j = 1; j < header.size(); ++j)
            if (header[j] == want) { found = true; break; }
        if (!found)
            throw data_error("MissingColumn", "column " + want + " absent from " + path);
    }

    std::vector<int> years;
    std::vector<std::vector<double>> cols(header.size() - 1);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw data_error("UnparsableCell", "row " + std::to_string(row) + ": expected " +
                                                   std::to_string(header.size()) + " cells, got " +
                                                   std::to_string(cells.size()));
        double yv = detail::parse_cell(cells[0], row, "year");
        int year = static_cast<int>(yv);
        if (static_cast<double>(year) != yv)
            throw data_error("UnparsableCell",
                             "row " + std::to_string(row) + ", column year: '" + cells[0] +
                                 "' is not an integer");
        if (!years.empty() && year != years.back() + 1)
            throw data_error("GapInYears", "year " + std::to_string(year) + " follows " +
                                               std::to_string(years.back()));
        years.push_back(year);
        for (std::size_t j = 1; j < header.size(); ++j)
            cols[j - 1].push_back(detail::parse_cell(cells[j], row, header[j]));
    }
    if (years.empty())
        throw data_error("EmptyFile", path + " has no data rows");

    data_table table;
    table.year_axis = years;
    for (std::size_t j = 1; j < header.size(); ++j) {
        time_series s;
        s.name = header[j];
        s.start_year = years.front();
        s.values = std::move(cols[j - 1]);
        table.columns.push_back(std::move(s));
    }
    return table;
}

// Writes values with shortest-round-trip formatting so a reload is exact.
inline void write_csv(const data_table& table, std::ostream& out) {
    out << "year";
    for (const auto& s : table.columns) out << ',' << s.name;
    out << '\n';
    for (std::size_t i = 0; i < table.rows(); ++i) {
        out << table.year_axis[i];
        for (const auto& s : table.columns) out << ',' << detail::format_cell(s.values[i]);
        out << '\n';
    }
}

inline void write_csv(const data_table& table, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw data_error("FileNotFound", "cannot open " + path + " for writing");
    write_csv(table, out);
}

// Converts a "preceding year = 100" index into a cumulative index with the
// first year = 100.
inline time_series chain_index(const time_series& link_relative) {
    time_series out = link_relative;
    double level = 100.0;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (i > 0) level *= link_relative.values[i] / 100.0;
        out.values[i] = level;
    }
    return out;
}

// real_t = nominal at the base year scaled by the cumulative volume index.
inline time_series deflate(const time_series& nominal, const time_series& volume_index,
                           int base_year) {
    if (nominal.start_year != volume_index.start_year ||
        nominal.values.size() != volume_index.values.size())
        throw data_error("MisalignedSeries",
                         nominal.name + " and " + volume_index.name + " are not aligned");
    if (!nominal.covers(base_year))
        throw data_error("BaseYearOutOfRange", "base year " + std::to_string(base_year) +
                                                   " outside " + nominal.name + "'s range");
    for (double v : volume_index.values)
        if (v <= 0.0)
            throw data_error("NonPositiveIndex",
                             volume_index.name + " has a non-positive index value");
    double base_index = volume_index.at_year(base_year);
    if (std::fabs(base_index - 100.0) > 1e-9)
        throw data_error("IndexBaseNot100",
                         volume_index.name + " is not 100 at the base year (got " +
                             std::to_string(base_index) + ")");
    time_series out = nominal;
    double base_nominal = nominal.at_year(base_year);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = base_nominal * volume_index.values[i] / 100.0;
    out.unit = nominal.unit + " (" + std::to_string(base_year) + "=100)";
    return out;
}

// 元/person times 万人 divided by 1e4 gives 亿元.
inline time_series total_consumption(const time_series& per_capita,
                                     const time_series& population) {
    if (per_capita.start_year != population.start_year ||
        per_capita.values.size() != population.values.size())
        throw data_error("MisalignedSeries",
                         per_capita.name + " and " + population.name + " are not aligned");
    time_series out = per_capita;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (per_capita.values[i] <= 0.0 || population.values[i] <= 0.0)
            throw data_error("NonPositiveValue",
                             "non-positive value in " + per_capita.name + " or " +
                                 population.name);
        out.values[i] = per_capita.values[i] * population.values[i] / 1e4;
    }
    out.unit = "亿元";
    return out;
}

// Natural log; the name gains an L/l prefix matching the input's case.
inline time_series log_transform(const time_series& s) {
    time_series out = s;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (s.values[i] <= 0.0)
            throw data_error("NonPositiveValue",
                             s.name + " has a non-positive value; cannot take logs");
        out.values[i] = std::log(s.values[i]);
    }
    char prefix = (!s.name.empty() && std::isupper(static_cast<unsigned char>(s.name[0]))) ? 'L' : 'l';
    out.name = std::string(1, prefix) + s.name;
    out.unit = "ln(" + s.unit + ")";
    return out;
}

// Repeated first difference; order 0 is the identity, order capped at 2.
inline time_series difference(const time_series& s, int order) {
    if (order < 0 || order > 2)
        throw config_error("OrderTooLarge", "difference order must be 0, 1, or 2");
    if (static_cast<int>(s.values.size()) <= order)
        throw data_error("SeriesTooShort", s.name + " too short for order " +
                                               std::to_string(order) + " differencing");
    time_series out = s;
    for (int d = 0; d < order; ++d) {
        std::vector<double> next(out.values.size() - 1);
        for (std::size_t i = 0; i + 1 < out.values.size(); ++i)
            next[i] = out.values[i + 1] - out.values[i];
        out.values = std::move(next);
        out.start_year += 1;
    }
    if (order == 1) out.name = "D(" + s.name + ")";
    if (order == 2) out.name = "D(" + s.name + ",2)";
    return out;
}

// Whether CSV index columns hold the cumulative base-100 form (the schema's
// convention) or "preceding year = 100" links needing chaining first.
enum class index_form { cumulative, link_relative };

// Rescales a cumulative index so the base year reads exactly 100.
inline time_series rebase_index(const time_series& index, int base_year) {
    if (!index.covers(base_year))
        throw data_error("BaseYearOutOfRange", "base year " + std::to_string(base_year) +
                                                   " outside " + index.name + "'s range");
    double base = index.at_year(base_year);
    if (base <= 0.0)
        throw data_error("NonPositiveIndex", index.name + " non-positive at the base year");
    time_series out = index;
    for (double& v : out.values) v = 100.0 * v / base;
    return out;
}

// The nine analysis variables built from the raw CSV columns.
struct analysis_variables {
    time_series gdp;   // real GDP, 亿元
    time_series urc;   // real urban per-capita consumption, 元
    time_series rrc;   // real rural per-capita consumption, 元
    time_series URC;   // real urban total consumption, 亿元
    time_series RRC;   // real rural total consumption, 亿元
    time_series LGDP, LURC, LRRC, lurc, lrrc;
};

inline analysis_variables build_variables(const data_table& raw, int base_year,
                                          index_form form = index_form::cumulative) {
    auto deflator = [&](const char* col) {
        time_series idx = raw.column(col);
        if (form == index_form::link_relative) idx = chain_index(idx);
        return rebase_index(idx, base_year);
    };
    analysis_variables v;
    v.gdp = deflate(raw.column("gdp_nominal"), deflator("gdp_index"), base_year);
    v.gdp.name = "GDP";
    v.urc = deflate(raw.column("urc_nominal"), deflator("urc_index"), base_year);
    v.urc.name = "urc";
    v.rrc = deflate(raw.column("rrc_nominal"), deflator("rrc_index"), base_year);
    v.rrc.name = "rrc";
    v.URC = total_consumption(v.urc, raw.column("urban_pop"));
    v.URC.name = "URC";
    v.RRC = total_consumption(v.rrc, raw.column("rural_pop"));
    v.RRC.name = "RRC";
    v.LGDP = log_transform(v.gdp);
    v.LURC = log_transform(v.URC);
    v.LRRC = log_transform(v.RRC);
    v.lurc = log_transform(v.urc);
    v.lrrc = log_transform(v.rrc);
    return v;
}

} // namespace tsecon
