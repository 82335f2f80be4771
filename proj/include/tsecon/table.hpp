// Deterministic table rendering: fixed-decimal cells (round-half-even),
// significance stars, CSV and Markdown output.
#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace tsecon {

// glibc's printf conversion is correctly rounded with ties-to-even, which is
// exactly the rounding convention the tables use.
inline std::string fmt_fixed(double v, int dec) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", dec, v);
    std::string s(buf);
    if (s.find_first_of("123456789") == std::string::npos && s[0] == '-')
        s.erase(0, 1);  // normalize -0.000 to 0.000
    return s;
}

inline std::string fmt_sci(double v, int dec) {
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*e", dec, v);
    return std::string(buf);
}

inline std::string fmt_int(long long v) { return std::to_string(v); }

inline std::string stars_for_p(double p) {
    if (p <= 0.01) return "***";
    if (p <= 0.05) return "**";
    if (p <= 0.10) return "*";
    return "";
}

// p-value cell with appended significance stars, e.g. "0.036**".
inline std::string fmt_p(double p, int dec = 3) {
    return fmt_fixed(p, dec) + stars_for_p(p);
}

struct text_table {
    std::string title;
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
    std::string note;

    static std::string csv_escape(const std::string& cell) {
        if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
        std::string out = "\"";
        for (char ch : cell) {
            if (ch == '"') out += '"';
            out += ch;
        }
        out += '"';
        return out;
    }

    std::string to_csv() const {
        std::string out;
        for (std::size_t j = 0; j < headers.size(); ++j) {
            if (j) out += ',';
            out += csv_escape(headers[j]);
        }
        out += '\n';
        for (const auto& row : rows) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (j) out += ',';
                out += csv_escape(row[j]);
            }
            out += '\n';
        }
        return out;
    }

    std::string to_markdown() const {
        std::string out;
        if (!title.empty()) out += "### " + title + "\n\n";
        out += '|';
        for (const auto& h : headers) out += ' ' + h + " |";
        out += "\n|";
        for (std::size_t j = 0; j < headers.size(); ++j) out += " --- |";
        out += '\n';
        for (const auto& row : rows) {
            out += '|';
            for (const auto& cell : row) out += ' ' + (cell.empty() ? std::string(" ") : cell) + " |";
            out += '\n';
        }
        if (!note.empty()) out += "\n" + note + "\n";
        return out;
    }
};

} // namespace tsecon
