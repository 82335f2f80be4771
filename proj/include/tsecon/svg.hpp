// Self-contained deterministic SVG line and stacked-area charts on a fixed
// 800x600 canvas. All coordinates are rounded to 2 decimals so repeated runs
// are byte-identical.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "errors.hpp"

namespace tsecon {

struct plot_series {
    std::string name;
    std::vector<double> y;
};

enum class plot_style { line, stacked };

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    std::string s(buf);
    if (s == "-0.00") s = "0.00";
    return s;
}

inline std::string tick_label(double v, int dec) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.*f", dec, v);
    std::string s(buf);
    if (s.find_first_of("123456789") == std::string::npos && s[0] == '-') s.erase(0, 1);
    return s;
}

inline double nice_step(double span, int target_ticks) {
    if (span <= 0.0) return 1.0;
    double raw = span / target_ticks;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

inline const char* palette(std::size_t i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#ff7f0e", "#9467bd", "#8c564b"};
    return colors[i % 6];
}

} // namespace detail

// Renders named series over a shared x axis. `line` draws one polyline per
// series; `stacked` draws cumulative filled bands (inputs should sum to 1).
inline std::string emit_figure(const std::string& title, const std::vector<double>& x,
                               const std::vector<plot_series>& series,
                               plot_style style = plot_style::line) {
    if (series.empty())
        throw config_error("EmptySeriesSet", "figure needs at least one series");
    for (const auto& s : series)
        if (s.y.size() != x.size())
            throw data_error("MisalignedSeries",
                             "series " + s.name + " does not match the x axis length");
    if (x.empty())
        throw config_error("EmptySeriesSet", "figure needs at least one point");

    const double W = 800, H = 600;
    const double ml = 70, mr = 160, mt = 45, mb = 50;
    const double pw = W - ml - mr, ph = H - mt - mb;

    double xmin = *std::min_element(x.begin(), x.end());
    double xmax = *std::max_element(x.begin(), x.end());
    if (xmax == xmin) {
        xmin -= 1.0;
        xmax += 1.0;
    }

    double ymin = series[0].y[0], ymax = ymin;
    if (style == plot_style::stacked) {
        ymin = 0.0;
        ymax = 1.0;
    } else {
        for (const auto& s : series)
            for (double v : s.y) {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
        if (ymax == ymin) {
            double pad = std::max(1.0, std::fabs(ymax) * 0.1);
            ymin -= pad;
            ymax += pad;
        } else {
            double pad = (ymax - ymin) * 0.05;
            ymin -= pad;
            ymax += pad;
        }
    }

    auto X = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * pw; };
    auto Y = [&](double v) { return mt + ph - (v - ymin) / (ymax - ymin) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n";
    out += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    out += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" + title + "</text>\n";

    // Axes.
    out += "<line x1=\"" + detail::svg_num(ml) + "\" y1=\"" + detail::svg_num(mt) +
           "\" x2=\"" + detail::svg_num(ml) + "\" y2=\"" + detail::svg_num(mt + ph) +
           "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + detail::svg_num(ml) + "\" y1=\"" + detail::svg_num(mt + ph) +
           "\" x2=\"" + detail::svg_num(ml + pw) + "\" y2=\"" + detail::svg_num(mt + ph) +
           "\" stroke=\"black\"/>\n";

    // X ticks (integer-valued axis: years or horizons).
    double xstep = detail::nice_step(xmax - xmin, 8);
    if (xstep < 1.0) xstep = 1.0;
    for (double t = std::ceil(xmin / xstep) * xstep; t <= xmax + 1e-9; t += xstep) {
        double px = X(t);
        out += "<line x1=\"" + detail::svg_num(px) + "\" y1=\"" + detail::svg_num(mt + ph) +
               "\" x2=\"" + detail::svg_num(px) + "\" y2=\"" + detail::svg_num(mt + ph + 5) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + detail::svg_num(px) + "\" y=\"" + detail::svg_num(mt + ph + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
               detail::tick_label(t, 0) + "</text>\n";
    }

    // Y ticks.
    double ystep = detail::nice_step(ymax - ymin, 6);
    int ydec = std::max(0, -static_cast<int>(std::floor(std::log10(ystep) + 1e-9)));
    for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax + 1e-9 * ystep; t += ystep) {
        double py = Y(t);
        out += "<line x1=\"" + detail::svg_num(ml - 5) + "\" y1=\"" + detail::svg_num(py) +
               "\" x2=\"" + detail::svg_num(ml) + "\" y2=\"" + detail::svg_num(py) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + detail::svg_num(ml - 9) + "\" y=\"" + detail::svg_num(py + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
               detail::tick_label(t, ydec) + "</text>\n";
    }

    if (style == plot_style::stacked) {
        // Cumulative bands bottom-up; each band fills between running sums.
        std::vector<double> lower(x.size(), 0.0);
        for (std::size_t si = 0; si < series.size(); ++si) {
            std::vector<double> upper(x.size());
            for (std::size_t i = 0; i < x.size(); ++i)
                upper[i] = lower[i] + series[si].y[i];
            std::string pts;
            for (std::size_t i = 0; i < x.size(); ++i)
                pts += detail::svg_num(X(x[i])) + "," + detail::svg_num(Y(upper[i])) + " ";
            for (std::size_t i = x.size(); i-- > 0;)
                pts += detail::svg_num(X(x[i])) + "," + detail::svg_num(Y(lower[i])) + " ";
            pts.pop_back();
            out += std::string("<polygon points=\"") + pts + "\" fill=\"" +
                   detail::palette(si) + "\" fill-opacity=\"0.85\" stroke=\"" +
                   detail::palette(si) + "\"/>\n";
            lower = upper;
        }
    } else {
        for (std::size_t si = 0; si < series.size(); ++si) {
            std::string pts;
            for (std::size_t i = 0; i < x.size(); ++i)
                pts += detail::svg_num(X(x[i])) + "," + detail::svg_num(Y(series[si].y[i])) + " ";
            pts.pop_back();
            out += std::string("<polyline points=\"") + pts + "\" fill=\"none\" stroke=\"" +
                   detail::palette(si) + "\" stroke-width=\"1.8\"/>\n";
        }
    }

    // Legend.
    double lx = ml + pw + 12, ly = mt + 8;
    for (std::size_t si = 0; si < series.size(); ++si) {
        double py = ly + 18.0 * static_cast<double>(si);
        out += "<line x1=\"" + detail::svg_num(lx) + "\" y1=\"" + detail::svg_num(py) +
               "\" x2=\"" + detail::svg_num(lx + 22) + "\" y2=\"" + detail::svg_num(py) +
               "\" stroke=\"" + detail::palette(si) + "\" stroke-width=\"3\"/>\n";
        out += "<text x=\"" + detail::svg_num(lx + 28) + "\" y=\"" + detail::svg_num(py + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + series[si].name +
               "</text>\n";
    }

    out += "</svg>\n";
    return out;
}

} // namespace tsecon
