#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "tsecon/coint.hpp"
#include "tsecon/dataset.hpp"
#include "tsecon/pipeline.hpp"
#include "tsecon/regress.hpp"
#include "tsecon/svg.hpp"
#include "tsecon/table.hpp"
#include "helpers.hpp"

using namespace tsecon;

namespace {

std::size_t count_of(const std::string& hay, const std::string& needle) {
    std::size_t n = 0, pos = 0;
    while ((pos = hay.find(needle, pos)) != std::string::npos) {
        ++n;
        pos += needle.size();
    }
    return n;
}

}  // namespace

TEST_CASE("fixed-decimal formatting rounds ties to even") {
    CHECK(fmt_fixed(1.0, 3) == "1.000");
    CHECK(fmt_fixed(-2.167, 3) == "-2.167");

    // Exact binary ties resolve toward the even neighbor.
    CHECK(fmt_fixed(2.5, 0) == "2");
    CHECK(fmt_fixed(3.5, 0) == "4");
    CHECK(fmt_fixed(0.125, 2) == "0.12");
    CHECK(fmt_fixed(0.375, 2) == "0.38");
    CHECK(fmt_fixed(0.0625, 3) == "0.062");
    CHECK(fmt_fixed(-0.125, 2) == "-0.12");
}

TEST_CASE("fixed-decimal formatting handles degenerate values") {
    CHECK(fmt_fixed(-0.0001, 3) == "0.000");
    CHECK(fmt_fixed(-0.0, 2) == "0.00");
    CHECK(fmt_fixed(std::numeric_limits<double>::quiet_NaN(), 3).empty());
    CHECK(fmt_fixed(std::numeric_limits<double>::infinity(), 3) == "inf");
    CHECK(fmt_fixed(-std::numeric_limits<double>::infinity(), 3) == "-inf");
}

TEST_CASE("scientific formatting matches the lag-table style") {
    CHECK(fmt_sci(2.2997e-10, 2) == "2.30e-10");
    CHECK(fmt_sci(4.807e-11, 2) == "4.81e-11");
    CHECK(fmt_sci(0.00023, 2) == "2.30e-04");
    CHECK(fmt_sci(1.0, 2) == "1.00e+00");
    CHECK(fmt_sci(std::numeric_limits<double>::quiet_NaN(), 2).empty());
}

TEST_CASE("significance stars follow the 1/5/10 percent convention") {
    CHECK(stars_for_p(0.009) == "***");
    CHECK(stars_for_p(0.01) == "***");
    CHECK(stars_for_p(0.036) == "**");
    CHECK(stars_for_p(0.05) == "**");
    CHECK(stars_for_p(0.07) == "*");
    CHECK(stars_for_p(0.10) == "*");
    CHECK(stars_for_p(0.25).empty());

    CHECK(fmt_p(0.036) == "0.036**");
    CHECK(fmt_p(0.25) == "0.250");
    CHECK(fmt_p(0.0004) == "0.000***");
}

TEST_CASE("csv output escapes delimiters and quotes") {
    text_table t;
    t.headers = {"a", "b"};
    t.rows.push_back({"plain", "with, comma"});
    t.rows.push_back({"say \"hi\"", "two\nlines"});
    std::string csv = t.to_csv();
    CHECK(csv == "a,b\nplain,\"with, comma\"\n\"say \"\"hi\"\"\",\"two\nlines\"\n");
}

TEST_CASE("markdown output carries title, separator and note") {
    text_table t;
    t.title = "Demo";
    t.headers = {"x", "y"};
    t.rows.push_back({"1", ""});
    t.note = "a note";
    std::string md = t.to_markdown();
    CHECK(md.rfind("### Demo\n", 0) == 0);
    CHECK(md.find("| x | y |\n| --- | --- |\n") != std::string::npos);
    CHECK(md.find("| 1 |   |\n") != std::string::npos);
    CHECK(md.find("\na note\n") != std::string::npos);
}

TEST_CASE("lag-selection table stars the preferred lags") {
    lag_selection sel;
    sel.effective_T = 31;
    lag_selection_row r0;
    r0.lag = 0;
    r0.logl = 215.0084;
    r0.fpe = 2.2997e-10;
    r0.aic = -13.67796;
    r0.sc = -13.53919;
    r0.hq = -13.63273;
    lag_selection_row r1;
    r1.lag = 1;
    r1.logl = 233.5033;
    r1.lr = 32.2169;
    r1.fpe = 1.25e-10;
    r1.aic = -14.29054;
    r1.sc = -13.73545;
    r1.hq = -14.10959;
    sel.rows = {r0, r1};
    sel.star_lr = 1;
    sel.star_fpe = 1;
    sel.star_aic = 1;
    sel.star_sc = 1;
    sel.star_hq = 1;

    text_table t = table_lag_selection(sel);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][2] == "NA");
    CHECK(t.rows[0][3] == "2.30e-10");
    CHECK(t.rows[1][2] == "32.21690*");
    CHECK(t.rows[1][3] == "1.25e-10*");
    CHECK(t.rows[1][4] == "-14.29054*");
    CHECK(t.rows[1][5] == "-13.73545*");
    CHECK(t.rows[1][6] == "-14.10959*");
    CHECK(t.note.find("T = 31") != std::string::npos);
}

TEST_CASE("johansen table marks rejected nulls") {
    johansen_result r;
    r.names = {"a", "b"};
    r.eigenvalues = {0.5, 0.1};
    r.trace_stats = {30.0, 2.0};
    r.critical_values_5pct = {15.49471, 3.841466};
    r.p_values = {0.001, 0.6};
    r.rank_decision = 1;
    r.lags_in_levels = 2;
    r.effective_T = 38;

    text_table t = table_johansen(r);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][0] == "r = 0 *");
    CHECK(t.rows[1][0] == "r <= 1");
    CHECK(t.rows[0][1] == "0.500000");
    CHECK(t.rows[0][3] == "15.494710");
    CHECK(t.note.find("T = 38") != std::string::npos);
}

TEST_CASE("adf tables format cells at three decimals with stars") {
    adf_result a;
    a.tau = -3.8351;
    a.p_value = 0.0362;
    a.cvs.one_pct = -3.621;
    a.cvs.five_pct = -2.944;
    a.cvs.ten_pct = -2.610;
    a.lags_used = 2;

    text_table t = table_adf_levels({a}, {"LGDP"});
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][0] == "LGDP");
    CHECK(t.rows[0][1] == "-3.835");
    CHECK(t.rows[0][2] == "0.036**");
    CHECK(t.rows[0][3] == "-3.621");
    CHECK(t.rows[0][6] == "2");

    adf_result b = a;
    b.cvs.one_pct.reset();
    b.cvs.ten_pct.reset();
    text_table t2 = table_adf_by_difference("LGDP", {a, b});
    CHECK(t2.rows[1][4] == "n/a");
    CHECK(t2.rows[1][6] == "n/a");
    CHECK(t2.rows[0][0] == "0");
    CHECK(t2.rows[1][0] == "1");
}

TEST_CASE("ols table carries beta, vif and a fitted-statistics note") {
    std::vector<double> x1{0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<double> x2{1, 0, 2, 1, 3, 2, 4, 3};
    std::vector<double> yv{1.1, 1.9, 3.2, 3.9, 5.1, 5.8, 7.2, 7.9};
    time_series sx1 = testutil::series("x1", 1980, x1);
    time_series sx2 = testutil::series("x2", 1980, x2);
    auto X = design_matrix::from_series({&sx1, &sx2}, true);
    ols_result f = ols_fit(X, yv);

    text_table t = table_ols(f);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.headers == std::vector<std::string>{"variable", "B", "std. error", "Beta",
                                                "t", "P", "VIF"});
    CHECK(t.rows[0][0] == "const");
    CHECK(t.rows[0][3].empty());
    CHECK(t.rows[0][6].empty());
    CHECK(!t.rows[1][3].empty());
    CHECK(!t.rows[1][6].empty());
    CHECK(t.note.find("R2 = ") != std::string::npos);
    CHECK(t.note.find("F = ") != std::string::npos);
}

TEST_CASE("fitted equations are restated from the coefficient vector") {
    Eigen::VectorXd b(3);
    b << -0.229, 1.253, 0.209;
    CHECK(detail::equation_text("LGDP", {"const", "lurc", "lrrc"}, b) ==
          "LGDP = -0.229 + 1.253·lurc + 0.209·lrrc");
    Eigen::VectorXd b2(2);
    b2 << 0.5, -2.0;
    CHECK(detail::equation_text("y", {"const", "x"}, b2) == "y = 0.500 - 2.000·x");
}

TEST_CASE("figures reject bad series sets") {
    CHECK_THROWS_AS(emit_figure("t", {1, 2}, {}), config_error);
    CHECK_THROWS_AS(emit_figure("t", {}, {{"a", {}}}), config_error);
    CHECK_THROWS_AS(emit_figure("t", {1, 2}, {{"a", {1.0}}}), data_error);
    try {
        emit_figure("t", {1, 2}, {}, plot_style::line);
    } catch (const error& e) {
        CHECK(e.code() == "EmptySeriesSet");
    }
}

TEST_CASE("line figures are fixed-canvas self-contained svg") {
    std::vector<double> x{2000, 2001, 2002, 2003};
    std::vector<plot_series> s{{"up", {1, 2, 3, 4}}, {"down", {4, 3, 2, 1}}};
    std::string svg = emit_figure("demo", x, s);

    CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
                    "height=\"600\"", 0) == 0);
    CHECK(count_of(svg, "<polyline") == 2);
    CHECK(count_of(svg, "</svg>") == 1);
    CHECK(svg.find(">up</text>") != std::string::npos);
    CHECK(svg.find(">down</text>") != std::string::npos);
    CHECK(svg.find("href") == std::string::npos);
    CHECK(svg.find("<script") == std::string::npos);

    // byte-deterministic
    CHECK(svg == emit_figure("demo", x, s));
}

TEST_CASE("a constant series draws a mid-canvas horizontal line") {
    std::vector<double> x{2000, 2001, 2002};
    std::string svg = emit_figure("flat", x, {{"c", {5.0, 5.0, 5.0}}});
    // plot band is y = 45..550, so the centered polyline sits at 297.50
    CHECK(count_of(svg, ",297.50") == 3);
}

TEST_CASE("stacked figures fill the full band when shares sum to one") {
    std::vector<double> x{1, 2, 3};
    std::vector<plot_series> s{{"a", {0.25, 0.5, 0.75}}, {"b", {0.75, 0.5, 0.25}}};
    std::string svg = emit_figure("shares", x, s, plot_style::stacked);

    CHECK(count_of(svg, "<polygon") == 2);
    // bottom edge of the first band is the axis (y = 550), top edge of the
    // last band is the top of the plot area (y = 45)
    CHECK(svg.find(",550.00") != std::string::npos);
    CHECK(count_of(svg, ",45.00") >= 3);
}

TEST_CASE("fixture urban and rural totals cross exactly once near 1993") {
    data_table raw = load_csv(testutil::fixture_csv());
    analysis_variables v = build_variables(raw, 1980);

    int crossings = 0;
    int cross_year = 0;
    for (std::size_t i = 1; i < v.LURC.values.size(); ++i) {
        double a = v.LURC.values[i - 1] - v.LRRC.values[i - 1];
        double b = v.LURC.values[i] - v.LRRC.values[i];
        if (a * b < 0) {
            ++crossings;
            cross_year = v.LURC.start_year + static_cast<int>(i);
        }
    }
    CHECK(crossings == 1);
    CHECK(cross_year >= 1990);
    CHECK(cross_year <= 1996);

    auto yrs = detail::year_axis_d(v.LGDP);
    std::string svg = emit_figure("LURC and LRRC over time", yrs,
                                  {{"LURC", v.LURC.values}, {"LRRC", v.LRRC.values}});
    CHECK(count_of(svg, "<polyline") == 2);
}
