// Command-line front end: full replication pipeline plus per-analysis
// subcommands. Exit codes: 0 ok, 2 config, 3 data, 4 numerical.
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsecon/tsecon.hpp"

namespace {

struct cli_options {
    std::string config_path;
    std::string data = "data/china_1980_2019.csv";
    int base_year = 1980;
    std::string det = "const";
    int max_lag = 8;
    int levels_lag = 2;
    int horizon = 10;
    std::string ordering;
    std::string out = "out";
    std::string format = "md";
};

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw tsecon::config_error("ConfigFileNotFound", "cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        std::size_t eq = line.find('=', b);
        if (eq == std::string::npos)
            throw tsecon::config_error("MalformedConfigLine",
                                       path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            std::size_t a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            std::size_t z = s.find_last_not_of(" \t\r");
            return s.substr(a, z - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void apply_config_file(cli_options& o) {
    if (o.config_path.empty()) return;
    auto kv = read_config_file(o.config_path);
    for (const auto& [key, val] : kv) {
        if (key == "data") o.data = val;
        else if (key == "base-year") o.base_year = std::stoi(val);
        else if (key == "det") o.det = val;
        else if (key == "max-lag") o.max_lag = std::stoi(val);
        else if (key == "levels-lag") o.levels_lag = std::stoi(val);
        else if (key == "horizon") o.horizon = std::stoi(val);
        else if (key == "ordering") o.ordering = val;
        else if (key == "out") o.out = val;
        else if (key == "format") o.format = val;
        else
            throw tsecon::config_error("UnknownConfigKey", key);
    }
}

tsecon::det_case parse_det(const std::string& s) {
    if (s == "none") return tsecon::det_case::none;
    if (s == "const") return tsecon::det_case::constant;
    if (s == "trend") return tsecon::det_case::constant_trend;
    throw tsecon::config_error("InvalidDeterministicCase",
                               "expected none|const|trend, got " + s);
}

std::vector<std::string> split_csv_list(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) if (!item.empty()) parts.push_back(item);
    return parts;
}

tsecon::pipeline_config to_pipeline_config(const cli_options& o) {
    if (o.format != "csv" && o.format != "md")
        throw tsecon::config_error("InvalidFormat", "expected csv|md, got " + o.format);
    tsecon::pipeline_config cfg;
    cfg.data_path = o.data;
    cfg.base_year = o.base_year;
    cfg.adf_case = parse_det(o.det);
    cfg.p_levels = o.levels_lag;
    cfg.var_max_lag = o.max_lag;
    cfg.horizon = o.horizon;
    cfg.ordering = split_csv_list(o.ordering);
    cfg.out_dir = o.out;
    cfg.format = o.format;
    return cfg;
}

struct loaded_data {
    tsecon::data_table raw;
    tsecon::analysis_variables v;
};

loaded_data load_all(const cli_options& o, std::string& stage) {
    stage = "load";
    tsecon::data_table raw = tsecon::load_csv(
        o.data, {"gdp_nominal", "gdp_index", "urc_nominal", "urc_index",
                 "rrc_nominal", "rrc_index", "urban_pop", "rural_pop"});
    stage = "variables";
    tsecon::analysis_variables v = tsecon::build_variables(raw, o.base_year);
    return {std::move(raw), std::move(v)};
}

void print_table(const tsecon::text_table& t, const std::string& format) {
    std::cout << (format == "csv" ? t.to_csv() : t.to_markdown());
    if (format == "md") std::cout << "\n";
}

struct var_bundle {
    tsecon::data_table diffs;
    tsecon::lag_selection sel;
    tsecon::var_model model;
};

var_bundle fit_var(const tsecon::analysis_variables& v, int max_lag, std::string& stage) {
    stage = "select_lag";
    tsecon::data_table diffs;
    diffs.add(tsecon::difference(v.LGDP, 1));
    diffs.add(tsecon::difference(v.LURC, 1));
    diffs.add(tsecon::difference(v.LRRC, 1));
    tsecon::lag_selection sel = tsecon::select_lag(diffs, max_lag);
    stage = "var";
    tsecon::var_model m = tsecon::var_fit(diffs, sel.star_aic);
    return {std::move(diffs), std::move(sel), std::move(m)};
}

std::vector<int> ordering_indices(const tsecon::var_model& m,
                                  const std::vector<std::string>& names) {
    std::vector<int> ord;
    for (const auto& nm : names) {
        bool found = false;
        for (std::size_t j = 0; j < m.names.size(); ++j)
            if (m.names[j] == nm) {
                ord.push_back(static_cast<int>(j));
                found = true;
                break;
            }
        if (!found)
            throw tsecon::config_error("InvalidOrdering", "unknown variable " + nm);
    }
    return ord;
}

int run_command(const std::string& cmd, const cli_options& o) {
    std::string stage = "config";
    try {
        tsecon::pipeline_config cfg = to_pipeline_config(o);
        if (cmd == "pipeline") {
            stage = "pipeline";
            tsecon::report_bundle b = tsecon::run_pipeline(cfg);
            for (const auto& f : b.table_files) std::cout << f << "\n";
            for (const auto& f : b.figure_files) std::cout << f << "\n";
            std::cout << b.report_file << "\n";
            return 0;
        }

        loaded_data d = load_all(o, stage);
        const auto& v = d.v;

        if (cmd == "adf") {
            stage = "adf";
            std::vector<std::string> names{"LGDP", "lurc", "lrrc"};
            std::vector<tsecon::adf_result> rows{
                tsecon::adf_test(v.LGDP, cfg.adf_case, cfg.adf_lags),
                tsecon::adf_test(v.lurc, cfg.adf_case, cfg.adf_lags),
                tsecon::adf_test(v.lrrc, cfg.adf_case, cfg.adf_lags)};
            print_table(tsecon::table_adf_levels(rows, names), o.format);
            for (const tsecon::time_series* s : {&v.LGDP, &v.LURC, &v.LRRC}) {
                auto sweep = tsecon::adf_by_difference(*s, 2, cfg.adf_case, cfg.adf_lags);
                print_table(tsecon::table_adf_by_difference(s->name, sweep), o.format);
            }
            return 0;
        }
        if (cmd == "ols") {
            stage = "ols";
            auto X = tsecon::design_matrix::from_series({&v.lurc, &v.lrrc}, true);
            print_table(tsecon::table_ols(tsecon::ols_fit(X, v.LGDP.values)), o.format);
            return 0;
        }
        if (cmd == "ridge") {
            stage = "ridge";
            auto X = tsecon::design_matrix::from_series({&v.lurc, &v.lrrc}, true);
            auto grid = tsecon::default_k_grid();
            auto trace = tsecon::ridge_trace(X, v.LGDP.values, grid);
            print_table(tsecon::table_ridge(tsecon::ridge_fit(X, v.LGDP.values, trace.k_star)),
                        o.format);
            return 0;
        }
        if (cmd == "johansen") {
            stage = "johansen";
            tsecon::data_table levels;
            levels.add(v.LGDP);
            levels.add(v.lurc);
            levels.add(v.lrrc);
            print_table(tsecon::table_johansen(
                            tsecon::johansen_trace(levels, o.levels_lag, cfg.johansen_case)),
                        o.format);
            return 0;
        }
        if (cmd == "lagselect") {
            var_bundle vb = fit_var(v, o.max_lag, stage);
            print_table(tsecon::table_lag_selection(vb.sel), o.format);
            return 0;
        }
        if (cmd == "var") {
            var_bundle vb = fit_var(v, o.max_lag, stage);
            print_table(tsecon::table_var(vb.model), o.format);
            auto moduli = tsecon::var_stability(vb.model);
            std::cout << "largest companion root modulus: "
                      << tsecon::fmt_fixed(moduli.empty() ? 0.0 : moduli.front(), 4) << "\n";
            return 0;
        }
        if (cmd == "irf") {
            var_bundle vb = fit_var(v, o.max_lag, stage);
            stage = "irf";
            auto ord = ordering_indices(vb.model, cfg.ordering);
            print_table(tsecon::table_irf(tsecon::irf(vb.model, o.horizon, ord), 0), o.format);
            return 0;
        }
        if (cmd == "fevd") {
            var_bundle vb = fit_var(v, o.max_lag, stage);
            stage = "fevd";
            auto ord = ordering_indices(vb.model, cfg.ordering);
            print_table(tsecon::table_fevd(tsecon::fevd(vb.model, o.horizon, ord), 0), o.format);
            return 0;
        }
        if (cmd == "plot") {
            var_bundle vb = fit_var(v, o.max_lag, stage);
            stage = "figures";
            auto ord = ordering_indices(vb.model, cfg.ordering);
            tsecon::impulse_response ir = tsecon::irf(vb.model, o.horizon, ord);
            tsecon::fevd_result fv = tsecon::fevd(vb.model, o.horizon, ord);

            std::vector<double> yrs = tsecon::detail::year_axis_d(v.LGDP);
            std::vector<double> hx, hx1;
            for (int h = 0; h <= o.horizon; ++h) hx.push_back(h);
            for (int h = 1; h <= o.horizon; ++h) hx1.push_back(h);
            std::vector<tsecon::plot_series> irf_s, fevd_s;
            for (std::size_t j = 0; j < vb.model.names.size(); ++j) {
                tsecon::plot_series a, b;
                a.name = "shock " + vb.model.names[j];
                b.name = vb.model.names[j];
                for (int h = 0; h <= o.horizon; ++h)
                    a.y.push_back(ir.responses[static_cast<std::size_t>(h)](0,
                                      static_cast<Eigen::Index>(j)));
                for (int h = 1; h <= o.horizon; ++h)
                    b.y.push_back(fv.shares[static_cast<std::size_t>(h - 1)](0,
                                      static_cast<Eigen::Index>(j)));
                irf_s.push_back(std::move(a));
                fevd_s.push_back(std::move(b));
            }

            tsecon::detail::output_writer out(o.out);
            std::cout << out.write("fig1.svg",
                                   tsecon::emit_figure("LGDP over time", yrs,
                                                       {{"LGDP", v.LGDP.values}})) << "\n";
            std::cout << out.write("fig2.svg",
                                   tsecon::emit_figure("LURC and LRRC over time", yrs,
                                                       {{"LURC", v.LURC.values},
                                                        {"LRRC", v.LRRC.values}})) << "\n";
            std::cout << out.write("fig3.svg",
                                   tsecon::emit_figure("LGDP, lurc, lrrc over time", yrs,
                                                       {{"LGDP", v.LGDP.values},
                                                        {"lurc", v.lurc.values},
                                                        {"lrrc", v.lrrc.values}})) << "\n";
            std::cout << out.write("fig4.svg",
                                   tsecon::emit_figure("Responses of " + vb.model.names[0] +
                                                           " (one s.d. shocks)",
                                                       hx, irf_s)) << "\n";
            std::cout << out.write("fig5.svg",
                                   tsecon::emit_figure("Variance decomposition of " +
                                                           vb.model.names[0],
                                                       hx1, fevd_s,
                                                       tsecon::plot_style::stacked)) << "\n";
            return 0;
        }
        throw tsecon::config_error("UnknownCommand", cmd);
    } catch (const tsecon::error& e) {
        std::string msg = e.what();
        if (msg.rfind(e.code() + ": stage ", 0) != 0 && msg.rfind("stage ", 0) != 0)
            std::cerr << "error: stage " << stage << ": " << msg << "\n";
        else
            std::cerr << "error: " << msg << "\n";
        return tsecon::exit_code_for(e.kind());
    }
}

} // namespace

int main(int argc, char** argv) {
    cli_options opt;
    CLI::App app{"Annual time-series replication pipeline: unit roots, "
                 "cointegration, VAR dynamics, tables and figures"};
    app.fallthrough(true);
    app.require_subcommand(0, 1);
    app.add_option("--config", opt.config_path, "flat key=value config file");
    app.add_option("--data", opt.data, "input CSV path");
    app.add_option("--base-year", opt.base_year, "deflation base year");
    app.add_option("--det", opt.det, "ADF deterministic terms: none|const|trend");
    app.add_option("--max-lag", opt.max_lag, "maximum VAR lag order");
    app.add_option("--levels-lag", opt.levels_lag, "Johansen levels lag order");
    app.add_option("--horizon", opt.horizon, "IRF/FEVD horizon");
    app.add_option("--ordering", opt.ordering, "Cholesky ordering, comma-separated names");
    app.add_option("--out", opt.out, "output directory");
    app.add_option("--format", opt.format, "table format: csv|md");
    for (const char* name : {"pipeline", "adf", "ols", "ridge", "johansen",
                             "lagselect", "var", "irf", "fevd", "plot"})
        app.add_subcommand(name, "");

    // Two-pass parse: file values form the defaults, explicit flags override.
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        if (!opt.config_path.empty()) {
            cli_options from_file;
            from_file.config_path = opt.config_path;
            apply_config_file(from_file);
            // Re-apply command line on top of the file-derived defaults.
            opt = from_file;
            CLI::App over{""};
            over.fallthrough(true);
            over.require_subcommand(0, 1);
            over.add_option("--config", opt.config_path);
            over.add_option("--data", opt.data);
            over.add_option("--base-year", opt.base_year);
            over.add_option("--det", opt.det);
            over.add_option("--max-lag", opt.max_lag);
            over.add_option("--levels-lag", opt.levels_lag);
            over.add_option("--horizon", opt.horizon);
            over.add_option("--ordering", opt.ordering);
            over.add_option("--out", opt.out);
            over.add_option("--format", opt.format);
            for (const char* name : {"pipeline", "adf", "ols", "ridge", "johansen",
                                     "lagselect", "var", "irf", "fevd", "plot"})
                over.add_subcommand(name, "");
            over.parse(argc, argv);
        }
    } catch (const tsecon::error& e) {
        std::cerr << "error: stage config: " << e.what() << "\n";
        return tsecon::exit_code_for(e.kind());
    } catch (const CLI::ParseError&) {
        return 2;
    }

    std::string cmd = "pipeline";
    for (auto* sub : app.get_subcommands())
        cmd = sub->get_name();
    return run_command(cmd, opt);
}
