// Augmented Dickey-Fuller testing with fixed or AIC-selected augmentation
// lags, plus the by-differencing-order sweep.
#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "critical_values.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "regress.hpp"
#include "timeseries.hpp"

namespace tsecon {

struct lag_spec {
    bool automatic = true;
    int lags = 0;      // fixed mode
    int max_lags = -1; // auto mode; -1 means the Schwert bound floor(12*(T/100)^(1/4))

    static lag_spec fixed(int p) {
        lag_spec s;
        s.automatic = false;
        s.lags = p;
        return s;
    }
    static lag_spec auto_aic(int max_p = -1) {
        lag_spec s;
        s.automatic = true;
        s.max_lags = max_p;
        return s;
    }
};

struct adf_result {
    double tau = 0.0;
    double p_value = 1.0;
    critical_values cvs;
    int lags_used = 0;
    det_case dcase = det_case::constant;
    int effective_T = 0;
    double regression_aic = 0.0;  // (-2 logL + 2k) / T of the test regression
    bool decision_5pct = false;   // true = reject the unit root at 5%
};

namespace detail {

struct adf_reg {
    ols_result fit;
    int T = 0;
    int k = 0;
    int gamma_index = 0;
    double aic = 0.0;
};

// Regression dy_t = det + gamma*y_{t-1} + sum delta_i dy_{t-i}, rows starting
// at y index t_start (>= p+1).
inline adf_reg adf_regression(const std::vector<double>& y, int p, int t_start, det_case c) {
    int n = static_cast<int>(y.size());
    int T = n - t_start;
    int ndet = (c == det_case::none) ? 0 : (c == det_case::constant ? 1 : 2);
    int k = ndet + 1 + p;
    if (T <= k)
        throw data_error("SeriesTooShort", "only " + std::to_string(T) +
                                               " usable rows for " + std::to_string(k) +
                                               " ADF parameters");

    std::vector<std::vector<double>> cols;
    std::vector<std::string> names;
    if (c == det_case::constant_trend) {
        std::vector<double> trend(static_cast<std::size_t>(T));
        for (int i = 0; i < T; ++i) trend[static_cast<std::size_t>(i)] = t_start + i;
        cols.push_back(std::move(trend));
        names.push_back("trend");
    }
    std::vector<double> lag1(static_cast<std::size_t>(T));
    for (int i = 0; i < T; ++i) lag1[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(t_start + i - 1)];
    cols.push_back(std::move(lag1));
    names.push_back("y.lag1");
    for (int j = 1; j <= p; ++j) {
        std::vector<double> dl(static_cast<std::size_t>(T));
        for (int i = 0; i < T; ++i) {
            int t = t_start + i - j;
            dl[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(t)] - y[static_cast<std::size_t>(t - 1)];
        }
        cols.push_back(std::move(dl));
        names.push_back("dy.lag" + std::to_string(j));
    }
    std::vector<double> dy(static_cast<std::size_t>(T));
    double scale = 0.0;
    for (int i = 0; i < T; ++i) {
        int t = t_start + i;
        dy[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(t)] - y[static_cast<std::size_t>(t - 1)];
        scale += dy[static_cast<std::size_t>(i)] * dy[static_cast<std::size_t>(i)];
    }

    bool intercept = (c != det_case::none);
    design_matrix d = design_matrix::from_columns(cols, names, intercept);

    adf_reg out;
    try {
        out.fit = ols_fit(d, dy);
    } catch (const error& e) {
        if (e.code() == "DegenerateResponse")
            throw numerical_error("DegenerateRegression", "differenced series is constant");
        if (e.code() == "RankDeficient")
            throw numerical_error("DegenerateRegression",
                                  "ADF design collapses for this series");
        throw;
    }
    double sse = out.fit.residuals.squaredNorm();
    if (sse <= 1e-18 * (scale + 1e-30))
        throw numerical_error("DegenerateRegression",
                              "ADF regression has zero residual variance");
    out.T = T;
    out.k = k;
    out.gamma_index = intercept ? (c == det_case::constant_trend ? 2 : 1) : (c == det_case::constant_trend ? 1 : 0);
    double logl = -0.5 * T * (1.0 + std::log(2.0 * std::numbers::pi) + std::log(sse / T));
    out.aic = (-2.0 * logl + 2.0 * k) / T;
    return out;
}

} // namespace detail

inline int schwert_max_lags(int n) {
    return static_cast<int>(std::floor(12.0 * std::pow(n / 100.0, 0.25)));
}

inline adf_result adf_test(const time_series& s, det_case c = det_case::constant,
                           lag_spec spec = lag_spec::auto_aic()) {
    if (!is_adf_case(c))
        throw config_error("InvalidCase", det_case_name(c) + " is not an ADF case");
    const auto& y = s.values;
    int n = static_cast<int>(y.size());

    int p = spec.lags;
    if (spec.automatic) {
        int max_p = spec.max_lags >= 0 ? spec.max_lags : schwert_max_lags(n);
        if (n < 10 + max_p)
            throw data_error("SeriesTooShort", s.name + " has " + std::to_string(n) +
                                                   " observations; need >= " +
                                                   std::to_string(10 + max_p));
        // Candidate lags compete on the common sample aligned at max_p.
        double best_aic = 0.0;
        p = 0;
        for (int cand = 0; cand <= max_p; ++cand) {
            auto reg = detail::adf_regression(y, cand, max_p + 1, c);
            if (cand == 0 || reg.aic < best_aic) {
                best_aic = reg.aic;
                p = cand;
            }
        }
    } else {
        if (p < 0)
            throw config_error("InvalidLagSpec", "fixed lag must be nonnegative");
        if (n < 10 + p)
            throw data_error("SeriesTooShort", s.name + " has " + std::to_string(n) +
                                                   " observations; need >= " +
                                                   std::to_string(10 + p));
    }

    // Final regression on the full usable sample for the chosen lag.
    auto reg = detail::adf_regression(y, p, p + 1, c);
    adf_result r;
    r.tau = reg.fit.t_stats(reg.gamma_index);
    r.lags_used = p;
    r.dcase = c;
    r.effective_T = reg.T;
    r.regression_aic = reg.aic;
    r.cvs = adf_critical_values(reg.T, c);
    r.p_value = adf_pvalue(r.tau, c);
    r.decision_5pct = r.tau < r.cvs.five_pct;
    return r;
}

// One ADF row per differencing order 0..max_diff; stops early only when a
// differenced series becomes too short to test.
inline std::vector<adf_result> adf_by_difference(const time_series& s, int max_diff = 2,
                                                 det_case c = det_case::constant,
                                                 lag_spec spec = lag_spec::auto_aic()) {
    std::vector<adf_result> rows;
    for (int d = 0; d <= max_diff; ++d) {
        time_series sd = difference(s, d);
        try {
            rows.push_back(adf_test(sd, c, spec));
        } catch (const data_error& e) {
            if (e.code() == "SeriesTooShort") break;
            throw;
        }
    }
    return rows;
}

} // namespace tsecon
