// Stored critical-value surfaces: MacKinnon (1996, 2010) for the ADF tau
// statistic and MacKinnon-Haug-Michelis (1999) for the Johansen trace
// statistic, with Doornik's (1998) gamma approximation for trace p-values.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>

#include "distributions.hpp"
#include "errors.hpp"

namespace tsecon {

// Deterministic-term specification. The first three apply to ADF regressions,
// the case2/3/4 tags to Johansen systems (Johansen's own numbering).
enum class det_case {
    none,
    constant,
    constant_trend,
    case2_restricted_const,
    case3_unrestricted_const,
    case4_const_trend,
};

inline bool is_adf_case(det_case c) {
    return c == det_case::none || c == det_case::constant || c == det_case::constant_trend;
}

inline std::string det_case_name(det_case c) {
    switch (c) {
    case det_case::none: return "none";
    case det_case::constant: return "constant";
    case det_case::constant_trend: return "constant_trend";
    case det_case::case2_restricted_const: return "case2_restricted_const";
    case det_case::case3_unrestricted_const: return "case3_unrestricted_const";
    case det_case::case4_const_trend: return "case4_const_trend";
    }
    return "?";
}

// five_pct is always available; 1% and 10% are optional because the stored
// trace table carries only the 5% column.
struct critical_values {
    std::optional<double> one_pct;
    double five_pct = 0.0;
    std::optional<double> ten_pct;
};

namespace detail {

// MacKinnon (2010) response surface cv = b0 + b1/T + b2/T^2 + b3/T^3,
// tau_nc / tau_c / tau_ct rows for one variable, levels 1%, 5%, 10%.
struct adf_cv_row { double b0, b1, b2, b3; };
struct adf_cv_case { adf_cv_row p01, p05, p10; };

inline const adf_cv_case& adf_cv_table(det_case c) {
    // MacKinnon (2010), Table 2, tau_nc (no deterministic terms)
    static const adf_cv_case nc{{-2.56574, -2.2358, -3.627, 0.0},
                                {-1.94100, -0.2686, -3.365, 31.223},
                                {-1.61682, 0.2656, -2.714, 25.364}};
    // MacKinnon (2010), Table 2, tau_c (constant)
    static const adf_cv_case cc{{-3.43035, -6.5393, -16.786, -79.433},
                                {-2.86154, -2.8903, -4.234, -40.040},
                                {-2.56677, -1.5384, -2.809, 0.0}};
    // MacKinnon (2010), Table 2, tau_ct (constant and trend)
    static const adf_cv_case ct{{-3.95877, -9.0531, -28.428, -134.155},
                                {-3.41049, -4.3904, -9.036, -45.374},
                                {-3.12705, -2.5856, -3.925, -22.380}};
    switch (c) {
    case det_case::none: return nc;
    case det_case::constant: return cc;
    case det_case::constant_trend: return ct;
    default:
        throw config_error("InvalidCase",
                           det_case_name(c) + " is not an ADF deterministic case");
    }
}

// MacKinnon (1996) asymptotic p-value regressions: p = Phi(poly(tau)) with a
// small-tau and a large-tau polynomial split at tau_star.
struct adf_p_case {
    double tau_star, tau_min, tau_max;
    std::array<double, 3> small_p;  // c0 + c1*tau + c2*tau^2
    std::array<double, 4> large_p;  // c0 + c1*tau + c2*tau^2 + c3*tau^3
};

inline const adf_p_case& adf_p_table(det_case c) {
    // MacKinnon (1996), single-variable tau regressions
    static const adf_p_case nc{-1.04, -19.04, std::numeric_limits<double>::infinity(),
                               {0.6344, 1.2378, 0.032496},
                               {0.4797, 0.93557, -0.06999, 0.033066}};
    static const adf_p_case cc{-1.61, -18.83, 2.74,
                               {2.1659, 1.4412, 0.038269},
                               {1.7339, 0.93202, -0.12745, -0.010368}};
    static const adf_p_case ct{-2.89, -16.18, 0.70,
                               {3.2512, 1.6047, 0.049588},
                               {2.5261, 0.61654, -0.37956, -0.060285}};
    switch (c) {
    case det_case::none: return nc;
    case det_case::constant: return cc;
    case det_case::constant_trend: return ct;
    default:
        throw config_error("InvalidCase",
                           det_case_name(c) + " is not an ADF deterministic case");
    }
}

// MacKinnon-Haug-Michelis (1999), 5% asymptotic trace critical values,
// k - r = 1..6. Only the 5% column is stored.
inline const std::array<double, 6>& trace_cv_5pct(det_case c) {
    static const std::array<double, 6> case2{9.164546, 20.26184, 35.19275,
                                             54.07904, 76.97277, 104.4795};
    static const std::array<double, 6> case3{3.841466, 15.49471, 29.79707,
                                             47.85613, 69.81889, 95.75366};
    static const std::array<double, 6> case4{12.51798, 25.87211, 42.91525,
                                             63.87610, 88.80380, 118.5030};
    switch (c) {
    case det_case::case2_restricted_const: return case2;
    case det_case::case3_unrestricted_const: return case3;
    case det_case::case4_const_trend: return case4;
    default:
        throw config_error("InvalidCase",
                           det_case_name(c) + " is not a Johansen deterministic case");
    }
}

// Doornik (1998) gamma approximation: mean/variance of the asymptotic trace
// distribution as m = c0*n^2 + c1*n + c2 + c3*1(n=1) + c4*1(n=2) + c5*sqrt(n).
struct doornik_row { double n2, n1, c, i1, i2, rt; };

inline double doornik_eval(const doornik_row& r, int n) {
    double dn = static_cast<double>(n);
    return r.n2 * dn * dn + r.n1 * dn + r.c + (n == 1 ? r.i1 : 0.0) +
           (n == 2 ? r.i2 : 0.0) + r.rt * std::sqrt(dn);
}

inline void doornik_moments(det_case c, int n, double& mean, double& var) {
    static const doornik_row m2{2.0, 2.01, 0.0, 0.06, 0.05, 0.0};
    static const doornik_row v2{3.0, 3.60, 0.75, -0.40, -0.30, 0.0};
    static const doornik_row m3{2.0, 1.05, -1.55, -0.50, -0.23, 0.0};
    static const doornik_row v3{3.0, 1.80, 0.0, -2.80, -1.10, 0.0};
    static const doornik_row m4{2.0, 4.05, 0.50, -0.23, -0.07, 0.0};
    static const doornik_row v4{3.0, 5.70, 3.20, -1.30, -0.50, 0.0};
    switch (c) {
    case det_case::case2_restricted_const:
        mean = doornik_eval(m2, n);
        var = doornik_eval(v2, n);
        return;
    case det_case::case3_unrestricted_const:
        mean = doornik_eval(m3, n);
        var = doornik_eval(v3, n);
        return;
    case det_case::case4_const_trend:
        mean = doornik_eval(m4, n);
        var = doornik_eval(v4, n);
        return;
    default:
        throw config_error("InvalidCase",
                           det_case_name(c) + " is not a Johansen deterministic case");
    }
}

} // namespace detail

// Finite-sample ADF critical values from the MacKinnon (2010) surface.
// T is the effective regression sample size.
inline critical_values adf_critical_values(int T, det_case c) {
    if (T < 10)
        throw numerical_error("SampleTooSmall",
                              "effective sample " + std::to_string(T) + " below 10");
    const auto& tab = detail::adf_cv_table(c);
    auto eval = [T](const detail::adf_cv_row& r) {
        double t = static_cast<double>(T);
        return r.b0 + r.b1 / t + r.b2 / (t * t) + r.b3 / (t * t * t);
    };
    critical_values cv;
    cv.one_pct = eval(tab.p01);
    cv.five_pct = eval(tab.p05);
    cv.ten_pct = eval(tab.p10);
    return cv;
}

// Asymptotic ADF p-value, MacKinnon (1996), clamped to [0,1].
inline double adf_pvalue(double tau, det_case c) {
    const auto& tab = detail::adf_p_table(c);
    if (tau > tab.tau_max) return 1.0;
    if (tau < tab.tau_min) return 0.0;
    double z;
    if (tau <= tab.tau_star) {
        const auto& p = tab.small_p;
        z = p[0] + tau * (p[1] + tau * p[2]);
    } else {
        const auto& p = tab.large_p;
        z = p[0] + tau * (p[1] + tau * (p[2] + tau * p[3]));
    }
    double pv = normal_cdf(z);
    return pv < 0.0 ? 0.0 : (pv > 1.0 ? 1.0 : pv);
}

// 5% trace critical value for k - r remaining directions; 1%/10% absent.
inline critical_values johansen_critical_values(int k_minus_r, det_case c) {
    if (k_minus_r < 1 || k_minus_r > 6)
        throw config_error("DimensionOutOfTable",
                           "k - r = " + std::to_string(k_minus_r) + " outside stored 1..6");
    critical_values cv;
    cv.five_pct = detail::trace_cv_5pct(c)[static_cast<std::size_t>(k_minus_r - 1)];
    return cv;
}

// Asymptotic trace-statistic p-value via the gamma approximation.
inline double johansen_trace_pvalue(double stat, int k_minus_r, det_case c) {
    if (k_minus_r < 1 || k_minus_r > 6)
        throw config_error("DimensionOutOfTable",
                           "k - r = " + std::to_string(k_minus_r) + " outside stored 1..6");
    double mean = 0.0, var = 0.0;
    detail::doornik_moments(c, k_minus_r, mean, var);
    double shape = mean * mean / var;
    double scale = var / mean;
    if (stat <= 0.0) return 1.0;
    double pv = 1.0 - gamma_cdf(stat, shape, scale);
    return pv < 0.0 ? 0.0 : (pv > 1.0 ? 1.0 : pv);
}

// Plain sum of the stored trace constants; tests pin it to guard against
// transcription drift.
inline double johansen_table_checksum() {
    double sum = 0.0;
    for (det_case c : {det_case::case2_restricted_const, det_case::case3_unrestricted_const,
                       det_case::case4_const_trend})
        for (double v : detail::trace_cv_5pct(c)) sum += v;
    return sum;
}

} // namespace tsecon
