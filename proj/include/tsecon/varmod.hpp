// VAR estimation, lag-order selection criteria, stability, orthogonalized
// impulse responses, and forecast-error variance decomposition.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "distributions.hpp"
#include "errors.hpp"
#include "timeseries.hpp"

namespace tsecon {

struct var_model {
    int K = 0;
    int p = 0;
    std::vector<std::string> names;
    // coeffs: K rows (equations) x (K*p + 1) columns; column 0 is the
    // intercept, then lag-1 block, lag-2 block, ...
    Eigen::MatrixXd coeffs;
    Eigen::MatrixXd residuals;  // effective_T x K
    Eigen::MatrixXd sigma_ml;   // divisor T
    Eigen::MatrixXd sigma_df;   // divisor T - (K*p + 1)
    int effective_T = 0;
};

struct lag_selection_row {
    int lag = 0;
    double logl = 0.0;
    std::optional<double> lr;
    double fpe = 0.0;
    double aic = 0.0;
    double sc = 0.0;
    double hq = 0.0;
    int n_params = 0;
};

struct lag_selection {
    std::vector<lag_selection_row> rows;
    int effective_T = 0;
    int star_lr = 0, star_fpe = 0, star_aic = 0, star_sc = 0, star_hq = 0;
};

struct impulse_response {
    int H = 0;
    std::vector<std::string> names;   // original variable order
    std::vector<int> ordering;        // permutation used for the Cholesky factor
    std::vector<Eigen::MatrixXd> responses;  // h = 0..H; (i,j) = var i to shock j
};

struct fevd_result {
    int H = 0;
    std::vector<std::string> names;
    std::vector<int> ordering;
    std::vector<Eigen::MatrixXd> shares;  // h = 1..H; rows sum to 1
};

namespace detail {

inline Eigen::MatrixXd table_matrix(const data_table& data) {
    Eigen::MatrixXd Y(static_cast<Eigen::Index>(data.rows()),
                      static_cast<Eigen::Index>(data.cols()));
    for (std::size_t j = 0; j < data.cols(); ++j)
        for (std::size_t i = 0; i < data.rows(); ++i)
            Y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                data.columns[j].values[i];
    return Y;
}

// Fits VAR(p) on rows drop..end-1 of Y (rows before `drop` supply lags only).
inline var_model var_fit_rows(const Eigen::MatrixXd& Y, const std::vector<std::string>& names,
                              int p, int drop) {
    const int K = static_cast<int>(Y.cols());
    const int N = static_cast<int>(Y.rows());
    const int T = N - drop;
    const int k = K * p + 1;
    if (T <= k)
        throw data_error("SampleTooShortForLag",
                         "effective sample " + std::to_string(T) + " cannot fit " +
                             std::to_string(k) + " parameters per equation");

    Eigen::MatrixXd Z(T, k);
    for (int t = 0; t < T; ++t) {
        Z(t, 0) = 1.0;
        for (int l = 1; l <= p; ++l)
            for (int j = 0; j < K; ++j) Z(t, 1 + (l - 1) * K + j) = Y(drop + t - l, j);
    }
    Eigen::MatrixXd resp = Y.bottomRows(T);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Z);
    if (qr.rank() < k)
        throw numerical_error("RankDeficient", "VAR regressor matrix is rank deficient");
    Eigen::MatrixXd B = qr.solve(resp);  // k x K

    var_model m;
    m.K = K;
    m.p = p;
    m.names = names;
    m.coeffs = B.transpose();
    m.residuals = resp - Z * B;
    m.effective_T = T;
    m.sigma_ml = (m.residuals.transpose() * m.residuals) / static_cast<double>(T);
    int df = T - k;
    if (df <= 0)
        throw data_error("SampleTooShortForLag", "no residual degrees of freedom");
    m.sigma_df = (m.residuals.transpose() * m.residuals) / static_cast<double>(df);
    return m;
}

inline Eigen::MatrixXd chol_lower(const Eigen::MatrixXd& S) {
    Eigen::LLT<Eigen::MatrixXd> llt(S);
    if (llt.info() != Eigen::Success)
        throw numerical_error("CovarianceNotPD",
                              "residual covariance is not positive definite");
    return llt.matrixL();
}

// MA coefficient matrices Psi_0..Psi_H.
inline std::vector<Eigen::MatrixXd> ma_coefficients(const var_model& m, int H) {
    std::vector<Eigen::MatrixXd> psi;
    psi.reserve(static_cast<std::size_t>(H) + 1);
    psi.push_back(Eigen::MatrixXd::Identity(m.K, m.K));
    for (int h = 1; h <= H; ++h) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m.K, m.K);
        for (int i = 1; i <= std::min(h, m.p); ++i) {
            Eigen::MatrixXd Ai = m.coeffs.block(0, 1 + (i - 1) * m.K, m.K, m.K);
            acc += Ai * psi[static_cast<std::size_t>(h - i)];
        }
        psi.push_back(acc);
    }
    return psi;
}

inline std::vector<int> check_ordering(const std::vector<int>& ordering, int K) {
    std::vector<int> ord = ordering;
    if (ord.empty()) {
        ord.resize(static_cast<std::size_t>(K));
        for (int i = 0; i < K; ++i) ord[static_cast<std::size_t>(i)] = i;
    }
    std::vector<bool> seen(static_cast<std::size_t>(K), false);
    if (static_cast<int>(ord.size()) != K)
        throw config_error("InvalidOrdering", "ordering must list every variable once");
    for (int v : ord) {
        if (v < 0 || v >= K || seen[static_cast<std::size_t>(v)])
            throw config_error("InvalidOrdering", "ordering must be a permutation");
        seen[static_cast<std::size_t>(v)] = true;
    }
    return ord;
}

// P factor in original variable order: reorder sigma, take the Cholesky
// lower factor, and undo the permutation on both sides.
inline Eigen::MatrixXd ordered_impact(const Eigen::MatrixXd& sigma,
                                      const std::vector<int>& ord) {
    const int K = static_cast<int>(sigma.rows());
    Eigen::MatrixXd Pz(K, K);
    Eigen::MatrixXd Sz(K, K);
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b)
            Sz(a, b) = sigma(ord[static_cast<std::size_t>(a)], ord[static_cast<std::size_t>(b)]);
    Pz = chol_lower(Sz);
    Eigen::MatrixXd P(K, K);
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b)
            P(ord[static_cast<std::size_t>(a)], ord[static_cast<std::size_t>(b)]) = Pz(a, b);
    return P;
}

} // namespace detail

inline var_model var_fit(const data_table& data, int p) {
    if (p < 0)
        throw config_error("InvalidLagSpec", "VAR lag order must be nonnegative");
    std::vector<std::string> names;
    for (const auto& c : data.columns) names.push_back(c.name);
    return detail::var_fit_rows(detail::table_matrix(data), names, p, p);
}

// All candidate lags 0..max_lag are fitted on the common sample that drops
// the first max_lag rows; criteria use the ML covariance divisor T.
inline lag_selection select_lag(const data_table& data, int max_lag) {
    if (max_lag < 1)
        throw config_error("InvalidLagSpec", "max_lag must be >= 1");
    const int K = static_cast<int>(data.cols());
    Eigen::MatrixXd Y = detail::table_matrix(data);
    std::vector<std::string> names;
    for (const auto& c : data.columns) names.push_back(c.name);

    lag_selection sel;
    const int T = static_cast<int>(Y.rows()) - max_lag;
    sel.effective_T = T;
    // The largest candidate needs K extra rows beyond its K*max_lag + 1
    // parameters per equation, or the residual covariance cannot have full rank.
    if (T < K * max_lag + K + 1)
        throw data_error("SampleTooShortForLag",
                         "common sample of " + std::to_string(T) + " rows cannot support lag " +
                             std::to_string(max_lag) + " for " + std::to_string(K) +
                             " variables");

    std::vector<double> ln_det(static_cast<std::size_t>(max_lag) + 1);
    for (int l = 0; l <= max_lag; ++l) {
        var_model m = detail::var_fit_rows(Y, names, l, max_lag);
        double det = m.sigma_ml.determinant();
        if (!(det > 0.0))
            throw numerical_error("SingularCovariance",
                                  "residual covariance singular at lag " + std::to_string(l));
        double ld = std::log(det);
        ln_det[static_cast<std::size_t>(l)] = ld;

        lag_selection_row row;
        row.lag = l;
        row.n_params = K * (K * l + 1);
        double Td = static_cast<double>(T);
        row.logl = -(Td * K / 2.0) * (1.0 + std::log(2.0 * std::numbers::pi)) - (Td / 2.0) * ld;
        row.aic = (-2.0 * row.logl + 2.0 * row.n_params) / Td;
        row.sc = (-2.0 * row.logl + row.n_params * std::log(Td)) / Td;
        row.hq = (-2.0 * row.logl + 2.0 * row.n_params * std::log(std::log(Td))) / Td;
        row.fpe = std::pow((Td + K * l + 1.0) / (Td - K * l - 1.0), K) * det;
        if (l > 0)
            row.lr = (Td - (K * l + 1.0)) *
                     (ln_det[static_cast<std::size_t>(l - 1)] - ld);
        sel.rows.push_back(row);
    }

    auto best = [&](auto getter) {
        int arg = 0;
        for (int l = 1; l <= max_lag; ++l)
            if (getter(sel.rows[static_cast<std::size_t>(l)]) <
                getter(sel.rows[static_cast<std::size_t>(arg)]))
                arg = l;
        return arg;
    };
    sel.star_fpe = best([](const lag_selection_row& r) { return r.fpe; });
    sel.star_aic = best([](const lag_selection_row& r) { return r.aic; });
    sel.star_sc = best([](const lag_selection_row& r) { return r.sc; });
    sel.star_hq = best([](const lag_selection_row& r) { return r.hq; });

    // Sequential LR: walk down from max_lag, star the first 5% rejection.
    double crit = chi2_quantile(0.95, static_cast<double>(K * K));
    sel.star_lr = 0;
    for (int l = max_lag; l >= 1; --l) {
        if (*sel.rows[static_cast<std::size_t>(l)].lr > crit) {
            sel.star_lr = l;
            break;
        }
    }
    return sel;
}

// Moduli of the companion-matrix eigenvalues, descending.
inline std::vector<double> var_stability(const var_model& m) {
    if (m.p == 0) return {};
    const int n = m.K * m.p;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    C.topRows(m.K) = m.coeffs.rightCols(m.K * m.p);
    if (m.p > 1)
        C.block(m.K, 0, n - m.K, n - m.K).setIdentity();
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    std::vector<double> mods;
    mods.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) mods.push_back(std::abs(es.eigenvalues()(i)));
    std::sort(mods.rbegin(), mods.rend());
    return mods;
}

// Orthogonalized IRF: response at h is Psi_h * P with P the (re)ordered
// Cholesky impact matrix; output stays in the original variable order.
inline impulse_response irf(const var_model& m, int H, std::vector<int> ordering = {}) {
    if (H < 0)
        throw config_error("InvalidHorizon", "IRF horizon must be >= 0");
    auto ord = detail::check_ordering(ordering, m.K);
    Eigen::MatrixXd P = detail::ordered_impact(m.sigma_df, ord);
    auto psi = detail::ma_coefficients(m, H);
    impulse_response out;
    out.H = H;
    out.names = m.names;
    out.ordering = ord;
    for (int h = 0; h <= H; ++h) out.responses.push_back(psi[static_cast<std::size_t>(h)] * P);
    return out;
}

inline fevd_result fevd(const var_model& m, int H, std::vector<int> ordering = {}) {
    if (H < 1)
        throw config_error("InvalidHorizon", "FEVD horizon must be >= 1");
    auto ord = detail::check_ordering(ordering, m.K);
    Eigen::MatrixXd P = detail::ordered_impact(m.sigma_df, ord);
    auto psi = detail::ma_coefficients(m, H - 1);
    fevd_result out;
    out.H = H;
    out.names = m.names;
    out.ordering = ord;
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m.K, m.K);
    for (int h = 1; h <= H; ++h) {
        Eigen::MatrixXd theta = psi[static_cast<std::size_t>(h - 1)] * P;
        acc += theta.cwiseProduct(theta);
        Eigen::MatrixXd share(m.K, m.K);
        for (int i = 0; i < m.K; ++i) {
            double total = acc.row(i).sum();
            for (int j = 0; j < m.K; ++j) share(i, j) = acc(i, j) / total;
        }
        out.shares.push_back(share);
    }
    return out;
}

} // namespace tsecon
