// Johansen trace cointegration test and vector error-correction estimation.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "critical_values.hpp"
#include "errors.hpp"
#include "timeseries.hpp"
#include "varmod.hpp"

namespace tsecon {

struct johansen_result {
    std::vector<std::string> names;
    std::vector<double> eigenvalues;           // descending
    std::vector<double> trace_stats;           // null rank r = 0..K-1
    std::vector<double> critical_values_5pct;  // same indexing
    std::vector<double> p_values;
    int rank_decision = 0;  // first non-rejected r, or K when all rejected
    det_case dcase = det_case::case3_unrestricted_const;
    int lags_in_levels = 0;
    int effective_T = 0;
};

struct vecm_model {
    int K = 0;
    int rank = 0;
    int p_levels = 0;
    std::vector<std::string> names;
    Eigen::MatrixXd alpha;  // K x r loadings
    Eigen::MatrixXd beta;   // (K or K+1) x r, leading r x r block = identity
    std::vector<Eigen::MatrixXd> gamma;  // K x K, lagged-difference terms 1..p-1
    Eigen::VectorXd intercept;
    Eigen::MatrixXd residuals;  // effective_T x K
    Eigen::MatrixXd sigma;      // residual covariance, divisor T - params
    int effective_T = 0;
};

namespace detail {

struct johansen_moments {
    Eigen::MatrixXd S00, S01, S10, S11;
    Eigen::MatrixXd R0, R1;   // partialled-out residual blocks
    Eigen::MatrixXd dlags;    // T x (const? + K*(p-1)) unrestricted regressors
    Eigen::MatrixXd dy;       // T x K
    Eigen::MatrixXd lev;      // T x (K [+1]) lagged levels, restricted term appended
    int T = 0;
};

// Residuals from regressing each column of A on W (W may be empty).
inline Eigen::MatrixXd partial_out(const Eigen::MatrixXd& A, const Eigen::MatrixXd& W) {
    if (W.cols() == 0) return A;
    Eigen::MatrixXd B = W.colPivHouseholderQr().solve(A);
    return A - W * B;
}

inline johansen_moments johansen_blocks(const Eigen::MatrixXd& Y, int p, det_case c) {
    const int K = static_cast<int>(Y.cols());
    const int N = static_cast<int>(Y.rows());
    const int T = N - p;
    if (p < 1)
        throw config_error("InvalidLagSpec", "levels lag order must be >= 1");
    if (T <= K * p + 1)
        throw data_error("LagTooLargeForSample",
                         "effective sample " + std::to_string(T) +
                             " too small for levels lag " + std::to_string(p));

    johansen_moments mom;
    mom.T = T;
    mom.dy.resize(T, K);
    for (int t = 0; t < T; ++t)
        mom.dy.row(t) = Y.row(p + t) - Y.row(p + t - 1);

    bool restricted_const = (c == det_case::case2_restricted_const);
    bool restricted_trend = (c == det_case::case4_const_trend);
    int levc = K + ((restricted_const || restricted_trend) ? 1 : 0);
    mom.lev.resize(T, levc);
    for (int t = 0; t < T; ++t) {
        mom.lev.block(t, 0, 1, K) = Y.row(p + t - 1);
        if (restricted_const) mom.lev(t, K) = 1.0;
        if (restricted_trend) mom.lev(t, K) = static_cast<double>(p + t);
    }

    bool unrestricted_const = (c == det_case::case3_unrestricted_const ||
                               c == det_case::case4_const_trend);
    int wc = K * (p - 1) + (unrestricted_const ? 1 : 0);
    Eigen::MatrixXd W(T, wc);
    int col = 0;
    if (unrestricted_const) W.col(col++).setOnes();
    for (int l = 1; l <= p - 1; ++l)
        for (int j = 0; j < K; ++j) {
            for (int t = 0; t < T; ++t)
                W(t, col) = Y(p + t - l, j) - Y(p + t - l - 1, j);
            ++col;
        }
    mom.dlags = W;

    mom.R0 = partial_out(mom.dy, W);
    mom.R1 = partial_out(mom.lev, W);
    double Td = static_cast<double>(T);
    mom.S00 = mom.R0.transpose() * mom.R0 / Td;
    mom.S01 = mom.R0.transpose() * mom.R1 / Td;
    mom.S10 = mom.S01.transpose();
    mom.S11 = mom.R1.transpose() * mom.R1 / Td;
    return mom;
}

struct johansen_eigen {
    std::vector<double> lambda;  // descending, K values
    Eigen::MatrixXd beta;        // levc x K, S11-metric normalized columns
};

inline johansen_eigen solve_eigen(const johansen_moments& mom, int K) {
    Eigen::LLT<Eigen::MatrixXd> llt11(mom.S11);
    if (llt11.info() != Eigen::Success)
        throw numerical_error("SingularMoment", "S11 is not positive definite");
    Eigen::LLT<Eigen::MatrixXd> llt00(mom.S00);
    if (llt00.info() != Eigen::Success)
        throw numerical_error("SingularMoment", "S00 is not positive definite");

    Eigen::MatrixXd L = llt11.matrixL();
    Eigen::MatrixXd S00inv_S01 = llt00.solve(mom.S01);
    Eigen::MatrixXd inner = mom.S10 * S00inv_S01;  // levc x levc
    Eigen::MatrixXd M = L.triangularView<Eigen::Lower>().solve(inner);
    M = L.triangularView<Eigen::Lower>().solve(M.transpose()).transpose();
    M = 0.5 * (M + M.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    if (es.info() != Eigen::Success)
        throw numerical_error("SingularMoment", "eigenproblem failed to converge");

    const int levc = static_cast<int>(mom.S11.rows());
    johansen_eigen out;
    out.beta.resize(levc, K);
    // Ascending from Eigen; keep the K largest, descending. With restricted
    // deterministic terms the extra root is structurally zero and dropped.
    for (int i = 0; i < K; ++i) {
        int src = levc - 1 - i;
        out.lambda.push_back(es.eigenvalues()(src));
        Eigen::VectorXd v = es.eigenvectors().col(src);
        out.beta.col(i) = L.transpose().triangularView<Eigen::Upper>().solve(v);
    }
    return out;
}

} // namespace detail

inline johansen_result johansen_trace(const data_table& data, int p_levels = 2,
                                      det_case c = det_case::case3_unrestricted_const) {
    if (is_adf_case(c))
        throw config_error("InvalidCase", det_case_name(c) + " is not a Johansen case");
    const int K = static_cast<int>(data.cols());
    if (K < 1 || K > 6)
        throw config_error("DimensionOutOfTable", "trace table covers 1..6 variables");
    Eigen::MatrixXd Y = detail::table_matrix(data);

    auto mom = detail::johansen_blocks(Y, p_levels, c);
    auto eig = detail::solve_eigen(mom, K);

    johansen_result r;
    for (const auto& col : data.columns) r.names.push_back(col.name);
    r.eigenvalues = eig.lambda;
    r.dcase = c;
    r.lags_in_levels = p_levels;
    r.effective_T = mom.T;

    double Td = static_cast<double>(mom.T);
    for (int rank = 0; rank < K; ++rank) {
        double sum = 0.0;
        for (int i = rank; i < K; ++i) sum += std::log(1.0 - eig.lambda[static_cast<std::size_t>(i)]);
        r.trace_stats.push_back(-Td * sum);
        r.critical_values_5pct.push_back(johansen_critical_values(K - rank, c).five_pct);
        r.p_values.push_back(johansen_trace_pvalue(r.trace_stats.back(), K - rank, c));
    }
    r.rank_decision = K;
    for (int rank = 0; rank < K; ++rank) {
        if (r.trace_stats[static_cast<std::size_t>(rank)] <=
            r.critical_values_5pct[static_cast<std::size_t>(rank)]) {
            r.rank_decision = rank;
            break;
        }
    }
    return r;
}

inline vecm_model vecm_fit(const data_table& data, int rank, int p_levels = 2,
                           det_case c = det_case::case3_unrestricted_const) {
    if (is_adf_case(c))
        throw config_error("InvalidCase", det_case_name(c) + " is not a Johansen case");
    const int K = static_cast<int>(data.cols());
    if (rank < 0 || rank > K)
        throw config_error("RankOutOfRange",
                           "rank " + std::to_string(rank) + " outside 0.." + std::to_string(K));
    Eigen::MatrixXd Y = detail::table_matrix(data);
    auto mom = detail::johansen_blocks(Y, p_levels, c);

    vecm_model m;
    m.K = K;
    m.rank = rank;
    m.p_levels = p_levels;
    for (const auto& col : data.columns) m.names.push_back(col.name);
    m.effective_T = mom.T;

    if (rank > 0) {
        auto eig = detail::solve_eigen(mom, K);
        Eigen::MatrixXd beta_raw = eig.beta.leftCols(rank);
        Eigen::MatrixXd top = beta_raw.topRows(rank);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(top);
        if (!lu.isInvertible())
            throw numerical_error("SingularMoment",
                                  "leading beta block is singular; cannot normalize");
        m.beta = beta_raw * lu.inverse();
        Eigen::MatrixXd bsb = m.beta.transpose() * mom.S11 * m.beta;
        m.alpha = mom.S01 * m.beta * bsb.inverse();
    } else {
        m.beta.resize(static_cast<int>(mom.lev.cols()), 0);
        m.alpha.resize(K, 0);
    }

    // Short-run dynamics: OLS of dy on (ECT, lagged differences, constant).
    bool unrestricted_const = (c == det_case::case3_unrestricted_const ||
                               c == det_case::case4_const_trend);
    Eigen::MatrixXd ect = mom.lev * m.beta;  // T x r
    int kreg = rank + static_cast<int>(mom.dlags.cols());
    Eigen::MatrixXd Z(mom.T, kreg);
    if (rank > 0) Z.leftCols(rank) = ect;
    Z.rightCols(static_cast<int>(mom.dlags.cols())) = mom.dlags;
    if (kreg >= mom.T)
        throw data_error("LagTooLargeForSample", "not enough rows for the VECM regression");

    Eigen::MatrixXd B;
    if (kreg > 0) {
        B = Z.colPivHouseholderQr().solve(mom.dy);
        m.residuals = mom.dy - Z * B;
    } else {
        m.residuals = mom.dy;
        B.resize(0, K);
    }

    m.intercept = Eigen::VectorXd::Zero(K);
    int dcol = rank;
    if (unrestricted_const) {
        m.intercept = B.row(dcol).transpose();
        ++dcol;
    }
    for (int l = 1; l <= p_levels - 1; ++l) {
        Eigen::MatrixXd G = B.block(dcol + (l - 1) * K, 0, K, K).transpose();
        m.gamma.push_back(G);
    }

    int df = mom.T - kreg;
    if (df <= 0)
        throw data_error("LagTooLargeForSample", "no residual degrees of freedom");
    m.sigma = m.residuals.transpose() * m.residuals / static_cast<double>(df);
    return m;
}

} // namespace tsecon
