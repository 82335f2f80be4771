// OLS with diagnostics, variance inflation factors, and correlation-form
// ridge regression with a trace-based shrinkage selection rule.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "distributions.hpp"
#include "errors.hpp"
#include "timeseries.hpp"

namespace tsecon {

struct design_matrix {
    Eigen::MatrixXd X;
    std::vector<std::string> names;
    bool has_intercept = false;

    Eigen::Index rows() const { return X.rows(); }
    Eigen::Index cols() const { return X.cols(); }

    static design_matrix from_columns(const std::vector<std::vector<double>>& cols,
                                      std::vector<std::string> names, bool intercept) {
        design_matrix d;
        d.has_intercept = intercept;
        if (cols.empty())
            throw config_error("EmptyDesign", "no regressor columns given");
        Eigen::Index n = static_cast<Eigen::Index>(cols[0].size());
        Eigen::Index k = static_cast<Eigen::Index>(cols.size()) + (intercept ? 1 : 0);
        d.X.resize(n, k);
        Eigen::Index j0 = 0;
        if (intercept) {
            d.X.col(0).setOnes();
            d.names.push_back("const");
            j0 = 1;
        }
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (static_cast<Eigen::Index>(cols[c].size()) != n)
                throw data_error("MisalignedSeries", "regressor columns differ in length");
            for (Eigen::Index i = 0; i < n; ++i) d.X(i, j0 + static_cast<Eigen::Index>(c)) = cols[c][i];
        }
        d.names.insert(d.names.end(), names.begin(), names.end());
        for (Eigen::Index i = 0; i < d.X.size(); ++i)
            if (!std::isfinite(d.X.data()[i]))
                throw data_error("NonFiniteValue", "design matrix has a non-finite entry");
        return d;
    }

    static design_matrix from_series(const std::vector<const time_series*>& cols,
                                     bool intercept) {
        std::vector<std::vector<double>> vals;
        std::vector<std::string> nm;
        for (const auto* s : cols) {
            vals.push_back(s->values);
            nm.push_back(s->name);
        }
        return from_columns(vals, std::move(nm), intercept);
    }
};

struct ols_result {
    std::vector<std::string> names;
    Eigen::VectorXd coefficients;
    Eigen::VectorXd standard_errors;
    Eigen::VectorXd standardized_coefficients;  // NaN for the intercept slot
    Eigen::VectorXd t_stats;
    Eigen::VectorXd p_values;
    std::vector<double> vif_per_regressor;  // one per non-intercept column
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double f_stat = 0.0;
    double f_pvalue = 1.0;
    Eigen::VectorXd residuals;
    double sigma2 = 0.0;  // SSE / (n - k)
};

namespace detail {

inline double column_sd(const Eigen::VectorXd& v) {
    double m = v.mean();
    double s2 = (v.array() - m).square().sum() / static_cast<double>(v.size() - 1);
    return std::sqrt(s2);
}

inline void check_rank(const Eigen::MatrixXd& X) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(sv.size() - 1) <= 1e-10 * sv(0))
        throw numerical_error("RankDeficient", "design matrix is rank deficient");
}

inline void t_fill(const Eigen::VectorXd& b, const Eigen::VectorXd& se, double df,
                   Eigen::VectorXd& t, Eigen::VectorXd& p) {
    const double inf = std::numeric_limits<double>::infinity();
    t.resize(b.size());
    p.resize(b.size());
    for (Eigen::Index j = 0; j < b.size(); ++j) {
        if (se(j) > 0.0) {
            t(j) = b(j) / se(j);
            p(j) = t_pvalue(t(j), df);
        } else {
            t(j) = b(j) == 0.0 ? 0.0 : std::copysign(inf, b(j));
            p(j) = b(j) == 0.0 ? 1.0 : 0.0;
        }
    }
}

} // namespace detail

inline std::vector<double> vif(const design_matrix& regressors, bool add_intercept = true);

inline ols_result ols_fit(const design_matrix& d, const Eigen::VectorXd& y) {
    const Eigen::Index n = d.rows(), k = d.cols();
    if (n <= k)
        throw data_error("SampleTooSmall", "need more observations than regressors");
    detail::check_rank(d.X);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(d.X);
    ols_result r;
    r.names = d.names;
    r.coefficients = qr.solve(y);
    r.residuals = y - d.X * r.coefficients;

    double ybar = y.mean();
    double sst = (y.array() - ybar).square().sum();
    if (sst <= 1e-24 * static_cast<double>(n) * (1.0 + ybar * ybar))
        throw data_error("DegenerateResponse", "response has zero variance");
    double sse = r.residuals.squaredNorm();
    double df = static_cast<double>(n - k);
    r.sigma2 = sse / df;
    r.r_squared = 1.0 - sse / sst;
    r.adj_r_squared = 1.0 - (1.0 - r.r_squared) * static_cast<double>(n - 1) / df;

    Eigen::MatrixXd xtx_inv =
        (d.X.transpose() * d.X).ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    r.standard_errors = (r.sigma2 * xtx_inv.diagonal().array()).sqrt();
    detail::t_fill(r.coefficients, r.standard_errors, df, r.t_stats, r.p_values);

    double sy = detail::column_sd(y);
    r.standardized_coefficients.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        bool is_const = d.has_intercept && j == 0;
        r.standardized_coefficients(j) =
            is_const ? std::numeric_limits<double>::quiet_NaN()
                     : r.coefficients(j) * detail::column_sd(d.X.col(j)) / sy;
    }

    const double inf = std::numeric_limits<double>::infinity();
    Eigen::Index slopes = k - (d.has_intercept ? 1 : 0);
    if (slopes >= 1) {
        double num_df = static_cast<double>(slopes);
        if (sse <= 1e-20 * sst) {
            r.f_stat = inf;
            r.f_pvalue = 0.0;
        } else {
            r.f_stat = (r.r_squared / num_df) / ((1.0 - r.r_squared) / df);
            r.f_pvalue = tsecon::f_pvalue(r.f_stat, num_df, df);
        }
    }

    if (slopes >= 2) {
        design_matrix slopes_only;
        slopes_only.has_intercept = false;
        slopes_only.X = d.X.rightCols(slopes);
        slopes_only.names.assign(d.names.end() - slopes, d.names.end());
        r.vif_per_regressor = vif(slopes_only, d.has_intercept);
    } else if (slopes == 1) {
        r.vif_per_regressor = {1.0};
    }
    return r;
}

inline ols_result ols_fit(const design_matrix& d, const std::vector<double>& y) {
    return ols_fit(d, Eigen::Map<const Eigen::VectorXd>(y.data(),
                                                        static_cast<Eigen::Index>(y.size())));
}

// VIF_j = 1 / (1 - R2_j) from regressing column j on the remaining columns.
// Perfect collinearity yields a +inf sentinel instead of an exception.
inline std::vector<double> vif(const design_matrix& regressors, bool add_intercept) {
    const Eigen::Index k = regressors.cols();
    if (k < 2)
        throw config_error("TooFewRegressors", "VIF needs at least 2 regressors");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < k; ++j) {
        Eigen::MatrixXd other(regressors.rows(), k - 1 + (add_intercept ? 1 : 0));
        Eigen::Index c = 0;
        if (add_intercept) other.col(c++).setOnes();
        for (Eigen::Index jj = 0; jj < k; ++jj)
            if (jj != j) other.col(c++) = regressors.X.col(jj);
        Eigen::VectorXd yj = regressors.X.col(j);
        Eigen::VectorXd bj = other.colPivHouseholderQr().solve(yj);
        double sse = (yj - other * bj).squaredNorm();
        double mean_j = add_intercept ? yj.mean() : 0.0;
        double sst = (yj.array() - mean_j).square().sum();
        double r2 = sst > 0.0 ? 1.0 - sse / sst : 1.0;
        if (r2 >= 1.0 - 1e-12)
            out.push_back(std::numeric_limits<double>::infinity());
        else
            out.push_back(1.0 / (1.0 - r2));
    }
    return out;
}

struct ridge_result {
    double k = 0.0;
    std::vector<std::string> names;
    Eigen::VectorXd coefficients;
    Eigen::VectorXd standardized_coefficients;  // NaN for the intercept slot
    Eigen::VectorXd standard_errors;
    Eigen::VectorXd t_stats;
    Eigen::VectorXd p_values;
    double r_squared = 0.0;
    double f_stat = 0.0;
    double f_pvalue = 1.0;
    Eigen::VectorXd residuals;
    double sigma2 = 0.0;
};

// Correlation-form ridge: standardize, penalize the identity, back-transform.
// Standard errors come from the sandwich covariance
// sigma2 * (S + kmD)^-1 S (S + kmD)^-1 with S the centered cross-product.
inline ridge_result ridge_fit(const design_matrix& d, const Eigen::VectorXd& y, double k_ridge) {
    if (k_ridge < 0.0)
        throw config_error("NegativeK", "ridge parameter must be nonnegative");
    if (!d.has_intercept)
        throw config_error("EmptyDesign", "ridge_fit expects an intercept column");
    const Eigen::Index n = d.rows(), p = d.cols(), q = p - 1;
    if (n <= p)
        throw data_error("SampleTooSmall", "need more observations than regressors");

    Eigen::MatrixXd Xs = d.X.rightCols(q);
    Eigen::RowVectorXd xbar = Xs.colwise().mean();
    Eigen::MatrixXd Xc = Xs.rowwise() - xbar;
    double ybar = y.mean();
    Eigen::VectorXd yc = y.array() - ybar;

    double m = static_cast<double>(n - 1);
    Eigen::VectorXd s(q);
    for (Eigen::Index j = 0; j < q; ++j) {
        s(j) = std::sqrt(Xc.col(j).squaredNorm() / m);
        if (s(j) <= 0.0)
            throw numerical_error("RankDeficient", "constant regressor column");
    }
    double sy = std::sqrt(yc.squaredNorm() / m);

    Eigen::MatrixXd S = Xc.transpose() * Xc;
    Eigen::MatrixXd A = S + k_ridge * m * Eigen::MatrixXd(s.array().square().matrix().asDiagonal());
    if (k_ridge == 0.0) detail::check_rank(d.X);
    Eigen::MatrixXd Ainv = A.ldlt().solve(Eigen::MatrixXd::Identity(q, q));
    Eigen::VectorXd b_slope = Ainv * (Xc.transpose() * yc);
    double b0 = ybar - xbar.dot(b_slope);

    ridge_result r;
    r.k = k_ridge;
    r.names = d.names;
    r.coefficients.resize(p);
    r.coefficients(0) = b0;
    r.coefficients.tail(q) = b_slope;
    r.residuals = y - d.X * r.coefficients;

    double sst = yc.squaredNorm();
    if (sst <= 1e-24 * static_cast<double>(n) * (1.0 + ybar * ybar))
        throw data_error("DegenerateResponse", "response has zero variance");
    double sse = r.residuals.squaredNorm();
    double df = static_cast<double>(n - p);
    r.sigma2 = sse / df;
    r.r_squared = 1.0 - sse / sst;

    r.standardized_coefficients.resize(p);
    r.standardized_coefficients(0) = std::numeric_limits<double>::quiet_NaN();
    for (Eigen::Index j = 0; j < q; ++j)
        r.standardized_coefficients(j + 1) = b_slope(j) * s(j) / sy;

    Eigen::MatrixXd cov_slope = r.sigma2 * (Ainv * S * Ainv);
    r.standard_errors.resize(p);
    double var0 = r.sigma2 / static_cast<double>(n) +
                  (xbar * cov_slope * xbar.transpose()).value();
    r.standard_errors(0) = std::sqrt(var0);
    for (Eigen::Index j = 0; j < q; ++j) r.standard_errors(j + 1) = std::sqrt(cov_slope(j, j));
    detail::t_fill(r.coefficients, r.standard_errors, df, r.t_stats, r.p_values);

    const double inf = std::numeric_limits<double>::infinity();
    if (sse <= 1e-20 * sst) {
        r.f_stat = inf;
        r.f_pvalue = 0.0;
    } else {
        r.f_stat = (r.r_squared / static_cast<double>(q)) / ((1.0 - r.r_squared) / df);
        r.f_pvalue = tsecon::f_pvalue(r.f_stat, static_cast<double>(q), df);
    }
    return r;
}

inline ridge_result ridge_fit(const design_matrix& d, const std::vector<double>& y, double k) {
    return ridge_fit(d, Eigen::Map<const Eigen::VectorXd>(y.data(),
                                                          static_cast<Eigen::Index>(y.size())),
                     k);
}

struct ridge_trace_result {
    double k_star = 0.0;
    std::vector<double> k_grid;
    // paths(i, j) = standardized coefficient of slope j at k_grid[i]
    Eigen::MatrixXd paths;
};

// Selects the smallest grid k whose forward step changes every standardized
// coefficient by less than `threshold` of the current coefficient norm. A
// one-element grid is judged against the unpenalized (k = 0) fit instead.
inline ridge_trace_result ridge_trace(const design_matrix& d, const Eigen::VectorXd& y,
                                      const std::vector<double>& k_grid,
                                      double threshold = 0.01) {
    if (k_grid.empty())
        throw config_error("EmptyGrid", "ridge_trace needs a non-empty grid");
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        if (k_grid[i] <= 0.0 || (i > 0 && k_grid[i] <= k_grid[i - 1]))
            throw config_error("EmptyGrid", "grid must be ascending and positive");
    }
    const Eigen::Index q = d.cols() - 1;
    ridge_trace_result out;
    out.k_grid = k_grid;
    out.paths.resize(static_cast<Eigen::Index>(k_grid.size()), q);
    for (std::size_t i = 0; i < k_grid.size(); ++i)
        out.paths.row(static_cast<Eigen::Index>(i)) =
            ridge_fit(d, y, k_grid[i]).standardized_coefficients.tail(q).transpose();

    auto rel_change = [&](const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b) {
        double nrm = a.norm();
        if (nrm <= 0.0) return 0.0;
        return (b - a).cwiseAbs().maxCoeff() / nrm;
    };

    if (k_grid.size() == 1) {
        Eigen::RowVectorXd b0 =
            ridge_fit(d, y, 0.0).standardized_coefficients.tail(q).transpose();
        if (rel_change(b0, out.paths.row(0)) < threshold) {
            out.k_star = k_grid[0];
            return out;
        }
        throw numerical_error("NoStableK", "coefficient path never stabilizes on the grid");
    }
    for (std::size_t i = 0; i + 1 < k_grid.size(); ++i) {
        if (rel_change(out.paths.row(static_cast<Eigen::Index>(i)),
                       out.paths.row(static_cast<Eigen::Index>(i + 1))) < threshold) {
            out.k_star = k_grid[i];
            return out;
        }
    }
    throw numerical_error("NoStableK", "coefficient path never stabilizes on the grid");
}

inline ridge_trace_result ridge_trace(const design_matrix& d, const std::vector<double>& y,
                                      const std::vector<double>& k_grid,
                                      double threshold = 0.01) {
    return ridge_trace(d,
                       Eigen::Map<const Eigen::VectorXd>(y.data(),
                                                         static_cast<Eigen::Index>(y.size())),
                       k_grid, threshold);
}

// Default selection grid: 0.001 .. 1.000 in steps of 0.001.
inline std::vector<double> default_k_grid() {
    std::vector<double> g;
    g.reserve(1000);
    for (int i = 1; i <= 1000; ++i) g.push_back(static_cast<double>(i) * 0.001);
    return g;
}

} // namespace tsecon
