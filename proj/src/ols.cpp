/*
* Copyright (C) 2026 The epinowcast authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#include "epinowcast/ols.hpp"
#include "epinowcast/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace epinowcast::ols
{

namespace
{

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr double inf = std::numeric_limits<double>::infinity();

double dot(const std::vector<double>& a, const std::vector<double>& b, std::size_t from)
{
    double s = 0.0;
    for (std::size_t i = from; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

// Continued fraction for I_x(a, b), modified Lentz. Converges quickly for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x)
{
    constexpr double tiny = 1e-300;
    constexpr double eps  = 1e-16;
    constexpr int max_iterations = 10000;

    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c   = 1.0;
    double d   = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) {
        d = tiny;
    }
    d        = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iterations; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d         = 1.0 + aa * d;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d  = 1.0 + aa * d;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d          = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) {
            break;
        }
    }
    return h;
}

// I_x(a, b) with the complement 1 - x passed separately so callers can avoid cancellation.
double incomplete_beta_impl(double a, double b, double x, double one_minus_x)
{
    if (x <= 0.0) {
        return 0.0;
    }
    if (one_minus_x <= 0.0) {
        return 1.0;
    }
    double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(one_minus_x);
    double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, one_minus_x) / b;
}

} // namespace

DesignMatrix make_design(std::vector<std::string> names, std::vector<std::vector<double>> regressors,
                         std::vector<double> response, bool add_intercept)
{
    if (names.size() != regressors.size()) {
        throw Error(ErrorCode::InvalidArgument, "column names and regressors differ in count");
    }
    const std::size_t n = response.size();
    for (std::size_t j = 0; j < regressors.size(); ++j) {
        if (regressors[j].size() != n) {
            throw Error(ErrorCode::InvalidArgument, "column '" + names[j] + "' has " +
                                                        std::to_string(regressors[j].size()) + " rows, expected " +
                                                        std::to_string(n));
        }
    }

    DesignMatrix design;
    design.has_intercept = add_intercept;
    if (add_intercept) {
        design.names.push_back("intercept");
        design.columns.emplace_back(n, 1.0);
    }
    for (std::size_t j = 0; j < regressors.size(); ++j) {
        design.names.push_back(std::move(names[j]));
        design.columns.push_back(std::move(regressors[j]));
    }
    design.response = std::move(response);

    std::set<std::string> seen;
    for (const auto& name : design.names) {
        if (!seen.insert(name).second) {
            throw Error(ErrorCode::InvalidArgument, "duplicate column name '" + name + "'");
        }
    }
    auto finite = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) {
            return std::isfinite(x);
        });
    };
    if (!finite(design.response) || !std::all_of(design.columns.begin(), design.columns.end(), finite)) {
        throw Error(ErrorCode::InvalidArgument, "design contains non-finite entries");
    }
    if (design.cols() == 0) {
        throw Error(ErrorCode::InvalidArgument, "design has no columns");
    }
    if (n <= design.cols()) {
        throw Error(ErrorCode::TooFewObservations, std::to_string(n) + " observations for " +
                                                       std::to_string(design.cols()) + " coefficients");
    }
    return design;
}

std::size_t OlsFit::index_of(const std::string& name) const
{
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
        throw Error(ErrorCode::InvalidArgument, "no coefficient named '" + name + "'");
    }
    return static_cast<std::size_t>(it - names.begin());
}

OlsFit fit(const DesignMatrix& design, const OlsOptions& options)
{
    const std::size_t n = design.rows();
    const std::size_t k = design.cols();
    if (k == 0 || n <= k) {
        throw Error(ErrorCode::TooFewObservations,
                    std::to_string(n) + " observations for " + std::to_string(k) + " coefficients");
    }
    for (const auto& column : design.columns) {
        if (column.size() != n) {
            throw Error(ErrorCode::InvalidArgument, "ragged design matrix");
        }
    }

    // In-place Householder QR: afterwards qr[j][i] for i <= j holds R(i, j), and qty holds Q^T y.
    std::vector<std::vector<double>> qr = design.columns;
    std::vector<double> qty             = design.response;
    std::vector<double> r_diag(k);
    for (std::size_t j = 0; j < k; ++j) {
        double norm = std::sqrt(dot(qr[j], qr[j], j));
        if (norm == 0.0) {
            throw Error(ErrorCode::RankDeficient, "column '" + design.names[j] + "' is linearly dependent");
        }
        double alpha = qr[j][j] > 0.0 ? -norm : norm;
        std::vector<double> v(qr[j].begin() + static_cast<std::ptrdiff_t>(j), qr[j].end());
        v[0] -= alpha;
        double v_norm2 = 0.0;
        for (double x : v) {
            v_norm2 += x * x;
        }
        auto reflect = [&](std::vector<double>& target) {
            double s = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                s += v[i] * target[j + i];
            }
            s = 2.0 * s / v_norm2;
            for (std::size_t i = 0; i < v.size(); ++i) {
                target[j + i] -= s * v[i];
            }
        };
        if (v_norm2 > 0.0) {
            for (std::size_t c = j + 1; c < k; ++c) {
                reflect(qr[c]);
            }
            reflect(qty);
        }
        r_diag[j] = alpha;
        qr[j][j]  = alpha;
    }

    double max_diag = 0.0;
    for (double d : r_diag) {
        max_diag = std::max(max_diag, std::abs(d));
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (std::abs(r_diag[j]) <= options.rank_tolerance * max_diag) {
            throw Error(ErrorCode::RankDeficient, "column '" + design.names[j] + "' is (numerically) collinear");
        }
    }

    OlsFit out;
    out.names         = design.names;
    out.has_intercept = design.has_intercept;
    out.coefficients.assign(k, 0.0);
    for (std::size_t jj = k; jj-- > 0;) {
        double s = qty[jj];
        for (std::size_t c = jj + 1; c < k; ++c) {
            s -= qr[c][jj] * out.coefficients[c];
        }
        out.coefficients[jj] = s / qr[jj][jj];
    }

    out.fitted.assign(n, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            out.fitted[i] += design.columns[j][i] * out.coefficients[j];
        }
    }
    out.residuals.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.residuals[i] = design.response[i] - out.fitted[i];
    }

    // (X^T X)^{-1} = R^{-1} R^{-T}; rinv[j][i] holds R^{-1}(i, j).
    std::vector<std::vector<double>> rinv(k, std::vector<double>(k, 0.0));
    for (std::size_t j = 0; j < k; ++j) {
        rinv[j][j] = 1.0 / qr[j][j];
        for (std::size_t i = j; i-- > 0;) {
            double s = 0.0;
            for (std::size_t l = i + 1; l <= j; ++l) {
                s += qr[l][i] * rinv[j][l];
            }
            rinv[j][i] = -s / qr[i][i];
        }
    }

    out.df_residual = static_cast<int>(n - k);
    out.df_model    = static_cast<int>(design.has_intercept ? k - 1 : k);
    out.sse         = 0.0;
    for (double r : out.residuals) {
        out.sse += r * r;
    }
    double s2              = out.sse / out.df_residual;
    out.residual_std_error = std::sqrt(s2);

    out.standard_errors.resize(k);
    out.t_stats.resize(k);
    out.p_values.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        double unscaled = 0.0;
        for (std::size_t l = i; l < k; ++l) {
            unscaled += rinv[l][i] * rinv[l][i];
        }
        out.standard_errors[i] = std::sqrt(s2 * unscaled);
        double b               = out.coefficients[i];
        if (out.standard_errors[i] > 0.0) {
            out.t_stats[i] = b / out.standard_errors[i];
        }
        else {
            out.t_stats[i] = b == 0.0 ? nan : std::copysign(inf, b);
        }
        out.p_values[i] = std::isnan(out.t_stats[i]) ? nan : t_two_tailed_p(out.t_stats[i], out.df_residual);
    }

    if (design.has_intercept) {
        double mean = 0.0;
        for (double y : design.response) {
            mean += y;
        }
        mean /= static_cast<double>(n);
        out.sst = 0.0;
        for (double y : design.response) {
            out.sst += (y - mean) * (y - mean);
        }
    }
    else {
        out.sst = 0.0;
        for (double y : design.response) {
            out.sst += y * y;
        }
    }

    if (out.sst > 0.0) {
        out.r_squared = std::clamp(1.0 - out.sse / out.sst, 0.0, 1.0);
    }
    else {
        out.r_squared = nan;
    }
    double n_minus = static_cast<double>(n) - (design.has_intercept ? 1.0 : 0.0);
    out.adj_r_squared = 1.0 - (1.0 - out.r_squared) * n_minus / out.df_residual;

    if (out.df_model == 0) {
        out.f_statistic = nan;
    }
    else if (out.r_squared >= 1.0) {
        out.f_statistic = inf;
    }
    else {
        out.f_statistic = (out.r_squared / out.df_model) / ((1.0 - out.r_squared) / out.df_residual);
    }
    return out;
}

double incomplete_beta(double a, double b, double x)
{
    if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "incomplete_beta requires a, b > 0 and x in [0, 1]");
    }
    return incomplete_beta_impl(a, b, x, 1.0 - x);
}

double t_cdf(double t, double df)
{
    if (!(df > 0.0) || std::isnan(t)) {
        throw Error(ErrorCode::InvalidArgument, "t_cdf requires df > 0 and a non-NaN t");
    }
    if (std::isinf(t)) {
        return t > 0.0 ? 1.0 : 0.0;
    }
    double tail = 0.5 * t_two_tailed_p(t, df);
    return t > 0.0 ? 1.0 - tail : tail;
}

double t_two_tailed_p(double t, double df)
{
    if (std::isinf(t)) {
        return 0.0;
    }
    double t2 = t * t;
    // P(|T| > |t|) = I_{df/(df+t^2)}(df/2, 1/2)
    return incomplete_beta_impl(0.5 * df, 0.5, df / (df + t2), t2 / (df + t2));
}

double f_upper_p(double f, double df1, double df2)
{
    if (std::isnan(f) || !(df1 > 0.0) || !(df2 > 0.0)) {
        return nan;
    }
    if (std::isinf(f)) {
        return 0.0;
    }
    if (f <= 0.0) {
        return 1.0;
    }
    double denom = df2 + df1 * f;
    // P(F > f) = I_{df2/(df2 + df1 f)}(df2/2, df1/2)
    return incomplete_beta_impl(0.5 * df2, 0.5 * df1, df2 / denom, df1 * f / denom);
}

const char* stars(double p)
{
    if (p < 0.01) {
        return "***";
    }
    if (p < 0.05) {
        return "**";
    }
    if (p < 0.1) {
        return "*";
    }
    return "";
}

} // namespace epinowcast::ols
