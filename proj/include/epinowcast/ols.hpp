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
#ifndef EPINOWCAST_OLS_HPP
#define EPINOWCAST_OLS_HPP

#include <string>
#include <vector>

namespace epinowcast::ols
{

/**
 * Dense regression design stored column-wise.
 *
 * When has_intercept is set, column 0 must be the all-ones intercept column; R² then uses
 * the centered total sum of squares. Use make_design() to get the invariants checked.
 */
struct DesignMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    std::vector<double> response;
    bool has_intercept = true;

    std::size_t rows() const
    {
        return response.size();
    }
    std::size_t cols() const
    {
        return columns.size();
    }
};

/// Prepends an intercept column named "intercept" unless add_intercept is false.
/// Throws InvalidArgument for ragged/non-finite input or duplicate names, TooFewObservations if n <= k.
DesignMatrix make_design(std::vector<std::string> names, std::vector<std::vector<double>> regressors,
                         std::vector<double> response, bool add_intercept = true);

struct OlsOptions {
    /// A column is rank deficient when its |R_jj| falls below this times max |R_ii|.
    double rank_tolerance = 1e-10;
};

struct OlsFit {
    std::vector<std::string> names;
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    std::vector<double> t_stats;
    /// Two-tailed, Student t with n - k degrees of freedom.
    std::vector<double> p_values;
    double r_squared          = 0.0;
    double adj_r_squared      = 0.0;
    double residual_std_error = 0.0;
    /// NaN when the model has no regressor besides the intercept.
    double f_statistic = 0.0;
    int df_model       = 0;
    int df_residual    = 0;
    double sse         = 0.0;
    double sst         = 0.0;
    bool has_intercept = true;
    std::vector<double> residuals;
    std::vector<double> fitted;

    std::size_t n() const
    {
        return residuals.size();
    }
    std::size_t k() const
    {
        return coefficients.size();
    }
    /// Throws InvalidArgument if no column has that name.
    std::size_t index_of(const std::string& name) const;
};

/// Householder-QR least squares with classical homoskedastic inference.
/// Throws TooFewObservations (n <= k) or RankDeficient.
OlsFit fit(const DesignMatrix& design, const OlsOptions& options = {});

/// P(T <= t) for Student's t with df degrees of freedom (df may be non-integer, > 0).
double t_cdf(double t, double df);

/// Two-tailed p-value 2 * P(T > |t|).
double t_two_tailed_p(double t, double df);

/// Upper-tail p-value of an F(df1, df2) statistic.
double f_upper_p(double f, double df1, double df2);

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// "***" for p < 0.01, "**" for p < 0.05, "*" for p < 0.1, "" otherwise.
const char* stars(double p);

} // namespace epinowcast::ols

#endif // EPINOWCAST_OLS_HPP
