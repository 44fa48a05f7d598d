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
#include "test_util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

using namespace epinowcast;
using epinowcast::ols::DesignMatrix;
using epinowcast::ols::fit;
using epinowcast::ols::make_design;

namespace
{

// Two-tailed Student-t p-value by composite Simpson integration of the density over [0, |t|].
double simpson_two_tailed_p(double t, double df, int intervals = 200000)
{
    const double log_c = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) - 0.5 * std::log(df * std::numbers::pi);
    auto density       = [&](double x) {
        return std::exp(log_c - (df + 1) / 2 * std::log1p(x * x / df));
    };
    const double a = 0.0, b = std::abs(t);
    const double h = (b - a) / intervals;
    double sum     = density(a) + density(b);
    for (int i = 1; i < intervals; ++i) {
        sum += density(a + i * h) * (i % 2 ? 4.0 : 2.0);
    }
    double half_mass = sum * h / 3.0;
    return 1.0 - 2.0 * half_mass;
}

struct RandomDesign {
    std::vector<std::vector<double>> rows; // row-major, intercept included
    DesignMatrix design;
};

RandomDesign random_design(std::mt19937& rng)
{
    std::uniform_int_distribution<int> kdist(1, 3); // regressors besides the intercept
    std::normal_distribution<double> z(0.0, 1.0);
    std::uniform_real_distribution<double> scale(0.1, 100.0), shift(-50.0, 50.0);
    const int p = kdist(rng);
    const int k = p + 1;
    std::uniform_int_distribution<int> ndist(k + 3, 30);
    const int n = ndist(rng);

    std::vector<std::vector<double>> regressors(p, std::vector<double>(n));
    std::vector<double> sc(p), sh(p);
    for (int j = 0; j < p; ++j) {
        sc[j] = scale(rng);
        sh[j] = shift(rng);
    }
    std::vector<double> y(n);
    RandomDesign out;
    for (int i = 0; i < n; ++i) {
        std::vector<double> row{1.0};
        double yi = z(rng);
        for (int j = 0; j < p; ++j) {
            regressors[j][i] = sh[j] + sc[j] * z(rng);
            row.push_back(regressors[j][i]);
            yi += (j + 1) * 0.3 * regressors[j][i];
        }
        y[i] = yi;
        out.rows.push_back(row);
    }
    std::vector<std::string> names;
    for (int j = 0; j < p; ++j) {
        names.push_back("x" + std::to_string(j));
    }
    out.design = make_design(names, regressors, y);
    return out;
}

double rel_diff(double a, double b)
{
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

} // namespace

TEST_CASE("Ols.textbookSimpleRegression")
{
    // x = 1..5, y = 2,4,5,4,5: slope 0.6, intercept 2.2, R2 0.6, SSE 2.4.
    auto d = make_design({"x"}, {{1, 2, 3, 4, 5}}, {2, 4, 5, 4, 5});
    auto f = fit(d);
    REQUIRE_EQ(f.k(), 2u);
    CHECK_EQ(f.names[0], "intercept");
    CHECK(f.coefficients[0] == doctest::Approx(2.2).epsilon(1e-12));
    CHECK(f.coefficients[1] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(f.sse == doctest::Approx(2.4).epsilon(1e-12));
    CHECK(f.r_squared == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(f.adj_r_squared == doctest::Approx(1 - 0.4 * 4 / 3).epsilon(1e-12));
    // SE(slope) = s / sqrt(Sxx), s^2 = 2.4/3, Sxx = 10; SE(intercept) = s * sqrt(1/n + xbar^2/Sxx).
    double s = std::sqrt(0.8);
    CHECK(f.standard_errors[1] == doctest::Approx(s / std::sqrt(10.0)).epsilon(1e-12));
    CHECK(f.standard_errors[0] == doctest::Approx(s * std::sqrt(0.2 + 9.0 / 10.0)).epsilon(1e-12));
    CHECK(f.residual_std_error == doctest::Approx(s).epsilon(1e-12));
    // F for one regressor equals t^2.
    CHECK(f.f_statistic == doctest::Approx(f.t_stats[1] * f.t_stats[1]).epsilon(1e-10));
    CHECK_EQ(f.df_model, 1);
    CHECK_EQ(f.df_residual, 3);
    CHECK_EQ(f.index_of("x"), 1u);
    EPN_CHECK_THROWS_CODE(f.index_of("nope"), ErrorCode::InvalidArgument);
}

TEST_CASE("Ols.randomDesignsMatchNormalEquations")
{
    std::mt19937 rng(20200303);
    for (int trial = 0; trial < 200; ++trial) {
        auto rd = random_design(rng);
        auto f  = fit(rd.design);
        auto oracle = test::normal_equations(rd.rows, rd.design.response);
        REQUIRE_EQ(oracle.size(), f.k());
        for (std::size_t j = 0; j < f.k(); ++j) {
            CHECK_MESSAGE(rel_diff(f.coefficients[j], oracle[j]) <= 1e-8, "trial ", trial, " coef ", j);
        }
        // Residual orthogonality relative to the scale of X and y.
        double scale = 0.0;
        for (const auto& col : rd.design.columns) {
            for (std::size_t i = 0; i < col.size(); ++i) {
                scale = std::max(scale, std::abs(col[i]) * std::abs(rd.design.response[i]));
            }
        }
        for (const auto& col : rd.design.columns) {
            double xr = 0.0;
            for (std::size_t i = 0; i < col.size(); ++i) {
                xr += col[i] * f.residuals[i];
            }
            CHECK(std::abs(xr) <= 1e-8 * std::max(1.0, scale));
        }
        for (std::size_t i = 0; i < f.n(); ++i) {
            CHECK(std::abs(f.fitted[i] + f.residuals[i] - rd.design.response[i]) <=
                  1e-12 * std::max(1.0, std::abs(rd.design.response[i])));
        }
        CHECK(f.adj_r_squared <= f.r_squared);
        CHECK(f.r_squared >= 0.0);
        CHECK(f.r_squared <= 1.0);
        // F from R2 matches F from mean squares.
        double f_from_r2 = (f.r_squared / f.df_model) / ((1 - f.r_squared) / f.df_residual);
        CHECK(rel_diff(f.f_statistic, f_from_r2) <= 1e-8);
    }
}

TEST_CASE("Ols.regressorScalingInvariance")
{
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> cdist(0.01, 1000.0);
    for (int trial = 0; trial < 50; ++trial) {
        auto rd      = random_design(rng);
        auto base    = fit(rd.design);
        auto scaled  = rd.design;
        std::size_t j = 1 + trial % (scaled.cols() - 1);
        double c     = cdist(rng);
        for (double& x : scaled.columns[j]) {
            x *= c;
        }
        auto f = fit(scaled);
        for (std::size_t i = 0; i < f.k(); ++i) {
            double expected = i == j ? base.coefficients[i] / c : base.coefficients[i];
            CHECK(rel_diff(f.coefficients[i], expected) <= 1e-9);
            CHECK(rel_diff(f.t_stats[i], base.t_stats[i]) <= 1e-9);
        }
        CHECK(std::abs(f.r_squared - base.r_squared) <= 1e-9);
        CHECK(rel_diff(f.f_statistic, base.f_statistic) <= 1e-9);
    }
}

TEST_CASE("Ols.degenerateDesigns")
{
    // duplicate column -> rank deficient
    auto dup = make_design({"a", "b"}, {{1, 2, 3, 4, 5}, {2, 4, 6, 8, 10}}, {1, 3, 2, 5, 4});
    EPN_CHECK_THROWS_CODE(fit(dup), ErrorCode::RankDeficient);
    // constant regressor collinear with intercept
    auto cst = make_design({"a"}, {{3, 3, 3, 3}}, {1, 2, 3, 4});
    EPN_CHECK_THROWS_CODE(fit(cst), ErrorCode::RankDeficient);
    // n <= k
    EPN_CHECK_THROWS_CODE(make_design({"a"}, {{1, 2}}, {1, 2}), ErrorCode::TooFewObservations);
    EPN_CHECK_THROWS_CODE(make_design({"a", "a"}, {{1, 2, 3, 4}, {4, 3, 2, 1}}, {1, 2, 3, 4}),
                          ErrorCode::InvalidArgument);
    EPN_CHECK_THROWS_CODE(make_design({"a"}, {{1, 2, 3}}, {1, 2, 3, 4}), ErrorCode::InvalidArgument);
    EPN_CHECK_THROWS_CODE(make_design({"a"}, {{1, std::numeric_limits<double>::quiet_NaN(), 3, 4}}, {1, 2, 3, 4}),
                          ErrorCode::InvalidArgument);
    // looser tolerance can be configured
    auto near = make_design({"a", "b"}, {{1, 2, 3, 4, 5}, {1, 2, 3, 4, 5 + 1e-7}}, {1, 3, 2, 5, 4});
    CHECK_NOTHROW(fit(near));
    EPN_CHECK_THROWS_CODE(fit(near, ols::OlsOptions{1e-3}), ErrorCode::RankDeficient);
}

TEST_CASE("Ols.perfectFit")
{
    auto d = make_design({"x"}, {{1, 2, 3, 4, 5}}, {3, 5, 7, 9, 11});
    auto f = fit(d);
    CHECK(f.coefficients[1] == doctest::Approx(2.0));
    CHECK(f.r_squared == doctest::Approx(1.0));
    CHECK(f.sse == doctest::Approx(0.0).epsilon(1e-20));
}

TEST_CASE("Ols.tCdfAgainstSimpson")
{
    CHECK_EQ(ols::t_cdf(0.0, 1), 0.5);
    CHECK_EQ(ols::t_cdf(0.0, 23), 0.5);
    CHECK(ols::t_cdf(50.0, 23) >= 1.0 - 1e-8);
    CHECK(ols::t_cdf(-50.0, 23) <= 1e-8);

    double p = ols::t_two_tailed_p(2.34, 23);
    CHECK(std::abs(p - simpson_two_tailed_p(2.34, 23)) <= 1e-8);
    CHECK(p == doctest::Approx(0.028).epsilon(0.002 / 0.028));
    CHECK_EQ(std::string(ols::stars(p)), "**");

    for (double df : {1.0, 2.0, 5.0, 23.0, 100.0}) {
        for (double t : {0.1, 0.7, 1.5, 2.5, 4.0, 8.0}) {
            double ours = ols::t_two_tailed_p(t, df);
            CHECK_MESSAGE(std::abs(ours - simpson_two_tailed_p(t, df)) <= 1e-8, "t=", t, " df=", df);
            CHECK(std::abs(ols::t_cdf(t, df) + ols::t_cdf(-t, df) - 1.0) <= 1e-12);
        }
    }
    // Cauchy closed form.
    CHECK(ols::t_cdf(1.0, 1) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("Ols.incompleteBetaClosedForms")
{
    for (double x : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        for (double b : {0.5, 1.0, 3.0, 11.5}) {
            CHECK(ols::incomplete_beta(1.0, b, x) == doctest::Approx(1 - std::pow(1 - x, b)).epsilon(1e-12));
            CHECK(ols::incomplete_beta(b, 1.0, x) == doctest::Approx(std::pow(x, b)).epsilon(1e-12));
        }
    }
    EPN_CHECK_THROWS_CODE(ols::incomplete_beta(0.0, 1.0, 0.5), ErrorCode::InvalidArgument);
    EPN_CHECK_THROWS_CODE(ols::incomplete_beta(1.0, 1.0, 1.5), ErrorCode::InvalidArgument);
}

TEST_CASE("Ols.fUpperTailClosedForm")
{
    // For df1 = 2 the upper tail is (1 + 2F/df2)^(-df2/2).
    for (double f : {0.5, 3.0, 48.003, 94.688}) {
        double expected = std::pow(1 + 2 * f / 23.0, -23.0 / 2);
        CHECK(ols::f_upper_p(f, 2, 23) == doctest::Approx(expected).epsilon(1e-9));
    }
    CHECK_EQ(ols::f_upper_p(0.0, 2, 23), 1.0);
}

TEST_CASE("Ols.stars")
{
    CHECK_EQ(std::string(ols::stars(0.005)), "***");
    CHECK_EQ(std::string(ols::stars(0.028)), "**");
    CHECK_EQ(std::string(ols::stars(0.07)), "*");
    CHECK_EQ(std::string(ols::stars(0.5)), "");
    CHECK_EQ(std::string(ols::stars(0.01)), "**");
    CHECK_EQ(std::string(ols::stars(0.05)), "*");
    CHECK_EQ(std::string(ols::stars(0.1)), "");
}
