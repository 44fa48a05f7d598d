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
#ifndef EPINOWCAST_NOWCAST_HPP
#define EPINOWCAST_NOWCAST_HPP

#include "epinowcast/ols.hpp"
#include "epinowcast/series.hpp"

#include <string>
#include <vector>

namespace epinowcast
{

constexpr int max_nowcast_lag = 30;

/**
 * One log-log nowcasting model:
 *
 *     ln(target_t) = b0 + b1 * ln(predictor_{t - lag}) + b2 * weekend_t
 *
 * The dependent window is fixed; a positive lag reaches back into the predictor's
 * history instead of shrinking the window.
 */
struct NowcastSpec {
    DailySeries target;
    DailySeries predictor;
    int lag_days       = 0;
    bool weekend_dummy = true;
    DateWindow window{};

    /// Throws InvalidArgument when lag_days is outside [0, max_nowcast_lag].
    void validate() const;
};

struct NowcastOptions {
    /// Multiply back-transformed predictions by mean(exp(residual)) (Duan). Off reproduces naive exp().
    bool smearing = false;
    ols::OlsOptions ols{};
};

struct NowcastModel {
    NowcastSpec spec;
    std::vector<Date> dates;
    ols::DesignMatrix design;
    ols::OlsFit fit;
    double mae_log         = 0.0;
    double mape_original   = 0.0;
    /// exp(weekend coefficient) - 1; NaN without a weekend dummy.
    double weekend_effect  = 0.0;
    bool smearing          = false;
    double smearing_factor = 1.0;

    /// Back-transformed in-sample predictions, row-aligned with dates.
    std::vector<double> predictions() const;
};

/// Coefficient names used in designs and reports.
inline constexpr const char* intercept_name = "intercept";
inline constexpr const char* weekend_name   = "weekend";
std::string log_column_name(const std::string& predictor_name);

/// Columns [intercept, ln(lagged predictor), weekend]; response ln(target).
/// Throws EmptyIntersection, MissingValue or NonPositiveValue with the offending date and source.
ols::DesignMatrix build_design(const NowcastSpec& spec, std::vector<Date>* row_dates = nullptr);

NowcastModel fit_nowcast(const NowcastSpec& spec, const NowcastOptions& options = {});

/// exp(beta_weekend) - 1.
double weekend_effect(double beta_weekend);

/// exp(b0 + b1 ln(value) + b2 weekend(date)), scaled by the smearing factor. Throws NonPositiveValue.
double predict(double intercept, double slope, double weekend_coefficient, double smearing_factor,
               double predictor_value, Date date);
double predict(const NowcastModel& model, double predictor_value, Date date);

struct ComparisonRow {
    Date date;
    double official;
    double alternative;
    /// |alternative - official| / official
    double absolute_percentage_error;
    /// (alternative - official) / official
    double signed_difference;
};

struct RawComparison {
    double mape = 0.0;
    std::vector<ComparisonRow> rows;
};

/// Model-free MAPE of b against the official series a over every date in the window.
RawComparison compare_raw(const DailySeries& official, const DailySeries& alternative, const DateWindow& window);

} // namespace epinowcast

#endif // EPINOWCAST_NOWCAST_HPP
