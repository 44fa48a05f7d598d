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
#include "epinowcast/nowcast.hpp"
#include "epinowcast/error.hpp"

#include <cmath>
#include <limits>

namespace epinowcast
{

namespace
{

struct WindowPair {
    std::vector<Date> dates;
    std::vector<double> first;
    std::vector<double> second;
};

// Every window date must be present in both series and strictly positive.
// `second` may be a lagged view whose name carries a suffix; `second_source` is reported instead.
WindowPair collect_positive(const DailySeries& first, const DailySeries& second, const std::string& second_source,
                            const DateWindow& window)
{
    bool any_complete = false;
    for (Date d = window.start; d <= window.end; d = add_days(d, 1)) {
        if (first.contains(d) && second.contains(d)) {
            any_complete = true;
            break;
        }
    }
    if (!any_complete) {
        throw Error(ErrorCode::EmptyIntersection, "no date in " + format_iso_date(window.start) + ".." +
                                                      format_iso_date(window.end) + " has both '" + first.name() +
                                                      "' and '" + second_source + "'");
    }

    WindowPair out;
    for (Date d = window.start; d <= window.end; d = add_days(d, 1)) {
        auto check = [d](const DailySeries& s, const std::string& source) {
            auto v = s.at(d);
            if (!v) {
                throw Error(ErrorCode::MissingValue, "'" + source + "' has no value on " + format_iso_date(d), d,
                            source);
            }
            if (!(*v > 0.0)) {
                throw Error(ErrorCode::NonPositiveValue,
                            "'" + source + "' is not positive on " + format_iso_date(d), d, source);
            }
            return *v;
        };
        double a = check(first, first.name());
        double b = check(second, second_source);
        out.dates.push_back(d);
        out.first.push_back(a);
        out.second.push_back(b);
    }
    return out;
}

} // namespace

void NowcastSpec::validate() const
{
    if (lag_days < 0 || lag_days > max_nowcast_lag) {
        throw Error(ErrorCode::InvalidArgument,
                    "lag must be within [0, " + std::to_string(max_nowcast_lag) + "], got " + std::to_string(lag_days));
    }
    if (window.end < window.start) {
        throw Error(ErrorCode::InvalidArgument, "empty window");
    }
}

std::string log_column_name(const std::string& predictor_name)
{
    return "log_" + predictor_name;
}

ols::DesignMatrix build_design(const NowcastSpec& spec, std::vector<Date>* row_dates)
{
    spec.validate();
    DailySeries lagged = lag(spec.predictor, spec.lag_days);
    WindowPair rows    = collect_positive(spec.target, lagged, spec.predictor.name(), spec.window);

    std::vector<double> response;
    std::vector<double> log_predictor;
    std::vector<double> weekend;
    for (std::size_t i = 0; i < rows.dates.size(); ++i) {
        response.push_back(std::log(rows.first[i]));
        log_predictor.push_back(std::log(rows.second[i]));
        weekend.push_back(is_weekend(rows.dates[i]) ? 1.0 : 0.0);
    }

    std::vector<std::string> names{log_column_name(spec.predictor.name())};
    std::vector<std::vector<double>> columns{std::move(log_predictor)};
    if (spec.weekend_dummy) {
        names.emplace_back(weekend_name);
        columns.push_back(std::move(weekend));
    }
    if (row_dates) {
        *row_dates = rows.dates;
    }
    return ols::make_design(std::move(names), std::move(columns), std::move(response));
}

NowcastModel fit_nowcast(const NowcastSpec& spec, const NowcastOptions& options)
{
    NowcastModel model;
    model.spec     = spec;
    model.design   = build_design(spec, &model.dates);
    model.fit      = ols::fit(model.design, options.ols);
    model.smearing = options.smearing;

    const std::size_t n = model.fit.n();
    double abs_sum      = 0.0;
    double exp_sum      = 0.0;
    for (double r : model.fit.residuals) {
        abs_sum += std::abs(r);
        exp_sum += std::exp(r);
    }
    model.mae_log         = abs_sum / static_cast<double>(n);
    model.smearing_factor = options.smearing ? exp_sum / static_cast<double>(n) : 1.0;

    double ape_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double actual    = std::exp(model.design.response[i]);
        double predicted = std::exp(model.fit.fitted[i]) * model.smearing_factor;
        ape_sum += std::abs(predicted - actual) / actual;
    }
    model.mape_original = ape_sum / static_cast<double>(n);

    model.weekend_effect = spec.weekend_dummy
                               ? weekend_effect(model.fit.coefficients[model.fit.index_of(weekend_name)])
                               : std::numeric_limits<double>::quiet_NaN();
    return model;
}

std::vector<double> NowcastModel::predictions() const
{
    std::vector<double> out;
    out.reserve(fit.fitted.size());
    for (double f : fit.fitted) {
        out.push_back(std::exp(f) * smearing_factor);
    }
    return out;
}

double weekend_effect(double beta_weekend)
{
    return std::expm1(beta_weekend);
}

double predict(double intercept, double slope, double weekend_coefficient, double smearing_factor,
               double predictor_value, Date date)
{
    if (!(predictor_value > 0.0)) {
        throw Error(ErrorCode::NonPositiveValue, "predictor value must be positive", date);
    }
    double log_prediction = intercept + slope * std::log(predictor_value);
    if (is_weekend(date)) {
        log_prediction += weekend_coefficient;
    }
    return std::exp(log_prediction) * smearing_factor;
}

double predict(const NowcastModel& model, double predictor_value, Date date)
{
    const auto& fit = model.fit;
    double weekend  = model.spec.weekend_dummy ? fit.coefficients[fit.index_of(weekend_name)] : 0.0;
    return predict(fit.coefficients[fit.index_of(intercept_name)],
                   fit.coefficients[fit.index_of(log_column_name(model.spec.predictor.name()))], weekend,
                   model.smearing_factor, predictor_value, date);
}

RawComparison compare_raw(const DailySeries& official, const DailySeries& alternative, const DateWindow& window)
{
    // Only the official (denominator) side has to be positive.
    bool any_complete = false;
    for (Date d = window.start; d <= window.end && !any_complete; d = add_days(d, 1)) {
        any_complete = official.contains(d) && alternative.contains(d);
    }
    if (!any_complete) {
        throw Error(ErrorCode::EmptyIntersection, "no date in " + format_iso_date(window.start) + ".." +
                                                      format_iso_date(window.end) + " has both '" +
                                                      official.name() + "' and '" + alternative.name() + "'");
    }

    RawComparison out;
    double sum = 0.0;
    for (Date d = window.start; d <= window.end; d = add_days(d, 1)) {
        auto a = official.at(d);
        auto b = alternative.at(d);
        if (!a || !b) {
            const std::string& source = !a ? official.name() : alternative.name();
            throw Error(ErrorCode::MissingValue, "'" + source + "' has no value on " + format_iso_date(d), d, source);
        }
        if (!(*a > 0.0)) {
            throw Error(ErrorCode::NonPositiveValue, "'" + official.name() + "' is not positive on " +
                                                         format_iso_date(d), d, official.name());
        }
        double signed_diff = (*b - *a) / *a;
        out.rows.push_back({d, *a, *b, std::abs(signed_diff), signed_diff});
        sum += std::abs(signed_diff);
    }
    out.mape = sum / static_cast<double>(out.rows.size());
    return out;
}

} // namespace epinowcast
