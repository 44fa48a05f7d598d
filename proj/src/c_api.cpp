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
#include "epinowcast/epinowcast.h"

#include "epinowcast/csv.hpp"
#include "epinowcast/error.hpp"
#include "epinowcast/ingest.hpp"
#include "epinowcast/lag_sweep.hpp"
#include "epinowcast/nowcast.hpp"
#include "epinowcast/report.hpp"
#include "epinowcast/revisions.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct epn_series {
    epinowcast::DailySeries value;
};

struct epn_model {
    epinowcast::FitReport report;
};

struct epn_sweep {
    epinowcast::LagSweepResult result;
};

struct epn_store {
    epinowcast::SnapshotStore store;
};

namespace
{

using namespace epinowcast;

struct LastError {
    epn_status status = EPN_OK;
    std::string message;
    std::string date;
    std::string source;
};

thread_local LastError last_error;

epn_status to_status(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument:
        return EPN_ERR_INVALID_ARGUMENT;
    case ErrorCode::Io:
        return EPN_ERR_IO;
    case ErrorCode::Parse:
        return EPN_ERR_PARSE;
    case ErrorCode::DuplicateDate:
        return EPN_ERR_DUPLICATE_DATE;
    case ErrorCode::NegativeValue:
        return EPN_ERR_NEGATIVE_VALUE;
    case ErrorCode::MissingValue:
        return EPN_ERR_MISSING_VALUE;
    case ErrorCode::NonPositiveValue:
        return EPN_ERR_NON_POSITIVE_VALUE;
    case ErrorCode::EmptyIntersection:
        return EPN_ERR_EMPTY_INTERSECTION;
    case ErrorCode::AllZero:
        return EPN_ERR_ALL_ZERO;
    case ErrorCode::RankDeficient:
        return EPN_ERR_RANK_DEFICIENT;
    case ErrorCode::TooFewObservations:
        return EPN_ERR_TOO_FEW_OBSERVATIONS;
    case ErrorCode::CountryNotFound:
        return EPN_ERR_COUNTRY_NOT_FOUND;
    case ErrorCode::CorruptFixture:
        return EPN_ERR_CORRUPT_FIXTURE;
    case ErrorCode::SnapshotNotFound:
        return EPN_ERR_SNAPSHOT_NOT_FOUND;
    case ErrorCode::MissingDate:
        return EPN_ERR_MISSING_DATE;
    case ErrorCode::EmptyGroup:
        return EPN_ERR_EMPTY_GROUP;
    case ErrorCode::AllLagsInfeasible:
        return EPN_ERR_ALL_LAGS_INFEASIBLE;
    }
    return EPN_ERR_INTERNAL;
}

epn_status fail(epn_status status, std::string message, std::string date = {}, std::string source = {})
{
    last_error = {status, std::move(message), std::move(date), std::move(source)};
    return status;
}

template <class F>
epn_status guarded(F&& body)
{
    last_error = {};
    try {
        body();
        return EPN_OK;
    }
    catch (const Error& e) {
        return fail(to_status(e.code()), e.what(), e.date() ? format_iso_date(*e.date()) : std::string(), e.source());
    }
    catch (const std::bad_alloc&) {
        return fail(EPN_ERR_INTERNAL, "out of memory");
    }
    catch (const std::exception& e) {
        return fail(EPN_ERR_INTERNAL, e.what());
    }
    catch (...) {
        return fail(EPN_ERR_INTERNAL, "unknown error");
    }
}

void require(const void* p, const char* what)
{
    if (!p) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
    }
}

Date date_arg(const char* text, const char* what)
{
    require(text, what);
    auto d = parse_iso_date(text);
    if (!d) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not a YYYY-MM-DD date: '" + text + "'");
    }
    return *d;
}

DateWindow window_arg(const char* from, const char* to)
{
    return DateWindow::checked(date_arg(from, "from"), date_arg(to, "to"));
}

char* duplicate(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void write_string(char** out, const std::string& s)
{
    require(out, "out");
    *out = duplicate(s);
}

template <class Handle, class Value>
void write_handle(Handle** out, Value&& value)
{
    require(out, "out");
    *out = new Handle{std::forward<Value>(value)};
}

} // namespace

extern "C" {

const char* epn_version(void)
{
    return EPINOWCAST_VERSION;
}

const char* epn_status_name(epn_status status)
{
    switch (status) {
    case EPN_OK:
        return "Ok";
    case EPN_ERR_INVALID_ARGUMENT:
        return error_code_name(ErrorCode::InvalidArgument);
    case EPN_ERR_IO:
        return error_code_name(ErrorCode::Io);
    case EPN_ERR_PARSE:
        return error_code_name(ErrorCode::Parse);
    case EPN_ERR_DUPLICATE_DATE:
        return error_code_name(ErrorCode::DuplicateDate);
    case EPN_ERR_NEGATIVE_VALUE:
        return error_code_name(ErrorCode::NegativeValue);
    case EPN_ERR_MISSING_VALUE:
        return error_code_name(ErrorCode::MissingValue);
    case EPN_ERR_NON_POSITIVE_VALUE:
        return error_code_name(ErrorCode::NonPositiveValue);
    case EPN_ERR_EMPTY_INTERSECTION:
        return error_code_name(ErrorCode::EmptyIntersection);
    case EPN_ERR_ALL_ZERO:
        return error_code_name(ErrorCode::AllZero);
    case EPN_ERR_RANK_DEFICIENT:
        return error_code_name(ErrorCode::RankDeficient);
    case EPN_ERR_TOO_FEW_OBSERVATIONS:
        return error_code_name(ErrorCode::TooFewObservations);
    case EPN_ERR_COUNTRY_NOT_FOUND:
        return error_code_name(ErrorCode::CountryNotFound);
    case EPN_ERR_CORRUPT_FIXTURE:
        return error_code_name(ErrorCode::CorruptFixture);
    case EPN_ERR_SNAPSHOT_NOT_FOUND:
        return error_code_name(ErrorCode::SnapshotNotFound);
    case EPN_ERR_MISSING_DATE:
        return error_code_name(ErrorCode::MissingDate);
    case EPN_ERR_EMPTY_GROUP:
        return error_code_name(ErrorCode::EmptyGroup);
    case EPN_ERR_ALL_LAGS_INFEASIBLE:
        return error_code_name(ErrorCode::AllLagsInfeasible);
    case EPN_ERR_INTERNAL:
        return "InternalError";
    }
    return "Unknown";
}

epn_status epn_last_error_status(void)
{
    return last_error.status;
}

const char* epn_last_error_message(void)
{
    return last_error.message.c_str();
}

const char* epn_last_error_date(void)
{
    return last_error.date.c_str();
}

const char* epn_last_error_source(void)
{
    return last_error.source.c_str();
}

void epn_string_free(char* s)
{
    std::free(s);
}

int epn_is_weekend(const char* date)
{
    if (!date) {
        return -1;
    }
    auto d = parse_iso_date(date);
    return d ? (is_weekend(*d) ? 1 : 0) : -1;
}

epn_status epn_series_parse_csv(const char* text, const char* name, epn_series** out)
{
    return guarded([&] {
        require(text, "text");
        write_handle(out, parse_long_daily(text, name ? name : "series"));
    });
}

epn_status epn_series_load_csv(const char* path, const char* name, epn_series** out)
{
    return guarded([&] {
        require(path, "path");
        write_handle(out, load_long_daily(path, name ? name : "series"));
    });
}

epn_status epn_series_load_jhu_wide(const char* path, const char* country, epn_series** out, size_t* negative_days)
{
    return guarded([&] {
        require(path, "path");
        require(country, "country");
        require(out, "out");
        auto differenced = load_jhu_wide_cumulative(path, country);
        if (negative_days) {
            *negative_days = differenced.negative_dates.size();
        }
        write_handle(out, std::move(differenced.daily));
    });
}

epn_status epn_series_fixture(const char* name, epn_series** out)
{
    return guarded([&] {
        require(name, "name");
        write_handle(out, load_fixture().by_name(name));
    });
}

epn_status epn_series_create(const char* name, const char* const* dates, const double* values, size_t n,
                             epn_series** out)
{
    return guarded([&] {
        if (n > 0) {
            require(dates, "dates");
            require(values, "values");
        }
        DailySeries series(name ? name : "series");
        for (size_t i = 0; i < n; ++i) {
            series.insert(date_arg(dates[i], "dates[i]"), values[i]);
        }
        write_handle(out, std::move(series));
    });
}

void epn_series_free(epn_series* series)
{
    delete series;
}

size_t epn_series_size(const epn_series* series)
{
    return series ? series->value.size() : 0;
}

const char* epn_series_name(const epn_series* series)
{
    return series ? series->value.name().c_str() : "";
}

epn_status epn_series_get(const epn_series* series, size_t index, char* date_out, double* value_out)
{
    return guarded([&] {
        require(series, "series");
        if (index >= series->value.size()) {
            throw Error(ErrorCode::InvalidArgument, "index " + std::to_string(index) + " out of range");
        }
        auto it = std::next(series->value.observations().begin(), static_cast<std::ptrdiff_t>(index));
        if (date_out) {
            std::string text = format_iso_date(it->first);
            std::memcpy(date_out, text.c_str(), text.size() + 1);
        }
        if (value_out) {
            *value_out = it->second;
        }
    });
}

epn_status epn_series_value(const epn_series* series, const char* date, double* value_out, int* present)
{
    return guarded([&] {
        require(series, "series");
        require(present, "present");
        auto v   = series->value.at(date_arg(date, "date"));
        *present = v ? 1 : 0;
        if (v && value_out) {
            *value_out = *v;
        }
    });
}

epn_status epn_series_to_csv(const epn_series* series, char** out)
{
    return guarded([&] {
        require(series, "series");
        write_string(out, emit_long_daily(series->value));
    });
}

epn_status epn_series_index_to_100(const epn_series* series, epn_series** out)
{
    return guarded([&] {
        require(series, "series");
        write_handle(out, index_to_100(series->value));
    });
}

epn_status epn_series_lag(const epn_series* series, int days, epn_series** out)
{
    return guarded([&] {
        require(series, "series");
        write_handle(out, lag(series->value, days));
    });
}

epn_status epn_weekend_gap(const epn_series* series, const char* from, const char* to, double* weekend_mean,
                           double* weekday_mean, double* ratio)
{
    return guarded([&] {
        require(series, "series");
        auto gap = weekend_gap(series->value, window_arg(from, to));
        if (weekend_mean) {
            *weekend_mean = gap.weekend_mean;
        }
        if (weekday_mean) {
            *weekday_mean = gap.weekday_mean;
        }
        if (ratio) {
            *ratio = gap.ratio;
        }
    });
}

epn_fit_options epn_fit_options_default(void)
{
    return epn_fit_options{0, 1, 0, ols::OlsOptions{}.rank_tolerance};
}

epn_status epn_fit(const epn_series* target, const epn_series* predictor, const char* from, const char* to,
                   const epn_fit_options* options, epn_model** out)
{
    return guarded([&] {
        require(target, "target");
        require(predictor, "predictor");
        epn_fit_options opts = options ? *options : epn_fit_options_default();

        NowcastSpec spec;
        spec.target        = target->value;
        spec.predictor     = predictor->value;
        spec.lag_days      = opts.lag_days;
        spec.weekend_dummy = opts.weekend_dummy != 0;
        spec.window        = window_arg(from, to);

        NowcastOptions nowcast_options;
        nowcast_options.smearing           = opts.smearing != 0;
        nowcast_options.ols.rank_tolerance = opts.rank_tolerance;
        write_handle(out, make_report(fit_nowcast(spec, nowcast_options)));
    });
}

epn_status epn_model_from_json(const char* json, epn_model** out)
{
    return guarded([&] {
        require(json, "json");
        write_handle(out, fit_report_from_json(json));
    });
}

void epn_model_free(epn_model* model)
{
    delete model;
}

epn_status epn_model_render(const epn_model* model, epn_format format, int styled, char** out)
{
    return guarded([&] {
        require(model, "model");
        switch (format) {
        case EPN_FORMAT_TEXT:
            write_string(out, render_text(model->report, styled != 0));
            return;
        case EPN_FORMAT_JSON:
            write_string(out, to_json(model->report));
            return;
        case EPN_FORMAT_CSV:
            break;
        }
        throw Error(ErrorCode::InvalidArgument, "fit reports are rendered as text or json");
    });
}

epn_status epn_model_summary_get(const epn_model* model, epn_model_summary* out)
{
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        const FitReport& r = model->report;
        epn_model_summary s{};
        s.n             = r.n;
        s.lag_days      = r.lag_days;
        s.weekend_dummy = r.weekend_dummy ? 1 : 0;
        s.intercept     = r.coefficient(intercept_name).estimate;
        s.intercept_se  = r.coefficient(intercept_name).se;
        s.slope         = r.slope().estimate;
        s.slope_se      = r.slope().se;
        if (r.weekend_dummy) {
            s.weekend    = r.coefficient(weekend_name).estimate;
            s.weekend_se = r.coefficient(weekend_name).se;
        }
        s.r2             = r.r2;
        s.adj_r2         = r.adj_r2;
        s.mae_log        = r.mae_log;
        s.mape_original  = r.mape_original;
        s.weekend_effect = r.weekend_effect;
        s.residual_se    = r.residual_se;
        s.f              = r.f;
        s.df1            = r.df1;
        s.df2            = r.df2;
        *out             = s;
    });
}

epn_status epn_model_predict(const epn_model* model, double predictor_value, const char* date, double* out)
{
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        *out = model->report.predict(predictor_value, date_arg(date, "date"));
    });
}

epn_status epn_model_predict_series(const epn_model* model, const epn_series* predictor, const epn_series* actual,
                                    char** out)
{
    return guarded([&] {
        require(model, "model");
        require(predictor, "predictor");
        std::string text = "date,predicted,actual\n";
        for (const auto& [d, v] : predictor->value.observations()) {
            Date target_date = add_days(d, model->report.lag_days);
            std::string predicted =
                v > 0.0 ? csv::format_shortest(model->report.predict(v, target_date)) : std::string("NA");
            std::optional<double> known = actual ? actual->value.at(target_date) : std::nullopt;
            text += format_iso_date(target_date) + "," + predicted + "," +
                    (known ? csv::format_shortest(*known) : std::string("NA")) + "\n";
        }
        write_string(out, text);
    });
}

epn_status epn_compare(const epn_series* official, const epn_series* alternative, const char* from, const char* to,
                       epn_format format, double* mape, char** out)
{
    return guarded([&] {
        require(official, "official");
        require(alternative, "alternative");
        auto comparison = compare_raw(official->value, alternative->value, window_arg(from, to));
        std::string text;
        switch (format) {
        case EPN_FORMAT_TEXT:
            text = render_comparison_text(comparison, official->value.name(), alternative->value.name());
            break;
        case EPN_FORMAT_JSON:
            text = comparison_to_json(comparison, official->value.name(), alternative->value.name());
            break;
        case EPN_FORMAT_CSV:
            text = comparison_to_csv(comparison);
            break;
        default:
            throw Error(ErrorCode::InvalidArgument, "unknown format");
        }
        if (out) {
            *out = duplicate(text);
        }
        if (mape) {
            *mape = comparison.mape;
        }
    });
}

epn_status epn_sweep_run(const epn_series* target, const epn_series* predictor, const char* from, const char* to,
                         int max_lag, epn_rule rule, epn_sweep** out)
{
    return guarded([&] {
        require(target, "target");
        require(predictor, "predictor");
        SelectionRule selection;
        switch (rule) {
        case EPN_RULE_MAX_ADJ_R2:
            selection = SelectionRule::MaxAdjR2;
            break;
        case EPN_RULE_MIN_MAE:
            selection = SelectionRule::MinMae;
            break;
        case EPN_RULE_COMBINED:
            selection = SelectionRule::Combined;
            break;
        default:
            throw Error(ErrorCode::InvalidArgument, "unknown selection rule");
        }
        write_handle(out, sweep(target->value, predictor->value, window_arg(from, to), max_lag, selection));
    });
}

void epn_sweep_free(epn_sweep* sweep)
{
    delete sweep;
}

int epn_sweep_selected_lag(const epn_sweep* sweep)
{
    return sweep ? sweep->result.selected_lag : -1;
}

epn_status epn_sweep_best_lags(const epn_sweep* sweep, int* adj_r2_lag, int* mae_lag)
{
    return guarded([&] {
        require(sweep, "sweep");
        if (adj_r2_lag) {
            *adj_r2_lag = sweep->result.best_adj_r2_lag;
        }
        if (mae_lag) {
            *mae_lag = sweep->result.best_mae_lag;
        }
    });
}

epn_status epn_sweep_metric(const epn_sweep* sweep, int lag, const char* metric, double* out, int* feasible)
{
    return guarded([&] {
        require(sweep, "sweep");
        require(metric, "metric");
        require(feasible, "feasible");
        const LagMetrics& m = sweep->result.at_lag(lag);
        std::string name    = metric;
        double value        = 0.0;
        if (name == "adj_r_squared") {
            value = m.adj_r_squared;
        }
        else if (name == "mae_log") {
            value = m.mae_log;
        }
        else if (name == "mape_original") {
            value = m.mape_original;
        }
        else if (name == "r_squared") {
            value = m.r_squared;
        }
        else {
            throw Error(ErrorCode::InvalidArgument, "unknown sweep metric '" + name + "'");
        }
        *feasible = m.feasible ? 1 : 0;
        if (m.feasible && out) {
            *out = value;
        }
    });
}

epn_status epn_sweep_render(const epn_sweep* sweep, epn_format format, int all_metrics, char** out)
{
    return guarded([&] {
        require(sweep, "sweep");
        switch (format) {
        case EPN_FORMAT_TEXT:
            write_string(out, render_sweep_text(sweep->result));
            return;
        case EPN_FORMAT_JSON:
            write_string(out, sweep_to_json(sweep->result));
            return;
        case EPN_FORMAT_CSV:
            write_string(out, sweep_table_to_csv(emit_sweep_table(
                                  sweep->result, all_metrics ? all_sweep_metrics : default_sweep_metrics)));
            return;
        }
        throw Error(ErrorCode::InvalidArgument, "unknown format");
    });
}

epn_status epn_store_load(const char* directory, epn_store** out)
{
    return guarded([&] {
        require(directory, "directory");
        write_handle(out, load_snapshot_store(directory));
    });
}

void epn_store_free(epn_store* store)
{
    delete store;
}

size_t epn_store_size(const epn_store* store)
{
    return store ? store->store.size() : 0;
}

epn_status epn_revision_profile(const epn_store* store, const char* newer, const char* older, epn_format format,
                                char** out)
{
    return guarded([&] {
        require(store, "store");
        Date newer_date = date_arg(newer, "newer");
        Date older_date = date_arg(older, "older");
        auto rows       = revision_profile(store->store, newer_date, older_date);
        switch (format) {
        case EPN_FORMAT_TEXT:
            write_string(out, render_revision_text(rows, newer_date, older_date));
            return;
        case EPN_FORMAT_JSON:
            write_string(out, revision_profile_to_json(rows, newer_date, older_date));
            return;
        case EPN_FORMAT_CSV:
            write_string(out, revision_profile_to_csv(rows));
            return;
        }
        throw Error(ErrorCode::InvalidArgument, "unknown format");
    });
}

epn_status epn_revision_share(double v_old, double v_new, double* share, int* defined)
{
    return guarded([&] {
        require(defined, "defined");
        auto s   = revision_share(v_old, v_new);
        *defined = s ? 1 : 0;
        if (s && share) {
            *share = *s;
        }
    });
}

} // extern "C"
