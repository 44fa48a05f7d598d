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
/*
 * C interface of libepinowcast.
 *
 * Objects are opaque handles created by the library and released with the matching
 * *_free function. Functions returning epn_status leave the out-parameters untouched on
 * failure; details of the last failure on the calling thread are available through
 * epn_last_error_*(). Strings returned through `char** out` are owned by the caller and
 * must be released with epn_string_free().
 *
 * Dates are ISO-8601 strings "YYYY-MM-DD".
 */
#ifndef EPINOWCAST_H
#define EPINOWCAST_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(EPINOWCAST_BUILDING)
#    define EPN_API __declspec(dllexport)
#  else
#    define EPN_API __declspec(dllimport)
#  endif
#else
#  define EPN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct epn_series epn_series;
typedef struct epn_model epn_model;
typedef struct epn_sweep epn_sweep;
typedef struct epn_store epn_store;

typedef enum epn_status {
    EPN_OK = 0,
    EPN_ERR_INVALID_ARGUMENT,
    EPN_ERR_IO,
    EPN_ERR_PARSE,
    EPN_ERR_DUPLICATE_DATE,
    EPN_ERR_NEGATIVE_VALUE,
    EPN_ERR_MISSING_VALUE,
    EPN_ERR_NON_POSITIVE_VALUE,
    EPN_ERR_EMPTY_INTERSECTION,
    EPN_ERR_ALL_ZERO,
    EPN_ERR_RANK_DEFICIENT,
    EPN_ERR_TOO_FEW_OBSERVATIONS,
    EPN_ERR_COUNTRY_NOT_FOUND,
    EPN_ERR_CORRUPT_FIXTURE,
    EPN_ERR_SNAPSHOT_NOT_FOUND,
    EPN_ERR_MISSING_DATE,
    EPN_ERR_EMPTY_GROUP,
    EPN_ERR_ALL_LAGS_INFEASIBLE,
    EPN_ERR_INTERNAL
} epn_status;

typedef enum epn_format {
    EPN_FORMAT_TEXT = 0,
    EPN_FORMAT_JSON = 1,
    EPN_FORMAT_CSV  = 2
} epn_format;

typedef enum epn_rule {
    EPN_RULE_MAX_ADJ_R2 = 0,
    EPN_RULE_MIN_MAE    = 1,
    EPN_RULE_COMBINED   = 2
} epn_rule;

/* ---- errors and memory ---------------------------------------------------------- */

EPN_API const char* epn_version(void);
/* CamelCase error name, e.g. "NonPositiveValue"; "Ok" for EPN_OK. */
EPN_API const char* epn_status_name(epn_status status);
EPN_API epn_status epn_last_error_status(void);
EPN_API const char* epn_last_error_message(void);
/* Offending date, or "" when the error is not tied to one. */
EPN_API const char* epn_last_error_date(void);
/* Offending series name, or "". */
EPN_API const char* epn_last_error_source(void);
EPN_API void epn_string_free(char* s);

/* 1 for Saturday/Sunday, 0 otherwise, -1 if the date is invalid. */
EPN_API int epn_is_weekend(const char* date);

/* ---- series ----------------------------------------------------------------------- */

/* Long daily CSV text with header "date,value". */
EPN_API epn_status epn_series_parse_csv(const char* text, const char* name, epn_series** out);
EPN_API epn_status epn_series_load_csv(const char* path, const char* name, epn_series** out);
/* JHU wide cumulative file -> daily new cases. negative_days (nullable) receives the
   number of days with a negative difference. */
EPN_API epn_status epn_series_load_jhu_wide(const char* path, const char* country, epn_series** out,
                                            size_t* negative_days);
/* Embedded dataset column: "rki", "jhu", "google" or "twitter". */
EPN_API epn_status epn_series_fixture(const char* name, epn_series** out);
EPN_API epn_status epn_series_create(const char* name, const char* const* dates, const double* values, size_t n,
                                     epn_series** out);
EPN_API void epn_series_free(epn_series* series);
EPN_API size_t epn_series_size(const epn_series* series);
EPN_API const char* epn_series_name(const epn_series* series);
/* date_out must hold 11 bytes. */
EPN_API epn_status epn_series_get(const epn_series* series, size_t index, char* date_out, double* value_out);
/* present receives 0 for a missing date (value_out untouched), 1 otherwise. */
EPN_API epn_status epn_series_value(const epn_series* series, const char* date, double* value_out, int* present);
EPN_API epn_status epn_series_to_csv(const epn_series* series, char** out);
EPN_API epn_status epn_series_index_to_100(const epn_series* series, epn_series** out);
EPN_API epn_status epn_series_lag(const epn_series* series, int days, epn_series** out);
EPN_API epn_status epn_weekend_gap(const epn_series* series, const char* from, const char* to,
                                   double* weekend_mean, double* weekday_mean, double* ratio);

/* ---- nowcast models --------------------------------------------------------------- */

typedef struct epn_fit_options {
    int lag_days;
    int weekend_dummy;
    int smearing;
    double rank_tolerance;
} epn_fit_options;

/* lag 0, weekend dummy on, no smearing, rank tolerance 1e-10. */
EPN_API epn_fit_options epn_fit_options_default(void);

EPN_API epn_status epn_fit(const epn_series* target, const epn_series* predictor, const char* from, const char* to,
                           const epn_fit_options* options, epn_model** out);
/* Loads a fit report written by epn_model_render(..., EPN_FORMAT_JSON, ...). */
EPN_API epn_status epn_model_from_json(const char* json, epn_model** out);
EPN_API void epn_model_free(epn_model* model);
/* TEXT (regression table) or JSON (fit report). styled adds ANSI bold to text. */
EPN_API epn_status epn_model_render(const epn_model* model, epn_format format, int styled, char** out);

typedef struct epn_model_summary {
    int n;
    int lag_days;
    int weekend_dummy;
    double intercept;
    double intercept_se;
    double slope;
    double slope_se;
    double weekend;    /* 0 without a weekend dummy */
    double weekend_se;
    double r2;
    double adj_r2;
    double mae_log;
    double mape_original;
    double weekend_effect;
    double residual_se;
    double f;
    int df1;
    int df2;
} epn_model_summary;

EPN_API epn_status epn_model_summary_get(const epn_model* model, epn_model_summary* out);
EPN_API epn_status epn_model_predict(const epn_model* model, double predictor_value, const char* date, double* out);
/* CSV "date,predicted,actual": one row per predictor date d, predicting d + lag. actual may
   be NULL; unknown actuals and non-positive predictor values are written as NA. */
EPN_API epn_status epn_model_predict_series(const epn_model* model, const epn_series* predictor,
                                            const epn_series* actual, char** out);

/* ---- raw comparison --------------------------------------------------------------- */

EPN_API epn_status epn_compare(const epn_series* official, const epn_series* alternative, const char* from,
                               const char* to, epn_format format, double* mape, char** out);

/* ---- lag sweep -------------------------------------------------------------------- */

EPN_API epn_status epn_sweep_run(const epn_series* target, const epn_series* predictor, const char* from,
                                 const char* to, int max_lag, epn_rule rule, epn_sweep** out);
EPN_API void epn_sweep_free(epn_sweep* sweep);
EPN_API int epn_sweep_selected_lag(const epn_sweep* sweep);
EPN_API epn_status epn_sweep_best_lags(const epn_sweep* sweep, int* adj_r2_lag, int* mae_lag);
/* metric: "adj_r_squared", "mae_log", "mape_original" or "r_squared". */
EPN_API epn_status epn_sweep_metric(const epn_sweep* sweep, int lag, const char* metric, double* out,
                                    int* feasible);
/* CSV is the tidy table; all_metrics adds mape_original and r_squared to the default two. */
EPN_API epn_status epn_sweep_render(const epn_sweep* sweep, epn_format format, int all_metrics, char** out);

/* ---- revisions -------------------------------------------------------------------- */

EPN_API epn_status epn_store_load(const char* directory, epn_store** out);
EPN_API void epn_store_free(epn_store* store);
EPN_API size_t epn_store_size(const epn_store* store);
EPN_API epn_status epn_revision_profile(const epn_store* store, const char* newer, const char* older,
                                        epn_format format, char** out);
/* defined receives 0 when v_new is zero (share undefined, share untouched). */
EPN_API epn_status epn_revision_share(double v_old, double v_new, double* share, int* defined);

#ifdef __cplusplus
}
#endif

#endif /* EPINOWCAST_H */
