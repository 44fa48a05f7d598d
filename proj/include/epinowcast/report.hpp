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
#ifndef EPINOWCAST_REPORT_HPP
#define EPINOWCAST_REPORT_HPP

#include "epinowcast/lag_sweep.hpp"
#include "epinowcast/nowcast.hpp"
#include "epinowcast/revisions.hpp"

#include <string>
#include <vector>

namespace epinowcast
{

struct CoefficientReport {
    std::string name;
    double estimate = 0.0;
    double se       = 0.0;
    double t        = 0.0;
    double p        = 0.0;
    std::string stars;

    friend bool operator==(const CoefficientReport&, const CoefficientReport&) = default;
};

/**
 * Serializable summary of a fitted nowcast model. This is what `fit` writes and `predict`
 * reads back, so it carries everything needed to predict without the source series.
 *
 * JSON layout:
 *
 *     {"spec": {"target", "predictor", "lag_days", "weekend_dummy", "window": {"from", "to"}, "smearing"},
 *      "coefficients": {name: {"estimate", "se", "t", "p", "stars"}},
 *      "r2", "adj_r2", "mae_log", "mape_original", "weekend_effect",
 *      "f": {"value", "df1", "df2", "p"}, "n", "residual_se", "smearing_factor"}
 *
 * Non-finite numbers are written as null and read back as NaN.
 */
struct FitReport {
    std::string target;
    std::string predictor;
    int lag_days       = 0;
    bool weekend_dummy = true;
    DateWindow window{};
    bool smearing          = false;
    double smearing_factor = 1.0;
    /// Order: intercept, log predictor, weekend (if any).
    std::vector<CoefficientReport> coefficients;
    double r2             = 0.0;
    double adj_r2         = 0.0;
    double mae_log        = 0.0;
    double mape_original  = 0.0;
    double weekend_effect = 0.0;
    double residual_se    = 0.0;
    double f              = 0.0;
    double f_p            = 0.0;
    int df1               = 0;
    int df2               = 0;
    int n                 = 0;

    /// Throws InvalidArgument if absent.
    const CoefficientReport& coefficient(const std::string& name) const;
    const CoefficientReport& slope() const;
    double weekend_coefficient() const;

    double predict(double predictor_value, Date date) const;
};

FitReport make_report(const NowcastModel& model);

/// Pretty-printed JSON, keys in the documented order, numbers at full (round-trip) precision.
std::string to_json(const FitReport& report);
/// Throws Parse on malformed JSON or missing keys.
FitReport fit_report_from_json(const std::string& text);

/// Regression table rounded to 3 decimals: estimates with stars, standard errors in parentheses.
/// `styled` adds ANSI bold to the header lines.
std::string render_text(const FitReport& report, bool styled = false);

/// Per-date comparison table `date,official,alternative,ape,signed_difference`.
std::string comparison_to_csv(const RawComparison& comparison);
std::string comparison_to_json(const RawComparison& comparison, const std::string& official,
                               const std::string& alternative);
std::string render_comparison_text(const RawComparison& comparison, const std::string& official,
                                   const std::string& alternative);

std::string sweep_to_json(const LagSweepResult& result);

/// Undefined shares are written as null.
std::string revision_profile_to_json(const std::vector<RevisionRow>& rows, Date newer, Date older);
std::string render_revision_text(const std::vector<RevisionRow>& rows, Date newer, Date older);

} // namespace epinowcast

#endif // EPINOWCAST_REPORT_HPP
