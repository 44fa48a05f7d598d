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
#ifndef EPINOWCAST_LAG_SWEEP_HPP
#define EPINOWCAST_LAG_SWEEP_HPP

#include "epinowcast/nowcast.hpp"

#include <optional>
#include <string>
#include <vector>

namespace epinowcast
{

enum class SelectionRule
{
    MaxAdjR2,
    MinMae,
    /// Selects by adjusted R² and records whether MAE would have chosen differently.
    Combined,
};

const char* selection_rule_name(SelectionRule rule);
/// Accepts "max_adj_r2", "min_mae", "combined". Throws InvalidArgument otherwise.
SelectionRule parse_selection_rule(const std::string& name);

struct LagMetrics {
    int lag       = 0;
    bool feasible = false;
    /// Why the design could not be fitted at this lag; empty when feasible.
    std::string reason;
    double adj_r_squared = 0.0;
    double mae_log       = 0.0;
    double mape_original = 0.0;
    double r_squared     = 0.0;
};

struct LagSweepResult {
    std::string predictor;
    /// One entry per lag 0..max_lag, ascending.
    std::vector<LagMetrics> per_lag;
    SelectionRule rule = SelectionRule::Combined;
    int selected_lag   = 0;
    int best_adj_r2_lag = 0;
    int best_mae_lag    = 0;

    bool rules_disagree() const
    {
        return best_adj_r2_lag != best_mae_lag;
    }
    const LagMetrics& at_lag(int lag) const;
};

/// Ties within this tolerance go to the smaller lag.
constexpr double lag_tie_tolerance = 1e-12;

/// Fits the nowcast model at every lag in [0, max_lag] over the same dependent window.
/// Lags whose design fails are kept as infeasible rows; throws AllLagsInfeasible if none fit.
LagSweepResult sweep(const DailySeries& target, const DailySeries& predictor, const DateWindow& window,
                     int max_lag = 10, SelectionRule rule = SelectionRule::Combined,
                     const NowcastOptions& options = {});

struct SweepRow {
    std::string predictor;
    int lag = 0;
    std::string metric;
    std::optional<double> value;
    std::string reason;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Metric names available to emit_sweep_table.
inline const std::vector<std::string> default_sweep_metrics{"adj_r_squared", "mae_log"};
inline const std::vector<std::string> all_sweep_metrics{"adj_r_squared", "mae_log", "mape_original", "r_squared"};

/// Tidy long-format rows ordered by lag, then metric name.
std::vector<SweepRow> emit_sweep_table(const LagSweepResult& result,
                                       const std::vector<std::string>& metrics = default_sweep_metrics);

/// CSV with header `predictor,lag,metric,value,reason`, values at 6 significant digits, LF endings.
std::string sweep_table_to_csv(const std::vector<SweepRow>& rows);
/// Inverse of sweep_table_to_csv. Throws Parse.
std::vector<SweepRow> parse_sweep_csv(const std::string& text);

std::string render_sweep_text(const LagSweepResult& result);

} // namespace epinowcast

#endif // EPINOWCAST_LAG_SWEEP_HPP
