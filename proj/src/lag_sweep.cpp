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
#include "epinowcast/lag_sweep.hpp"
#include "epinowcast/csv.hpp"
#include "epinowcast/error.hpp"

#include <algorithm>
#include <cstdio>
#include <future>

namespace epinowcast
{

namespace
{

LagMetrics fit_one_lag(const NowcastSpec& base, int lag, const NowcastOptions& options)
{
    LagMetrics m;
    m.lag = lag;
    try {
        NowcastSpec spec = base;
        spec.lag_days    = lag;
        NowcastModel model = fit_nowcast(spec, options);
        m.feasible         = true;
        m.adj_r_squared    = model.fit.adj_r_squared;
        m.mae_log          = model.mae_log;
        m.mape_original    = model.mape_original;
        m.r_squared        = model.fit.r_squared;
    }
    catch (const Error& e) {
        m.feasible = false;
        m.reason   = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    return m;
}

double metric_value(const LagMetrics& m, const std::string& metric)
{
    if (metric == "adj_r_squared") {
        return m.adj_r_squared;
    }
    if (metric == "mae_log") {
        return m.mae_log;
    }
    if (metric == "mape_original") {
        return m.mape_original;
    }
    if (metric == "r_squared") {
        return m.r_squared;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown sweep metric '" + metric + "'");
}

} // namespace

const char* selection_rule_name(SelectionRule rule)
{
    switch (rule) {
    case SelectionRule::MaxAdjR2:
        return "max_adj_r2";
    case SelectionRule::MinMae:
        return "min_mae";
    case SelectionRule::Combined:
        return "combined";
    }
    return "unknown";
}

SelectionRule parse_selection_rule(const std::string& name)
{
    for (auto rule : {SelectionRule::MaxAdjR2, SelectionRule::MinMae, SelectionRule::Combined}) {
        if (name == selection_rule_name(rule)) {
            return rule;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown selection rule '" + name + "'");
}

const LagMetrics& LagSweepResult::at_lag(int lag) const
{
    for (const auto& m : per_lag) {
        if (m.lag == lag) {
            return m;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "lag " + std::to_string(lag) + " not in sweep");
}

LagSweepResult sweep(const DailySeries& target, const DailySeries& predictor, const DateWindow& window, int max_lag,
                     SelectionRule rule, const NowcastOptions& options)
{
    if (max_lag < 0 || max_lag > max_nowcast_lag) {
        throw Error(ErrorCode::InvalidArgument,
                    "max lag must be within [0, " + std::to_string(max_nowcast_lag) + "], got " + std::to_string(max_lag));
    }
    NowcastSpec base;
    base.target    = target;
    base.predictor = predictor;
    base.window    = window;

    // Independent fits; results are collected in lag order so the outcome does not depend on scheduling.
    std::vector<std::future<LagMetrics>> pending;
    for (int lag = 0; lag <= max_lag; ++lag) {
        pending.push_back(std::async(std::launch::async, fit_one_lag, std::cref(base), lag, std::cref(options)));
    }

    LagSweepResult result;
    result.predictor = predictor.name();
    result.rule      = rule;
    for (auto& f : pending) {
        result.per_lag.push_back(f.get());
    }

    const LagMetrics* best_adj = nullptr;
    const LagMetrics* best_mae = nullptr;
    for (const auto& m : result.per_lag) {
        if (!m.feasible) {
            continue;
        }
        if (!best_adj || m.adj_r_squared > best_adj->adj_r_squared + lag_tie_tolerance) {
            best_adj = &m;
        }
        if (!best_mae || m.mae_log < best_mae->mae_log - lag_tie_tolerance) {
            best_mae = &m;
        }
    }
    if (!best_adj) {
        throw Error(ErrorCode::AllLagsInfeasible, "no lag in [0, " + std::to_string(max_lag) +
                                                      "] yields a valid design: " + result.per_lag.front().reason);
    }
    result.best_adj_r2_lag = best_adj->lag;
    result.best_mae_lag    = best_mae->lag;
    result.selected_lag    = rule == SelectionRule::MinMae ? best_mae->lag : best_adj->lag;
    return result;
}

std::vector<SweepRow> emit_sweep_table(const LagSweepResult& result, const std::vector<std::string>& metrics)
{
    std::vector<std::string> sorted = metrics;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<SweepRow> rows;
    for (const auto& m : result.per_lag) {
        for (const auto& metric : sorted) {
            SweepRow row{result.predictor, m.lag, metric, std::nullopt, m.reason};
            if (m.feasible) {
                row.value = metric_value(m, metric);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string sweep_table_to_csv(const std::vector<SweepRow>& rows)
{
    std::string out = "predictor,lag,metric,value,reason\n";
    for (const auto& r : rows) {
        out += csv::quote(r.predictor) + "," + std::to_string(r.lag) + "," + csv::quote(r.metric) + "," +
               (r.value ? csv::format_6g(*r.value) : std::string()) + "," + csv::quote(r.reason) + "\n";
    }
    return out;
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text)
{
    auto lines = csv::split_lines(text);
    if (lines.empty() || lines.front() != "predictor,lag,metric,value,reason") {
        throw Error(ErrorCode::Parse, "sweep table: unexpected header");
    }
    std::vector<SweepRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) {
            continue;
        }
        auto fields = csv::split_fields(lines[i]);
        if (!fields || fields->size() != 5) {
            throw Error(ErrorCode::Parse, "sweep table line " + std::to_string(i + 1) + ": expected 5 fields");
        }
        SweepRow row;
        row.predictor = (*fields)[0];
        auto lag      = csv::parse_number((*fields)[1]);
        if (!lag) {
            throw Error(ErrorCode::Parse, "sweep table line " + std::to_string(i + 1) + ": bad lag");
        }
        row.lag    = static_cast<int>(*lag);
        row.metric = (*fields)[2];
        if (!(*fields)[3].empty()) {
            row.value = csv::parse_number((*fields)[3]);
            if (!row.value) {
                throw Error(ErrorCode::Parse, "sweep table line " + std::to_string(i + 1) + ": bad value");
            }
        }
        row.reason = (*fields)[4];
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_sweep_text(const LagSweepResult& result)
{
    std::string out = "Lag sweep for predictor '" + result.predictor + "' (rule " +
                      selection_rule_name(result.rule) + ")\n";
    out += "  lag   adj_r2      mae   mape_orig       r2\n";
    char buf[160];
    for (const auto& m : result.per_lag) {
        if (m.feasible) {
            std::snprintf(buf, sizeof(buf), "%5d %8.3f %8.3f %11.3f %8.3f%s\n", m.lag, m.adj_r_squared, m.mae_log,
                          m.mape_original, m.r_squared, m.lag == result.selected_lag ? "  <- selected" : "");
            out += buf;
        }
        else {
            std::snprintf(buf, sizeof(buf), "%5d  infeasible: ", m.lag);
            out += buf + m.reason + "\n";
        }
    }
    out += "selected lag: " + std::to_string(result.selected_lag) + "\n";
    if (result.rules_disagree()) {
        out += "note: adjusted R2 peaks at lag " + std::to_string(result.best_adj_r2_lag) + ", MAE is lowest at lag " +
               std::to_string(result.best_mae_lag) + "\n";
    }
    return out;
}

} // namespace epinowcast
