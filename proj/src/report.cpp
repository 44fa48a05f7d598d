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
#include "epinowcast/report.hpp"
#include "epinowcast/csv.hpp"
#include "epinowcast/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace epinowcast
{

using json = nlohmann::ordered_json;

namespace
{

json number(double v)
{
    if (!std::isfinite(v)) {
        return nullptr;
    }
    return v;
}

double read_number(const json& j, const char* key)
{
    const json& v = j.at(key);
    if (v.is_null()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return v.get<double>();
}

Date read_date(const json& j, const char* key)
{
    auto text = j.at(key).get<std::string>();
    auto d    = parse_iso_date(text);
    if (!d) {
        throw Error(ErrorCode::Parse, std::string("invalid date for '") + key + "': " + text);
    }
    return *d;
}

std::string fixed3(double v)
{
    if (std::isnan(v)) {
        return "NA";
    }
    if (std::isinf(v)) {
        return v > 0 ? "Inf" : "-Inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string pad_left(const std::string& s, std::size_t width)
{
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width)
{
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

} // namespace

const CoefficientReport& FitReport::coefficient(const std::string& name) const
{
    auto it = std::find_if(coefficients.begin(), coefficients.end(), [&](const CoefficientReport& c) {
        return c.name == name;
    });
    if (it == coefficients.end()) {
        throw Error(ErrorCode::InvalidArgument, "report has no coefficient '" + name + "'");
    }
    return *it;
}

const CoefficientReport& FitReport::slope() const
{
    return coefficient(log_column_name(predictor));
}

double FitReport::weekend_coefficient() const
{
    return weekend_dummy ? coefficient(weekend_name).estimate : 0.0;
}

double FitReport::predict(double predictor_value, Date date) const
{
    return epinowcast::predict(coefficient(intercept_name).estimate, slope().estimate, weekend_coefficient(),
                               smearing_factor, predictor_value, date);
}

FitReport make_report(const NowcastModel& model)
{
    const auto& fit = model.fit;
    FitReport r;
    r.target          = model.spec.target.name();
    r.predictor       = model.spec.predictor.name();
    r.lag_days        = model.spec.lag_days;
    r.weekend_dummy   = model.spec.weekend_dummy;
    r.window          = model.spec.window;
    r.smearing        = model.smearing;
    r.smearing_factor = model.smearing_factor;
    for (std::size_t i = 0; i < fit.k(); ++i) {
        r.coefficients.push_back({fit.names[i], fit.coefficients[i], fit.standard_errors[i], fit.t_stats[i],
                                  fit.p_values[i], ols::stars(fit.p_values[i])});
    }
    r.r2             = fit.r_squared;
    r.adj_r2         = fit.adj_r_squared;
    r.mae_log        = model.mae_log;
    r.mape_original  = model.mape_original;
    r.weekend_effect = model.weekend_effect;
    r.residual_se    = fit.residual_std_error;
    r.f              = fit.f_statistic;
    r.df1            = fit.df_model;
    r.df2            = fit.df_residual;
    r.f_p            = ols::f_upper_p(fit.f_statistic, fit.df_model, fit.df_residual);
    r.n              = static_cast<int>(fit.n());
    return r;
}

std::string to_json(const FitReport& r)
{
    json coefficients = json::object();
    for (const auto& c : r.coefficients) {
        coefficients[c.name] = {{"estimate", number(c.estimate)},
                                {"se", number(c.se)},
                                {"t", number(c.t)},
                                {"p", number(c.p)},
                                {"stars", c.stars}};
    }
    json j = {{"spec",
               {{"target", r.target},
                {"predictor", r.predictor},
                {"lag_days", r.lag_days},
                {"weekend_dummy", r.weekend_dummy},
                {"window", {{"from", format_iso_date(r.window.start)}, {"to", format_iso_date(r.window.end)}}},
                {"smearing", r.smearing}}},
              {"coefficients", coefficients},
              {"r2", number(r.r2)},
              {"adj_r2", number(r.adj_r2)},
              {"mae_log", number(r.mae_log)},
              {"mape_original", number(r.mape_original)},
              {"weekend_effect", number(r.weekend_effect)},
              {"f", {{"value", number(r.f)}, {"df1", r.df1}, {"df2", r.df2}, {"p", number(r.f_p)}}},
              {"n", r.n},
              {"residual_se", number(r.residual_se)},
              {"smearing_factor", number(r.smearing_factor)}};
    return j.dump(2) + "\n";
}

FitReport fit_report_from_json(const std::string& text)
{
    try {
        json j = json::parse(text);
        FitReport r;
        const json& spec = j.at("spec");
        r.target         = spec.at("target").get<std::string>();
        r.predictor      = spec.at("predictor").get<std::string>();
        r.lag_days       = spec.at("lag_days").get<int>();
        r.weekend_dummy  = spec.at("weekend_dummy").get<bool>();
        r.window =
            DateWindow::checked(read_date(spec.at("window"), "from"), read_date(spec.at("window"), "to"));
        r.smearing = spec.value("smearing", false);
        for (const auto& [name, c] : j.at("coefficients").items()) {
            r.coefficients.push_back({name, read_number(c, "estimate"), read_number(c, "se"), read_number(c, "t"),
                                      read_number(c, "p"), c.at("stars").get<std::string>()});
        }
        r.r2             = read_number(j, "r2");
        r.adj_r2         = read_number(j, "adj_r2");
        r.mae_log        = read_number(j, "mae_log");
        r.mape_original  = read_number(j, "mape_original");
        r.weekend_effect = read_number(j, "weekend_effect");
        r.f              = read_number(j.at("f"), "value");
        r.df1            = j.at("f").at("df1").get<int>();
        r.df2            = j.at("f").at("df2").get<int>();
        r.f_p            = j.at("f").contains("p") ? read_number(j.at("f"), "p") : ols::f_upper_p(r.f, r.df1, r.df2);
        r.n              = j.at("n").get<int>();
        r.residual_se    = j.contains("residual_se") ? read_number(j, "residual_se")
                                                     : std::numeric_limits<double>::quiet_NaN();
        r.smearing_factor = j.contains("smearing_factor") ? read_number(j, "smearing_factor") : 1.0;

        // Fail now rather than at predict time.
        r.coefficient(intercept_name);
        r.slope();
        if (r.weekend_dummy) {
            r.coefficient(weekend_name);
        }
        return r;
    }
    catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("invalid fit report: ") + e.what());
    }
    catch (const Error& e) {
        if (e.code() == ErrorCode::Parse) {
            throw;
        }
        throw Error(ErrorCode::Parse, std::string("invalid fit report: ") + e.what());
    }
}

std::string render_text(const FitReport& r, bool styled)
{
    const std::string bold  = styled ? "\x1b[1m" : "";
    const std::string reset = styled ? "\x1b[0m" : "";
    constexpr std::size_t label_width = 34;
    constexpr std::size_t value_width = 14;

    std::string out;
    auto line = [&](const std::string& label, const std::string& value) {
        out += pad_right(label, label_width) + pad_left(value, value_width) + "\n";
    };
    const std::string rule(label_width + value_width, '-');

    out += bold + "Dependent variable: log " + r.target + reset + "\n";
    out += bold + "Predictor: log " + r.predictor + " (lag " + std::to_string(r.lag_days) + " days), window " +
           format_iso_date(r.window.start) + " to " + format_iso_date(r.window.end) + reset + "\n";
    out += rule + "\n";

    // Predictor first and the constant last.
    std::vector<const CoefficientReport*> ordered;
    for (const auto& c : r.coefficients) {
        if (c.name != intercept_name) {
            ordered.push_back(&c);
        }
    }
    for (const auto& c : r.coefficients) {
        if (c.name == intercept_name) {
            ordered.push_back(&c);
        }
    }
    for (const auto* c : ordered) {
        std::string label = c->name == intercept_name ? "Constant" : c->name;
        line(label, fixed3(c->estimate) + pad_right(c->stars, 3));
        line("", "(" + fixed3(c->se) + ")   ");
    }
    out += rule + "\n";
    line("Number of Observations", std::to_string(r.n) + "   ");
    line("R2", fixed3(r.r2) + "   ");
    line("Adjusted R2", fixed3(r.adj_r2) + "   ");
    line("Mean Absolute Error (MAE)", fixed3(r.mae_log) + "   ");
    line("MAPE on original data", fixed3(r.mape_original) + "   ");
    if (r.weekend_dummy) {
        line("Weekend effect", fixed3(r.weekend_effect) + "   ");
    }
    line("Residual Std. Error (df = " + std::to_string(r.df2) + ")", fixed3(r.residual_se) + "   ");
    line("F Statistic (df = " + std::to_string(r.df1) + "; " + std::to_string(r.df2) + ")",
         fixed3(r.f) + pad_right(std::isnan(r.f_p) ? "" : ols::stars(r.f_p), 3));
    out += rule + "\n";
    out += "Note: * p<0.1; ** p<0.05; *** p<0.01\n";
    return out;
}

std::string comparison_to_csv(const RawComparison& comparison)
{
    std::string out = "date,official,alternative,ape,signed_difference\n";
    for (const auto& r : comparison.rows) {
        out += format_iso_date(r.date) + "," + csv::format_shortest(r.official) + "," +
               csv::format_shortest(r.alternative) + "," + csv::format_shortest(r.absolute_percentage_error) + "," +
               csv::format_shortest(r.signed_difference) + "\n";
    }
    return out;
}

std::string comparison_to_json(const RawComparison& comparison, const std::string& official,
                               const std::string& alternative)
{
    json rows = json::array();
    for (const auto& r : comparison.rows) {
        rows.push_back({{"date", format_iso_date(r.date)},
                        {"official", r.official},
                        {"alternative", r.alternative},
                        {"ape", r.absolute_percentage_error},
                        {"signed_difference", r.signed_difference}});
    }
    json j = {{"official", official},
              {"alternative", alternative},
              {"window",
               {{"from", comparison.rows.empty() ? "" : format_iso_date(comparison.rows.front().date)},
                {"to", comparison.rows.empty() ? "" : format_iso_date(comparison.rows.back().date)}}},
              {"n", comparison.rows.size()},
              {"mape", number(comparison.mape)},
              {"rows", rows}};
    return j.dump(2) + "\n";
}

std::string render_comparison_text(const RawComparison& comparison, const std::string& official,
                                   const std::string& alternative)
{
    std::string out = "Raw comparison of '" + alternative + "' against '" + official + "'\n";
    out += "        date   official alternative  signed_diff\n";
    char buf[128];
    for (const auto& r : comparison.rows) {
        std::snprintf(buf, sizeof(buf), "%12s %10.0f %11.0f %11.1f%%\n", format_iso_date(r.date).c_str(), r.official,
                      r.alternative, 100.0 * r.signed_difference);
        out += buf;
    }
    out += "MAPE over " + std::to_string(comparison.rows.size()) + " days: " + fixed3(comparison.mape) + "\n";
    return out;
}

std::string sweep_to_json(const LagSweepResult& result)
{
    json per_lag = json::array();
    for (const auto& m : result.per_lag) {
        json row = {{"lag", m.lag}, {"feasible", m.feasible}};
        if (m.feasible) {
            row["adj_r_squared"] = number(m.adj_r_squared);
            row["mae_log"]       = number(m.mae_log);
            row["mape_original"] = number(m.mape_original);
            row["r_squared"]     = number(m.r_squared);
        }
        else {
            row["reason"] = m.reason;
        }
        per_lag.push_back(std::move(row));
    }
    json j = {{"predictor", result.predictor},
              {"rule", selection_rule_name(result.rule)},
              {"selected_lag", result.selected_lag},
              {"best_adj_r2_lag", result.best_adj_r2_lag},
              {"best_mae_lag", result.best_mae_lag},
              {"rules_disagree", result.rules_disagree()},
              {"per_lag", per_lag}};
    return j.dump(2) + "\n";
}

std::string revision_profile_to_json(const std::vector<RevisionRow>& rows, Date newer, Date older)
{
    json out_rows = json::array();
    for (const auto& r : rows) {
        out_rows.push_back({{"reporting_date", format_iso_date(r.reporting_date)},
                            {"old_value", r.old_value},
                            {"new_value", r.new_value},
                            {"share", r.share ? json(*r.share) : json(nullptr)}});
    }
    json j = {{"newer", format_iso_date(newer)}, {"older", format_iso_date(older)}, {"rows", out_rows}};
    return j.dump(2) + "\n";
}

std::string render_revision_text(const std::vector<RevisionRow>& rows, Date newer, Date older)
{
    std::string out = "Share of each day's total added between " + format_iso_date(older) + " and " +
                      format_iso_date(newer) + "\n";
    out += "reporting_date        old        new    share\n";
    char buf[128];
    for (const auto& r : rows) {
        std::string share = "undefined";
        if (r.share) {
            std::snprintf(buf, sizeof(buf), "%.1f%%", 100.0 * *r.share);
            share = buf;
        }
        std::snprintf(buf, sizeof(buf), "%14s %10.0f %10.0f %8s\n", format_iso_date(r.reporting_date).c_str(),
                      r.old_value, r.new_value, share.c_str());
        out += buf;
    }
    return out;
}

} // namespace epinowcast
