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
#include "epinowcast/series.hpp"
#include "epinowcast/error.hpp"

#include <algorithm>
#include <cmath>

namespace epinowcast
{

namespace
{

void check_finite(const std::string& name, Date d, double value)
{
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::InvalidArgument, "non-finite value in series '" + name + "' on " + format_iso_date(d), d,
                    name);
    }
}

// Half away from zero, with ratios within 1e-9 of a .5 boundary treated as exact halves so
// that rescaling the input cannot flip a rounding decision through representation error.
double round_half_away(double x)
{
    double lower = std::floor(x);
    if (std::abs(x - (lower + 0.5)) < 1e-9) {
        return x >= 0.0 ? lower + 1.0 : lower;
    }
    return std::round(x);
}

} // namespace

DailySeries::DailySeries(std::string source_name, Map observations)
    : m_name(std::move(source_name))
    , m_values(std::move(observations))
{
    for (const auto& [d, v] : m_values) {
        check_finite(m_name, d, v);
    }
}

std::optional<double> DailySeries::at(Date d) const
{
    auto it = m_values.find(d);
    if (it == m_values.end()) {
        return std::nullopt;
    }
    return it->second;
}

Date DailySeries::first_date() const
{
    if (m_values.empty()) {
        throw Error(ErrorCode::InvalidArgument, "series '" + m_name + "' is empty");
    }
    return m_values.begin()->first;
}

Date DailySeries::last_date() const
{
    if (m_values.empty()) {
        throw Error(ErrorCode::InvalidArgument, "series '" + m_name + "' is empty");
    }
    return m_values.rbegin()->first;
}

void DailySeries::insert(Date d, double value)
{
    check_finite(m_name, d, value);
    auto [it, inserted] = m_values.emplace(d, value);
    if (!inserted) {
        throw Error(ErrorCode::DuplicateDate, "duplicate date " + format_iso_date(d) + " in series '" + m_name + "'", d,
                    m_name);
    }
}

std::vector<double> DailySeries::values() const
{
    std::vector<double> out;
    out.reserve(m_values.size());
    for (const auto& entry : m_values) {
        out.push_back(entry.second);
    }
    return out;
}

bool DailySeries::has_negative() const
{
    return std::any_of(m_values.begin(), m_values.end(), [](const auto& e) {
        return e.second < 0.0;
    });
}

DailySeries lag(const DailySeries& s, int k)
{
    if (k < 0) {
        throw Error(ErrorCode::InvalidArgument, "lag must be non-negative, got " + std::to_string(k));
    }
    if (k == 0) {
        return s;
    }
    DailySeries::Map shifted;
    for (const auto& [d, v] : s.observations()) {
        shifted.emplace_hint(shifted.end(), add_days(d, k), v);
    }
    return DailySeries(s.name() + "_lag" + std::to_string(k), std::move(shifted));
}

AlignedTable align(std::span<const DailySeries> series, const DateWindow& window)
{
    AlignedTable table;
    table.columns.resize(series.size());
    for (const auto& s : series) {
        table.names.push_back(s.name());
    }

    for (Date d = window.start; d <= window.end; d = add_days(d, 1)) {
        bool complete = std::all_of(series.begin(), series.end(), [d](const DailySeries& s) {
            return s.contains(d);
        });
        if (!complete) {
            continue;
        }
        table.dates.push_back(d);
        table.weekend.push_back(is_weekend(d));
        for (std::size_t j = 0; j < series.size(); ++j) {
            table.columns[j].push_back(*series[j].at(d));
        }
    }

    if (table.dates.empty()) {
        throw Error(ErrorCode::EmptyIntersection, "no date in " + format_iso_date(window.start) + ".." +
                                                      format_iso_date(window.end) + " is present in every series");
    }
    return table;
}

DailySeries index_to_100(const DailySeries& s)
{
    if (s.empty()) {
        throw Error(ErrorCode::AllZero, "cannot index an empty series", std::nullopt, s.name());
    }
    double max_value = 0.0;
    for (const auto& entry : s.observations()) {
        max_value = std::max(max_value, entry.second);
    }
    if (max_value <= 0.0) {
        throw Error(ErrorCode::AllZero, "series '" + s.name() + "' has no positive value to index against",
                    std::nullopt, s.name());
    }

    DailySeries::Map indexed;
    for (const auto& [d, v] : s.observations()) {
        double points = v == max_value ? 100.0 : round_half_away(100.0 * v / max_value);
        indexed.emplace_hint(indexed.end(), d, points);
    }
    return DailySeries(s.name(), std::move(indexed));
}

DifferencedSeries cumulative_to_daily(const DailySeries& cumulative)
{
    DifferencedSeries out{DailySeries(cumulative.name()), {}};
    const auto& obs = cumulative.observations();
    if (obs.empty()) {
        return out;
    }
    auto prev = obs.begin();
    for (auto it = std::next(prev); it != obs.end(); prev = it, ++it) {
        double diff = it->second - prev->second;
        if (diff < 0.0) {
            out.negative_dates.push_back(it->first);
        }
        out.daily.insert(it->first, diff);
    }
    return out;
}

} // namespace epinowcast
