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
#ifndef EPINOWCAST_SERIES_HPP
#define EPINOWCAST_SERIES_HPP

#include "epinowcast/date.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace epinowcast
{

/**
 * Daily observations keyed by calendar date.
 *
 * A date without an entry is missing, which is distinct from an observed zero.
 * Values must be finite. Parsers additionally reject negatives; the only source of
 * negative values is cumulative_to_daily(), which flags them.
 */
class DailySeries
{
public:
    using Map = std::map<Date, double>;

    DailySeries() = default;
    explicit DailySeries(std::string source_name)
        : m_name(std::move(source_name))
    {
    }
    /// Throws Error(InvalidArgument) for non-finite values.
    DailySeries(std::string source_name, Map observations);

    const std::string& name() const
    {
        return m_name;
    }
    const Map& observations() const
    {
        return m_values;
    }
    std::size_t size() const
    {
        return m_values.size();
    }
    bool empty() const
    {
        return m_values.empty();
    }
    std::optional<double> at(Date d) const;
    bool contains(Date d) const
    {
        return m_values.count(d) != 0;
    }
    Date first_date() const;
    Date last_date() const;

    /// Throws Error(DuplicateDate) if d is already present, Error(InvalidArgument) if value is not finite.
    void insert(Date d, double value);

    DailySeries renamed(std::string name) const
    {
        DailySeries copy = *this;
        copy.m_name      = std::move(name);
        return copy;
    }

    std::vector<double> values() const;
    bool has_negative() const;

    friend bool operator==(const DailySeries&, const DailySeries&) = default;

private:
    std::string m_name;
    Map m_values;
};

/// Value at d becomes the value at d + k. Name gains a "_lag<k>" suffix for k > 0.
DailySeries lag(const DailySeries& s, int k);

/// Rows of several series restricted to a window, keeping only dates where every input is present.
struct AlignedTable {
    std::vector<std::string> names;
    std::vector<Date> dates;
    std::vector<bool> weekend;
    /// columns[j][i] is series j on dates[i].
    std::vector<std::vector<double>> columns;

    std::size_t rows() const
    {
        return dates.size();
    }
};

/// Throws Error(EmptyIntersection) if no date in the window has all series present.
AlignedTable align(std::span<const DailySeries> series, const DateWindow& window);

/// Rescale so the maximum maps to 100, rounding half away from zero. Throws Error(AllZero).
DailySeries index_to_100(const DailySeries& s);

struct DifferencedSeries {
    DailySeries daily;
    /// Dates whose difference came out negative (downward revisions upstream).
    std::vector<Date> negative_dates;
};

/// Differences against the previous present date; the first date is dropped.
DifferencedSeries cumulative_to_daily(const DailySeries& cumulative);

} // namespace epinowcast

#endif // EPINOWCAST_SERIES_HPP
