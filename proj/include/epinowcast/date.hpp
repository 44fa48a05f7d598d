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
#ifndef EPINOWCAST_DATE_HPP
#define EPINOWCAST_DATE_HPP

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace epinowcast
{

/// Proleptic Gregorian calendar date without time zone.
using Date = std::chrono::year_month_day;

constexpr Date make_date(int y, unsigned m, unsigned d)
{
    return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

inline Date add_days(Date d, int n)
{
    return Date{std::chrono::sys_days{d} + std::chrono::days{n}};
}

inline int days_between(Date from, Date to)
{
    return static_cast<int>((std::chrono::sys_days{to} - std::chrono::sys_days{from}).count());
}

/// Saturday or Sunday.
bool is_weekend(Date d);

/// Strict YYYY-MM-DD. Returns nullopt for anything else, including impossible dates like 2020-02-30.
std::optional<Date> parse_iso_date(std::string_view text);

/// JHU column header style M/D/YY (years 20xx).
std::optional<Date> parse_us_short_date(std::string_view text);

std::string format_iso_date(Date d);

/// Inclusive calendar window.
struct DateWindow {
    Date start;
    Date end;

    /// Throws Error(InvalidArgument) when start > end.
    static DateWindow checked(Date start, Date end);

    bool contains(Date d) const
    {
        return start <= d && d <= end;
    }
    int length_days() const
    {
        return days_between(start, end) + 1;
    }
};

} // namespace epinowcast

#endif // EPINOWCAST_DATE_HPP
