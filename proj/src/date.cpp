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
#include "epinowcast/date.hpp"
#include "epinowcast/error.hpp"

#include <charconv>
#include <cstdio>

namespace epinowcast
{

namespace
{

std::optional<int> parse_digits(std::string_view text, std::size_t min_len, std::size_t max_len)
{
    if (text.size() < min_len || text.size() > max_len) {
        return std::nullopt;
    }
    int value     = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

std::optional<Date> make_valid(int y, int m, int d)
{
    if (m < 1 || m > 12 || d < 1 || d > 31) {
        return std::nullopt;
    }
    Date date = make_date(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
    if (!date.ok()) {
        return std::nullopt;
    }
    return date;
}

} // namespace

bool is_weekend(Date d)
{
    const std::chrono::weekday wd{std::chrono::sys_days{d}};
    return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

std::optional<Date> parse_iso_date(std::string_view text)
{
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return std::nullopt;
    }
    auto y = parse_digits(text.substr(0, 4), 4, 4);
    auto m = parse_digits(text.substr(5, 2), 2, 2);
    auto d = parse_digits(text.substr(8, 2), 2, 2);
    if (!y || !m || !d) {
        return std::nullopt;
    }
    return make_valid(*y, *m, *d);
}

std::optional<Date> parse_us_short_date(std::string_view text)
{
    auto first = text.find('/');
    if (first == std::string_view::npos) {
        return std::nullopt;
    }
    auto second = text.find('/', first + 1);
    if (second == std::string_view::npos) {
        return std::nullopt;
    }
    auto m = parse_digits(text.substr(0, first), 1, 2);
    auto d = parse_digits(text.substr(first + 1, second - first - 1), 1, 2);
    auto y = parse_digits(text.substr(second + 1), 2, 2);
    if (!y || !m || !d) {
        return std::nullopt;
    }
    return make_valid(2000 + *y, *m, *d);
}

std::string format_iso_date(Date d)
{
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                  static_cast<unsigned>(d.day()));
    return buf;
}

DateWindow DateWindow::checked(Date start, Date end)
{
    if (end < start) {
        throw Error(ErrorCode::InvalidArgument,
                    "window start " + format_iso_date(start) + " is after end " + format_iso_date(end));
    }
    return DateWindow{start, end};
}

const char* error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument:
        return "InvalidArgument";
    case ErrorCode::Io:
        return "IoError";
    case ErrorCode::Parse:
        return "ParseError";
    case ErrorCode::DuplicateDate:
        return "DuplicateDate";
    case ErrorCode::NegativeValue:
        return "NegativeValue";
    case ErrorCode::MissingValue:
        return "MissingValue";
    case ErrorCode::NonPositiveValue:
        return "NonPositiveValue";
    case ErrorCode::EmptyIntersection:
        return "EmptyIntersection";
    case ErrorCode::AllZero:
        return "AllZero";
    case ErrorCode::RankDeficient:
        return "RankDeficient";
    case ErrorCode::TooFewObservations:
        return "TooFewObservations";
    case ErrorCode::CountryNotFound:
        return "CountryNotFound";
    case ErrorCode::CorruptFixture:
        return "CorruptFixture";
    case ErrorCode::SnapshotNotFound:
        return "SnapshotNotFound";
    case ErrorCode::MissingDate:
        return "MissingDate";
    case ErrorCode::EmptyGroup:
        return "EmptyGroup";
    case ErrorCode::AllLagsInfeasible:
        return "AllLagsInfeasible";
    }
    return "Unknown";
}

} // namespace epinowcast
