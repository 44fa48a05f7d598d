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
#ifndef EPINOWCAST_INGEST_HPP
#define EPINOWCAST_INGEST_HPP

#include "epinowcast/series.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace epinowcast
{

/// Long daily CSV: header `date,value`, ISO dates, non-negative plain decimals, LF or CRLF.
/// Throws Parse (with line number), DuplicateDate or NegativeValue.
DailySeries parse_long_daily(std::string_view text, std::string source_name);
DailySeries load_long_daily(const std::string& path, std::string source_name);

/// Inverse of parse_long_daily for non-negative series; LF line endings, shortest round-trip numbers.
std::string emit_long_daily(const DailySeries& series);

/// Country total of a JHU wide cumulative file (`Province/State,Country/Region,Lat,Long,M/D/YY...`),
/// summed over provinces. Throws CountryNotFound or Parse.
DailySeries parse_jhu_wide_totals(std::string_view text, const std::string& country);

/// Daily new cases from a JHU wide cumulative file. Negative days are kept and listed.
DifferencedSeries parse_jhu_wide_cumulative(std::string_view text, const std::string& country);
DifferencedSeries load_jhu_wide_cumulative(const std::string& path, const std::string& country);

/// Germany, 2020-01-19 to 2020-04-04: official (RKI) and JHU daily new infections,
/// Google search and Twitter indices for "corona". Index columns end 2020-03-28 and
/// Twitter has no value on 2020-01-19.
struct EmbeddedFixture {
    DailySeries rki;
    DailySeries jhu;
    DailySeries google;
    DailySeries twitter;
    /// The table's own weekend column.
    std::map<Date, bool> weekend;

    /// "rki", "jhu", "google" or "twitter". Throws InvalidArgument.
    const DailySeries& by_name(std::string_view name) const;
};

/// Embedded dataset, verified against its checksum on first use (throws CorruptFixture).
const EmbeddedFixture& load_fixture();

/// The embedded table as `date,weekend,rki,jhu,google,twitter` CSV (blank = missing).
std::string_view fixture_table();
/// FNV-1a 64 of fixture_table().
std::uint64_t fixture_checksum(std::string_view table);
extern const std::uint64_t expected_fixture_checksum;

/// Builds a fixture from table text. Exposed so corruption detection can be exercised.
EmbeddedFixture parse_fixture_table(std::string_view table, std::uint64_t expected_checksum);

} // namespace epinowcast

#endif // EPINOWCAST_INGEST_HPP
