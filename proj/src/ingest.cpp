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
#include "epinowcast/ingest.hpp"
#include "epinowcast/csv.hpp"
#include "epinowcast/error.hpp"

#include <cmath>

namespace epinowcast
{

namespace
{

Error parse_error(std::size_t line, const std::string& reason)
{
    return Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + reason);
}

} // namespace

DailySeries parse_long_daily(std::string_view text, std::string source_name)
{
    if (text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }
    auto lines = csv::split_lines(text);
    if (lines.empty()) {
        throw parse_error(1, "missing header 'date,value'");
    }
    if (lines.front() != "date,value") {
        throw parse_error(1, "expected header 'date,value', got '" + std::string(lines.front()) + "'");
    }

    DailySeries series(std::move(source_name));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (lines[i].empty()) {
            continue;
        }
        auto fields = csv::split_fields(lines[i]);
        if (!fields || fields->size() != 2) {
            throw parse_error(line_no, "expected 2 fields 'date,value'");
        }
        auto date = parse_iso_date((*fields)[0]);
        if (!date) {
            throw parse_error(line_no, "invalid date '" + (*fields)[0] + "'");
        }
        auto value = csv::parse_number((*fields)[1]);
        if (!value || !std::isfinite(*value)) {
            throw parse_error(line_no, "invalid value '" + (*fields)[1] + "'");
        }
        if (*value < 0.0) {
            throw Error(ErrorCode::NegativeValue,
                        "line " + std::to_string(line_no) + ": negative value on " + format_iso_date(*date), *date,
                        series.name());
        }
        series.insert(*date, *value);
    }
    return series;
}

DailySeries load_long_daily(const std::string& path, std::string source_name)
{
    return parse_long_daily(csv::read_file(path), std::move(source_name));
}

std::string emit_long_daily(const DailySeries& series)
{
    std::string out = "date,value\n";
    for (const auto& [d, v] : series.observations()) {
        out += format_iso_date(d) + "," + csv::format_shortest(v) + "\n";
    }
    return out;
}

DailySeries parse_jhu_wide_totals(std::string_view text, const std::string& country)
{
    if (text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }
    auto lines = csv::split_lines(text);
    if (lines.empty()) {
        throw parse_error(1, "empty file");
    }
    auto header = csv::split_fields(lines.front());
    if (!header || header->size() < 4 || (*header)[0] != "Province/State" || (*header)[1] != "Country/Region" ||
        (*header)[2] != "Lat" || (*header)[3] != "Long") {
        throw parse_error(1, "expected 'Province/State,Country/Region,Lat,Long' followed by date columns");
    }
    std::vector<Date> dates;
    for (std::size_t j = 4; j < header->size(); ++j) {
        auto d = parse_us_short_date((*header)[j]);
        if (!d) {
            throw parse_error(1, "invalid date column '" + (*header)[j] + "'");
        }
        if (!dates.empty() && !(dates.back() < *d)) {
            throw parse_error(1, "date columns are not strictly increasing at '" + (*header)[j] + "'");
        }
        dates.push_back(*d);
    }

    std::vector<double> totals(dates.size(), 0.0);
    bool found = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) {
            continue;
        }
        auto fields = csv::split_fields(lines[i]);
        if (!fields || fields->size() != header->size()) {
            throw parse_error(i + 1, "expected " + std::to_string(header->size()) + " fields");
        }
        if ((*fields)[1] != country) {
            continue;
        }
        found = true;
        for (std::size_t j = 0; j < dates.size(); ++j) {
            auto v = csv::parse_number((*fields)[j + 4]);
            if (!v || !std::isfinite(*v)) {
                throw parse_error(i + 1, "invalid count '" + (*fields)[j + 4] + "'");
            }
            totals[j] += *v;
        }
    }
    if (!found) {
        throw Error(ErrorCode::CountryNotFound, "country '" + country + "' not found");
    }

    DailySeries cumulative("jhu");
    for (std::size_t j = 0; j < dates.size(); ++j) {
        cumulative.insert(dates[j], totals[j]);
    }
    return cumulative;
}

DifferencedSeries parse_jhu_wide_cumulative(std::string_view text, const std::string& country)
{
    return cumulative_to_daily(parse_jhu_wide_totals(text, country));
}

DifferencedSeries load_jhu_wide_cumulative(const std::string& path, const std::string& country)
{
    return parse_jhu_wide_cumulative(csv::read_file(path), country);
}

const DailySeries& EmbeddedFixture::by_name(std::string_view name) const
{
    if (name == "rki") {
        return rki;
    }
    if (name == "jhu") {
        return jhu;
    }
    if (name == "google") {
        return google;
    }
    if (name == "twitter") {
        return twitter;
    }
    throw Error(ErrorCode::InvalidArgument,
                "unknown fixture series '" + std::string(name) + "' (expected rki, jhu, google or twitter)");
}

std::uint64_t fixture_checksum(std::string_view table)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : table) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

EmbeddedFixture parse_fixture_table(std::string_view table, std::uint64_t expected_checksum)
{
    if (fixture_checksum(table) != expected_checksum) {
        throw Error(ErrorCode::CorruptFixture, "embedded dataset checksum mismatch");
    }
    EmbeddedFixture fx{DailySeries("rki"), DailySeries("jhu"), DailySeries("google"), DailySeries("twitter"), {}};
    DailySeries* columns[] = {&fx.rki, &fx.jhu, &fx.google, &fx.twitter};
    auto lines             = csv::split_lines(table);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto fields = csv::split_fields(lines[i]);
        auto date   = fields && fields->size() == 6 ? parse_iso_date((*fields)[0]) : std::nullopt;
        if (!date) {
            throw Error(ErrorCode::CorruptFixture, "embedded dataset row " + std::to_string(i + 1) + " is malformed");
        }
        fx.weekend[*date] = (*fields)[1] == "1";
        for (std::size_t j = 0; j < 4; ++j) {
            const std::string& cell = (*fields)[j + 2];
            if (cell.empty()) {
                continue;
            }
            auto v = csv::parse_number(cell);
            if (!v) {
                throw Error(ErrorCode::CorruptFixture, "embedded dataset row " + std::to_string(i + 1) +
                                                           " has a malformed value");
            }
            columns[j]->insert(*date, *v);
        }
    }
    return fx;
}

const EmbeddedFixture& load_fixture()
{
    static const EmbeddedFixture fixture = parse_fixture_table(fixture_table(), expected_fixture_checksum);
    return fixture;
}

} // namespace epinowcast
