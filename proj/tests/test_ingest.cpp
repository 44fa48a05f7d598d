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
#include "epinowcast/csv.hpp"
#include "epinowcast/ingest.hpp"
#include "test_util.hpp"

#include <cmath>
#include <random>

using namespace epinowcast;

namespace
{

const char* jhu_header = "Province/State,Country/Region,Lat,Long";

} // namespace

TEST_CASE("LongDaily.parseExamples")
{
    auto s = parse_long_daily("date,value\n2020-03-13,848", "rki");
    CHECK_EQ(s.name(), "rki");
    CHECK_EQ(s.size(), 1u);
    CHECK_EQ(s.at(make_date(2020, 3, 13)), 848.0);

    CHECK(parse_long_daily("date,value\n", "x").empty());
    CHECK(parse_long_daily("date,value", "x").empty());

    auto crlf = parse_long_daily("\xEF\xBB\xBF" "date,value\r\n2020-03-14,1.5\r\n2020-03-13,2\r\n", "x");
    CHECK_EQ(crlf.values(), std::vector<double>{2, 1.5});
    CHECK_EQ(crlf.first_date(), make_date(2020, 3, 13));
}

TEST_CASE("LongDaily.parseErrors")
{
    EPN_CHECK_THROWS_CODE(parse_long_daily("date,value\n2020-03-13,1\n2020-03-13,2\n", "x"),
                          ErrorCode::DuplicateDate);
    auto neg = test::catch_error([] {
        parse_long_daily("date,value\n2020-03-13,-1\n", "x");
    });
    REQUIRE(neg);
    CHECK_EQ(neg->code(), ErrorCode::NegativeValue);
    CHECK_EQ(neg->date(), make_date(2020, 3, 13));

    EPN_CHECK_THROWS_CODE(parse_long_daily("", "x"), ErrorCode::Parse);
    EPN_CHECK_THROWS_CODE(parse_long_daily("day,value\n", "x"), ErrorCode::Parse);
    EPN_CHECK_THROWS_CODE(parse_long_daily("date,value,extra\n", "x"), ErrorCode::Parse);
    EPN_CHECK_THROWS_CODE(parse_long_daily("date,value\n2020-03-13,1,2\n", "x"), ErrorCode::Parse);
    EPN_CHECK_THROWS_CODE(parse_long_daily("date,value\n2020-03-13,\"1,000\"\n", "x"), ErrorCode::Parse);
    EPN_CHECK_THROWS_CODE(parse_long_daily("date,value\n03/13/2020,1\n", "x"), ErrorCode::Parse);
    EPN_CHECK_THROWS_CODE(parse_long_daily("date,value\n2020-03-13,abc\n", "x"), ErrorCode::Parse);
    EPN_CHECK_THROWS_CODE(parse_long_daily("date,value\n2020-03-13,nan\n", "x"), ErrorCode::Parse);
    EPN_CHECK_THROWS_CODE(parse_long_daily("date,value\n2020-03-13,inf\n", "x"), ErrorCode::Parse);
    EPN_CHECK_THROWS_CODE(parse_long_daily("date,value\n2020-03-13\n", "x"), ErrorCode::Parse);

    auto err = test::catch_error([] {
        parse_long_daily("date,value\n2020-03-13,1\n2020-03-14,x\n", "x");
    });
    REQUIRE(err);
    CHECK(std::string(err->what()).find("line 3") != std::string::npos);
}

TEST_CASE("LongDaily.roundTripProperty")
{
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> v(0.0, 1e7);
    std::uniform_int_distribution<int> gap(1, 9), len(0, 60), kind(0, 2);
    for (int trial = 0; trial < 200; ++trial) {
        DailySeries s("x");
        Date d = make_date(2019, 12, 1);
        for (int i = 0, n = len(rng); i < n; ++i) {
            d = add_days(d, gap(rng));
            double x = v(rng);
            if (kind(rng) == 0) {
                x = std::floor(x);
            }
            else if (kind(rng) == 1) {
                x = std::ldexp(x, -40);
            }
            s.insert(d, x);
        }
        auto text = emit_long_daily(s);
        CHECK(text.find('\r') == std::string::npos);
        auto back = parse_long_daily(text, "x");
        CHECK_EQ(back, s);
        CHECK_EQ(emit_long_daily(back), text);
    }
    CHECK_EQ(emit_long_daily(parse_long_daily("date,value\n2020-03-13,848\n", "x")), "date,value\n2020-03-13,848\n");
}

TEST_CASE("LongDaily.fileIo")
{
    test::TempDir dir("ingest");
    csv::write_file(dir.file("a.csv"), "date,value\n2020-01-01,3\n");
    CHECK_EQ(load_long_daily(dir.file("a.csv"), "a").at(make_date(2020, 1, 1)), 3.0);
    EPN_CHECK_THROWS_CODE(load_long_daily(dir.file("missing.csv"), "a"), ErrorCode::Io);
}

TEST_CASE("JhuWide.singleCountry")
{
    std::string text = std::string(jhu_header) + ",3/30/20,3/31/20\n,Germany,51.0,9.0,57298,62095\n";
    auto out         = parse_jhu_wide_cumulative(text, "Germany");
    CHECK_EQ(out.daily.size(), 1u);
    CHECK_EQ(out.daily.at(make_date(2020, 3, 31)), 4797.0);
    CHECK(out.negative_dates.empty());

    std::string one = std::string(jhu_header) + ",3/30/20\n,Germany,51.0,9.0,57298\n";
    CHECK(parse_jhu_wide_cumulative(one, "Germany").daily.empty());

    EPN_CHECK_THROWS_CODE(parse_jhu_wide_cumulative(text, "France"), ErrorCode::CountryNotFound);
    EPN_CHECK_THROWS_CODE(parse_jhu_wide_cumulative("a,b,c\n", "Germany"), ErrorCode::Parse);
    EPN_CHECK_THROWS_CODE(parse_jhu_wide_cumulative(std::string(jhu_header) + ",3/30/20\n,Germany,51,9,x\n",
                                                    "Germany"),
                          ErrorCode::Parse);
    EPN_CHECK_THROWS_CODE(parse_jhu_wide_cumulative(std::string(jhu_header) + ",2020-03-30\n,Germany,51,9,1\n",
                                                    "Germany"),
                          ErrorCode::Parse);
}

TEST_CASE("JhuWide.provincesSummedBeforeDifferencing")
{
    std::string text = std::string(jhu_header) +
                       ",3/1/20,3/2/20,3/3/20,3/4/20\n"
                       "North,Atlantis,0,0,1,4,4,9\n"
                       "\"South, Upper\",Atlantis,0,0,10,12,11,20\n"
                       ",Elsewhere,0,0,5,5,5,5\n";
    auto summed = parse_jhu_wide_cumulative(text, "Atlantis");
    CHECK_EQ(summed.daily.values(), std::vector<double>{5, -1, 14});
    REQUIRE_EQ(summed.negative_dates.size(), 1u);
    CHECK_EQ(summed.negative_dates[0], make_date(2020, 3, 3));

    // difference-after-sum equals sum-of-differences
    auto north = parse_jhu_wide_cumulative(std::string(jhu_header) + ",3/1/20,3/2/20,3/3/20,3/4/20\n"
                                                                    "North,Atlantis,0,0,1,4,4,9\n",
                                           "Atlantis");
    auto south = parse_jhu_wide_cumulative(std::string(jhu_header) + ",3/1/20,3/2/20,3/3/20,3/4/20\n"
                                                                    "South,Atlantis,0,0,10,12,11,20\n",
                                           "Atlantis");
    for (const auto& [d, v] : summed.daily.observations()) {
        CHECK_EQ(v, *north.daily.at(d) + *south.daily.at(d));
    }

    auto totals = parse_jhu_wide_totals(text, "Atlantis");
    CHECK_EQ(totals.values(), std::vector<double>{11, 16, 15, 29});
}

TEST_CASE("Fixture.spotValues")
{
    const auto& fx = load_fixture();
    CHECK_EQ(fx.rki.at(make_date(2020, 3, 13)), 848.0);
    CHECK_EQ(fx.rki.at(make_date(2020, 3, 28)), 2212.0);
    CHECK_EQ(fx.jhu.at(make_date(2020, 3, 26)), 6615.0);
    CHECK_EQ(fx.google.at(make_date(2020, 3, 13)), 100.0);
    CHECK_FALSE(fx.twitter.contains(make_date(2020, 1, 19)));
    CHECK(fx.twitter.contains(make_date(2020, 1, 20)));

    CHECK_EQ(fx.rki.first_date(), make_date(2020, 1, 19));
    CHECK_EQ(fx.rki.last_date(), make_date(2020, 4, 4));
    CHECK_EQ(fx.rki.size(), 77u);
    CHECK_EQ(fx.jhu.size(), 77u);
    CHECK_EQ(fx.google.last_date(), make_date(2020, 3, 28));
    CHECK_EQ(fx.twitter.last_date(), make_date(2020, 3, 28));
    double google_max = 0;
    for (double v : fx.google.values()) {
        google_max = std::max(google_max, v);
    }
    CHECK_EQ(google_max, 100.0);

    CHECK_EQ(&fx.by_name("rki"), &fx.rki);
    CHECK_EQ(&fx.by_name("twitter"), &fx.twitter);
    EPN_CHECK_THROWS_CODE(fx.by_name("facebook"), ErrorCode::InvalidArgument);
    CHECK_EQ(&load_fixture(), &fx);
}

TEST_CASE("Fixture.checksumGuardsContent")
{
    auto table = std::string(fixture_table());
    CHECK_EQ(fixture_checksum(table), expected_fixture_checksum);
    auto pos = table.find("848");
    REQUIRE(pos != std::string::npos);
    table[pos] = '9';
    CHECK_NE(fixture_checksum(table), expected_fixture_checksum);
    EPN_CHECK_THROWS_CODE(parse_fixture_table(table, expected_fixture_checksum), ErrorCode::CorruptFixture);
    // a self-consistent checksum parses
    CHECK_EQ(parse_fixture_table(table, fixture_checksum(table)).rki.at(make_date(2020, 3, 13)), 948.0);
}

TEST_CASE("Csv.helpers")
{
    CHECK_EQ(csv::split_lines("a\r\nb\nc").size(), 3u);
    auto f = csv::split_fields("\"a,b\",c,\"d\"\"e\"");
    REQUIRE(f);
    CHECK_EQ(*f, std::vector<std::string>{"a,b", "c", "d\"e"});
    CHECK_FALSE(csv::split_fields("\"open,x").has_value());
    CHECK_EQ(csv::quote("a,b"), "\"a,b\"");
    CHECK_EQ(csv::quote("plain"), "plain");
    CHECK_EQ(csv::parse_number("1e3"), 1000.0);
    CHECK_FALSE(csv::parse_number("+1").has_value());
    CHECK_FALSE(csv::parse_number("1 ").has_value());
    CHECK_FALSE(csv::parse_number("").has_value());
    CHECK_EQ(csv::format_shortest(0.1), "0.1");
    CHECK_EQ(csv::format_6g(0.7995123456), "0.799512");
}
