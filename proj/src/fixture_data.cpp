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

namespace epinowcast
{

// Germany, daily new confirmed infections (RKI, JHU; retrieved 2020-04-05) and daily
// Google Trends / Twitter indices for "corona". Columns: date, weekend flag, rki, jhu,
// google, twitter. A blank cell is a missing observation.
namespace
{
constexpr char table[] = R"(
2020-01-19,1,0,0,0,
2020-01-20,0,0,0,0,0
2020-01-21,0,0,0,0,0
2020-01-22,0,0,0,0,0
2020-01-23,0,0,0,0,0
2020-01-24,0,0,0,1,1
2020-01-25,1,0,0,1,1
2020-01-26,1,0,0,1,2
2020-01-27,0,0,0,2,2
2020-01-28,0,0,0,4,5
2020-01-29,0,0,0,3,5
2020-01-30,0,1,0,3,4
2020-01-31,0,1,1,3,7
2020-02-01,1,0,0,3,3
2020-02-02,1,0,0,3,2
2020-02-03,0,0,0,2,2
2020-02-04,0,1,0,2,2
2020-02-05,0,0,0,2,1
2020-02-06,0,0,0,2,1
2020-02-07,0,0,0,2,1
2020-02-08,1,0,0,1,1
2020-02-09,1,0,0,1,1
2020-02-10,0,0,0,1,1
2020-02-11,0,0,0,1,1
2020-02-12,0,0,0,1,1
2020-02-13,0,0,0,2,1
2020-02-14,0,0,0,1,1
2020-02-15,1,0,0,2,1
2020-02-16,1,0,0,1,1
2020-02-17,0,0,0,1,1
2020-02-18,0,0,0,1,1
2020-02-19,0,0,0,1,1
2020-02-20,0,0,0,1,1
2020-02-21,0,0,0,1,1
2020-02-22,1,1,0,2,1
2020-02-23,1,10,0,4,2
2020-02-24,0,0,0,6,4
2020-02-25,0,1,1,10,8
2020-02-26,0,4,10,19,17
2020-02-27,0,21,19,22,22
2020-02-28,0,37,2,27,26
2020-02-29,1,17,31,23,23
2020-03-01,1,32,51,22,16
2020-03-02,0,35,29,23,20
2020-03-03,0,52,37,22,21
2020-03-04,0,115,66,23,19
2020-03-05,0,138,220,25,18
2020-03-06,0,106,188,25,19
2020-03-07,1,104,129,20,15
2020-03-08,1,45,241,27,16
2020-03-09,0,194,136,32,31
2020-03-10,0,353,281,39,45
2020-03-11,0,459,451,51,61
2020-03-12,0,626,170,76,83
2020-03-13,0,848,1597,100,100
2020-03-14,1,832,910,95,74
2020-03-15,1,592,1210,94,72
2020-03-16,0,1382,1477,97,85
2020-03-17,0,1966,1985,91,90
2020-03-18,0,2015,3070,85,90
2020-03-19,0,2319,2993,85,81
2020-03-20,0,2257,4528,86,80
2020-03-21,1,1605,2365,85,62
2020-03-22,1,1262,2660,90,62
2020-03-23,0,2129,4183,70,59
2020-03-24,0,2290,3930,64,52
2020-03-25,0,2552,4337,61,54
2020-03-26,0,2874,6615,57,25
2020-03-27,0,2949,6933,58,25
2020-03-28,1,2212,6824,60,37
2020-03-29,1,1592,4400,,
2020-03-30,0,2032,4790,,
2020-03-31,0,2748,4923,,
2020-04-01,0,2891,6064,,
2020-04-02,0,2759,6922,,
2020-04-03,0,2053,6365,,
2020-04-04,1,448,4933,,
)";
} // namespace

std::string_view fixture_table()
{
    // Skip the newline that follows the raw-string opening.
    return std::string_view(table + 1, sizeof(table) - 2);
}

const std::uint64_t expected_fixture_checksum = 0x99ddcb5c55f801ccULL;

} // namespace epinowcast
