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
#ifndef EPINOWCAST_CSV_HPP
#define EPINOWCAST_CSV_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace epinowcast::csv
{

/// Splits text into lines on LF, dropping a trailing CR from each (CRLF input).
/// A final empty line after the last LF is not returned.
std::vector<std::string_view> split_lines(std::string_view text);

/// RFC 4180 style field splitting with double-quote escaping. Returns nullopt on an unterminated quote.
std::optional<std::vector<std::string>> split_fields(std::string_view line);

/// Quotes a field if it contains a comma, quote, CR or LF.
std::string quote(std::string_view field);

/// Strict decimal parse of the whole string (no thousands separators, no spaces).
std::optional<double> parse_number(std::string_view text);

/// Shortest representation that parses back to the same double.
std::string format_shortest(double value);

/// printf %.6g.
std::string format_6g(double value);

/// Reads a whole file. Throws Error(Io).
std::string read_file(const std::string& path);
/// Throws Error(Io).
void write_file(const std::string& path, std::string_view content);

} // namespace epinowcast::csv

#endif // EPINOWCAST_CSV_HPP
