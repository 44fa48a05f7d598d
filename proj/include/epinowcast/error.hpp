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
#ifndef EPINOWCAST_ERROR_HPP
#define EPINOWCAST_ERROR_HPP

#include "epinowcast/date.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace epinowcast
{

/// Domain error categories. The C API maps these one-to-one onto status codes.
enum class ErrorCode
{
    InvalidArgument,
    Io,
    Parse,
    DuplicateDate,
    NegativeValue,
    MissingValue,
    NonPositiveValue,
    EmptyIntersection,
    AllZero,
    RankDeficient,
    TooFewObservations,
    CountryNotFound,
    CorruptFixture,
    SnapshotNotFound,
    MissingDate,
    EmptyGroup,
    AllLagsInfeasible,
};

/// Stable CamelCase name used in structured error output, e.g. "NonPositiveValue".
const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& message, std::optional<Date> date = {}, std::string source = {})
        : std::runtime_error(message)
        , m_code(code)
        , m_date(date)
        , m_source(std::move(source))
    {
    }

    ErrorCode code() const
    {
        return m_code;
    }
    /// Offending date, when the error is tied to one observation.
    const std::optional<Date>& date() const
    {
        return m_date;
    }
    /// Offending series name, empty if not applicable.
    const std::string& source() const
    {
        return m_source;
    }

private:
    ErrorCode m_code;
    std::optional<Date> m_date;
    std::string m_source;
};

} // namespace epinowcast

#endif // EPINOWCAST_ERROR_HPP
