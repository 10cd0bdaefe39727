/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace crowdweb {

/// A local calendar date.
using Date = std::chrono::sys_days;

/// Seconds since the epoch. Used both for UTC instants and for wall-clock
/// local times (a local time is a UTC instant shifted by the record's offset).
using Timestamp = std::chrono::sys_seconds;

/// ISO "YYYY-MM-DD".
std::string format_date(Date date);
/// Parses ISO "YYYY-MM-DD"; throws ArgumentError on anything else.
Date parse_date(std::string_view text);

/// Formats as "Tue Apr 03 18:00:09 +0000 2012".
std::string format_utc_time(Timestamp time);
/// Parses "Tue Apr 03 18:00:09 +0000 2012". The numeric zone is applied, the
/// weekday must match the date. Throws FormatError.
Timestamp parse_utc_time(std::string_view text);

inline Date date_of(Timestamp time) { return std::chrono::floor<std::chrono::days>(time); }

/// Minutes elapsed since local midnight.
inline int minute_of_day(Timestamp time) {
  return static_cast<int>(std::chrono::duration_cast<std::chrono::minutes>(time - date_of(time)).count());
}

}  // namespace crowdweb
