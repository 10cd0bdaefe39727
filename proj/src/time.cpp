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

#include "crowdweb/time.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "crowdweb/error.hpp"

namespace crowdweb {

namespace {

constexpr std::array<std::string_view, 7> kWeekdays = {"Sun", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat"};
constexpr std::array<std::string_view, 12> kMonths = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                      "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

bool parse_int(std::string_view text, int& value) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

bool all_digits(std::string_view text) {
  for (char c : text)
    if (c < '0' || c > '9') return false;
  return !text.empty();
}

}  // namespace

std::string format_date(Date date) {
  const std::chrono::year_month_day ymd{date};
  char buffer[16];
  std::snprintf(buffer, sizeof buffer, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buffer;
}

Date parse_date(std::string_view text) {
  int y = 0, m = 0, d = 0;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !all_digits(text.substr(0, 4)) ||
      !all_digits(text.substr(5, 2)) || !all_digits(text.substr(8, 2)) || !parse_int(text.substr(0, 4), y) ||
      !parse_int(text.substr(5, 2), m) || !parse_int(text.substr(8, 2), d))
    throw ArgumentError("invalid date '" + std::string(text) + "', expected YYYY-MM-DD");
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw ArgumentError("invalid date '" + std::string(text) + "'");
  return Date{ymd};
}

std::string format_utc_time(Timestamp time) {
  const Date day = date_of(time);
  const std::chrono::year_month_day ymd{day};
  const std::chrono::hh_mm_ss hms{time - day};
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%s %s %02u %02d:%02d:%02d +0000 %04d",
                kWeekdays[std::chrono::weekday{day}.c_encoding()].data(),
                kMonths[static_cast<unsigned>(ymd.month()) - 1].data(), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()), static_cast<int>(ymd.year()));
  return buffer;
}

Timestamp parse_utc_time(std::string_view text) {
  // "Tue Apr 03 18:00:09 +0000 2012"
  const auto fail = [&]() -> Timestamp { throw FormatError("invalid timestamp '" + std::string(text) + "'"); };
  if (text.size() != 30 || text[3] != ' ' || text[7] != ' ' || text[10] != ' ' || text[13] != ':' ||
      text[16] != ':' || text[19] != ' ' || text[25] != ' ')
    return fail();

  std::size_t weekday = 0;
  while (weekday < kWeekdays.size() && kWeekdays[weekday] != text.substr(0, 3)) ++weekday;
  std::size_t month = 0;
  while (month < kMonths.size() && kMonths[month] != text.substr(4, 3)) ++month;
  if (weekday == kWeekdays.size() || month == kMonths.size()) return fail();

  int day = 0, hour = 0, minute = 0, second = 0, zone_h = 0, zone_m = 0, year = 0;
  const std::string_view zone = text.substr(20, 5);
  if (!all_digits(text.substr(8, 2)) || !all_digits(text.substr(11, 2)) || !all_digits(text.substr(14, 2)) ||
      !all_digits(text.substr(17, 2)) || !all_digits(zone.substr(1)) || !all_digits(text.substr(26, 4)))
    return fail();
  parse_int(text.substr(8, 2), day);
  parse_int(text.substr(11, 2), hour);
  parse_int(text.substr(14, 2), minute);
  parse_int(text.substr(17, 2), second);
  parse_int(zone.substr(1, 2), zone_h);
  parse_int(zone.substr(3, 2), zone_m);
  parse_int(text.substr(26, 4), year);
  if ((zone[0] != '+' && zone[0] != '-') || hour > 23 || minute > 59 || second > 59 || zone_m > 59) return fail();

  const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month + 1)},
                                        std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return fail();
  const Date date{ymd};
  if (std::chrono::weekday{date}.c_encoding() != weekday) return fail();

  const std::chrono::minutes zone_offset{(zone_h * 60 + zone_m) * (zone[0] == '-' ? -1 : 1)};
  return Timestamp{date} + std::chrono::hours{hour} + std::chrono::minutes{minute} + std::chrono::seconds{second} -
         zone_offset;
}

}  // namespace crowdweb
