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
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crowdweb/microcell.hpp"
#include "crowdweb/time.hpp"

namespace crowdweb {

/// One raw geo-tagged check-in.
struct CheckIn {
  std::string user_id;
  std::string venue_id;
  std::string category_id;
  std::string category_name;
  double latitude = 0;
  double longitude = 0;
  int tz_offset_minutes = 0;
  Timestamp utc_time{};

  friend bool operator==(const CheckIn&, const CheckIn&) = default;
};

/// A check-in moved to local wall-clock time and abstracted to a place
/// category and a microcell.
struct LocalEvent {
  std::string user_id;
  std::string category;
  std::string cell_id;
  Timestamp local_time{};
  Date day_key{};
  int hour_slot = 0;
  double latitude = 0;
  double longitude = 0;

  friend bool operator==(const LocalEvent&, const LocalEvent&) = default;
};

enum class DatasetFormat { FoursquareTsv };

/// Accepts "foursquare-tsv". Throws ArgumentError otherwise.
DatasetFormat parse_dataset_format(std::string_view tag);

struct ParseResult {
  std::vector<CheckIn> checkins;
  std::size_t line_count = 0;       ///< non-blank lines seen
  std::size_t malformed_count = 0;
  std::size_t first_malformed_line = 0;  ///< 1-based, 0 when none
};

/// Parses tab-separated check-ins. Malformed lines are skipped and counted;
/// more than 10% malformed throws FormatError naming the first bad line.
/// A failed stream throws IoError.
ParseResult parse_checkins(std::istream& input, DatasetFormat format = DatasetFormat::FoursquareTsv);

/// Parses a single line; throws FormatError (line 0) when malformed.
CheckIn parse_checkin_line(std::string_view line);

std::string format_checkin(const CheckIn& checkin);
void write_checkins(std::ostream& output, std::span<const CheckIn> checkins);

/// category_id -> canonical label.
using CategoryMap = std::map<std::string, std::string, std::less<>>;

/// Label per category_id taken from the first trimmed category_name seen.
CategoryMap category_map_from(std::span<const CheckIn> checkins);

/// Reads "category_id<TAB>label" lines, e.g. to fold fine venue types into
/// coarse places. Blank lines and lines starting with '#' are ignored.
CategoryMap read_category_map(std::istream& input);

/// Trims, looks the id up in `categories`, falls back to the trimmed name.
std::string canonical_category(const CheckIn& checkin, const CategoryMap& categories);

LocalEvent to_local_event(const CheckIn& checkin, const CategoryMap& categories, GridPrecision precision);

/// One event per check-in, input order preserved.
std::vector<LocalEvent> to_local_events(std::span<const CheckIn> checkins, const CategoryMap& categories,
                                        GridPrecision precision);

/// Events with from <= day_key <= to, order preserved. Throws ArgumentError when from > to.
std::vector<LocalEvent> filter_window(std::span<const LocalEvent> events, Date from, Date to);

struct QualificationRule {
  std::size_t min_days = 50;                  ///< a user needs strictly more qualifying days
  std::chrono::minutes max_gap{120};          ///< every same-day gap must be strictly shorter
  std::size_t min_events_per_day = 2;
};

struct Qualification {
  /// Every user seen in the input, with their qualifying days (possibly none).
  std::map<std::string, std::set<Date>> qualifying_days;
  std::set<std::string> selected;

  std::size_t qualifying_day_count(const std::string& user_id) const;
};

/// True when a day's events (any order) are dense enough under `rule`.
bool is_qualifying_day(std::vector<Timestamp> local_times, const QualificationRule& rule);

Qualification select_qualifying_users(std::span<const LocalEvent> events, const QualificationRule& rule = {});

struct DatasetStats {
  std::size_t total_records = 0;
  std::size_t user_count = 0;
  std::optional<double> records_per_user_mean;
  std::optional<double> records_per_user_median;
  std::optional<std::pair<Date, Date>> date_range;
};

DatasetStats dataset_stats(std::span<const CheckIn> checkins);
DatasetStats dataset_stats(std::span<const LocalEvent> events);

}  // namespace crowdweb
