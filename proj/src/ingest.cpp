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

#include "crowdweb/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>

#include "crowdweb/error.hpp"
#include "text.hpp"

namespace crowdweb {

namespace {

constexpr std::size_t kColumns = 8;

template <typename T>
bool parse_number(std::string_view text, T& value) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::optional<double> median_of(std::vector<std::size_t> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return static_cast<double>(values[mid]);
  return (static_cast<double>(values[mid - 1]) + static_cast<double>(values[mid])) / 2.0;
}

template <typename Record, typename UserOf, typename DateOf>
DatasetStats stats_over(std::span<const Record> records, UserOf user_of, DateOf date_of_record) {
  DatasetStats stats;
  stats.total_records = records.size();
  if (records.empty()) return stats;

  std::unordered_map<std::string_view, std::size_t> per_user;
  Date first = date_of_record(records.front());
  Date last = first;
  for (const Record& record : records) {
    ++per_user[user_of(record)];
    const Date day = date_of_record(record);
    first = std::min(first, day);
    last = std::max(last, day);
  }

  std::vector<std::size_t> counts;
  counts.reserve(per_user.size());
  for (const auto& [user, count] : per_user) counts.push_back(count);

  stats.user_count = per_user.size();
  stats.records_per_user_mean = static_cast<double>(records.size()) / static_cast<double>(per_user.size());
  stats.records_per_user_median = median_of(std::move(counts));
  stats.date_range = std::pair{first, last};
  return stats;
}

}  // namespace

DatasetFormat parse_dataset_format(std::string_view tag) {
  if (tag == "foursquare-tsv") return DatasetFormat::FoursquareTsv;
  throw ArgumentError("unknown dataset format '" + std::string(tag) + "'");
}

CheckIn parse_checkin_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto fields = split_tabs(line);
  if (fields.size() != kColumns)
    throw FormatError(fmt::format("expected {} tab-separated columns, found {}", kColumns, fields.size()));
  for (std::size_t i = 0; i < fields.size(); ++i)
    if (detail::trim(fields[i]).empty()) throw FormatError(fmt::format("column {} is empty", i + 1));

  CheckIn checkin;
  checkin.user_id = fields[0];
  checkin.venue_id = fields[1];
  checkin.category_id = fields[2];
  checkin.category_name = fields[3];
  if (!parse_number(fields[4], checkin.latitude) || !(checkin.latitude >= -90 && checkin.latitude <= 90))
    throw FormatError("invalid latitude '" + std::string(fields[4]) + "'");
  if (!parse_number(fields[5], checkin.longitude) || !(checkin.longitude >= -180 && checkin.longitude <= 180))
    throw FormatError("invalid longitude '" + std::string(fields[5]) + "'");
  if (!parse_number(fields[6], checkin.tz_offset_minutes) || std::abs(checkin.tz_offset_minutes) > 24 * 60)
    throw FormatError("invalid timezone offset '" + std::string(fields[6]) + "'");
  checkin.utc_time = parse_utc_time(fields[7]);
  return checkin;
}

ParseResult parse_checkins(std::istream& input, DatasetFormat format) {
  if (format != DatasetFormat::FoursquareTsv) throw ArgumentError("unsupported dataset format");
  if (!input) throw IoError("input stream is not readable");

  ParseResult result;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    std::string_view view = line;
    if (line_number == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (detail::trim(view).empty()) continue;
    ++result.line_count;
    try {
      result.checkins.push_back(parse_checkin_line(view));
    } catch (const FormatError&) {
      if (result.malformed_count++ == 0) result.first_malformed_line = line_number;
    }
  }
  if (input.bad()) throw IoError("read error after line " + std::to_string(line_number));

  if (result.malformed_count * 10 > result.line_count)
    throw FormatError(fmt::format("{} of {} lines are malformed; first offending line is {}", result.malformed_count,
                                  result.line_count, result.first_malformed_line),
                      result.first_malformed_line);
  return result;
}

std::string format_checkin(const CheckIn& checkin) {
  return fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}", checkin.user_id, checkin.venue_id, checkin.category_id,
                     checkin.category_name, checkin.latitude, checkin.longitude, checkin.tz_offset_minutes,
                     format_utc_time(checkin.utc_time));
}

void write_checkins(std::ostream& output, std::span<const CheckIn> checkins) {
  for (const CheckIn& checkin : checkins) output << format_checkin(checkin) << '\n';
}

CategoryMap category_map_from(std::span<const CheckIn> checkins) {
  CategoryMap categories;
  for (const CheckIn& checkin : checkins)
    categories.try_emplace(checkin.category_id, detail::trim(checkin.category_name));
  return categories;
}

CategoryMap read_category_map(std::istream& input) {
  if (!input) throw IoError("category map is not readable");
  CategoryMap categories;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    const std::string_view view = detail::trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto tab = view.find('\t');
    const std::string_view key = tab == std::string_view::npos ? std::string_view{} : detail::trim(view.substr(0, tab));
    const std::string_view label = tab == std::string_view::npos ? std::string_view{} : detail::trim(view.substr(tab + 1));
    if (key.empty() || label.empty())
      throw FormatError("category map line " + std::to_string(line_number) + " needs 'id<TAB>label'", line_number);
    categories.insert_or_assign(std::string(key), std::string(label));
  }
  return categories;
}

std::string canonical_category(const CheckIn& checkin, const CategoryMap& categories) {
  if (const auto it = categories.find(detail::trim(checkin.category_id)); it != categories.end())
    return std::string(detail::trim(it->second));
  return std::string(detail::trim(checkin.category_name));
}

LocalEvent to_local_event(const CheckIn& checkin, const CategoryMap& categories, GridPrecision precision) {
  LocalEvent event;
  event.user_id = checkin.user_id;
  event.category = canonical_category(checkin, categories);
  event.cell_id = assign_cell(checkin.latitude, checkin.longitude, precision);
  event.local_time = checkin.utc_time + std::chrono::minutes{checkin.tz_offset_minutes};
  event.day_key = date_of(event.local_time);
  event.hour_slot = minute_of_day(event.local_time) / 60;
  event.latitude = checkin.latitude;
  event.longitude = checkin.longitude;
  return event;
}

std::vector<LocalEvent> to_local_events(std::span<const CheckIn> checkins, const CategoryMap& categories,
                                        GridPrecision precision) {
  std::vector<LocalEvent> events;
  events.reserve(checkins.size());
  for (const CheckIn& checkin : checkins) events.push_back(to_local_event(checkin, categories, precision));
  return events;
}

std::vector<LocalEvent> filter_window(std::span<const LocalEvent> events, Date from, Date to) {
  if (from > to) throw ArgumentError("window start " + format_date(from) + " is after its end " + format_date(to));
  std::vector<LocalEvent> kept;
  std::copy_if(events.begin(), events.end(), std::back_inserter(kept),
               [&](const LocalEvent& event) { return event.day_key >= from && event.day_key <= to; });
  return kept;
}

std::size_t Qualification::qualifying_day_count(const std::string& user_id) const {
  const auto it = qualifying_days.find(user_id);
  return it == qualifying_days.end() ? 0 : it->second.size();
}

bool is_qualifying_day(std::vector<Timestamp> local_times, const QualificationRule& rule) {
  if (local_times.size() < std::max<std::size_t>(rule.min_events_per_day, 1)) return false;
  std::sort(local_times.begin(), local_times.end());
  for (std::size_t i = 1; i < local_times.size(); ++i)
    if (local_times[i] - local_times[i - 1] >= rule.max_gap) return false;
  return true;
}

Qualification select_qualifying_users(std::span<const LocalEvent> events, const QualificationRule& rule) {
  std::map<std::string, std::map<Date, std::vector<Timestamp>>> days_by_user;
  for (const LocalEvent& event : events) days_by_user[event.user_id][event.day_key].push_back(event.local_time);

  Qualification result;
  for (auto& [user, days] : days_by_user) {
    std::set<Date>& qualifying = result.qualifying_days[user];
    for (auto& [day, times] : days)
      if (is_qualifying_day(std::move(times), rule)) qualifying.insert(day);
    if (qualifying.size() > rule.min_days) result.selected.insert(user);
  }
  return result;
}

DatasetStats dataset_stats(std::span<const CheckIn> checkins) {
  return stats_over(
      checkins, [](const CheckIn& c) -> std::string_view { return c.user_id; },
      [](const CheckIn& c) { return date_of(c.utc_time + std::chrono::minutes{c.tz_offset_minutes}); });
}

DatasetStats dataset_stats(std::span<const LocalEvent> events) {
  return stats_over(
      events, [](const LocalEvent& e) -> std::string_view { return e.user_id; },
      [](const LocalEvent& e) { return e.day_key; });
}

}  // namespace crowdweb
