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

#include "crowdweb/sequence.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "crowdweb/error.hpp"
#include "text.hpp"

namespace crowdweb {

namespace {

constexpr std::string_view kReserved = ":@>,";

void check_options(const SequenceOptions& options) {
  if (options.slot_minutes <= 0 || 1440 % options.slot_minutes != 0)
    throw ArgumentError("slot width must be a positive divisor of 1440 minutes");
}

bool same_key(const SequenceItem& lhs, const SequenceItem& rhs, CollapseKey key) {
  switch (key) {
    case CollapseKey::None:
      return false;
    case CollapseKey::SlotAndCategory:
      return lhs.hour_slot == rhs.hour_slot && lhs.category == rhs.category;
    case CollapseKey::SlotCategoryAndCell:
      return lhs.hour_slot == rhs.hour_slot && lhs.category == rhs.category && lhs.cell_id == rhs.cell_id;
  }
  return false;
}

DaySequence make_day(std::string_view user, Date day, std::vector<const LocalEvent*>& events,
                     const SequenceOptions& options) {
  std::stable_sort(events.begin(), events.end(),
                   [](const LocalEvent* a, const LocalEvent* b) { return a->local_time < b->local_time; });
  DaySequence sequence{std::string(user), day, {}};
  for (const LocalEvent* event : events) {
    SequenceItem item{minute_of_day(event->local_time) / options.slot_minutes, event->category, event->cell_id};
    if (!sequence.items.empty() && same_key(sequence.items.back(), item, options.collapse)) continue;
    sequence.items.push_back(std::move(item));
  }
  return sequence;
}

}  // namespace

SequenceDatabase build_sequence_database(std::span<const LocalEvent> events, std::string_view user,
                                         const std::set<Date>& qualifying_days, const SequenceOptions& options) {
  check_options(options);
  std::map<Date, std::vector<const LocalEvent*>> by_day;
  for (const LocalEvent& event : events)
    if (event.user_id == user && qualifying_days.contains(event.day_key)) by_day[event.day_key].push_back(&event);

  SequenceDatabase db{std::string(user), {}};
  for (auto& [day, day_events] : by_day) db.sequences.push_back(make_day(user, day, day_events, options));
  if (db.empty()) throw EmptyDatabaseError("user '" + std::string(user) + "' has no qualifying days to mine");
  return db;
}

std::map<std::string, SequenceDatabase> build_sequence_databases(std::span<const LocalEvent> events,
                                                                 const Qualification& qualification,
                                                                 const SequenceOptions& options) {
  check_options(options);
  std::map<std::string, std::map<Date, std::vector<const LocalEvent*>>> grouped;
  for (const LocalEvent& event : events) {
    if (!qualification.selected.contains(event.user_id)) continue;
    const auto& days = qualification.qualifying_days.at(event.user_id);
    if (days.contains(event.day_key)) grouped[event.user_id][event.day_key].push_back(&event);
  }

  std::map<std::string, SequenceDatabase> databases;
  for (auto& [user, by_day] : grouped) {
    SequenceDatabase db{user, {}};
    for (auto& [day, day_events] : by_day) db.sequences.push_back(make_day(user, day, day_events, options));
    databases.emplace(user, std::move(db));
  }
  return databases;
}

void write_sequence_database(std::ostream& output, const SequenceDatabase& db) {
  output << "#user\t" << detail::escape(db.user_id, kReserved) << '\n';
  for (const DaySequence& day : db.sequences) {
    output << format_date(day.day_key) << '\t';
    for (std::size_t i = 0; i < day.items.size(); ++i) {
      const SequenceItem& item = day.items[i];
      if (i > 0) output << ' ';
      output << item.hour_slot << ':' << detail::escape(item.category, kReserved) << '@'
             << detail::escape(item.cell_id, kReserved);
    }
    output << '\n';
  }
}

SequenceDatabase read_sequence_database(std::istream& input) {
  if (!input) throw IoError("sequence database stream is not readable");
  SequenceDatabase db;
  std::string line;
  std::size_t line_number = 0;
  const auto fail = [&](const std::string& what) {
    throw FormatError("sequence database line " + std::to_string(line_number) + ": " + what, line_number);
  };
  while (std::getline(input, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_number == 1) {
      if (!line.starts_with("#user\t") || !detail::unescape(std::string_view(line).substr(6), db.user_id))
        fail("expected '#user<TAB>id' header");
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos) fail("missing day separator");
    DaySequence day{db.user_id, parse_date(std::string_view(line).substr(0, tab)), {}};
    std::string_view rest = std::string_view(line).substr(tab + 1);
    while (!rest.empty()) {
      const auto space = rest.find(' ');
      const std::string_view token = rest.substr(0, space);
      rest = space == std::string_view::npos ? std::string_view{} : rest.substr(space + 1);
      const auto colon = token.find(':');
      const auto at = token.find('@');
      if (colon == std::string_view::npos || at == std::string_view::npos || at < colon) fail("malformed item");
      SequenceItem item;
      const auto slot = token.substr(0, colon);
      auto [ptr, ec] = std::from_chars(slot.data(), slot.data() + slot.size(), item.hour_slot);
      if (ec != std::errc{} || ptr != slot.data() + slot.size()) fail("malformed slot");
      if (!detail::unescape(token.substr(colon + 1, at - colon - 1), item.category) ||
          !detail::unescape(token.substr(at + 1), item.cell_id) || item.category.empty())
        fail("malformed item text");
      day.items.push_back(std::move(item));
    }
    if (day.items.empty()) fail("day without items");
    db.sequences.push_back(std::move(day));
  }
  if (line_number == 0) throw FormatError("empty sequence database");
  return db;
}

}  // namespace crowdweb
