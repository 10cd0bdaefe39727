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

#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crowdweb/ingest.hpp"
#include "crowdweb/time.hpp"

namespace crowdweb {

struct SequenceItem {
  int hour_slot = 0;
  std::string category;
  std::string cell_id;

  friend bool operator==(const SequenceItem&, const SequenceItem&) = default;
};

/// One user-day of visits in local-time order.
struct DaySequence {
  std::string user_id;
  Date day_key{};
  std::vector<SequenceItem> items;

  friend bool operator==(const DaySequence&, const DaySequence&) = default;
};

/// All mined days of one user, ordered by day_key.
struct SequenceDatabase {
  std::string user_id;
  std::vector<DaySequence> sequences;

  std::size_t size() const noexcept { return sequences.size(); }
  bool empty() const noexcept { return sequences.empty(); }
  friend bool operator==(const SequenceDatabase&, const SequenceDatabase&) = default;
};

/// Which neighbouring items count as duplicates of each other.
enum class CollapseKey {
  None,
  SlotAndCategory,
  SlotCategoryAndCell,
};

struct SequenceOptions {
  /// Width of a time slot; must divide 1440. 60 gives hour-of-day slots.
  int slot_minutes = 60;
  CollapseKey collapse = CollapseKey::SlotAndCategory;

  int slot_count() const { return 1440 / slot_minutes; }
};

/// Builds one DaySequence per qualifying day on which `user` has events.
/// Items are sorted by local time (stable) and consecutive duplicates under
/// `options.collapse` are merged into the first. Throws EmptyDatabaseError when
/// the result would hold no sequences.
SequenceDatabase build_sequence_database(std::span<const LocalEvent> events, std::string_view user,
                                         const std::set<Date>& qualifying_days, const SequenceOptions& options = {});

/// Databases for every selected user of a qualification, keyed by user id.
std::map<std::string, SequenceDatabase> build_sequence_databases(std::span<const LocalEvent> events,
                                                                 const Qualification& qualification,
                                                                 const SequenceOptions& options = {});

/// Line format: a "#user<TAB>id" header, then "YYYY-MM-DD<TAB>slot:category@cell ..."
/// per day. Category and cell text is percent-escaped.
void write_sequence_database(std::ostream& output, const SequenceDatabase& db);
SequenceDatabase read_sequence_database(std::istream& input);

}  // namespace crowdweb
