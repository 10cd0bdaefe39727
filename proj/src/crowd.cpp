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

#include "crowdweb/crowd.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "crowdweb/error.hpp"
#include "crowdweb/miner.hpp"

namespace crowdweb {

std::set<std::string> CrowdSnapshot::users() const {
  std::set<std::string> present;
  for (const auto& [cell, members] : occupancy) present.insert(members.begin(), members.end());
  return present;
}

std::vector<HabitItem> extract_habits(const SequenceDatabase& db, double min_support) {
  if (!(min_support > 0.0 && min_support <= 1.0))
    throw ArgumentError(fmt::format("min_support must be in (0, 1], got {}", min_support));
  if (db.empty()) throw EmptyDatabaseError("user '" + db.user_id + "' has no sequences");

  // Days on which the user was seen in each (slot, cell), each day counted once.
  std::map<std::pair<int, std::string>, std::size_t> days_present;
  for (const DaySequence& day : db.sequences) {
    std::set<std::pair<int, std::string>> seen;
    for (const SequenceItem& item : day.items) seen.emplace(item.hour_slot, item.cell_id);
    for (const auto& key : seen) ++days_present[key];
  }

  const std::size_t needed = min_support_count(min_support, db.size());
  std::vector<HabitItem> habits;
  for (const auto& [key, count] : days_present) {
    if (count < needed) continue;
    habits.push_back({db.user_id, key.second, key.first, count,
                      static_cast<double>(count) / static_cast<double>(db.size())});
  }
  return habits;
}

CrowdTimeline build_snapshots(std::span<const HabitItem> habits, int slot_count) {
  if (slot_count <= 0) throw ArgumentError("slot count must be positive");
  CrowdTimeline timeline(static_cast<std::size_t>(slot_count));
  for (int slot = 0; slot < slot_count; ++slot) timeline[static_cast<std::size_t>(slot)].hour_slot = slot;

  for (const HabitItem& habit : habits) {
    if (habit.hour_slot < 0 || habit.hour_slot >= slot_count)
      throw ArgumentError(fmt::format("habit slot {} outside [0, {})", habit.hour_slot, slot_count));
    CrowdSnapshot& snapshot = timeline[static_cast<std::size_t>(habit.hour_slot)];
    snapshot.occupancy[habit.cell_id].insert(habit.user_id);
  }
  for (CrowdSnapshot& snapshot : timeline)
    for (const auto& [cell, members] : snapshot.occupancy) snapshot.counts[cell] = members.size();
  return timeline;
}

std::map<std::string, Microcell> describe_cells(std::span<const LocalEvent> events) {
  std::map<std::string, std::map<std::string, std::size_t>> tallies;
  for (const LocalEvent& event : events) ++tallies[event.cell_id][event.category];

  std::map<std::string, Microcell> cells;
  for (const auto& [cell_id, categories] : tallies) {
    // std::map iterates labels in order, so the first maximum is the smallest label.
    const auto dominant = std::max_element(categories.begin(), categories.end(),
                                           [](const auto& a, const auto& b) { return a.second < b.second; });
    cells.emplace(cell_id, Microcell{cell_id, cell_bounds(cell_id), dominant->first});
  }
  return cells;
}

std::vector<LocalEvent> rebin(std::span<const LocalEvent> events, GridPrecision precision) {
  std::vector<LocalEvent> moved(events.begin(), events.end());
  for (LocalEvent& event : moved) event.cell_id = assign_cell(event.latitude, event.longitude, precision);
  return moved;
}

}  // namespace crowdweb
