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

#include <cstddef>
#include <map>
#include <tuple>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "crowdweb/ingest.hpp"
#include "crowdweb/microcell.hpp"
#include "crowdweb/sequence.hpp"

namespace crowdweb {

struct Microcell {
  std::string cell_id;
  CellBounds bounds;
  std::string dominant_category;  ///< modal category, ties to the lexicographically smallest

  friend bool operator==(const Microcell&, const Microcell&) = default;
};

/// A user found in `cell_id` during `hour_slot` on at least min_support of their days.
struct HabitItem {
  std::string user_id;
  std::string cell_id;
  int hour_slot = 0;
  std::size_t support_count = 0;
  double support_ratio = 0;

  friend bool operator==(const HabitItem&, const HabitItem&) = default;
  friend auto operator<=>(const HabitItem& lhs, const HabitItem& rhs) {
    return std::tie(lhs.user_id, lhs.hour_slot, lhs.cell_id) <=> std::tie(rhs.user_id, rhs.hour_slot, rhs.cell_id);
  }
};

struct CrowdSnapshot {
  int hour_slot = 0;
  std::map<std::string, std::set<std::string>> occupancy;  ///< cell_id -> users
  std::map<std::string, std::size_t> counts;               ///< cell_id -> occupancy size

  /// Users present anywhere in the slot.
  std::set<std::string> users() const;
  friend bool operator==(const CrowdSnapshot&, const CrowdSnapshot&) = default;
};

/// Snapshots indexed by slot; always holds one entry per slot.
using CrowdTimeline = std::vector<CrowdSnapshot>;

/// Habits of one user, sorted by (hour_slot, cell_id). Throws ArgumentError
/// when min_support is outside (0, 1] and EmptyDatabaseError on an empty db.
std::vector<HabitItem> extract_habits(const SequenceDatabase& db, double min_support);

/// Unions habits per (slot, cell). Throws ArgumentError when a habit's slot
/// falls outside [0, slot_count).
CrowdTimeline build_snapshots(std::span<const HabitItem> habits, int slot_count = 24);

/// One Microcell per cell_id occurring in `events`.
std::map<std::string, Microcell> describe_cells(std::span<const LocalEvent> events);

/// Re-bins events (and keeps everything else) at another grid precision.
std::vector<LocalEvent> rebin(std::span<const LocalEvent> events, GridPrecision precision);

}  // namespace crowdweb
