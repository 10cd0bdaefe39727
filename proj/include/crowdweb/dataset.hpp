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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crowdweb/ingest.hpp"
#include "crowdweb/microcell.hpp"
#include "crowdweb/sequence.hpp"

namespace crowdweb {

struct IngestOptions {
  std::optional<Date> from;
  std::optional<Date> to;
  QualificationRule rule;
  GridPrecision precision{0.01};
  SequenceOptions sequences;
  /// Overrides for category labels; ids not listed use their own names.
  CategoryMap categories;
};

/// A windowed, qualified check-in collection ready for mining.
struct Dataset {
  IngestOptions options;
  DatasetStats raw_stats;               ///< before the window filter
  std::vector<CheckIn> checkins;        ///< inside the window
  std::vector<LocalEvent> events;       ///< parallel to `checkins`
  Qualification qualification;

  DatasetStats window_stats() const { return dataset_stats(events); }
  /// Windowed records per user.
  std::map<std::string, std::size_t> record_counts() const;
};

/// Localises, window-filters and qualifies raw check-ins.
Dataset ingest(std::vector<CheckIn> checkins, IngestOptions options);

/// The selected users' sequence databases.
std::map<std::string, SequenceDatabase> user_databases(const Dataset& dataset);

/// Writes "manifest.json" and "checkins.tsv" into `directory` (created if
/// missing). Throws IoError.
void save_dataset(const Dataset& dataset, const std::filesystem::path& directory);

/// Reads a directory written by save_dataset and re-derives events and
/// qualification. Throws IoError or FormatError.
Dataset load_dataset(const std::filesystem::path& directory);

}  // namespace crowdweb
