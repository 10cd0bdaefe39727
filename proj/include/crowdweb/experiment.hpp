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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crowdweb/miner.hpp"
#include "crowdweb/sequence.hpp"

namespace crowdweb {

/// Aggregate mining statistics for one support threshold.
struct SweepResult {
  double min_support = 0;
  std::map<std::string, std::size_t> per_user_counts;
  /// Mean items per pattern; only users with at least one pattern appear.
  std::map<std::string, double> per_user_avg_length;
  double mean_count = 0;
  /// Mean of per_user_avg_length; absent when no user has a pattern.
  std::optional<double> mean_avg_length;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

struct SweepReport {
  std::vector<SweepResult> results;
  /// Users skipped because their database holds no sequences.
  std::vector<std::string> excluded_users;
};

struct SweepOptions {
  MiningMode mode = MiningMode::CategoryOnly;
  std::optional<std::size_t> max_pattern_length;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Mines every user at every threshold. Results follow threshold order and
/// do not depend on thread scheduling. Throws ArgumentError on an empty or
/// out-of-range threshold list or an empty user list.
SweepReport support_sweep(std::span<const SequenceDatabase> users, std::span<const double> thresholds,
                          const SweepOptions& options = {});

/// Drops repeated thresholds, keeping first occurrences in order. `duplicates`
/// receives the dropped values when non-null.
std::vector<double> dedupe_thresholds(std::span<const double> thresholds, std::vector<double>* duplicates = nullptr);

enum class Metric { Count, AvgLength };

struct Histogram {
  std::vector<double> edges;  ///< bins + 1 values
  std::vector<std::size_t> frequencies;
};

/// Equal-width bins over [min, max] of the metric; bins are right-open except
/// the last. A constant metric yields a single bin. Throws ArgumentError when
/// bins is 0 or the metric has no values.
Histogram distribution(const SweepResult& result, Metric metric, std::size_t bins = 20);

/// CSV: header "min_support,user_id,pattern_count,avg_pattern_length", one row
/// per (threshold, user), then "#summary,<min_support>,<mean_count>,<mean_avg_length>"
/// rows. An absent average is written as an empty field.
void export_results(std::ostream& output, std::span<const SweepResult> results);
/// Throws IoError when `destination` cannot be written.
void export_results(const std::filesystem::path& destination, std::span<const SweepResult> results);
/// Inverse of export_results. Throws FormatError.
std::vector<SweepResult> parse_results(std::istream& input);

/// CSV "bin_lo,bin_hi,frequency".
void export_histogram(std::ostream& output, const Histogram& histogram);

}  // namespace crowdweb
