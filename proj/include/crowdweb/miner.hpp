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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crowdweb/sequence.hpp"

namespace crowdweb {

/// CategoryOnly mines sequences of place labels; TimeAnnotated mines
/// "HH:label" symbols so a pattern also pins the slot of each visit.
enum class MiningMode { CategoryOnly, TimeAnnotated };

std::string_view to_string(MiningMode mode);
MiningMode parse_mining_mode(std::string_view text);

struct MinerConfig {
  double min_support = 0.5;
  std::optional<std::size_t> max_pattern_length;
  MiningMode mode = MiningMode::CategoryOnly;

  /// Throws ArgumentError unless min_support is in (0, 1] and the length cap is >= 1.
  void validate() const;

  friend bool operator==(const MinerConfig&, const MinerConfig&) = default;
};

struct Pattern {
  std::vector<std::string> items;
  std::size_t support_count = 0;
  double support_ratio = 0;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct PatternSet {
  std::string user_id;
  MinerConfig config;
  std::size_t database_size = 0;
  /// Ascending length, then lexicographic items.
  std::vector<Pattern> patterns;

  friend bool operator==(const PatternSet&, const PatternSet&) = default;
};

/// Smallest support count that satisfies `min_support` on `database_size`
/// sequences, i.e. ceil(min_support * database_size), never below 1.
std::size_t min_support_count(double min_support, std::size_t database_size);

/// The symbol stream of every day under `mode`, in database order.
std::vector<std::vector<std::string>> symbol_sequences(const SequenceDatabase& db, MiningMode mode);

std::string time_annotated_symbol(int hour_slot, std::string_view category);

/// All frequent sequential patterns of `db` by prefix projection.
/// Throws EmptyDatabaseError on an empty database and ArgumentError on a bad config.
PatternSet mine_patterns(const SequenceDatabase& db, const MinerConfig& config);

/// Number of sequences containing `items` as a gapped, order-preserving
/// subsequence. Throws ArgumentError when `items` is empty.
std::size_t support_of(const SequenceDatabase& db, std::span<const std::string> items,
                       MiningMode mode = MiningMode::CategoryOnly);

/// Reference miner: enumerates every candidate over the alphabet up to the
/// longest sequence and keeps those whose support_of clears the threshold.
/// Throws SizeError when the alphabet or the longest sequence exceeds 8.
PatternSet brute_force_mine(const SequenceDatabase& db, const MinerConfig& config);

/// Canonical order used by PatternSet.
bool canonical_less(const Pattern& lhs, const Pattern& rhs);

/// One pattern per line: items joined by '>', TAB, support_count, TAB,
/// support_ratio with 4 decimals.
void write_pattern_set(std::ostream& output, const PatternSet& patterns);
std::string format_pattern_set(const PatternSet& patterns);

}  // namespace crowdweb
