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

#include "crowdweb/miner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "crowdweb/error.hpp"
#include "text.hpp"

namespace crowdweb {

namespace {

using Symbol = std::uint32_t;

/// Symbols are numbered in lexicographic order of their labels, so comparing
/// codes compares labels.
struct EncodedDatabase {
  std::vector<std::string> alphabet;
  std::vector<std::vector<Symbol>> sequences;
};

EncodedDatabase encode(const std::vector<std::vector<std::string>>& sequences) {
  EncodedDatabase encoded;
  for (const auto& sequence : sequences) encoded.alphabet.insert(encoded.alphabet.end(), sequence.begin(), sequence.end());
  std::sort(encoded.alphabet.begin(), encoded.alphabet.end());
  encoded.alphabet.erase(std::unique(encoded.alphabet.begin(), encoded.alphabet.end()), encoded.alphabet.end());

  encoded.sequences.reserve(sequences.size());
  for (const auto& sequence : sequences) {
    std::vector<Symbol> codes;
    codes.reserve(sequence.size());
    for (const std::string& label : sequence)
      codes.push_back(static_cast<Symbol>(
          std::lower_bound(encoded.alphabet.begin(), encoded.alphabet.end(), label) - encoded.alphabet.begin()));
    encoded.sequences.push_back(std::move(codes));
  }
  return encoded;
}

/// Pattern growth over pseudo-projected suffixes. A projection entry records a
/// sequence and the position right after the prefix's earliest match in it.
class PrefixProjector {
 public:
  PrefixProjector(const EncodedDatabase& db, std::size_t min_count, std::optional<std::size_t> max_length)
      : db_(db), min_count_(min_count), max_length_(max_length) {}

  std::vector<std::pair<std::vector<Symbol>, std::size_t>> run() {
    std::vector<Projection> all;
    all.reserve(db_.sequences.size());
    for (std::size_t i = 0; i < db_.sequences.size(); ++i) all.push_back({static_cast<std::uint32_t>(i), 0});
    grow(all);
    return std::move(found_);
  }

 private:
  struct Projection {
    std::uint32_t sequence;
    std::uint32_t start;
  };

  void grow(const std::vector<Projection>& projected) {
    if (max_length_ && prefix_.size() >= *max_length_) return;

    const std::size_t alphabet = db_.alphabet.size();
    std::vector<std::size_t> support(alphabet, 0);
    std::vector<std::size_t> last_seen(alphabet, std::numeric_limits<std::size_t>::max());
    for (std::size_t p = 0; p < projected.size(); ++p) {
      const auto& sequence = db_.sequences[projected[p].sequence];
      for (std::size_t pos = projected[p].start; pos < sequence.size(); ++pos) {
        const Symbol symbol = sequence[pos];
        if (last_seen[symbol] != p) {
          last_seen[symbol] = p;
          ++support[symbol];
        }
      }
    }

    for (Symbol symbol = 0; symbol < alphabet; ++symbol) {
      if (support[symbol] < min_count_) continue;
      prefix_.push_back(symbol);
      found_.emplace_back(prefix_, support[symbol]);

      std::vector<Projection> next;
      next.reserve(support[symbol]);
      for (const Projection& entry : projected) {
        const auto& sequence = db_.sequences[entry.sequence];
        const auto hit = std::find(sequence.begin() + entry.start, sequence.end(), symbol);
        if (hit == sequence.end()) continue;
        const auto after = static_cast<std::uint32_t>(hit - sequence.begin() + 1);
        if (after < sequence.size()) next.push_back({entry.sequence, after});
      }
      if (next.size() >= min_count_) grow(next);
      prefix_.pop_back();
    }
  }

  const EncodedDatabase& db_;
  std::size_t min_count_;
  std::optional<std::size_t> max_length_;
  std::vector<Symbol> prefix_;
  std::vector<std::pair<std::vector<Symbol>, std::size_t>> found_;
};

bool contains_subsequence(std::span<const std::string> sequence, std::span<const std::string> items) {
  std::size_t matched = 0;
  for (const std::string& symbol : sequence)
    if (matched < items.size() && symbol == items[matched]) ++matched;
  return matched == items.size();
}

std::size_t count_support(const std::vector<std::vector<std::string>>& sequences, std::span<const std::string> items) {
  return static_cast<std::size_t>(std::count_if(sequences.begin(), sequences.end(), [&](const auto& sequence) {
    return contains_subsequence(sequence, items);
  }));
}

PatternSet finish(const SequenceDatabase& db, const MinerConfig& config, std::vector<Pattern> patterns) {
  std::sort(patterns.begin(), patterns.end(), canonical_less);
  return PatternSet{db.user_id, config, db.size(), std::move(patterns)};
}

void check_inputs(const SequenceDatabase& db, const MinerConfig& config) {
  config.validate();
  if (db.empty()) throw EmptyDatabaseError("cannot mine an empty sequence database for user '" + db.user_id + "'");
}

}  // namespace

std::string_view to_string(MiningMode mode) {
  return mode == MiningMode::TimeAnnotated ? "time-annotated" : "category";
}

MiningMode parse_mining_mode(std::string_view text) {
  if (text == "category" || text == "category-only") return MiningMode::CategoryOnly;
  if (text == "time-annotated" || text == "time") return MiningMode::TimeAnnotated;
  throw ArgumentError("unknown mining mode '" + std::string(text) + "'");
}

void MinerConfig::validate() const {
  if (!(min_support > 0.0 && min_support <= 1.0))
    throw ArgumentError(fmt::format("min_support must be in (0, 1], got {}", min_support));
  if (max_pattern_length && *max_pattern_length < 1) throw ArgumentError("max_pattern_length must be at least 1");
}

std::size_t min_support_count(double min_support, std::size_t database_size) {
  // The epsilon keeps products such as 0.7 * 10 = 7.000000000000001 from rounding up.
  const double needed = std::ceil(min_support * static_cast<double>(database_size) - 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::max(needed, 0.0)));
}

std::string time_annotated_symbol(int hour_slot, std::string_view category) {
  return fmt::format("{:02}:{}", hour_slot, category);
}

std::vector<std::vector<std::string>> symbol_sequences(const SequenceDatabase& db, MiningMode mode) {
  std::vector<std::vector<std::string>> sequences;
  sequences.reserve(db.size());
  for (const DaySequence& day : db.sequences) {
    std::vector<std::string> symbols;
    symbols.reserve(day.items.size());
    for (const SequenceItem& item : day.items)
      symbols.push_back(mode == MiningMode::TimeAnnotated ? time_annotated_symbol(item.hour_slot, item.category)
                                                          : item.category);
    sequences.push_back(std::move(symbols));
  }
  return sequences;
}

bool canonical_less(const Pattern& lhs, const Pattern& rhs) {
  if (lhs.items.size() != rhs.items.size()) return lhs.items.size() < rhs.items.size();
  return lhs.items < rhs.items;
}

PatternSet mine_patterns(const SequenceDatabase& db, const MinerConfig& config) {
  check_inputs(db, config);
  const EncodedDatabase encoded = encode(symbol_sequences(db, config.mode));
  const std::size_t min_count = min_support_count(config.min_support, db.size());

  std::vector<Pattern> patterns;
  for (auto& [codes, count] : PrefixProjector(encoded, min_count, config.max_pattern_length).run()) {
    Pattern pattern;
    pattern.items.reserve(codes.size());
    for (Symbol code : codes) pattern.items.push_back(encoded.alphabet[code]);
    pattern.support_count = count;
    pattern.support_ratio = static_cast<double>(count) / static_cast<double>(db.size());
    patterns.push_back(std::move(pattern));
  }
  return finish(db, config, std::move(patterns));
}

std::size_t support_of(const SequenceDatabase& db, std::span<const std::string> items, MiningMode mode) {
  if (items.empty()) throw ArgumentError("support_of needs at least one item");
  return count_support(symbol_sequences(db, mode), items);
}

PatternSet brute_force_mine(const SequenceDatabase& db, const MinerConfig& config) {
  constexpr std::size_t kMaxAlphabet = 8;
  constexpr std::size_t kMaxLength = 8;
  check_inputs(db, config);

  const auto sequences = symbol_sequences(db, config.mode);
  std::vector<std::string> alphabet;
  std::size_t longest = 0;
  for (const auto& sequence : sequences) {
    alphabet.insert(alphabet.end(), sequence.begin(), sequence.end());
    longest = std::max(longest, sequence.size());
  }
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  if (alphabet.size() > kMaxAlphabet || longest > kMaxLength)
    throw SizeError(fmt::format("brute force is limited to {} symbols and length {}, got {} and {}", kMaxAlphabet,
                                kMaxLength, alphabet.size(), longest));

  const std::size_t min_count = min_support_count(config.min_support, db.size());
  const std::size_t max_length = std::min(longest, config.max_pattern_length.value_or(longest));

  std::vector<Pattern> patterns;
  for (std::size_t length = 1; length <= max_length && !alphabet.empty(); ++length) {
    std::vector<std::size_t> digits(length, 0);
    while (true) {
      std::vector<std::string> candidate;
      candidate.reserve(length);
      for (std::size_t digit : digits) candidate.push_back(alphabet[digit]);
      const std::size_t count = count_support(sequences, candidate);
      if (count >= min_count)
        patterns.push_back({std::move(candidate), count, static_cast<double>(count) / static_cast<double>(db.size())});

      std::size_t position = length;
      while (position > 0 && ++digits[position - 1] == alphabet.size()) digits[--position] = 0;
      if (position == 0) break;
    }
  }
  return finish(db, config, std::move(patterns));
}

void write_pattern_set(std::ostream& output, const PatternSet& patterns) {
  for (const Pattern& pattern : patterns.patterns) {
    for (std::size_t i = 0; i < pattern.items.size(); ++i) {
      if (i > 0) output << '>';
      output << detail::escape(pattern.items[i], ">", true);
    }
    output << fmt::format("\t{}\t{:.4f}\n", pattern.support_count, pattern.support_ratio);
  }
}

std::string format_pattern_set(const PatternSet& patterns) {
  std::ostringstream out;
  write_pattern_set(out, patterns);
  return out.str();
}

}  // namespace crowdweb
