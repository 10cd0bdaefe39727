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

#include "crowdweb/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "crowdweb/error.hpp"

namespace crowdweb {

namespace {

struct UserOutcome {
  std::size_t count = 0;
  std::size_t total_length = 0;
};

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) return fields;
    start = comma + 1;
  }
}

bool parse_double(std::string_view text, double& value) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

bool parse_size(std::string_view text, std::size_t& value) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

SweepReport support_sweep(std::span<const SequenceDatabase> users, std::span<const double> thresholds,
                          const SweepOptions& options) {
  if (thresholds.empty()) throw ArgumentError("support sweep needs at least one threshold");
  if (users.empty()) throw ArgumentError("support sweep needs at least one user");
  for (double threshold : thresholds) MinerConfig{threshold, options.max_pattern_length, options.mode}.validate();

  SweepReport report;
  std::vector<const SequenceDatabase*> minable;
  for (const SequenceDatabase& db : users) {
    if (db.empty())
      report.excluded_users.push_back(db.user_id);
    else
      minable.push_back(&db);
  }

  // One slot per (threshold, user) task; workers fill slots in any order.
  const std::size_t tasks = thresholds.size() * minable.size();
  std::vector<UserOutcome> outcomes(tasks);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t task = next++; task < tasks; task = next++) {
      const double threshold = thresholds[task / minable.size()];
      const PatternSet mined = mine_patterns(*minable[task % minable.size()],
                                             MinerConfig{threshold, options.max_pattern_length, options.mode});
      UserOutcome& outcome = outcomes[task];
      outcome.count = mined.patterns.size();
      for (const Pattern& pattern : mined.patterns) outcome.total_length += pattern.items.size();
    }
  };
  const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<unsigned>(std::min<std::size_t>(options.threads ? options.threads : hardware, tasks));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
  }

  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    SweepResult result;
    result.min_support = thresholds[t];
    double count_sum = 0;
    double length_sum = 0;
    for (std::size_t u = 0; u < minable.size(); ++u) {
      const UserOutcome& outcome = outcomes[t * minable.size() + u];
      const std::string& user = minable[u]->user_id;
      result.per_user_counts[user] = outcome.count;
      count_sum += static_cast<double>(outcome.count);
      if (outcome.count > 0) {
        const double average = static_cast<double>(outcome.total_length) / static_cast<double>(outcome.count);
        result.per_user_avg_length[user] = average;
      }
    }
    for (const auto& [user, average] : result.per_user_avg_length) length_sum += average;
    if (!minable.empty()) result.mean_count = count_sum / static_cast<double>(result.per_user_counts.size());
    if (!result.per_user_avg_length.empty())
      result.mean_avg_length = length_sum / static_cast<double>(result.per_user_avg_length.size());
    report.results.push_back(std::move(result));
  }
  return report;
}

std::vector<double> dedupe_thresholds(std::span<const double> thresholds, std::vector<double>* duplicates) {
  std::vector<double> unique;
  for (double threshold : thresholds) {
    if (std::find(unique.begin(), unique.end(), threshold) != unique.end()) {
      if (duplicates) duplicates->push_back(threshold);
      continue;
    }
    unique.push_back(threshold);
  }
  return unique;
}

Histogram distribution(const SweepResult& result, Metric metric, std::size_t bins) {
  if (bins == 0) throw ArgumentError("histogram needs at least one bin");
  std::vector<double> values;
  if (metric == Metric::Count) {
    for (const auto& [user, count] : result.per_user_counts) values.push_back(static_cast<double>(count));
  } else {
    for (const auto& [user, average] : result.per_user_avg_length) values.push_back(average);
  }
  if (values.empty()) throw ArgumentError("cannot bin an empty sweep result");

  const auto [lowest, highest] = std::minmax_element(values.begin(), values.end());
  const double low = *lowest;
  const double high = *highest;
  Histogram histogram;
  if (low == high) {
    histogram.edges = {low, high};
    histogram.frequencies = {values.size()};
    return histogram;
  }

  const double width = (high - low) / static_cast<double>(bins);
  for (std::size_t i = 0; i < bins; ++i) histogram.edges.push_back(low + width * static_cast<double>(i));
  histogram.edges.push_back(high);
  histogram.frequencies.assign(bins, 0);
  for (double value : values) {
    // Largest bin whose lower edge is <= value; the top value lands in the last bin.
    const auto upper = std::upper_bound(histogram.edges.begin(), histogram.edges.end() - 1, value);
    const auto bin = static_cast<std::size_t>(upper - histogram.edges.begin()) - 1;
    ++histogram.frequencies[std::min(bin, bins - 1)];
  }
  return histogram;
}

void export_results(std::ostream& output, std::span<const SweepResult> results) {
  output << "min_support,user_id,pattern_count,avg_pattern_length\n";
  for (const SweepResult& result : results) {
    for (const auto& [user, count] : result.per_user_counts) {
      const auto average = result.per_user_avg_length.find(user);
      output << fmt::format("{},{},{},", result.min_support, user, count);
      if (average != result.per_user_avg_length.end()) output << fmt::format("{}", average->second);
      output << '\n';
    }
  }
  for (const SweepResult& result : results) {
    output << fmt::format("#summary,{},{},", result.min_support, result.mean_count);
    if (result.mean_avg_length) output << fmt::format("{}", *result.mean_avg_length);
    output << '\n';
  }
}

void export_results(const std::filesystem::path& destination, std::span<const SweepResult> results) {
  std::ofstream file(destination, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write '" + destination.string() + "'");
  export_results(file, results);
  file.flush();
  if (!file) throw IoError("failed writing '" + destination.string() + "'");
}

std::vector<SweepResult> parse_results(std::istream& input) {
  if (!input) throw IoError("results stream is not readable");
  std::vector<SweepResult> results;
  const auto result_for = [&](double min_support) -> SweepResult& {
    for (SweepResult& result : results)
      if (result.min_support == min_support) return result;
    results.emplace_back().min_support = min_support;
    return results.back();
  };

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_number == 1) {
      if (line != "min_support,user_id,pattern_count,avg_pattern_length")
        throw FormatError("unexpected results header", line_number);
      continue;
    }
    const auto fields = split_commas(line);
    const auto bad = [&] { throw FormatError("malformed results row " + std::to_string(line_number), line_number); };
    if (fields.size() != 4) bad();
    const bool summary = fields[0] == "#summary";
    double min_support = 0;
    if (!parse_double(summary ? fields[1] : fields[0], min_support)) bad();
    SweepResult& result = result_for(min_support);
    if (summary) {
      if (!parse_double(fields[2], result.mean_count)) bad();
      double average = 0;
      if (!fields[3].empty()) {
        if (!parse_double(fields[3], average)) bad();
        result.mean_avg_length = average;
      }
      continue;
    }
    std::size_t count = 0;
    if (fields[1].empty() || !parse_size(fields[2], count)) bad();
    result.per_user_counts[std::string(fields[1])] = count;
    if (!fields[3].empty()) {
      double average = 0;
      if (!parse_double(fields[3], average)) bad();
      result.per_user_avg_length[std::string(fields[1])] = average;
    }
  }
  if (line_number == 0) throw FormatError("empty results file");
  return results;
}

void export_histogram(std::ostream& output, const Histogram& histogram) {
  output << "bin_lo,bin_hi,frequency\n";
  for (std::size_t i = 0; i < histogram.frequencies.size(); ++i)
    output << fmt::format("{},{},{}\n", histogram.edges[i], histogram.edges[i + 1], histogram.frequencies[i]);
}

}  // namespace crowdweb
