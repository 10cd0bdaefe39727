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

#include "crowdweb/documents.hpp"

namespace crowdweb::documents {

namespace {

json pattern_json(const Pattern& pattern) {
  return {{"items", pattern.items}, {"support_count", pattern.support_count}, {"support_ratio", pattern.support_ratio}};
}

json optional_number(const std::optional<double>& value) { return value ? json(*value) : json(nullptr); }

json bounds_json(const CellBounds& bounds) {
  return {{"lat_min", bounds.lat_min}, {"lat_max", bounds.lat_max}, {"lon_min", bounds.lon_min},
          {"lon_max", bounds.lon_max}};
}

}  // namespace

json to_json(const DatasetStats& stats) {
  json out{{"total_records", stats.total_records},
           {"user_count", stats.user_count},
           {"records_per_user_mean", optional_number(stats.records_per_user_mean)},
           {"records_per_user_median", optional_number(stats.records_per_user_median)}};
  out["date_range"] = stats.date_range ? json::array({format_date(stats.date_range->first),
                                                      format_date(stats.date_range->second)})
                                       : json(nullptr);
  return out;
}

json to_json(const PatternSet& patterns) {
  json list = json::array();
  for (const Pattern& pattern : patterns.patterns) list.push_back(pattern_json(pattern));
  json config{{"min_support", patterns.config.min_support}, {"mode", to_string(patterns.config.mode)}};
  config["max_pattern_length"] =
      patterns.config.max_pattern_length ? json(*patterns.config.max_pattern_length) : json(nullptr);
  return {{"user_id", patterns.user_id},
          {"config", std::move(config)},
          {"database_size", patterns.database_size},
          {"patterns", std::move(list)}};
}

json to_json(const PatternGraph& graph) {
  json nodes = json::array();
  for (const GraphNode& node : graph.nodes)
    nodes.push_back({{"id", node.label}, {"weight", node.weight}, {"support_count", node.support_count}});
  json edges = json::array();
  for (const GraphEdge& edge : graph.edges)
    edges.push_back({{"from", edge.from}, {"to", edge.to}, {"weight", edge.weight},
                     {"support_count", edge.support_count}});
  json longer = json::array();
  for (const Pattern& pattern : graph.longer_patterns) longer.push_back(pattern_json(pattern));
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"longer_patterns", std::move(longer)}};
}

json to_json(const SweepReport& report) {
  json results = json::array();
  for (const SweepResult& result : report.results) {
    json users = json::array();
    for (const auto& [user, count] : result.per_user_counts) {
      const auto average = result.per_user_avg_length.find(user);
      users.push_back({{"user_id", user},
                       {"pattern_count", count},
                       {"avg_pattern_length",
                        average == result.per_user_avg_length.end() ? json(nullptr) : json(average->second)}});
    }
    results.push_back({{"min_support", result.min_support},
                       {"mean_count", result.mean_count},
                       {"mean_avg_length", optional_number(result.mean_avg_length)},
                       {"users", std::move(users)}});
  }
  return {{"results", std::move(results)}, {"excluded_users", report.excluded_users}};
}

json to_json(const Histogram& histogram) {
  return {{"edges", histogram.edges}, {"frequencies", histogram.frequencies}};
}

json to_json(const CrowdSnapshot& snapshot, const std::map<std::string, Microcell>& cells, bool anonymize) {
  json list = json::array();
  for (const auto& [cell_id, members] : snapshot.occupancy) {
    const auto described = cells.find(cell_id);
    json cell{{"cell_id", cell_id},
              {"bounds", bounds_json(described != cells.end() ? described->second.bounds : cell_bounds(cell_id))},
              {"dominant_category", described != cells.end() ? json(described->second.dominant_category) : json(nullptr)},
              {"count", snapshot.counts.at(cell_id)}};
    if (!anonymize) cell["users"] = members;
    list.push_back(std::move(cell));
  }
  return {{"hour", snapshot.hour_slot}, {"cells", std::move(list)}};
}

json error_body(std::string code, std::string message) {
  return {{"code", std::move(code)}, {"message", std::move(message)}};
}

}  // namespace crowdweb::documents
