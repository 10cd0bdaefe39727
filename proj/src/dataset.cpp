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

#include "crowdweb/dataset.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "crowdweb/error.hpp"

namespace crowdweb {

namespace {

using nlohmann::json;

constexpr int kManifestVersion = 1;

std::string_view collapse_name(CollapseKey key) {
  switch (key) {
    case CollapseKey::None:
      return "none";
    case CollapseKey::SlotAndCategory:
      return "slot-category";
    case CollapseKey::SlotCategoryAndCell:
      return "slot-category-cell";
  }
  return "slot-category";
}

CollapseKey parse_collapse(const std::string& name) {
  if (name == "none") return CollapseKey::None;
  if (name == "slot-category") return CollapseKey::SlotAndCategory;
  if (name == "slot-category-cell") return CollapseKey::SlotCategoryAndCell;
  throw FormatError("unknown collapse key '" + name + "' in manifest");
}

json optional_date(const std::optional<Date>& date) { return date ? json(format_date(*date)) : json(nullptr); }

std::optional<Date> read_optional_date(const json& value) {
  if (value.is_null()) return std::nullopt;
  return parse_date(value.get<std::string>());
}

json stats_json(const DatasetStats& stats) {
  json out{{"total_records", stats.total_records}, {"user_count", stats.user_count}};
  out["records_per_user_mean"] = stats.records_per_user_mean ? json(*stats.records_per_user_mean) : json(nullptr);
  out["records_per_user_median"] =
      stats.records_per_user_median ? json(*stats.records_per_user_median) : json(nullptr);
  out["date_range"] = stats.date_range ? json::array({format_date(stats.date_range->first),
                                                      format_date(stats.date_range->second)})
                                       : json(nullptr);
  return out;
}

DatasetStats stats_from(const json& in) {
  DatasetStats stats;
  stats.total_records = in.at("total_records").get<std::size_t>();
  stats.user_count = in.at("user_count").get<std::size_t>();
  if (!in.at("records_per_user_mean").is_null()) stats.records_per_user_mean = in["records_per_user_mean"].get<double>();
  if (!in.at("records_per_user_median").is_null())
    stats.records_per_user_median = in["records_per_user_median"].get<double>();
  if (!in.at("date_range").is_null())
    stats.date_range = std::pair{parse_date(in["date_range"][0].get<std::string>()),
                                 parse_date(in["date_range"][1].get<std::string>())};
  return stats;
}

}  // namespace

std::map<std::string, std::size_t> Dataset::record_counts() const {
  std::map<std::string, std::size_t> counts;
  for (const LocalEvent& event : events) ++counts[event.user_id];
  return counts;
}

Dataset ingest(std::vector<CheckIn> checkins, IngestOptions options) {
  Dataset dataset;
  dataset.raw_stats = dataset_stats(checkins);

  CategoryMap categories = category_map_from(checkins);
  for (const auto& [id, label] : options.categories) categories.insert_or_assign(id, label);
  std::vector<LocalEvent> events = to_local_events(checkins, categories, options.precision);

  if (options.from || options.to) {
    const Date from = options.from.value_or(Date::min());
    const Date to = options.to.value_or(Date::max());
    if (from > to) throw ArgumentError("window start " + format_date(from) + " is after its end " + format_date(to));
    for (std::size_t i = 0; i < events.size(); ++i) {
      if (events[i].day_key < from || events[i].day_key > to) continue;
      dataset.checkins.push_back(std::move(checkins[i]));
      dataset.events.push_back(std::move(events[i]));
    }
  } else {
    dataset.checkins = std::move(checkins);
    dataset.events = std::move(events);
  }

  dataset.qualification = select_qualifying_users(dataset.events, options.rule);
  dataset.options = std::move(options);
  return dataset;
}

std::map<std::string, SequenceDatabase> user_databases(const Dataset& dataset) {
  return build_sequence_databases(dataset.events, dataset.qualification, dataset.options.sequences);
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& directory) {
  std::error_code error;
  std::filesystem::create_directories(directory, error);
  if (error) throw IoError("cannot create '" + directory.string() + "': " + error.message());

  const IngestOptions& options = dataset.options;
  json manifest{
      {"version", kManifestVersion},
      {"format", "foursquare-tsv"},
      {"window", {{"from", optional_date(options.from)}, {"to", optional_date(options.to)}}},
      {"min_days", options.rule.min_days},
      {"max_gap_minutes", options.rule.max_gap.count()},
      {"min_events_per_day", options.rule.min_events_per_day},
      {"precision_micro_degrees", options.precision.micro_degrees()},
      {"slot_minutes", options.sequences.slot_minutes},
      {"collapse", collapse_name(options.sequences.collapse)},
      {"categories", json(options.categories)},
      {"raw_stats", stats_json(dataset.raw_stats)},
  };

  {
    std::ofstream file(directory / "checkins.tsv", std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write '" + (directory / "checkins.tsv").string() + "'");
    write_checkins(file, dataset.checkins);
    if (!file.flush()) throw IoError("failed writing checkins.tsv");
  }
  std::ofstream file(directory / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write '" + (directory / "manifest.json").string() + "'");
  file << manifest.dump(2) << '\n';
  if (!file.flush()) throw IoError("failed writing manifest.json");
}

Dataset load_dataset(const std::filesystem::path& directory) {
  std::ifstream manifest_file(directory / "manifest.json", std::ios::binary);
  if (!manifest_file) throw IoError("no dataset manifest in '" + directory.string() + "'");

  IngestOptions options;
  DatasetStats raw_stats;
  try {
    const json manifest = json::parse(manifest_file);
    if (manifest.at("version").get<int>() != kManifestVersion) throw FormatError("unsupported manifest version");
    options.from = read_optional_date(manifest.at("window").at("from"));
    options.to = read_optional_date(manifest.at("window").at("to"));
    options.rule.min_days = manifest.at("min_days").get<std::size_t>();
    options.rule.max_gap = std::chrono::minutes{manifest.at("max_gap_minutes").get<long>()};
    options.rule.min_events_per_day = manifest.at("min_events_per_day").get<std::size_t>();
    options.precision = GridPrecision::from_micro_degrees(manifest.at("precision_micro_degrees").get<std::int64_t>());
    options.sequences.slot_minutes = manifest.at("slot_minutes").get<int>();
    options.sequences.collapse = parse_collapse(manifest.at("collapse").get<std::string>());
    for (const auto& [id, label] : manifest.at("categories").items()) options.categories[id] = label.get<std::string>();
    raw_stats = stats_from(manifest.at("raw_stats"));
  } catch (const json::exception& e) {
    throw FormatError("invalid dataset manifest: " + std::string(e.what()));
  }

  std::ifstream checkins_file(directory / "checkins.tsv", std::ios::binary);
  if (!checkins_file) throw IoError("no checkins.tsv in '" + directory.string() + "'");
  Dataset dataset = ingest(parse_checkins(checkins_file).checkins, std::move(options));
  dataset.raw_stats = raw_stats;
  return dataset;
}

}  // namespace crowdweb
