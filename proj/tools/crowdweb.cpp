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

// crowdweb: ingest check-ins, mine mobility patterns, sweep support
// thresholds and serve the query API.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <pthread.h>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "crowdweb/dataset.hpp"
#include "crowdweb/documents.hpp"
#include "crowdweb/error.hpp"
#include "crowdweb/experiment.hpp"
#include "crowdweb/miner.hpp"
#include "crowdweb/service.hpp"

namespace {

using namespace crowdweb;

struct IngestArgs {
  std::string input;
  std::string format = "foursquare-tsv";
  std::string from;
  std::string to;
  std::size_t min_days = 50;
  double max_gap_hours = 2;
  double precision = 0.01;
  int slot_minutes = 60;
  std::string categories;
  std::string out;
};

struct MineArgs {
  std::string dataset;
  std::string user;
  double min_support = 0.5;
  bool time_annotated = false;
  std::size_t max_length = 0;
  bool json = false;
};

struct SweepArgs {
  std::string dataset;
  std::vector<double> supports{0.25, 0.5, 0.75};
  std::string out;
  std::size_t hist_bins = 20;
  bool time_annotated = false;
  unsigned threads = 0;
};

struct ServeArgs {
  std::string dataset;
  std::string data_dir;
  std::string host = "127.0.0.1";
  int port = 8080;
  bool anonymize = false;
  bool no_cache = false;
  double min_support = 0.5;
  double precision = 0.01;
  std::string cors_origin = "*";
};

int cmd_ingest(const IngestArgs& args) {
  const DatasetFormat format = parse_dataset_format(args.format);
  std::ifstream input(args.input, std::ios::binary);
  if (!input) throw IoError("cannot open '" + args.input + "'");
  ParseResult parsed = parse_checkins(input, format);
  if (parsed.malformed_count > 0)
    fmt::print(stderr, "warning: skipped {} malformed line(s), first at line {}\n", parsed.malformed_count,
               parsed.first_malformed_line);

  IngestOptions options;
  if (!args.from.empty()) options.from = parse_date(args.from);
  if (!args.to.empty()) options.to = parse_date(args.to);
  if (!(args.max_gap_hours > 0)) throw ArgumentError("--max-gap-hours must be positive");
  options.rule.min_days = args.min_days;
  options.rule.max_gap = std::chrono::minutes{std::lround(args.max_gap_hours * 60)};
  options.precision = GridPrecision(args.precision);
  options.sequences.slot_minutes = args.slot_minutes;
  if (args.slot_minutes <= 0 || 1440 % args.slot_minutes != 0)
    throw ArgumentError("--slot-minutes must divide 1440");
  if (!args.categories.empty()) {
    std::ifstream categories(args.categories);
    if (!categories) throw IoError("cannot open '" + args.categories + "'");
    options.categories = read_category_map(categories);
  }

  const Dataset dataset = ingest(std::move(parsed.checkins), std::move(options));
  save_dataset(dataset, args.out);

  nlohmann::json report{{"raw", documents::to_json(dataset.raw_stats)},
                        {"window", documents::to_json(dataset.window_stats())},
                        {"malformed_lines", parsed.malformed_count},
                        {"qualifying_users", dataset.qualification.selected.size()}};
  std::cout << report.dump(2) << '\n';
  return 0;
}

int cmd_mine(const MineArgs& args) {
  MinerConfig config;
  config.min_support = args.min_support;
  config.mode = args.time_annotated ? MiningMode::TimeAnnotated : MiningMode::CategoryOnly;
  if (args.max_length > 0) config.max_pattern_length = args.max_length;
  config.validate();

  const Dataset dataset = load_dataset(args.dataset);
  if (!dataset.qualification.qualifying_days.contains(args.user))
    throw ArgumentError("unknown user '" + args.user + "'");
  if (!dataset.qualification.selected.contains(args.user))
    throw EmptyDatabaseError(fmt::format("user '{}' does not qualify ({} qualifying days)", args.user,
                                         dataset.qualification.qualifying_day_count(args.user)));
  const SequenceDatabase db = build_sequence_database(
      dataset.events, args.user, dataset.qualification.qualifying_days.at(args.user), dataset.options.sequences);
  const PatternSet patterns = mine_patterns(db, config);
  if (args.json)
    std::cout << documents::to_json(patterns).dump(2) << '\n';
  else
    write_pattern_set(std::cout, patterns);
  return 0;
}

std::filesystem::path sibling(const std::filesystem::path& out, std::string_view kind, double threshold) {
  auto name = out.stem().string() + fmt::format(".hist-{}-{}.csv", kind, threshold);
  return out.parent_path() / name;
}

int cmd_sweep(const SweepArgs& args) {
  std::vector<double> duplicates;
  const std::vector<double> thresholds = dedupe_thresholds(args.supports, &duplicates);
  for (double value : duplicates) fmt::print(stderr, "warning: dropped duplicate threshold {}\n", value);
  if (args.hist_bins == 0) throw ArgumentError("--hist-bins must be at least 1");

  const Dataset dataset = load_dataset(args.dataset);
  std::vector<SequenceDatabase> users;
  for (auto& [user, db] : user_databases(dataset)) users.push_back(std::move(db));
  if (users.empty()) throw ArgumentError("dataset has no qualifying users");

  SweepOptions options;
  options.mode = args.time_annotated ? MiningMode::TimeAnnotated : MiningMode::CategoryOnly;
  options.threads = args.threads;
  const SweepReport report = support_sweep(users, thresholds, options);
  for (const std::string& user : report.excluded_users) fmt::print(stderr, "warning: excluded user {}\n", user);

  const std::filesystem::path out = args.out;
  export_results(out, report.results);
  for (const SweepResult& result : report.results) {
    for (const auto& [kind, metric] : {std::pair{"count", Metric::Count}, std::pair{"length", Metric::AvgLength}}) {
      if (metric == Metric::AvgLength && result.per_user_avg_length.empty()) continue;
      const auto path = sibling(out, kind, result.min_support);
      std::ofstream file(path, std::ios::binary | std::ios::trunc);
      if (!file) throw IoError("cannot write '" + path.string() + "'");
      export_histogram(file, distribution(result, metric, args.hist_bins));
    }
  }
  for (const SweepResult& result : report.results)
    fmt::print("min_support={} users={} mean_count={} mean_avg_length={}\n", result.min_support,
               result.per_user_counts.size(), result.mean_count,
               result.mean_avg_length ? fmt::format("{}", *result.mean_avg_length) : "n/a");
  return 0;
}

int cmd_serve(const ServeArgs& args) {
  ServiceConfig config;
  config.anonymize = args.anonymize;
  config.enable_cache = !args.no_cache;
  config.default_min_support = args.min_support;
  config.default_precision = GridPrecision(args.precision);
  config.cors_origin = args.cors_origin;
  if (!(args.min_support > 0 && args.min_support <= 1)) throw ArgumentError("--min-support must be in (0, 1]");
  if (!args.data_dir.empty())
    config.data_dir = args.data_dir;
  else if (!args.dataset.empty())
    config.data_dir = std::filesystem::path(args.dataset) / "service";

  std::optional<Dataset> dataset;
  if (!args.dataset.empty()) dataset = load_dataset(args.dataset);

  // Block the stop signals here so every server thread inherits the mask and
  // a dedicated thread can sigwait for them.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

  ApiService service(config, std::move(dataset));
  HttpServer server(service);
  const int port = server.bind(args.host, args.port);
  fmt::print(stderr, "serving on http://{}:{}\n", args.host, port);

  std::jthread waiter([&] {
    int received = 0;
    sigwait(&stop_signals, &received);
    server.stop();
  });
  server.serve();
  // serve() can also end on its own; wake the waiter so it can be joined.
  pthread_kill(waiter.native_handle(), SIGTERM);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crowd mobility pattern mining"};
  app.set_config("--config", "", "Read option values from a TOML/INI file");
  app.require_subcommand(1);

  IngestArgs ingest_args;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse, window and qualify a check-in dataset");
  ingest_cmd->add_option("--input", ingest_args.input, "Check-in file")->required();
  ingest_cmd->add_option("--format", ingest_args.format, "Input format")->capture_default_str();
  ingest_cmd->add_option("--from", ingest_args.from, "First local date kept (YYYY-MM-DD)");
  ingest_cmd->add_option("--to", ingest_args.to, "Last local date kept (YYYY-MM-DD)");
  ingest_cmd->add_option("--min-days", ingest_args.min_days, "Users need more qualifying days than this")
      ->capture_default_str();
  ingest_cmd->add_option("--max-gap-hours", ingest_args.max_gap_hours, "Largest same-day gap of a qualifying day")
      ->capture_default_str();
  ingest_cmd->add_option("--precision", ingest_args.precision, "Microcell edge in degrees")->capture_default_str();
  ingest_cmd->add_option("--slot-minutes", ingest_args.slot_minutes, "Time slot width")->capture_default_str();
  ingest_cmd->add_option("--categories", ingest_args.categories, "TSV of category_id<TAB>label overrides");
  ingest_cmd->add_option("--out", ingest_args.out, "Dataset directory to write")->required();

  MineArgs mine_args;
  auto* mine_cmd = app.add_subcommand("mine", "Mine one user's frequent mobility patterns");
  mine_cmd->add_option("--dataset", mine_args.dataset, "Dataset directory")->required();
  mine_cmd->add_option("--user", mine_args.user, "User id")->required();
  mine_cmd->add_option("--min-support", mine_args.min_support, "Relative support threshold")->capture_default_str();
  mine_cmd->add_flag("--time-annotated", mine_args.time_annotated, "Mine (slot, category) symbols");
  mine_cmd->add_option("--max-length", mine_args.max_length, "Longest pattern to report (0 = unlimited)");
  mine_cmd->add_flag("--json", mine_args.json, "Emit a JSON document instead of the line format");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Mine every qualifying user across support thresholds");
  sweep_cmd->add_option("--dataset", sweep_args.dataset, "Dataset directory")->required();
  sweep_cmd->add_option("--supports", sweep_args.supports, "Thresholds")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--out", sweep_args.out, "Results CSV")->required();
  sweep_cmd->add_option("--hist-bins", sweep_args.hist_bins, "Histogram bins")->capture_default_str();
  sweep_cmd->add_flag("--time-annotated", sweep_args.time_annotated, "Mine (slot, category) symbols");
  sweep_cmd->add_option("--threads", sweep_args.threads, "Worker threads (0 = all cores)");

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP query service");
  serve_cmd->add_option("--dataset", serve_args.dataset, "Dataset directory");
  serve_cmd->add_option("--data-dir", serve_args.data_dir, "Uploads and cache (default: <dataset>/service)");
  serve_cmd->add_option("--host", serve_args.host, "Listen address")->capture_default_str();
  serve_cmd->add_option("--port", serve_args.port, "Listen port")->capture_default_str();
  serve_cmd->add_flag("--anonymize", serve_args.anonymize, "Omit user ids from crowd responses");
  serve_cmd->add_flag("--no-cache", serve_args.no_cache, "Recompute every response");
  serve_cmd->add_option("--min-support", serve_args.min_support, "Default support threshold")->capture_default_str();
  serve_cmd->add_option("--precision", serve_args.precision, "Default microcell edge in degrees")
      ->capture_default_str();
  serve_cmd->add_option("--cors-origin", serve_args.cors_origin, "Allowed UI origin")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest_cmd) return cmd_ingest(ingest_args);
    if (*mine_cmd) return cmd_mine(mine_args);
    if (*sweep_cmd) return cmd_sweep(sweep_args);
    if (*serve_cmd) return cmd_serve(serve_args);
  } catch (const ArgumentError& e) {
    fmt::print(stderr, "crowdweb: error: {}\n", e.what());
    return 2;
  } catch (const IoError& e) {
    fmt::print(stderr, "crowdweb: error: {}\n", e.what());
    return 3;
  } catch (const FormatError& e) {
    fmt::print(stderr, "crowdweb: error: {}\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    fmt::print(stderr, "crowdweb: error: {}\n", e.what());
    return 1;
  }
  return 1;
}
