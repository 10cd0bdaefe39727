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

#include "crowdweb/service.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "crowdweb/crowd.hpp"
#include "crowdweb/documents.hpp"
#include "crowdweb/error.hpp"
#include "crowdweb/experiment.hpp"
#include "crowdweb/miner.hpp"
#include "crowdweb/pattern_graph.hpp"
#include "text.hpp"

namespace crowdweb {

namespace {

using nlohmann::json;
using Query = std::map<std::string, std::string>;

/// Raised inside handlers to produce a specific status.
struct HttpError {
  int status;
  std::string code;
  std::string message;
};

struct UserRecord {
  std::vector<LocalEvent> events;
  std::set<Date> qualifying_days;
  bool qualified = false;
  bool uploaded = false;
  /// Digest of everything mining depends on; keys the on-disk cache.
  std::string fingerprint;
};

/// Crowd for one (min_support, precision): snapshots plus, per slot, the
/// description of each occupied cell drawn from its members' visits.
struct CrowdIndex {
  CrowdTimeline timeline;
  std::vector<std::map<std::string, Microcell>> cells;
};

Response json_response(int status, const json& body) { return Response{status, body.dump() + "\n"}; }

Response error_response(int status, std::string code, std::string message) {
  return json_response(status, documents::error_body(std::move(code), std::move(message)));
}

std::uint64_t fnv1a(std::string_view text, std::uint64_t hash = 14695981039346656037ull) {
  for (char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string fingerprint_of(const std::vector<LocalEvent>& events, const std::set<Date>& days,
                           const SequenceOptions& options) {
  std::uint64_t hash = fnv1a(fmt::format("{}|{}|", options.slot_minutes, static_cast<int>(options.collapse)));
  for (const LocalEvent& event : events)
    hash = fnv1a(fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", event.user_id, event.category, event.cell_id,
                             event.local_time.time_since_epoch().count(), event.latitude, event.longitude),
                 hash);
  for (Date day : days) hash = fnv1a(format_date(day), hash);
  return fmt::format("{:016x}", hash);
}

double parse_ratio(const Query& query, const std::string& key, double fallback) {
  const auto it = query.find(key);
  if (it == query.end() || it->second.empty()) return fallback;
  double value = 0;
  const std::string& text = it->second;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ArgumentError(key + " must be a number, got '" + text + "'");
  return value;
}

std::optional<long> parse_integer(const Query& query, const std::string& key) {
  const auto it = query.find(key);
  if (it == query.end() || it->second.empty()) return std::nullopt;
  long value = 0;
  const std::string& text = it->second;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ArgumentError(key + " must be an integer, got '" + text + "'");
  return value;
}

bool parse_flag(const Query& query, const std::string& key) {
  const auto it = query.find(key);
  if (it == query.end()) return false;
  return it->second.empty() || it->second == "1" || it->second == "true" || it->second == "yes";
}

MinerConfig miner_config(const Query& query, double default_min_support) {
  MinerConfig config;
  config.min_support = parse_ratio(query, "min_support", default_min_support);
  if (const auto mode = query.find("mode"); mode != query.end()) config.mode = parse_mining_mode(mode->second);
  if (const auto length = parse_integer(query, "max_length")) {
    if (*length < 1) throw ArgumentError("max_length must be at least 1");
    config.max_pattern_length = static_cast<std::size_t>(*length);
  }
  config.validate();
  return config;
}

std::vector<double> parse_thresholds(const std::string& body) {
  std::vector<double> thresholds;
  const std::string_view text = detail::trim(body);
  if (!text.empty() && (text.front() == '[' || text.front() == '{')) {
    try {
      json parsed = json::parse(text);
      if (parsed.is_object()) parsed = parsed.at("thresholds");
      thresholds = parsed.get<std::vector<double>>();
    } catch (const json::exception&) {
      throw ArgumentError("sweep body must be a JSON array of thresholds");
    }
  } else {
    std::size_t start = 0;
    while (start < text.size()) {
      const auto comma = text.find(',', start);
      const std::string_view field =
          detail::trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      double value = 0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
        throw ArgumentError("invalid threshold '" + std::string(field) + "'");
      thresholds.push_back(value);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  if (thresholds.empty()) throw ArgumentError("sweep needs at least one threshold");
  return thresholds;
}

void write_atomically(const std::filesystem::path& path, std::string_view content) {
  const std::filesystem::path temporary = path.string() + ".tmp";
  {
    std::ofstream file(temporary, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write '" + temporary.string() + "'");
    file << content;
    if (!file.flush()) throw IoError("failed writing '" + temporary.string() + "'");
  }
  std::error_code error;
  std::filesystem::rename(temporary, path, error);
  if (error) throw IoError("cannot move '" + temporary.string() + "' into place: " + error.message());
}

std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) return std::nullopt;
  std::ostringstream content;
  content << file.rdbuf();
  return content.str();
}

std::string file_safe(std::string_view text) { return detail::escape(text, "/\\:*?\"<>|.", false); }

}  // namespace

struct ApiService::State {
  bool has_dataset = false;
  IngestOptions options;
  CategoryMap categories;
  std::map<std::string, std::shared_ptr<const UserRecord>> users;

  mutable std::mutex cache_mutex;
  /// user -> request key -> body
  mutable std::map<std::string, std::map<std::string, std::string>> user_documents;
  mutable std::map<std::string, std::shared_ptr<const CrowdIndex>> crowds;
};

namespace {

using State = ApiService::State;

}  // namespace

ApiService::ApiService(ServiceConfig config, std::optional<Dataset> dataset) : config_(std::move(config)) {
  auto initial = std::make_shared<State>();
  state_ = initial;
  if (dataset) replace_dataset(std::move(*dataset));
  replay_uploads();
}

ApiService::~ApiService() = default;

std::shared_ptr<const ApiService::State> ApiService::state() const {
  std::lock_guard lock(state_mutex_);
  return state_;
}

void ApiService::publish(std::shared_ptr<const State> next) {
  std::lock_guard lock(state_mutex_);
  state_ = std::move(next);
}

void ApiService::replace_dataset(Dataset dataset) {
  std::lock_guard writer(writer_mutex_);
  const auto previous = state();

  auto next = std::make_shared<State>();
  next->has_dataset = true;
  next->categories = category_map_from(dataset.checkins);
  for (const auto& [id, label] : dataset.options.categories) next->categories.insert_or_assign(id, label);
  next->options = dataset.options;

  std::map<std::string, std::vector<LocalEvent>> events_by_user;
  for (LocalEvent& event : dataset.events) events_by_user[event.user_id].push_back(std::move(event));
  for (auto& [user, events] : events_by_user) {
    auto record = std::make_shared<UserRecord>();
    record->events = std::move(events);
    record->qualifying_days = dataset.qualification.qualifying_days.at(user);
    record->qualified = dataset.qualification.selected.contains(user);
    record->fingerprint = fingerprint_of(record->events, record->qualifying_days, next->options.sequences);
    next->users.emplace(user, std::move(record));
  }
  for (const auto& [user, record] : previous->users)
    if (record->uploaded) next->users.insert_or_assign(user, record);
  publish(std::move(next));
}

Response ApiService::with_errors(const std::function<Response()>& body) const {
  try {
    return body();
  } catch (const HttpError& e) {
    return error_response(e.status, e.code, e.message);
  } catch (const ArgumentError& e) {
    return error_response(400, "bad_request", e.what());
  } catch (const FormatError& e) {
    return error_response(422, "unprocessable", e.what());
  } catch (const EmptyDatabaseError& e) {
    return error_response(422, "unprocessable", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal", e.what());
  }
}

Response ApiService::handle(const Request& request) {
  return with_errors([&]() -> Response {
    if (request.method == "OPTIONS") return Response{204, "", "text/plain"};

    std::vector<std::string> segments;
    std::string_view path = request.path;
    while (!path.empty()) {
      const auto slash = path.find('/');
      if (slash != 0) segments.emplace_back(path.substr(0, slash));
      if (slash == std::string_view::npos) break;
      path.remove_prefix(slash + 1);
    }

    const auto only = [&](std::string_view method) {
      if (request.method != method)
        throw HttpError{405, "method_not_allowed", request.method + " is not supported on " + request.path};
    };
    if (segments.size() == 1 && segments[0] == "health") {
      only("GET");
      return json_response(200, {{"status", "ok"}});
    }
    if (segments.size() == 1 && segments[0] == "users") {
      if (request.method == "POST") return upload_history(request.body, request.query);
      only("GET");
      return list_users();
    }
    if (segments.size() == 3 && segments[0] == "users" && segments[2] == "patterns") {
      only("GET");
      return get_user_patterns(segments[1], request.query);
    }
    if (segments.size() == 3 && segments[0] == "users" && segments[2] == "graph") {
      only("GET");
      return get_user_graph(segments[1], request.query);
    }
    if (segments.size() == 1 && segments[0] == "crowd") {
      only("GET");
      return get_crowd(request.query);
    }
    if (segments.size() == 1 && segments[0] == "sweep") {
      only("POST");
      return run_sweep(request.body, request.query);
    }
    throw HttpError{404, "not_found", "no route for " + request.path};
  });
}

Response ApiService::list_users() const {
  return with_errors([&] {
    const auto current = state();
    if (!current->has_dataset) throw HttpError{409, "no_dataset", "no dataset is loaded"};
    json users = json::array();
    for (const auto& [user, record] : current->users) {
      if (!record->qualified) continue;
      users.push_back({{"user_id", user},
                       {"qualifying_day_count", record->qualifying_days.size()},
                       {"record_count", record->events.size()},
                       {"uploaded", record->uploaded}});
    }
    return json_response(200, {{"users", std::move(users)}});
  });
}

namespace {

const UserRecord& minable_user(const State& state, const std::string& user_id) {
  if (!state.has_dataset) throw HttpError{409, "no_dataset", "no dataset is loaded"};
  const auto it = state.users.find(user_id);
  if (it == state.users.end()) throw HttpError{404, "not_found", "unknown user '" + user_id + "'"};
  if (!it->second->qualified)
    throw HttpError{422, "not_qualified",
                    fmt::format("user '{}' does not qualify ({} qualifying days)", user_id,
                                it->second->qualifying_days.size())};
  return *it->second;
}

/// Looks a per-user document up in memory, then on disk, else computes and
/// stores it in both.
std::string cached_document(const State& state, const ServiceConfig& config, const std::string& user_id,
                            const UserRecord& record, const std::string& key,
                            const std::function<std::string()>& compute) {
  if (!config.enable_cache) return compute();
  {
    std::lock_guard lock(state.cache_mutex);
    const auto user = state.user_documents.find(user_id);
    if (user != state.user_documents.end())
      if (const auto hit = user->second.find(key); hit != user->second.end()) return hit->second;
  }

  std::optional<std::filesystem::path> disk;
  if (!config.data_dir.empty()) disk = config.data_dir / "cache" / (record.fingerprint + "-" + file_safe(key) + ".json");
  std::optional<std::string> body = disk ? read_file(*disk) : std::nullopt;
  if (!body) {
    body = compute();
    if (disk) {
      // The cache is an optimisation; a failed write only costs a recomputation later.
      try {
        std::filesystem::create_directories(disk->parent_path());
        write_atomically(*disk, *body);
      } catch (const std::exception&) {
      }
    }
  }
  std::lock_guard lock(state.cache_mutex);
  state.user_documents[user_id].emplace(key, *body);
  return *body;
}

PatternSet mine_user(const State& state, const std::string& user_id, const UserRecord& record,
                     const MinerConfig& config) {
  const SequenceDatabase db =
      build_sequence_database(record.events, user_id, record.qualifying_days, state.options.sequences);
  return mine_patterns(db, config);
}

std::string config_key(std::string_view kind, const MinerConfig& config) {
  return fmt::format("{}-{}-{}-{}", kind, config.min_support, to_string(config.mode),
                     config.max_pattern_length ? std::to_string(*config.max_pattern_length) : "all");
}

std::shared_ptr<const CrowdIndex> build_crowd(const State& state, double min_support, GridPrecision precision) {
  const int slots = state.options.sequences.slot_count();
  std::vector<HabitItem> habits;
  std::map<std::string, std::vector<LocalEvent>> events_by_user;
  for (const auto& [user, record] : state.users) {
    if (!record->qualified) continue;
    std::vector<LocalEvent> events = precision == state.options.precision
                                         ? record->events
                                         : rebin(record->events, precision);
    const SequenceDatabase db =
        build_sequence_database(events, user, record->qualifying_days, state.options.sequences);
    const auto found = extract_habits(db, min_support);
    habits.insert(habits.end(), found.begin(), found.end());
    events_by_user.emplace(user, std::move(events));
  }

  auto index = std::make_shared<CrowdIndex>();
  index->timeline = build_snapshots(habits, slots);
  index->cells.resize(static_cast<std::size_t>(slots));

  // Describe each occupied cell from the members' own visits there in that slot.
  std::vector<std::vector<LocalEvent>> visits(static_cast<std::size_t>(slots));
  for (const HabitItem& habit : habits) {
    const UserRecord& record = *state.users.at(habit.user_id);
    for (const LocalEvent& event : events_by_user.at(habit.user_id)) {
      if (event.cell_id != habit.cell_id || !record.qualifying_days.contains(event.day_key)) continue;
      if (minute_of_day(event.local_time) / state.options.sequences.slot_minutes != habit.hour_slot) continue;
      visits[static_cast<std::size_t>(habit.hour_slot)].push_back(event);
    }
  }
  for (std::size_t slot = 0; slot < visits.size(); ++slot) index->cells[slot] = describe_cells(visits[slot]);
  return index;
}

}  // namespace

Response ApiService::get_user_patterns(const std::string& user_id, const Query& query) const {
  return with_errors([&] {
    const auto current = state();
    const MinerConfig miner = miner_config(query, config_.default_min_support);
    const UserRecord& record = minable_user(*current, user_id);
    return Response{200, cached_document(*current, config_, user_id, record, config_key("patterns", miner), [&] {
                      return documents::to_json(mine_user(*current, user_id, record, miner)).dump() + "\n";
                    })};
  });
}

Response ApiService::get_user_graph(const std::string& user_id, const Query& query) const {
  return with_errors([&] {
    const auto current = state();
    const MinerConfig miner = miner_config(query, config_.default_min_support);
    const UserRecord& record = minable_user(*current, user_id);
    return Response{200, cached_document(*current, config_, user_id, record, config_key("graph", miner), [&] {
                      json body = documents::to_json(build_graph(mine_user(*current, user_id, record, miner)));
                      body["user_id"] = user_id;
                      body["min_support"] = miner.min_support;
                      return body.dump() + "\n";
                    })};
  });
}

Response ApiService::get_crowd(const Query& query) const {
  return with_errors([&] {
    const auto current = state();
    const int slots = current->options.sequences.slot_count();
    const auto hour = parse_integer(query, "hour");
    if (!hour) throw ArgumentError("hour is required");
    if (*hour < 0 || *hour >= slots) throw ArgumentError(fmt::format("hour must be within [0, {}]", slots - 1));
    const double min_support = parse_ratio(query, "min_support", config_.default_min_support);
    if (!(min_support > 0.0 && min_support <= 1.0))
      throw ArgumentError(fmt::format("min_support must be in (0, 1], got {}", min_support));
    const GridPrecision precision = query.contains("precision") && !query.at("precision").empty()
                                        ? GridPrecision(parse_ratio(query, "precision", 0))
                                        : config_.default_precision;

    const std::string key = fmt::format("{}|{}", min_support, precision.micro_degrees());
    std::shared_ptr<const CrowdIndex> index;
    if (config_.enable_cache) {
      std::lock_guard lock(current->cache_mutex);
      if (const auto hit = current->crowds.find(key); hit != current->crowds.end()) index = hit->second;
    }
    if (!index) {
      index = build_crowd(*current, min_support, precision);
      if (config_.enable_cache) {
        std::lock_guard lock(current->cache_mutex);
        current->crowds.emplace(key, index);
      }
    }

    const auto slot = static_cast<std::size_t>(*hour);
    json body = documents::to_json(index->timeline[slot], index->cells[slot], config_.anonymize);
    body["min_support"] = min_support;
    body["precision"] = precision.degrees();
    body["anonymized"] = config_.anonymize;
    return json_response(200, body);
  });
}

Response ApiService::upload_history(const std::string& body, const Query& query) {
  return with_errors([&] {
    std::istringstream input(body);
    ParseResult parsed;
    try {
      parsed = parse_checkins(input);
    } catch (const FormatError& e) {
      throw HttpError{422, "unprocessable", e.what()};
    }
    if (parsed.checkins.empty()) throw HttpError{422, "unprocessable", "upload contains no check-ins"};
    const std::string user_id = parsed.checkins.front().user_id;
    for (const CheckIn& checkin : parsed.checkins)
      if (checkin.user_id != user_id)
        throw HttpError{422, "unprocessable", "an upload must hold a single user's history"};

    std::lock_guard writer(writer_mutex_);
    const auto previous = state();
    if (previous->users.contains(user_id) && !parse_flag(query, "replace"))
      throw HttpError{409, "conflict", "user '" + user_id + "' already exists; pass replace=true to overwrite"};

    QualificationRule rule = previous->options.rule;
    if (const auto days = parse_integer(query, "min_days")) {
      if (*days < 0) throw ArgumentError("min_days must be non-negative");
      rule.min_days = static_cast<std::size_t>(*days);
    }
    if (parse_flag(query, "relax")) rule.min_days = 0;
    if (query.contains("max_gap_hours") && !query.at("max_gap_hours").empty()) {
      const double hours = parse_ratio(query, "max_gap_hours", 2);
      if (!(hours > 0)) throw ArgumentError("max_gap_hours must be positive");
      rule.max_gap = std::chrono::minutes{static_cast<long>(std::lround(hours * 60))};
    }

    auto record = std::make_shared<UserRecord>();
    record->uploaded = true;
    record->events = to_local_events(parsed.checkins, previous->categories, previous->options.precision);
    const Qualification qualification = select_qualifying_users(record->events, rule);
    record->qualifying_days = qualification.qualifying_days.at(user_id);
    record->qualified = qualification.selected.contains(user_id);
    record->fingerprint = fingerprint_of(record->events, record->qualifying_days, previous->options.sequences);

    if (!config_.data_dir.empty()) {
      const auto uploads = config_.data_dir / "uploads";
      std::filesystem::create_directories(uploads);
      std::ostringstream checkins;
      write_checkins(checkins, parsed.checkins);
      const json meta{{"user_id", user_id},
                      {"min_days", rule.min_days},
                      {"max_gap_minutes", rule.max_gap.count()}};
      write_atomically(uploads / (file_safe(user_id) + ".tsv"), checkins.str());
      write_atomically(uploads / (file_safe(user_id) + ".json"), meta.dump() + "\n");
    }

    auto next = std::make_shared<State>();
    next->has_dataset = true;
    next->options = previous->options;
    next->categories = previous->categories;
    next->users = previous->users;
    next->users.insert_or_assign(user_id, record);
    {
      std::lock_guard lock(previous->cache_mutex);
      next->user_documents = previous->user_documents;
    }
    next->user_documents.erase(user_id);

    json warnings = json::array();
    if (parsed.malformed_count > 0)
      warnings.push_back(fmt::format("skipped {} malformed line(s), first at line {}", parsed.malformed_count,
                                     parsed.first_malformed_line));
    if (!record->qualified)
      warnings.push_back(fmt::format("user has {} qualifying day(s); more than {} are needed to qualify",
                                     record->qualifying_days.size(), rule.min_days));
    const json response{{"user_id", user_id},
                        {"qualifying_day_count", record->qualifying_days.size()},
                        {"record_count", record->events.size()},
                        {"qualified", record->qualified},
                        {"warnings", std::move(warnings)}};
    publish(std::move(next));
    return json_response(201, response);
  });
}

Response ApiService::run_sweep(const std::string& body, const Query& query) const {
  return with_errors([&] {
    const auto current = state();
    if (!current->has_dataset) throw HttpError{409, "no_dataset", "no dataset is loaded"};
    std::vector<double> duplicates;
    const std::vector<double> thresholds = dedupe_thresholds(parse_thresholds(body), &duplicates);
    SweepOptions options;
    if (const auto mode = query.find("mode"); mode != query.end()) options.mode = parse_mining_mode(mode->second);

    std::vector<SequenceDatabase> databases;
    for (const auto& [user, record] : current->users)
      if (record->qualified)
        databases.push_back(
            build_sequence_database(record->events, user, record->qualifying_days, current->options.sequences));
    if (databases.empty()) throw HttpError{409, "no_users", "no qualifying users to sweep"};

    json out = documents::to_json(support_sweep(databases, thresholds, options));
    out["duplicates_dropped"] = duplicates;
    return json_response(200, out);
  });
}

void ApiService::replay_uploads() {
  if (config_.data_dir.empty()) return;
  const auto uploads = config_.data_dir / "uploads";
  std::error_code error;
  if (!std::filesystem::is_directory(uploads, error)) return;

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(uploads))
    if (entry.path().extension() == ".tsv") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  for (const auto& file : files) {
    auto meta_path = file;
    meta_path.replace_extension(".json");
    const auto checkins = read_file(file);
    const auto meta_text = read_file(meta_path);
    if (!checkins || !meta_text) continue;
    const json meta = json::parse(*meta_text, nullptr, false);
    if (meta.is_discarded()) continue;
    Query query{{"replace", "true"},
                {"min_days", std::to_string(meta.value("min_days", 50))},
                {"max_gap_hours", fmt::format("{}", meta.value("max_gap_minutes", 120) / 60.0)}};
    const Response replayed = upload_history(*checkins, query);
    if (replayed.status >= 300)
      throw IoError("cannot restore upload '" + file.string() + "': " + replayed.body);
  }
}

HttpServer::HttpServer(ApiService& service) : service_(&service), server_(std::make_unique<httplib::Server>()) {
  // The library default adds SO_REUSEPORT, which lets a second server share a busy port.
  server_->set_socket_options([](int sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  const std::string origin = service.config().cors_origin;
  server_->set_default_headers({{"Access-Control-Allow-Origin", origin},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
  const auto forward = [this](const httplib::Request& in, httplib::Response& out) {
    Request request{in.method, in.path, {}, in.body};
    for (const auto& [key, value] : in.params) request.query.try_emplace(key, value);
    const Response response = service_->handle(request);
    out.status = response.status;
    out.set_content(response.body, response.content_type);
  };
  server_->Get(".*", forward);
  server_->Post(".*", forward);
  server_->Options(".*", forward);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw IoError("cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) throw IoError(fmt::format("cannot bind {}:{}", host, port));
  return port;
}

void HttpServer::serve() { server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

}  // namespace crowdweb
