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

#include <gtest/gtest.h>
#include <httplib.h>

#include <filesystem>
#include <nlohmann/json.hpp>
#include <atomic>
#include <thread>

#include "crowdweb/error.hpp"
#include "crowdweb/service.hpp"
#include "support/fixtures.hpp"

namespace crowdweb {
namespace {

using json = nlohmann::json;

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove_all(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

Response get(ApiService& service, std::string path, std::map<std::string, std::string> query = {}) {
  return service.handle({"GET", std::move(path), std::move(query), ""});
}

Response post(ApiService& service, std::string path, std::string body, std::map<std::string, std::string> query = {}) {
  return service.handle({"POST", std::move(path), std::move(query), std::move(body)});
}

json body_of(const Response& response) { return json::parse(response.body); }

void expect_error(const Response& response, int status, const std::string& code) {
  EXPECT_EQ(response.status, status) << response.body;
  EXPECT_EQ(body_of(response).at("code"), code) << response.body;
  EXPECT_TRUE(body_of(response).at("message").is_string());
}

ServiceConfig memory_only() {
  ServiceConfig config;
  return config;
}

TEST(Service, HealthAndRouting) {
  ApiService service(memory_only(), testing::two_user_dataset());
  EXPECT_EQ(body_of(get(service, "/health")), json({{"status", "ok"}}));
  expect_error(get(service, "/nowhere"), 404, "not_found");
  expect_error(post(service, "/crowd", ""), 405, "method_not_allowed");
  EXPECT_EQ(service.handle({"OPTIONS", "/users", {}, ""}).status, 204);
}

TEST(Service, NoDataset) {
  ApiService service(memory_only());
  expect_error(get(service, "/users"), 409, "no_dataset");
  expect_error(get(service, "/users/d/patterns"), 409, "no_dataset");
  expect_error(post(service, "/sweep", "[0.5]"), 409, "no_dataset");
}

TEST(Service, ListUsers) {
  ApiService service(memory_only(), testing::two_user_dataset());
  const json expected = json::parse(R"({"users":[
      {"user_id":"d","qualifying_day_count":3,"record_count":8,"uploaded":false},
      {"user_id":"m","qualifying_day_count":3,"record_count":6,"uploaded":false}]})");
  EXPECT_EQ(body_of(get(service, "/users")), expected);
}

TEST(Service, EmptyDatasetListsNobody) {
  ApiService service(memory_only(), ingest({}, IngestOptions{}));
  EXPECT_EQ(body_of(get(service, "/users")), json::parse(R"({"users":[]})"));
}

TEST(Service, UserPatterns) {
  ApiService service(memory_only(), testing::two_user_dataset());
  const json at066 = body_of(get(service, "/users/d/patterns", {{"min_support", "0.66"}}));
  EXPECT_EQ(at066.at("user_id"), "d");
  EXPECT_EQ(at066.at("database_size"), 3);
  EXPECT_EQ(at066.at("config").at("min_support"), 0.66);
  EXPECT_EQ(at066.at("config").at("mode"), "category");
  const json expected = json::parse(R"([
      {"items":["Eatery"],"support_count":3,"support_ratio":1.0},
      {"items":["Gym"],"support_count":3,"support_ratio":1.0},
      {"items":["Shops"],"support_count":2,"support_ratio":0.6666666666666666},
      {"items":["Eatery","Gym"],"support_count":3,"support_ratio":1.0},
      {"items":["Shops","Gym"],"support_count":2,"support_ratio":0.6666666666666666}])");
  EXPECT_EQ(at066.at("patterns"), expected);

  EXPECT_EQ(body_of(get(service, "/users/d/patterns", {{"min_support", "1.0"}})).at("patterns").size(), 3u);
  // The configured default applies without a query parameter.
  EXPECT_EQ(body_of(get(service, "/users/d/patterns")).at("config").at("min_support"), 0.5);

  expect_error(get(service, "/users/nobody/patterns"), 404, "not_found");
  expect_error(get(service, "/users/d/patterns", {{"min_support", "1.1"}}), 400, "bad_request");
  expect_error(get(service, "/users/d/patterns", {{"min_support", "abc"}}), 400, "bad_request");
  expect_error(get(service, "/users/d/patterns", {{"mode", "weird"}}), 400, "bad_request");
}

TEST(Service, TimeAnnotatedPatterns) {
  ApiService service(memory_only(), testing::two_user_dataset());
  const json body = body_of(get(service, "/users/m/patterns", {{"min_support", "1"}, {"mode", "time-annotated"}}));
  std::vector<std::vector<std::string>> items;
  for (const json& pattern : body.at("patterns")) items.push_back(pattern.at("items"));
  EXPECT_EQ(items, (std::vector<std::vector<std::string>>{{"12:Eatery"}, {"13:Gym"}, {"12:Eatery", "13:Gym"}}));
}

TEST(Service, UserGraph) {
  ApiService service(memory_only(), testing::two_user_dataset());
  const json graph = body_of(get(service, "/users/d/graph", {{"min_support", "0.66"}}));
  EXPECT_EQ(graph.at("nodes").size(), 3u);
  EXPECT_EQ(graph.at("edges").size(), 2u);
  EXPECT_EQ(graph.at("user_id"), "d");
  EXPECT_EQ(graph.at("edges")[0].at("from"), "Eatery");
  EXPECT_EQ(graph.at("edges")[0].at("to"), "Gym");
  EXPECT_EQ(graph.at("edges")[0].at("support_count"), 3);

  const json singles = body_of(get(service, "/users/d/graph", {{"min_support", "0.66"}, {"max_length", "1"}}));
  EXPECT_TRUE(singles.at("edges").empty());
  expect_error(get(service, "/users/zz/graph"), 404, "not_found");
}

TEST(Service, Crowd) {
  ApiService service(memory_only(), testing::two_user_dataset());
  const json noon = body_of(get(service, "/crowd", {{"hour", "12"}}));
  ASSERT_EQ(noon.at("cells").size(), 1u);
  const json& cell = noon.at("cells")[0];
  EXPECT_EQ(cell.at("cell_id"), testing::kSharedCell);
  EXPECT_EQ(cell.at("count"), 2);
  EXPECT_EQ(cell.at("users"), json::array({"d", "m"}));
  EXPECT_EQ(cell.at("dominant_category"), "Eatery");
  EXPECT_EQ(cell.at("bounds"), json::parse(R"({"lat_min":40.75,"lat_max":40.76,"lon_min":-73.99,"lon_max":-73.98})"));
  EXPECT_EQ(noon.at("hour"), 12);
  EXPECT_EQ(noon.at("min_support"), 0.5);
  EXPECT_EQ(noon.at("precision"), 0.01);
  EXPECT_EQ(noon.at("anonymized"), false);

  EXPECT_TRUE(body_of(get(service, "/crowd", {{"hour", "3"}})).at("cells").empty());
  EXPECT_EQ(body_of(get(service, "/crowd", {{"hour", "12"}, {"min_support", "1"}})).at("cells").size(), 1u);

  // Both gyms fall into one tenth-degree cell.
  const json coarse = body_of(get(service, "/crowd", {{"hour", "13"}, {"precision", "0.1"}}));
  ASSERT_EQ(coarse.at("cells").size(), 1u);
  EXPECT_EQ(coarse.at("cells")[0].at("cell_id"), "g100000_407_-740");
  EXPECT_EQ(coarse.at("cells")[0].at("count"), 2);

  expect_error(get(service, "/crowd", {{"hour", "24"}}), 400, "bad_request");
  expect_error(get(service, "/crowd", {{"hour", "-1"}}), 400, "bad_request");
  expect_error(get(service, "/crowd"), 400, "bad_request");
  expect_error(get(service, "/crowd", {{"hour", "12"}, {"precision", "0"}}), 400, "bad_request");
}

TEST(Service, AnonymizedCrowd) {
  ServiceConfig config;
  config.anonymize = true;
  ApiService service(config, testing::two_user_dataset());
  const json noon = body_of(get(service, "/crowd", {{"hour", "12"}}));
  EXPECT_FALSE(noon.at("cells")[0].contains("users"));
  EXPECT_EQ(noon.at("cells")[0].at("count"), 2);
  EXPECT_EQ(noon.at("anonymized"), true);
}

TEST(Service, Sweep) {
  ApiService service(memory_only(), testing::two_user_dataset());
  const json sweep = body_of(post(service, "/sweep", "[0.25, 0.5, 0.75]"));
  ASSERT_EQ(sweep.at("results").size(), 3u);
  for (std::size_t i = 1; i < 3; ++i)
    EXPECT_LE(sweep["results"][i]["mean_count"].get<double>(), sweep["results"][i - 1]["mean_count"].get<double>());
  EXPECT_EQ(body_of(post(service, "/sweep", R"({"thresholds":[0.66]})")).at("results")[0].at("users")[0],
            json::parse(R"({"user_id":"d","pattern_count":5,"avg_pattern_length":1.4})"));
  EXPECT_EQ(body_of(post(service, "/sweep", "0.5,0.5")).at("duplicates_dropped"), json::array({0.5}));
  expect_error(post(service, "/sweep", "[]"), 400, "bad_request");
  expect_error(post(service, "/sweep", "[2]"), 400, "bad_request");
  expect_error(post(service, "/sweep", "{nonsense"), 400, "bad_request");
}

TEST(Service, IdempotentReadsAndCacheTransparency) {
  ServiceConfig uncached;
  uncached.enable_cache = false;
  ApiService cold(uncached, testing::two_user_dataset());
  ApiService warm(memory_only(), testing::two_user_dataset());

  const std::vector<Request> requests{
      {"GET", "/users", {}, ""},
      {"GET", "/users/d/patterns", {{"min_support", "0.66"}}, ""},
      {"GET", "/users/m/graph", {}, ""},
      {"GET", "/crowd", {{"hour", "12"}}, ""},
      {"GET", "/crowd", {{"hour", "13"}, {"precision", "0.05"}}, ""},
      {"POST", "/sweep", {}, "[0.5, 1]"},
  };
  for (const Request& request : requests) {
    const std::string first = warm.handle(request).body;
    EXPECT_EQ(warm.handle(request).body, first) << request.path;
    EXPECT_EQ(cold.handle(request).body, first) << request.path;
  }
}

TEST(Service, UploadIsolation) {
  ApiService service(memory_only(), testing::two_user_dataset());
  std::vector<Request> reads{{"GET", "/users/d/patterns", {}, ""},
                             {"GET", "/users/m/patterns", {{"min_support", "1"}}, ""},
                             {"GET", "/users/d/graph", {{"min_support", "0.66"}}, ""},
                             {"GET", "/users/m/graph", {}, ""}};
  for (int hour = 0; hour < 24; ++hour) reads.push_back({"GET", "/crowd", {{"hour", std::to_string(hour)}}, ""});
  std::vector<std::string> before;
  for (const Request& request : reads) before.push_back(service.handle(request).body);

  const Response uploaded = post(service, "/users", testing::to_tsv(testing::third_user_checkins()));
  ASSERT_EQ(uploaded.status, 201) << uploaded.body;
  EXPECT_EQ(body_of(uploaded), json::parse(R"({"user_id":"t","qualifying_day_count":3,"record_count":6,
                                               "qualified":true,"warnings":[]})"));

  for (std::size_t i = 0; i < reads.size(); ++i) {
    const std::string after = service.handle(reads[i]).body;
    const bool third_user_hour = reads[i].path == "/crowd" && (reads[i].query.at("hour") == "12" ||
                                                              reads[i].query.at("hour") == "13");
    if (third_user_hour)
      EXPECT_NE(after, before[i]) << reads[i].query.at("hour");
    else
      EXPECT_EQ(after, before[i]) << reads[i].path;
  }

  const json noon = body_of(get(service, "/crowd", {{"hour", "12"}}));
  EXPECT_EQ(noon.at("cells")[0].at("users"), json::array({"d", "m", "t"}));
  const json afternoon = body_of(get(service, "/crowd", {{"hour", "13"}}));
  ASSERT_EQ(afternoon.at("cells").size(), 2u);
  EXPECT_EQ(afternoon.at("cells")[1].at("cell_id"), testing::kLibraryCell);
  EXPECT_EQ(afternoon.at("cells")[1].at("dominant_category"), "Library");
  // The gym cell keeps its description: t's visits never touch it.
  EXPECT_EQ(afternoon.at("cells")[0].at("dominant_category"), "Gym");

  const json patterns = body_of(get(service, "/users/t/patterns", {{"min_support", "1"}}));
  EXPECT_EQ(patterns.at("patterns").size(), 3u);
  EXPECT_EQ(body_of(get(service, "/users")).at("users").size(), 3u);
  EXPECT_EQ(body_of(get(service, "/users")).at("users")[2].at("uploaded"), true);
}

TEST(Service, UploadErrors) {
  ApiService service(memory_only(), testing::two_user_dataset());
  expect_error(post(service, "/users", "this is not\na check-in file\n"), 422, "unprocessable");
  expect_error(post(service, "/users", ""), 422, "unprocessable");

  auto mixed = testing::third_user_checkins();
  mixed[1].user_id = "x";
  expect_error(post(service, "/users", testing::to_tsv(mixed)), 422, "unprocessable");

  const std::string d_again = testing::to_tsv(testing::derived_user_checkins());
  expect_error(post(service, "/users", d_again), 409, "conflict");
  EXPECT_EQ(post(service, "/users", d_again, {{"replace", "true"}}).status, 201);
  expect_error(post(service, "/users", testing::to_tsv(testing::third_user_checkins()), {{"min_days", "-1"}}), 400,
               "bad_request");
}

TEST(Service, UnqualifiedUploadIsRegisteredButFlagged) {
  ApiService service(memory_only(), testing::two_user_dataset());
  const std::string body = testing::to_tsv(testing::third_user_checkins());
  const Response strict = post(service, "/users", body, {{"min_days", "5"}});
  ASSERT_EQ(strict.status, 201);
  EXPECT_EQ(body_of(strict).at("qualified"), false);
  EXPECT_EQ(body_of(strict).at("warnings").size(), 1u);
  expect_error(get(service, "/users/t/patterns"), 422, "not_qualified");
  EXPECT_EQ(body_of(get(service, "/users")).at("users").size(), 2u);

  const Response relaxed = post(service, "/users", body, {{"min_days", "5"}, {"relax", "true"}, {"replace", "1"}});
  ASSERT_EQ(relaxed.status, 201);
  EXPECT_EQ(body_of(relaxed).at("qualified"), true);
}

TEST(Service, MalformedLinesBecomeWarnings) {
  ApiService service(memory_only(), testing::two_user_dataset());
  std::vector<CheckIn> many;
  for (int copy = 0; copy < 4; ++copy)
    for (const CheckIn& checkin : testing::third_user_checkins()) many.push_back(checkin);
  const Response response = post(service, "/users", testing::to_tsv(many) + "broken line\n");
  ASSERT_EQ(response.status, 201) << response.body;
  EXPECT_EQ(body_of(response).at("warnings")[0], "skipped 1 malformed line(s), first at line 25");
}

TEST(Service, UploadsSurviveRestart) {
  TempDir dir("crowdweb_service_restart");
  ServiceConfig config;
  config.data_dir = dir.path();
  std::string patterns;
  {
    ApiService service(config, testing::two_user_dataset());
    ASSERT_EQ(post(service, "/users", testing::to_tsv(testing::third_user_checkins())).status, 201);
    patterns = get(service, "/users/t/patterns").body;
    EXPECT_FALSE(std::filesystem::is_empty(dir.path() / "cache"));
  }
  ApiService restarted(config, testing::two_user_dataset());
  EXPECT_EQ(get(restarted, "/users/t/patterns").body, patterns);
  EXPECT_EQ(body_of(get(restarted, "/users")).at("users").size(), 3u);

  ServiceConfig uncached = config;
  uncached.enable_cache = false;
  ApiService fresh(uncached, testing::two_user_dataset());
  EXPECT_EQ(get(fresh, "/users/t/patterns").body, patterns);
}

TEST(Service, ReplaceDatasetKeepsUploads) {
  ApiService service(memory_only(), testing::two_user_dataset());
  ASSERT_EQ(post(service, "/users", testing::to_tsv(testing::third_user_checkins())).status, 201);
  IngestOptions options;
  options.rule.min_days = 2;
  service.replace_dataset(ingest(testing::mate_user_checkins(), options));
  const json users = body_of(get(service, "/users")).at("users");
  ASSERT_EQ(users.size(), 2u);
  EXPECT_EQ(users[0].at("user_id"), "m");
  EXPECT_EQ(users[1].at("user_id"), "t");
}

TEST(Service, ConcurrentReadsDuringUploads) {
  ApiService service(memory_only(), testing::two_user_dataset());
  const std::string reference = get(service, "/users/d/patterns").body;
  std::atomic<bool> mismatch = false;
  {
    std::vector<std::jthread> readers;
    for (int r = 0; r < 4; ++r)
      readers.emplace_back([&] {
        for (int i = 0; i < 50; ++i) {
          if (get(service, "/users/d/patterns").body != reference) mismatch = true;
          const auto crowd = get(service, "/crowd", {{"hour", std::to_string(12 + i % 2)}});
          if (crowd.status != 200) mismatch = true;
        }
      });
    const std::string body = testing::to_tsv(testing::third_user_checkins());
    for (int i = 0; i < 20; ++i) post(service, "/users", body, {{"replace", "true"}});
  }
  EXPECT_FALSE(mismatch);
}

TEST(HttpTransport, ServesOverLoopback) {
  ApiService service(memory_only(), testing::two_user_dataset());
  HttpServer server(service);
  const int port = server.bind("127.0.0.1", 0);
  std::jthread thread([&] { server.serve(); });

  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);
  auto users = client.Get("/users");
  ASSERT_TRUE(users);
  EXPECT_EQ(users->status, 200);
  EXPECT_EQ(users->get_header_value("Access-Control-Allow-Origin"), "*");
  EXPECT_EQ(users->get_header_value("Content-Type"), "application/json");
  EXPECT_EQ(json::parse(users->body).at("users").size(), 2u);

  auto crowd = client.Get("/crowd?hour=12&min_support=0.5");
  ASSERT_TRUE(crowd);
  EXPECT_EQ(json::parse(crowd->body).at("cells")[0].at("count"), 2);

  auto bad = client.Get("/crowd?hour=99");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);

  auto upload = client.Post("/users", testing::to_tsv(testing::third_user_checkins()), "text/tab-separated-values");
  ASSERT_TRUE(upload);
  EXPECT_EQ(upload->status, 201);

  auto sweep = client.Post("/sweep", "[0.5]", "application/json");
  ASSERT_TRUE(sweep);
  EXPECT_EQ(json::parse(sweep->body).at("results")[0].at("users").size(), 3u);

  auto preflight = client.Options("/users");
  ASSERT_TRUE(preflight);
  EXPECT_EQ(preflight->status, 204);
  EXPECT_EQ(preflight->get_header_value("Access-Control-Allow-Methods"), "GET, POST, OPTIONS");

  server.stop();
}

TEST(HttpTransport, OccupiedPortIsAnError) {
  ApiService service(memory_only(), testing::two_user_dataset());
  HttpServer first(service);
  const int port = first.bind("127.0.0.1", 0);
  HttpServer second(service);
  EXPECT_THROW(second.bind("127.0.0.1", port), IoError);
}

}  // namespace
}  // namespace crowdweb
