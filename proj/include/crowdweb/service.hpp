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
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "crowdweb/dataset.hpp"

namespace httplib {
class Server;
}

namespace crowdweb {

struct ServiceConfig {
  /// Uploads and the response cache live here; empty disables persistence.
  std::filesystem::path data_dir;
  double default_min_support = 0.5;
  GridPrecision default_precision{0.01};
  bool anonymize = false;
  bool enable_cache = true;
  std::string cors_origin = "*";
};

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Query service over one dataset plus uploaded users.
///
/// Readers work on an immutable state snapshot; uploads build a new state and
/// swap it in, so a request never observes a half-applied upload. Caches
/// belong to a state, which keeps them from outliving the data they came from.
class ApiService {
 public:
  explicit ApiService(ServiceConfig config, std::optional<Dataset> dataset = std::nullopt);
  ~ApiService();

  ApiService(const ApiService&) = delete;
  ApiService& operator=(const ApiService&) = delete;

  /// Routes a request. Never throws; failures become {code, message} bodies.
  Response handle(const Request& request);

  /// Swaps in a new base dataset, keeping previously uploaded users.
  void replace_dataset(Dataset dataset);

  Response list_users() const;
  Response get_user_patterns(const std::string& user_id, const std::map<std::string, std::string>& query) const;
  Response get_user_graph(const std::string& user_id, const std::map<std::string, std::string>& query) const;
  Response get_crowd(const std::map<std::string, std::string>& query) const;
  Response upload_history(const std::string& body, const std::map<std::string, std::string>& query);
  Response run_sweep(const std::string& body, const std::map<std::string, std::string>& query) const;

  const ServiceConfig& config() const noexcept { return config_; }

  /// Immutable view of the loaded data; defined in the implementation.
  struct State;

 private:
  std::shared_ptr<const State> state() const;
  void publish(std::shared_ptr<const State> next);
  Response with_errors(const std::function<Response()>& body) const;
  void replay_uploads();

  ServiceConfig config_;
  mutable std::mutex state_mutex_;
  std::shared_ptr<const State> state_;
  std::mutex writer_mutex_;
};

/// HTTP/1.1 transport for an ApiService.
class HttpServer {
 public:
  explicit HttpServer(ApiService& service);
  ~HttpServer();

  /// Binds `host:port`; port 0 picks a free port. Returns the bound port or
  /// throws IoError when the address is unavailable.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Requires a prior bind().
  void serve();
  void stop();

 private:
  ApiService* service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace crowdweb
