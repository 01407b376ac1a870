// Copyright 2026 The ECHO Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Service wiring: configuration, the JSON API and its HTTP binding.

#ifndef ECHO_SERVICE_H_
#define ECHO_SERVICE_H_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "echo/analytics.h"
#include "echo/session.h"

namespace echo {

struct ServiceConfig {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::string store_path = "echo_store.ndjson";
  std::string scripts_dir;  // defaults to the bundled data/scripts
  int64_t session_ttl_seconds = 24 * 60 * 60;
  double alpha = 0.05;
  QuantifierPaths lexicons = QuantifierPaths::Bundled();
  std::string codebook_path;  // defaults to the bundled data/codebook.json
};

ServiceConfig DefaultServiceConfig();

using EnvLookup = std::function<std::optional<std::string>(const char *)>;

// Reads the optional JSON config file, then applies ECHO_PORT, ECHO_STORE,
// ECHO_SCRIPTS and ECHO_ALPHA from `env` (the process environment when
// unset).
absl::StatusOr<ServiceConfig> LoadServiceConfig(const std::optional<std::string> &path,
                                                EnvLookup env = nullptr);

// Port range, alpha in (0, 1), existing script directory and lexicon files,
// and an existing directory for the store.
absl::Status ValidateServiceConfig(const ServiceConfig &config);

// Parses and validates every *.json script in `dir`, sorted by file name.
// Any invalid script fails the whole load with its report.
absl::StatusOr<std::vector<InquiryScript>> LoadScriptDirectory(const std::string &dir);

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
};

// Transport-independent request handling. Failures share one body shape:
// {"error": {"code": ..., "message": ...}}; rejected answers add a top-level
// "retry_message".
class Api {
 public:
  Api(SessionEngine *engine, double alpha) : engine_(engine), alpha_(alpha) {}

  ApiResponse Handle(std::string_view method, std::string_view path,
                     const std::map<std::string, std::string> &query, std::string_view body);

 private:
  ApiResponse StartSession(std::string_view body);
  ApiResponse PostMessage(const std::string &session_id, std::string_view body);
  ApiResponse GetSession(const std::string &session_id);
  ApiResponse ListScripts();
  ApiResponse Report(const std::map<std::string, std::string> &query);

  SessionEngine *engine_;
  double alpha_;
};

ApiResponse ApiError(int status, std::string_view code, std::string_view message);

// HTTP binding of an Api. Stop may be called from any thread.
class HttpServer {
 public:
  explicit HttpServer(Api &api);
  ~HttpServer();
  HttpServer(const HttpServer &) = delete;
  HttpServer &operator=(const HttpServer &) = delete;

  // Port 0 binds a free port. Returns the bound port.
  absl::StatusOr<int> Bind(const std::string &host, int port);
  // Blocks until Stop.
  absl::Status Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Blocks serving `api` until the server stops. Fails when the address cannot
// be bound.
absl::Status RunHttpServer(Api &api, const std::string &host, int port);

}  // namespace echo

#endif  // ECHO_SERVICE_H_
