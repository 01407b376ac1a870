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

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "echo/service.h"
#include "httplib.h"

namespace echo {

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(Api &api) : impl_(std::make_unique<Impl>()) {
  auto dispatch = [&api](const httplib::Request &req, httplib::Response &res) {
    std::map<std::string, std::string> query;
    for (const auto &[k, v] : req.params) query.emplace(k, v);
    const ApiResponse r = api.Handle(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
  };
  impl_->server.Get(".*", dispatch);
  impl_->server.Post(".*", dispatch);
  impl_->server.Put(".*", dispatch);
  impl_->server.Delete(".*", dispatch);
}

HttpServer::~HttpServer() { Stop(); }

absl::StatusOr<int> HttpServer::Bind(const std::string &host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                              : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound <= 0) {
    return absl::UnavailableError(absl::StrCat("cannot listen on ", host, ":", port));
  }
  return bound;
}

absl::Status HttpServer::Listen() {
  if (!impl_->server.listen_after_bind()) {
    return absl::UnavailableError("server stopped unexpectedly");
  }
  return absl::OkStatus();
}

void HttpServer::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

absl::Status RunHttpServer(Api &api, const std::string &host, int port) {
  HttpServer server(api);
  absl::StatusOr<int> bound = server.Bind(host, port);
  if (!bound.ok()) return bound.status();
  return server.Listen();
}

}  // namespace echo
