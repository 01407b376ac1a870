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

#include <cstdlib>
#include <filesystem>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "echo/lexicon.h"
#include "echo/service.h"

namespace echo {
namespace {

namespace fs = std::filesystem;

absl::Status RequireFile(const std::string &what, const std::string &path) {
  if (!fs::is_regular_file(path)) {
    return absl::InvalidArgumentError(absl::StrCat(what, " not found: ", path));
  }
  return absl::OkStatus();
}

}  // namespace

ServiceConfig DefaultServiceConfig() {
  ServiceConfig c;
  c.scripts_dir = std::string(ECHO_DATA_DIR) + "/scripts";
  c.codebook_path = std::string(ECHO_DATA_DIR) + "/codebook.json";
  return c;
}

absl::StatusOr<ServiceConfig> LoadServiceConfig(const std::optional<std::string> &path,
                                                EnvLookup env) {
  if (!env) {
    env = [](const char *name) -> std::optional<std::string> {
      const char *v = std::getenv(name);
      return v == nullptr ? std::nullopt : std::optional<std::string>(v);
    };
  }
  ServiceConfig c = DefaultServiceConfig();
  if (path) {
    absl::StatusOr<std::string> text = ReadFile(*path);
    if (!text.ok()) return text.status();
    const nlohmann::json j = nlohmann::json::parse(*text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      return absl::InvalidArgumentError(absl::StrCat(*path, ": config must be a JSON object"));
    }
    try {
      c.host = j.value("host", c.host);
      c.port = j.value("port", c.port);
      c.store_path = j.value("store", c.store_path);
      c.scripts_dir = j.value("scripts", c.scripts_dir);
      c.session_ttl_seconds = j.value("session_ttl_seconds", c.session_ttl_seconds);
      c.alpha = j.value("alpha", c.alpha);
      c.lexicons.nouns = j.value("nouns", c.lexicons.nouns);
      c.lexicons.sentiment_lexicon = j.value("sentiment_lexicon", c.lexicons.sentiment_lexicon);
      c.lexicons.frequency_vocabulary =
          j.value("frequency_vocabulary", c.lexicons.frequency_vocabulary);
      c.codebook_path = j.value("codebook", c.codebook_path);
    } catch (const nlohmann::json::exception &e) {
      return absl::InvalidArgumentError(absl::StrCat(*path, ": ", e.what()));
    }
  }
  if (auto v = env("ECHO_PORT")) {
    if (!absl::SimpleAtoi(*v, &c.port)) {
      return absl::InvalidArgumentError(absl::StrCat("ECHO_PORT is not an integer: ", *v));
    }
  }
  if (auto v = env("ECHO_STORE")) c.store_path = *v;
  if (auto v = env("ECHO_SCRIPTS")) c.scripts_dir = *v;
  if (auto v = env("ECHO_ALPHA")) {
    if (!absl::SimpleAtod(*v, &c.alpha)) {
      return absl::InvalidArgumentError(absl::StrCat("ECHO_ALPHA is not a number: ", *v));
    }
  }
  return c;
}

absl::Status ValidateServiceConfig(const ServiceConfig &c) {
  if (c.port < 1 || c.port > 65535) {
    return absl::InvalidArgumentError(absl::StrCat("port must lie in [1, 65535], got ", c.port));
  }
  if (!(c.alpha > 0 && c.alpha < 1)) {
    return absl::InvalidArgumentError(absl::StrCat("alpha must lie in (0, 1), got ", c.alpha));
  }
  if (c.session_ttl_seconds <= 0) return absl::InvalidArgumentError("session TTL must be positive");
  if (!fs::is_directory(c.scripts_dir)) {
    return absl::InvalidArgumentError(absl::StrCat("script directory not found: ", c.scripts_dir));
  }
  for (const auto &[what, p] : {std::pair<std::string, std::string>{"noun lexicon", c.lexicons.nouns},
                                {"sentiment lexicon", c.lexicons.sentiment_lexicon},
                                {"frequency vocabulary", c.lexicons.frequency_vocabulary},
                                {"codebook", c.codebook_path}}) {
    if (absl::Status s = RequireFile(what, p); !s.ok()) return s;
  }
  const fs::path parent = fs::absolute(c.store_path).parent_path();
  if (!fs::is_directory(parent)) {
    return absl::InvalidArgumentError(absl::StrCat("store directory not found: ", parent.string()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<InquiryScript>> LoadScriptDirectory(const std::string &dir) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto &entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  if (ec) return absl::NotFoundError(absl::StrCat("cannot list ", dir, ": ", ec.message()));
  std::sort(files.begin(), files.end());
  std::vector<InquiryScript> scripts;
  for (const fs::path &f : files) {
    absl::StatusOr<InquiryScript> s = LoadScriptFile(f.string());
    if (!s.ok()) return s.status();
    const ValidationReport report = ValidateScript(*s);
    if (!report.ok()) {
      return absl::FailedPreconditionError(
          absl::StrCat(f.string(), " failed validation:\n", report.ToText()));
    }
    for (const InquiryScript &other : scripts) {
      if (other.script_id == s->script_id) {
        return absl::FailedPreconditionError(
            absl::StrCat("duplicate script_id '", s->script_id, "' in ", f.string()));
      }
    }
    scripts.push_back(*std::move(s));
  }
  return scripts;
}

}  // namespace echo
