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

#ifndef ECHO_TESTS_PII_SCAN_H_
#define ECHO_TESTS_PII_SCAN_H_

#include <string>
#include <vector>

#include "echo/pii.h"
#include "json.hpp"

namespace echo::scan {

// The random session id and the timestamps are not respondent text.
inline bool IsExempt(const std::string &key) {
  return key == "session_id" || key == "created_at" || key == "updated_at";
}

// Every string value and key of a persisted record, minus the exempt fields.
inline void CollectStrings(const nlohmann::json &j, std::vector<std::string> *out) {
  if (j.is_string()) {
    out->push_back(j.get<std::string>());
  } else if (j.is_object()) {
    for (const auto &[k, v] : j.items()) {
      out->push_back(k);
      if (!IsExempt(k)) CollectStrings(v, out);
    }
  } else if (j.is_array()) {
    for (const nlohmann::json &v : j) CollectStrings(v, out);
  }
}

// First persisted string of an NDJSON blob matching the email or phone
// pattern, or "" when there is none.
inline std::string FirstLeak(const std::string &ndjson) {
  size_t start = 0;
  while (start < ndjson.size()) {
    size_t end = ndjson.find('\n', start);
    if (end == std::string::npos) end = ndjson.size();
    if (end > start) {
      std::vector<std::string> strings;
      CollectStrings(nlohmann::json::parse(ndjson.substr(start, end - start)), &strings);
      for (const std::string &s : strings) {
        if (MatchesPiiPattern(s)) return s;
      }
    }
    start = end + 1;
  }
  return "";
}

}  // namespace echo::scan

#endif  // ECHO_TESTS_PII_SCAN_H_
