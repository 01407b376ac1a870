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

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "echo/session.h"

namespace echo {

using ojson = nlohmann::ordered_json;

std::string SessionStatusName(SessionStatus status) {
  switch (status) {
    case SessionStatus::kActive: return "active";
    case SessionStatus::kCompleted: return "completed";
    case SessionStatus::kAbandoned: return "abandoned";
  }
  return "active";
}

std::optional<SessionStatus> ParseSessionStatus(std::string_view name) {
  if (name == "active") return SessionStatus::kActive;
  if (name == "completed") return SessionStatus::kCompleted;
  if (name == "abandoned") return SessionStatus::kAbandoned;
  return std::nullopt;
}

AnswerMap SessionRecord::AnswerIndex() const {
  AnswerMap out;
  for (const Answer &a : answers) out[a.question_id] = a;
  return out;
}

const Answer *SessionRecord::FindAnswer(std::string_view question_id) const {
  for (const Answer &a : answers) {
    if (a.question_id == question_id) return &a;
  }
  return nullptr;
}

std::string FormatUtc(std::chrono::system_clock::time_point t) {
  const std::time_t secs = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<std::chrono::system_clock::time_point> ParseUtc(std::string_view text) {
  std::tm tm{};
  const std::string s(text);
  const char *end = strptime(s.c_str(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  if (end == nullptr || *end != '\0') return std::nullopt;
  return std::chrono::system_clock::from_time_t(timegm(&tm));
}

ojson RecordToJson(const SessionRecord &r) {
  ojson answers = ojson::array();
  for (const Answer &a : r.answers) answers.push_back(AnswerToJson(a));
  return ojson{{"session_id", r.session_id},
               {"script_id", r.script_id},
               {"status", SessionStatusName(r.status)},
               {"created_at", r.created_at},
               {"updated_at", r.updated_at},
               {"answers", std::move(answers)}};
}

absl::StatusOr<SessionRecord> RecordFromJson(const nlohmann::json &j) {
  try {
    SessionRecord r;
    r.session_id = j.at("session_id").get<std::string>();
    r.script_id = j.at("script_id").get<std::string>();
    const auto status = ParseSessionStatus(j.at("status").get<std::string>());
    if (!status) return absl::InvalidArgumentError("unknown session status");
    r.status = *status;
    r.created_at = j.value("created_at", "");
    r.updated_at = j.value("updated_at", "");
    for (const auto &aj : j.at("answers")) {
      absl::StatusOr<Answer> a = AnswerFromJson(aj);
      if (!a.ok()) return a.status();
      r.answers.push_back(*std::move(a));
    }
    return r;
  } catch (const nlohmann::json::exception &e) {
    return absl::InvalidArgumentError(absl::StrCat("malformed session record: ", e.what()));
  }
}

std::string RecordToLine(const SessionRecord &record) {
  return RecordToJson(record).dump();
}

absl::Status SessionStore::Append(const SessionRecord &record) {
  const std::string line = RecordToLine(record) + "\n";
  std::lock_guard<std::mutex> lock(mu_);
  if (!checked_tail_) {
    // A crash may have left a partial final line; start on a fresh line so
    // the next record stays readable.
    std::ifstream in(path_, std::ios::binary | std::ios::ate);
    if (in && in.tellg() > 0) {
      in.seekg(-1, std::ios::end);
      char last = '\n';
      in.get(last);
      if (last != '\n') {
        std::ofstream fix(path_, std::ios::binary | std::ios::app);
        fix << '\n';
      }
    }
    checked_tail_ = true;
  }
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot append to ", path_));
  out << line;
  out.flush();
  if (!out) return absl::DataLossError(absl::StrCat("write failed on ", path_));
  return absl::OkStatus();
}

absl::StatusOr<StoreSnapshot> SessionStore::Load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("store not found: ", path));
  StoreSnapshot snap;
  std::map<std::string, SessionRecord> latest;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    absl::StatusOr<SessionRecord> r =
        j.is_discarded() ? absl::InvalidArgumentError("not JSON") : RecordFromJson(j);
    if (!r.ok()) {
      std::cerr << "warning: " << path << ":" << line_no << ": skipping unreadable record ("
                << r.status().message() << ")\n";
      ++snap.skipped_lines;
      continue;
    }
    std::string id = r->session_id;
    latest[id] = *std::move(r);
  }
  for (auto &[id, record] : latest) snap.records.push_back(std::move(record));
  return snap;
}

absl::Status SessionStore::Compact() {
  std::lock_guard<std::mutex> lock(mu_);
  absl::StatusOr<StoreSnapshot> snap = Load(path_);
  if (!snap.ok()) return snap.status();
  const std::string tmp = path_ + ".compact";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", tmp));
    for (const SessionRecord &r : snap->records) out << RecordToLine(r) << "\n";
    out.flush();
    if (!out) return absl::DataLossError(absl::StrCat("write failed on ", tmp));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path_, ec);
  if (ec) return absl::UnavailableError(absl::StrCat("cannot replace ", path_, ": ", ec.message()));
  checked_tail_ = true;
  return absl::OkStatus();
}

}  // namespace echo
