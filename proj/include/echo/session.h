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

// Anonymous conversational sessions: answer parsing, the NDJSON session
// store, and the per-respondent state machine.

#ifndef ECHO_SESSION_H_
#define ECHO_SESSION_H_

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "echo/answer.h"
#include "echo/quantify.h"
#include "echo/script.h"
#include "json.hpp"

namespace echo {

// ---------------------------------------------------------------------------
// Answer parsing. A failed parse is InvalidArgument whose message is the
// retry text shown to the respondent.

absl::StatusOr<int64_t> ParseScaleAnswer(std::string_view text,
                                         const ObjectiveScale &scale);
absl::StatusOr<bool> ParseYesNoAnswer(std::string_view text);
absl::StatusOr<std::string> ParseTextAnswer(std::string_view text);

// Dispatches on the question's response kind. Text kinds keep `text`
// trimmed.
absl::StatusOr<AnswerValue> ParseAnswer(std::string_view text,
                                        const Question &question);

// ---------------------------------------------------------------------------
// Session records

enum class SessionStatus { kActive, kCompleted, kAbandoned };
std::string SessionStatusName(SessionStatus status);
std::optional<SessionStatus> ParseSessionStatus(std::string_view name);

// The anonymized, persisted form of a session. Answers are kept in the order
// they were given.
struct SessionRecord {
  std::string session_id;
  std::string script_id;
  SessionStatus status = SessionStatus::kActive;
  std::string created_at;  // ISO-8601 UTC, second resolution
  std::string updated_at;
  std::vector<Answer> answers;

  AnswerMap AnswerIndex() const;
  const Answer *FindAnswer(std::string_view question_id) const;
};

nlohmann::ordered_json RecordToJson(const SessionRecord &record);
absl::StatusOr<SessionRecord> RecordFromJson(const nlohmann::json &j);
// Compact single-line JSON without a trailing newline.
std::string RecordToLine(const SessionRecord &record);

std::string FormatUtc(std::chrono::system_clock::time_point t);
std::optional<std::chrono::system_clock::time_point> ParseUtc(std::string_view text);

// ---------------------------------------------------------------------------
// Store: append-only NDJSON, one record per line. A later line supersedes
// earlier lines with the same session_id.

struct StoreSnapshot {
  std::vector<SessionRecord> records;  // latest per session, by session_id
  int skipped_lines = 0;
};

class SessionStore {
 public:
  explicit SessionStore(std::string path) : path_(std::move(path)) {}

  const std::string &path() const { return path_; }

  // Appends one record. Safe to call from many threads.
  absl::Status Append(const SessionRecord &record);

  // Rewrites the file holding only the latest record of each session.
  absl::Status Compact();

  // Malformed lines, such as a final line cut short by a crash, are skipped
  // with a warning on stderr. Fails with NotFound when the file is missing.
  static absl::StatusOr<StoreSnapshot> Load(const std::string &path);

 private:
  std::string path_;
  std::mutex mu_;
  bool checked_tail_ = false;
};

// ---------------------------------------------------------------------------
// Session engine

enum class Author { kSystem, kRespondent };

struct Utterance {
  Author author = Author::kSystem;
  std::string text;  // scrubbed for respondents
  std::optional<std::string> question_id;
};

struct PromptInfo {
  std::string question_id;
  std::string prompt;
  ResponseKind kind;
};

nlohmann::ordered_json PromptToJson(const PromptInfo &prompt);

struct StartResult {
  std::string session_id;
  PromptInfo first;
};

struct Reply {
  bool accepted = false;
  std::optional<std::string> retry_message;
  std::optional<std::string> next_prompt;
  std::optional<PromptInfo> next_question;
  bool completed = false;
};

nlohmann::ordered_json ReplyToJson(const Reply &reply);

inline constexpr char kCompletionMessage[] =
    "Thank you. Your responses have been recorded anonymously.";

using ClockFn = std::function<std::chrono::system_clock::time_point()>;
using TokenFn = std::function<std::string()>;

// 32 lowercase hex characters from the operating system's secure random
// source.
std::string RandomSessionToken();

struct SessionOptions {
  std::chrono::seconds ttl = std::chrono::hours(24);
  ClockFn clock;  // defaults to the system clock
  TokenFn token;  // defaults to RandomSessionToken
};

class SessionEngine {
 public:
  // `store` may be null for in-memory use; when set it must outlive the
  // engine.
  SessionEngine(std::vector<InquiryScript> scripts, Quantifier quantifier,
                SessionStore *store, SessionOptions options = {});

  absl::StatusOr<StartResult> StartSession(const std::string &script_id);
  absl::StatusOr<Reply> SubmitUtterance(const std::string &session_id,
                                        std::string_view text);

  absl::StatusOr<SessionRecord> GetRecord(const std::string &session_id) const;
  absl::StatusOr<std::string> ExportSession(const std::string &session_id) const;
  absl::StatusOr<std::vector<Utterance>> Transcript(const std::string &session_id) const;

  // Rebuilds sessions from the store. Records of unknown scripts are kept
  // for export but cannot progress.
  absl::Status Recover();

  // Marks active sessions idle longer than the TTL as abandoned. Returns the
  // number of sessions changed.
  int ExpireIdle();

  // Copies of every session record, sorted by session_id, optionally limited
  // to one script.
  std::vector<SessionRecord> Snapshot(std::optional<std::string> script_id = {}) const;

  const InquiryScript *FindScript(std::string_view script_id) const;
  const std::vector<InquiryScript> &scripts() const { return scripts_; }
  const Quantifier &quantifier() const { return quantifier_; }

 private:
  struct State {
    mutable std::mutex mu;
    SessionRecord record;
    std::vector<Utterance> transcript;
    std::set<std::string> fired_rules;
    std::chrono::system_clock::time_point updated;
  };

  std::shared_ptr<State> Lookup(const std::string &session_id) const;
  std::chrono::system_clock::time_point Now() const;
  bool ExpireLocked(State &state);
  absl::Status Persist(const State &state);
  std::optional<PromptInfo> PendingPrompt(const State &state) const;
  Answer BuildAnswer(const Question &q, AnswerValue value) const;

  std::vector<InquiryScript> scripts_;
  Quantifier quantifier_;
  SessionStore *store_;
  SessionOptions options_;

  mutable std::mutex mu_;  // guards sessions_
  std::map<std::string, std::shared_ptr<State>> sessions_;
};

}  // namespace echo

#endif  // ECHO_SESSION_H_
