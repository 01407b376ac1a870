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
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "echo/pii.h"
#include "echo/session.h"

namespace echo {
namespace {

using ojson = nlohmann::ordered_json;

ojson KindToJson(const ResponseKind &kind) {
  ojson j{{"type", ResponseKindName(kind)}};
  if (const auto *s = std::get_if<ObjectiveScale>(&kind)) {
    j["min"] = s->min;
    j["max"] = s->max;
    j["labels"] = s->labels;
  } else if (const auto *f = std::get_if<Frequency>(&kind)) {
    j["activity_unit"] = ActivityUnitName(f->units.activity);
    j["period_unit"] = PeriodUnitName(f->units.period);
  }
  return j;
}

// Rules that fired over the given answer sequence.
std::set<std::string> ReplayFiredRules(const InquiryScript &script,
                                       const std::vector<Answer> &answers) {
  std::set<std::string> fired;
  AnswerMap so_far;
  for (const Answer &a : answers) {
    so_far[a.question_id] = a;
    for (std::string &id : PlanNext(script, so_far, fired).newly_fired) {
      fired.insert(std::move(id));
    }
  }
  return fired;
}

}  // namespace

ojson PromptToJson(const PromptInfo &p) {
  return ojson{{"question_id", p.question_id}, {"prompt", p.prompt}, {"kind", KindToJson(p.kind)}};
}

ojson ReplyToJson(const Reply &r) {
  ojson j;
  j["accepted"] = r.accepted;
  j["retry_message"] = r.retry_message ? ojson(*r.retry_message) : ojson();
  j["next_prompt"] = r.next_prompt ? ojson(*r.next_prompt) : ojson();
  j["next_question"] = r.next_question ? PromptToJson(*r.next_question) : ojson();
  j["completed"] = r.completed;
  return j;
}

std::string RandomSessionToken() {
  std::random_device rd;
  std::string out;
  out.reserve(32);
  for (int i = 0; i < 4; ++i) {
    char buf[9];
    std::snprintf(buf, sizeof(buf), "%08x", static_cast<unsigned>(rd()));
    out += buf;
  }
  return out;
}

SessionEngine::SessionEngine(std::vector<InquiryScript> scripts, Quantifier quantifier,
                             SessionStore *store, SessionOptions options)
    : scripts_(std::move(scripts)),
      quantifier_(std::move(quantifier)),
      store_(store),
      options_(std::move(options)) {
  if (!options_.clock) options_.clock = [] { return std::chrono::system_clock::now(); };
  if (!options_.token) options_.token = RandomSessionToken;
}

const InquiryScript *SessionEngine::FindScript(std::string_view script_id) const {
  for (const InquiryScript &s : scripts_) {
    if (s.script_id == script_id) return &s;
  }
  return nullptr;
}

std::chrono::system_clock::time_point SessionEngine::Now() const { return options_.clock(); }

std::shared_ptr<SessionEngine::State> SessionEngine::Lookup(const std::string &id) const {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

absl::Status SessionEngine::Persist(const State &state) {
  if (store_ == nullptr) return absl::OkStatus();
  return store_->Append(state.record);
}

std::optional<PromptInfo> SessionEngine::PendingPrompt(const State &state) const {
  const InquiryScript *script = FindScript(state.record.script_id);
  if (script == nullptr) return std::nullopt;
  const std::vector<std::string> pending =
      PlanNext(*script, state.record.AnswerIndex(), state.fired_rules).pending;
  if (pending.empty()) return std::nullopt;
  const Question *q = script->FindQuestion(pending.front());
  return PromptInfo{q->question_id, q->prompt, q->response_kind};
}

bool SessionEngine::ExpireLocked(State &state) {
  if (state.record.status != SessionStatus::kActive) return false;
  const auto now = Now();
  if (now - state.updated <= options_.ttl) return false;
  state.record.status = SessionStatus::kAbandoned;
  state.record.updated_at = FormatUtc(now);
  return true;
}

Answer SessionEngine::BuildAnswer(const Question &q, AnswerValue value) const {
  Answer a{q.question_id, std::move(value), std::nullopt};
  if (const auto *text = std::get_if<std::string>(&a.value)) {
    DerivedQuantities d;
    d.entities = quantifier_.ExtractEntities(*text);
    d.sentiment = quantifier_.AnalyzeSentiment(*text);
    if (const auto *f = std::get_if<Frequency>(&q.response_kind)) {
      d.frequency = quantifier_.ScoreFrequency(*text, f->units);
    }
    a.derived = std::move(d);
  }
  return a;
}

absl::StatusOr<StartResult> SessionEngine::StartSession(const std::string &script_id) {
  const InquiryScript *script = FindScript(script_id);
  if (script == nullptr) return absl::NotFoundError(absl::StrCat("script not found: ", script_id));

  auto state = std::make_shared<State>();
  const auto now = Now();
  state->record.script_id = script_id;
  state->record.created_at = FormatUtc(now);
  state->record.updated_at = state->record.created_at;
  state->updated = now;
  {
    std::lock_guard<std::mutex> lock(mu_);
    std::string id;
    do {
      id = options_.token();
    } while (sessions_.contains(id));
    state->record.session_id = id;
    sessions_[id] = state;
  }

  std::lock_guard<std::mutex> lock(state->mu);
  const std::optional<PromptInfo> first = PendingPrompt(*state);
  if (!first) state->record.status = SessionStatus::kCompleted;
  if (absl::Status s = Persist(*state); !s.ok()) return s;
  StartResult result;
  result.session_id = state->record.session_id;
  if (first) {
    state->transcript.push_back({Author::kSystem, first->prompt, first->question_id});
    result.first = *first;
  } else {
    result.first.prompt = kCompletionMessage;
  }
  return result;
}

absl::StatusOr<Reply> SessionEngine::SubmitUtterance(const std::string &session_id,
                                                     std::string_view text) {
  std::shared_ptr<State> state = Lookup(session_id);
  if (state == nullptr) return absl::NotFoundError("session not found");
  std::lock_guard<std::mutex> lock(state->mu);
  if (ExpireLocked(*state)) {
    if (absl::Status s = Persist(*state); !s.ok()) return s;
  }
  if (state->record.status != SessionStatus::kActive) {
    return absl::FailedPreconditionError("session not active");
  }
  const InquiryScript *script = FindScript(state->record.script_id);
  const std::optional<PromptInfo> pending = PendingPrompt(*state);
  if (script == nullptr || !pending) return absl::FailedPreconditionError("session not active");
  const Question *q = script->FindQuestion(pending->question_id);

  // Raw text goes no further than this point.
  const ScrubResult scrubbed = ScrubPii(text);
  state->transcript.push_back({Author::kRespondent, scrubbed.scrubbed, q->question_id});
  const auto now = Now();
  state->updated = now;

  Reply reply;
  absl::StatusOr<AnswerValue> value = ParseAnswer(scrubbed.scrubbed, *q);
  if (!value.ok()) {
    reply.retry_message = std::string(value.status().message());
    reply.next_question = pending;
    state->transcript.push_back({Author::kSystem, *reply.retry_message, q->question_id});
    return reply;
  }

  state->record.answers.push_back(BuildAnswer(*q, *std::move(value)));
  const BranchPlan plan = PlanNext(*script, state->record.AnswerIndex(), state->fired_rules);
  state->fired_rules.insert(plan.newly_fired.begin(), plan.newly_fired.end());
  state->record.updated_at = FormatUtc(now);
  reply.accepted = true;
  if (const std::optional<PromptInfo> next = PendingPrompt(*state)) {
    reply.next_prompt = next->prompt;
    reply.next_question = next;
    state->transcript.push_back({Author::kSystem, next->prompt, next->question_id});
  } else {
    state->record.status = SessionStatus::kCompleted;
    reply.completed = true;
    reply.next_prompt = kCompletionMessage;
    state->transcript.push_back({Author::kSystem, kCompletionMessage, std::nullopt});
  }
  if (absl::Status s = Persist(*state); !s.ok()) return s;
  return reply;
}

absl::StatusOr<SessionRecord> SessionEngine::GetRecord(const std::string &session_id) const {
  std::shared_ptr<State> state = Lookup(session_id);
  if (state == nullptr) return absl::NotFoundError("session not found");
  std::lock_guard<std::mutex> lock(state->mu);
  return state->record;
}

absl::StatusOr<std::string> SessionEngine::ExportSession(const std::string &session_id) const {
  absl::StatusOr<SessionRecord> record = GetRecord(session_id);
  if (!record.ok()) return record.status();
  return RecordToLine(*record);
}

absl::StatusOr<std::vector<Utterance>> SessionEngine::Transcript(
    const std::string &session_id) const {
  std::shared_ptr<State> state = Lookup(session_id);
  if (state == nullptr) return absl::NotFoundError("session not found");
  std::lock_guard<std::mutex> lock(state->mu);
  return state->transcript;
}

absl::Status SessionEngine::Recover() {
  if (store_ == nullptr) return absl::OkStatus();
  absl::StatusOr<StoreSnapshot> snap = SessionStore::Load(store_->path());
  if (absl::IsNotFound(snap.status())) return absl::OkStatus();
  if (!snap.ok()) return snap.status();
  std::lock_guard<std::mutex> lock(mu_);
  for (SessionRecord &record : snap->records) {
    auto state = std::make_shared<State>();
    if (const InquiryScript *script = FindScript(record.script_id)) {
      state->fired_rules = ReplayFiredRules(*script, record.answers);
    }
    state->updated = ParseUtc(record.updated_at).value_or(Now());
    state->record = std::move(record);
    sessions_[state->record.session_id] = std::move(state);
  }
  return absl::OkStatus();
}

int SessionEngine::ExpireIdle() {
  std::vector<std::shared_ptr<State>> all;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto &[id, s] : sessions_) all.push_back(s);
  }
  int changed = 0;
  for (const auto &state : all) {
    std::lock_guard<std::mutex> lock(state->mu);
    if (ExpireLocked(*state)) {
      ++changed;
      (void)Persist(*state);
    }
  }
  return changed;
}

std::vector<SessionRecord> SessionEngine::Snapshot(std::optional<std::string> script_id) const {
  std::vector<std::shared_ptr<State>> all;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto &[id, s] : sessions_) all.push_back(s);
  }
  std::vector<SessionRecord> out;
  for (const auto &state : all) {
    std::lock_guard<std::mutex> lock(state->mu);
    if (script_id && state->record.script_id != *script_id) continue;
    out.push_back(state->record);
  }
  return out;
}

}  // namespace echo
