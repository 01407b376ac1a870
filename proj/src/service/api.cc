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

#include <vector>

#include "absl/strings/str_split.h"
#include "echo/service.h"

namespace echo {
namespace {

using ojson = nlohmann::ordered_json;

ApiResponse Json(int status, const ojson &body) { return {status, body.dump()}; }

std::vector<std::string> Segments(std::string_view path) {
  std::vector<std::string> out;
  for (absl::string_view s :
       absl::StrSplit(absl::string_view(path.data(), path.size()), '/', absl::SkipEmpty())) {
    out.emplace_back(s.data(), s.size());
  }
  return out;
}

// Parses a JSON object body and pulls one required string field.
std::optional<std::string> StringField(std::string_view body, const char *field) {
  const nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains(field) || !j[field].is_string()) {
    return std::nullopt;
  }
  return j[field].get<std::string>();
}

}  // namespace

ApiResponse ApiError(int status, std::string_view code, std::string_view message) {
  return Json(status, ojson{{"error", {{"code", code}, {"message", message}}}});
}

ApiResponse Api::Handle(std::string_view method, std::string_view path,
                        const std::map<std::string, std::string> &query, std::string_view body) {
  const std::vector<std::string> seg = Segments(path);
  const bool get = method == "GET";
  const bool post = method == "POST";
  if (seg.size() == 1 && seg[0] == "healthz" && get) return Json(200, ojson{{"status", "ok"}});
  if (seg.size() == 1 && seg[0] == "scripts" && get) return ListScripts();
  if (seg.size() == 1 && seg[0] == "sessions" && post) return StartSession(body);
  if (seg.size() == 2 && seg[0] == "sessions" && get) return GetSession(seg[1]);
  if (seg.size() == 3 && seg[0] == "sessions" && seg[2] == "message" && post) {
    return PostMessage(seg[1], body);
  }
  if (seg.size() == 2 && seg[0] == "analytics" && seg[1] == "report" && get) return Report(query);
  return ApiError(404, "not_found", "no such endpoint");
}

ApiResponse Api::StartSession(std::string_view body) {
  const std::optional<std::string> script_id = StringField(body, "script_id");
  if (!script_id) return ApiError(422, "invalid_body", "expected {\"script_id\": string}");
  absl::StatusOr<StartResult> started = engine_->StartSession(*script_id);
  if (absl::IsNotFound(started.status())) {
    return ApiError(404, "script_not_found", "script not found");
  }
  if (!started.ok()) return ApiError(500, "internal", std::string(started.status().message()));
  ojson out{{"session_id", started->session_id}, {"prompt", started->first.prompt}};
  out["question"] =
      started->first.question_id.empty() ? ojson() : PromptToJson(started->first);
  return Json(201, out);
}

ApiResponse Api::PostMessage(const std::string &session_id, std::string_view body) {
  const std::optional<std::string> text = StringField(body, "text");
  if (!text) return ApiError(422, "invalid_body", "expected {\"text\": string}");
  absl::StatusOr<Reply> reply = engine_->SubmitUtterance(session_id, *text);
  if (absl::IsNotFound(reply.status())) {
    return ApiError(404, "session_not_found", "session not found");
  }
  if (absl::IsFailedPrecondition(reply.status())) {
    absl::StatusOr<SessionRecord> record = engine_->GetRecord(session_id);
    const bool abandoned = record.ok() && record->status == SessionStatus::kAbandoned;
    return ApiError(409, abandoned ? "session_abandoned" : "session_completed",
                    "session not active");
  }
  if (!reply.ok()) return ApiError(500, "internal", std::string(reply.status().message()));
  if (!reply->accepted) {
    ApiResponse r = ApiError(400, "answer_rejected", *reply->retry_message);
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(r.body);
    j["retry_message"] = *reply->retry_message;
    return Json(400, j);
  }
  return Json(200, ReplyToJson(*reply));
}

ApiResponse Api::GetSession(const std::string &session_id) {
  absl::StatusOr<SessionRecord> record = engine_->GetRecord(session_id);
  if (!record.ok()) return ApiError(404, "session_not_found", "session not found");
  return Json(200, RecordToJson(*record));
}

ApiResponse Api::ListScripts() {
  std::vector<const InquiryScript *> sorted;
  for (const InquiryScript &s : engine_->scripts()) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(), [](const InquiryScript *a, const InquiryScript *b) {
    return a->script_id < b->script_id;
  });
  ojson out = ojson::array();
  for (const InquiryScript *s : sorted) {
    out.push_back({{"script_id", s->script_id}, {"title", s->title}});
  }
  return Json(200, out);
}

ApiResponse Api::Report(const std::map<std::string, std::string> &query) {
  const auto it = query.find("script_id");
  if (it == query.end()) return ApiError(422, "invalid_query", "script_id is required");
  const InquiryScript *script = engine_->FindScript(it->second);
  if (script == nullptr) return ApiError(404, "script_not_found", "script not found");
  const ojson report =
      BuildReport(*script, engine_->Snapshot(script->script_id), ReportOptions{alpha_});
  return {200, ReportToString(report)};
}

}  // namespace echo
