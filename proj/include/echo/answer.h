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

#ifndef ECHO_ANSWER_H_
#define ECHO_ANSWER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "echo/quantify.h"
#include "json.hpp"

namespace echo {

// Quantities computed from a scrubbed text answer.
struct DerivedQuantities {
  std::vector<Entity> entities;
  std::optional<SentimentResult> sentiment;
  std::optional<FrequencyScore> frequency;
};

// Tagged answer value: scale integer, yes/no, or scrubbed text.
using AnswerValue = std::variant<int64_t, bool, std::string>;

struct Answer {
  std::string question_id;
  AnswerValue value;
  std::optional<DerivedQuantities> derived;

  bool is_scale() const { return std::holds_alternative<int64_t>(value); }
  bool is_yes_no() const { return std::holds_alternative<bool>(value); }
  bool is_text() const { return std::holds_alternative<std::string>(value); }
};

using AnswerMap = std::map<std::string, Answer>;

// Wire form used by the session store, exports and reports:
//   {"question_id": ..., "kind": "scale"|"yesno"|"text", "value": ...,
//    "derived": {"entities": [...], "sentiment": {...}, "frequency": {...}}}
nlohmann::ordered_json AnswerToJson(const Answer &answer);
absl::StatusOr<Answer> AnswerFromJson(const nlohmann::json &j);

// True when an extracted entity, or a word of one, has the given lemma. The
// lemma is compared both as written and suffix-stripped.
bool AnswerMentions(const Answer &answer, std::string_view lemma);

nlohmann::ordered_json EntityToJson(const Entity &entity);
nlohmann::ordered_json SentimentToJson(const SentimentResult &sentiment);
nlohmann::ordered_json FrequencyToJson(const FrequencyScore &frequency);

}  // namespace echo

#endif  // ECHO_ANSWER_H_
