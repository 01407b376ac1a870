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

#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "echo/session.h"

namespace echo {
namespace {

const std::set<std::string> &Affirmations() {
  static const auto *words = new std::set<std::string>{
      "yes", "yeah", "yea", "yep", "yup", "y", "sure", "definitely", "absolutely",
      "affirmative", "correct", "true", "ok", "okay", "certainly", "indeed", "right",
      "aye"};
  return *words;
}

const std::set<std::string> &Negations() {
  static const auto *words = new std::set<std::string>{
      "no", "nope", "nah", "n", "negative", "false", "nay"};
  return *words;
}

std::string ScaleRetry(const ObjectiveScale &scale) {
  std::string msg = absl::StrCat("Please answer with a whole number in the range ",
                                 scale.min, "–", scale.max);
  if (!scale.labels.empty()) {
    absl::StrAppend(&msg, " or one of: ", absl::StrJoin(scale.labels, ", "));
  }
  absl::StrAppend(&msg, ".");
  return msg;
}

}  // namespace

absl::StatusOr<int64_t> ParseScaleAnswer(std::string_view text, const ObjectiveScale &scale) {
  const std::vector<Token> tokens = Tokenize(text);
  for (const Token &t : tokens) {
    int64_t value = -1;
    if (t.kind == TokenKind::kNumber) {
      if (t.text.find_first_not_of("0123456789") != std::string::npos) break;
      if (t.text.size() > 9) break;
      value = std::stoll(t.text);
    } else if (t.is_word()) {
      const int w = NumberWordValue(t.lower);
      if (w >= 0 && w <= 10) value = w;
    }
    if (value < 0) continue;
    if (value < scale.min || value > scale.max) break;
    return value;
  }
  // Label answers: the longest label the reply contains.
  const std::string lower = ToLower(Trim(text));
  int64_t best = -1;
  size_t best_len = 0;
  for (size_t i = 0; i < scale.labels.size(); ++i) {
    const std::string label = ToLower(Trim(scale.labels[i]));
    if (!label.empty() && lower.find(label) != std::string::npos && label.size() > best_len) {
      best = scale.min + static_cast<int64_t>(i);
      best_len = label.size();
    }
  }
  if (best >= 0) return best;
  return absl::InvalidArgumentError(ScaleRetry(scale));
}

// Explicit yes/no words decide by first occurrence. Otherwise a negated
// reply ("I have not") is a no and a bare auxiliary ("I have") a yes.
absl::StatusOr<bool> ParseYesNoAnswer(std::string_view text) {
  bool negated = false;
  bool auxiliary = false;
  for (const Token &t : Tokenize(text)) {
    if (!t.is_word()) continue;
    if (Negations().contains(t.lower)) return false;
    if (Affirmations().contains(t.lower)) return true;
    if (IsNegator(t.lower) || t.lower == "none") negated = true;
    if (t.lower == "have" || t.lower == "did" || t.lower == "do" || t.lower == "am" ||
        t.lower == "was" || t.lower == "often" || t.lower == "sometimes") {
      auxiliary = true;
    }
  }
  if (negated) return false;
  if (auxiliary) return true;
  return absl::InvalidArgumentError("Please answer yes or no.");
}

absl::StatusOr<std::string> ParseTextAnswer(std::string_view text) {
  const std::string_view trimmed = Trim(text);
  if (trimmed.empty()) {
    return absl::InvalidArgumentError("Please type a few words in reply.");
  }
  return std::string(trimmed);
}

absl::StatusOr<AnswerValue> ParseAnswer(std::string_view text, const Question &question) {
  return std::visit(
      [&](const auto &kind) -> absl::StatusOr<AnswerValue> {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, ObjectiveScale>) {
          absl::StatusOr<int64_t> v = ParseScaleAnswer(text, kind);
          if (!v.ok()) return v.status();
          return AnswerValue(*v);
        } else if constexpr (std::is_same_v<T, YesNo>) {
          absl::StatusOr<bool> v = ParseYesNoAnswer(text);
          if (!v.ok()) return v.status();
          return AnswerValue(*v);
        } else if constexpr (std::is_same_v<T, Frequency>) {
          absl::StatusOr<std::string> v = ParseTextAnswer(text);
          if (!v.ok()) {
            return absl::InvalidArgumentError(
                absl::StrCat("Please say how often, in ", ActivityUnitName(kind.units.activity),
                             " per ", PeriodUnitName(kind.units.period), "."));
          }
          return AnswerValue(*std::move(v));
        } else {
          absl::StatusOr<std::string> v = ParseTextAnswer(text);
          if (!v.ok()) return v.status();
          return AnswerValue(*std::move(v));
        }
      },
      question.response_kind);
}

}  // namespace echo
