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

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "echo/script.h"

namespace echo {
namespace {

const Answer *Find(const AnswerMap &answered, const std::string &id) {
  const auto it = answered.find(id);
  return it == answered.end() ? nullptr : &it->second;
}

bool AnswerEquals(const Answer &a, const nlohmann::json &value) {
  if (const auto *v = std::get_if<int64_t>(&a.value)) {
    return value.is_number_integer() && value.get<int64_t>() == *v;
  }
  if (const auto *b = std::get_if<bool>(&a.value)) {
    return value.is_boolean() && value.get<bool>() == *b;
  }
  return value.is_string() &&
         ToLower(Trim(value.get<std::string>())) ==
             ToLower(Trim(std::get<std::string>(a.value)));
}

}  // namespace

std::string RuleAnchor(const InquiryScript &script, const BranchRule &rule) {
  return std::visit(
      [&](const auto &c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, IndexInBand>) {
          const IndexDefinition *index = script.FindIndex(c.index_id);
          if (index == nullptr || index->item_question_ids.empty()) return {};
          return *std::max_element(
              index->item_question_ids.begin(), index->item_question_ids.end(),
              [&](const std::string &a, const std::string &b) {
                return script.QuestionOrder(a) < script.QuestionOrder(b);
              });
        } else {
          return c.question_id;
        }
      },
      rule.trigger);
}

bool ConditionHolds(const InquiryScript &script, const Condition &condition,
                    const AnswerMap &answered) {
  return std::visit(
      [&](const auto &c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, IndexInBand>) {
          const IndexDefinition *index = script.FindIndex(c.index_id);
          if (index == nullptr) return false;
          const absl::StatusOr<IndexResult> result = ComputeIndex(script, *index, answered);
          return result.ok() && result->band == c.band;
        } else {
          const Answer *a = Find(answered, c.question_id);
          if (a == nullptr) return false;
          if constexpr (std::is_same_v<T, ScoreBelow>) {
            return a->is_scale() &&
                   static_cast<double>(std::get<int64_t>(a->value)) < c.threshold;
          } else if constexpr (std::is_same_v<T, ScoreAtLeast>) {
            return a->is_scale() &&
                   static_cast<double>(std::get<int64_t>(a->value)) >= c.threshold;
          } else if constexpr (std::is_same_v<T, AnswerIs>) {
            return AnswerEquals(*a, c.value);
          } else if constexpr (std::is_same_v<T, ContainsEntity>) {
            return AnswerMentions(*a, c.lemma);
          } else {
            return a->derived && a->derived->sentiment &&
                   a->derived->sentiment->score < c.threshold;
          }
        }
      },
      condition);
}

BranchPlan PlanNext(const InquiryScript &script, const AnswerMap &answered,
                    const std::set<std::string> &fired_rules) {
  std::set<std::string> probes;
  std::map<std::string, std::vector<const BranchRule *>> rules_by_anchor;
  for (const BranchRule &rule : script.branch_rules) {
    probes.insert(rule.follow_ups.begin(), rule.follow_ups.end());
    rules_by_anchor[RuleAnchor(script, rule)].push_back(&rule);
  }

  BranchPlan plan;
  std::vector<std::string> order;
  std::set<std::string> visited;
  std::function<void(const std::string &)> emit = [&](const std::string &qid) {
    if (!visited.insert(qid).second) return;
    order.push_back(qid);
    const auto it = rules_by_anchor.find(qid);
    if (it == rules_by_anchor.end()) return;
    for (const BranchRule *rule : it->second) {
      const bool fired = fired_rules.contains(rule->rule_id);
      if (!fired && !ConditionHolds(script, rule->trigger, answered)) continue;
      if (!fired &&
          std::find(plan.newly_fired.begin(), plan.newly_fired.end(), rule->rule_id) ==
              plan.newly_fired.end()) {
        plan.newly_fired.push_back(rule->rule_id);
      }
      for (const std::string &f : rule->follow_ups) emit(f);
    }
  };
  for (const Question &q : script.questions) {
    if (!probes.contains(q.question_id)) emit(q.question_id);
  }
  for (const std::string &qid : order) {
    if (!answered.contains(qid)) plan.pending.push_back(qid);
  }
  return plan;
}

std::vector<std::string> NextQuestionIds(const InquiryScript &script,
                                         const AnswerMap &answered,
                                         const std::set<std::string> &fired_rules) {
  return PlanNext(script, answered, fired_rules).pending;
}

}  // namespace echo
