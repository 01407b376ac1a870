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
#include <regex>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "echo/script.h"

namespace echo {
namespace {

constexpr char kScriptLevel[] = "*";

std::string ActivityPattern(ActivityUnit unit) {
  switch (unit) {
    case ActivityUnit::kTimes: return "times?";
    case ActivityUnit::kDays: return "days?";
    case ActivityUnit::kHours: return "(?:hours?|hrs?)";
    case ActivityUnit::kMinutes: return "(?:minutes?|mins?)";
    case ActivityUnit::kSessions: return "sessions?";
  }
  return "times?";
}

class Validator {
 public:
  explicit Validator(const InquiryScript &script) : s_(script) {}

  ValidationReport Run() {
    CheckQuestions();
    CheckBranchRules();
    CheckCycles();
    CheckConsistencyPairs();
    CheckIndices();
    CheckHypotheses();
    return std::move(report_);
  }

 private:
  void Error(std::string question_id, std::string message, std::string suggestion) {
    report_.errors.push_back(
        {std::move(question_id), std::move(message), std::move(suggestion)});
  }

  void CheckQuestions() {
    std::set<std::string> seen;
    for (const Question &q : s_.questions) {
      if (q.question_id.empty()) {
        Error(kScriptLevel, "empty question id", "give every question a unique question_id");
      } else if (!seen.insert(q.question_id).second) {
        Error(q.question_id, "duplicate question id", "rename one of the duplicated questions");
      }
      if (const auto *scale = std::get_if<ObjectiveScale>(&q.response_kind)) {
        if (scale->min >= scale->max) {
          Error(q.question_id, absl::StrCat("scale min ", scale->min, " is not below max ", scale->max),
                "declare min < max");
        } else if (!scale->labels.empty() &&
                   static_cast<int64_t>(scale->labels.size()) != scale->max - scale->min + 1) {
          Error(q.question_id, "scale labels do not match the number of scale points",
                absl::StrCat("provide ", scale->max - scale->min + 1, " labels or none"));
        }
      } else if (const auto *f = std::get_if<Frequency>(&q.response_kind)) {
        if (!PromptHasUnitPhrase(q.prompt, f->units)) {
          const std::string units = absl::StrCat(ActivityUnitName(f->units.activity), " per ",
                                                 PeriodUnitName(f->units.period));
          Error(q.question_id, "missing unit phrase",
                absl::StrCat(q.prompt, " — please answer in ", units));
        }
      }
    }
  }

  const Question *RequireQuestion(const std::string &id, const std::string &owner) {
    const Question *q = s_.FindQuestion(id);
    if (q == nullptr) {
      Error(id, absl::StrCat(owner, " references unknown question '", id, "'"),
            "declare the question or fix the reference");
    }
    return q;
  }

  void CheckScaleThreshold(const std::string &qid, double threshold, const std::string &owner) {
    const Question *q = RequireQuestion(qid, owner);
    if (q == nullptr) return;
    const auto *scale = std::get_if<ObjectiveScale>(&q->response_kind);
    if (scale == nullptr) {
      Error(qid, absl::StrCat(owner, " compares a score on a non-scale question"),
            "use an objective_scale question");
    } else if (threshold < static_cast<double>(scale->min) ||
               threshold > static_cast<double>(scale->max)) {
      Error(qid, absl::StrCat(owner, " threshold ", threshold, " lies outside the scale range"),
            absl::StrCat("use a threshold within ", scale->min, "..", scale->max));
    }
  }

  void CheckTextQuestion(const std::string &qid, const std::string &owner) {
    const Question *q = RequireQuestion(qid, owner);
    if (q == nullptr) return;
    if (!std::holds_alternative<FreeText>(q->response_kind) &&
        !std::holds_alternative<Frequency>(q->response_kind)) {
      Error(qid, absl::StrCat(owner, " needs a text answer"),
            "use a free_text or frequency question");
    }
  }

  void CheckCondition(const BranchRule &rule) {
    const std::string owner = absl::StrCat("rule ", rule.rule_id);
    std::visit(
        [&](const auto &c) {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, ScoreBelow> || std::is_same_v<T, ScoreAtLeast>) {
            CheckScaleThreshold(c.question_id, c.threshold, owner);
          } else if constexpr (std::is_same_v<T, IndexInBand>) {
            const IndexDefinition *index = s_.FindIndex(c.index_id);
            if (index == nullptr) {
              Error(kScriptLevel, absl::StrCat(owner, " references unknown index '", c.index_id, "'"),
                    "declare the index or fix the reference");
            } else if (std::none_of(index->bands.begin(), index->bands.end(),
                                    [&](const IndexBand &b) { return b.label == c.band; })) {
              Error(kScriptLevel, absl::StrCat(owner, " references unknown band '", c.band, "'"),
                    absl::StrCat("use a band declared by index ", c.index_id));
            }
          } else if constexpr (std::is_same_v<T, AnswerIs>) {
            const Question *q = RequireQuestion(c.question_id, owner);
            if (q == nullptr) return;
            bool ok = false;
            if (const auto *scale = std::get_if<ObjectiveScale>(&q->response_kind)) {
              ok = c.value.is_number_integer() && c.value.template get<int64_t>() >= scale->min &&
                   c.value.template get<int64_t>() <= scale->max;
            } else if (std::holds_alternative<YesNo>(q->response_kind)) {
              ok = c.value.is_boolean();
            } else {
              ok = c.value.is_string();
            }
            if (!ok) {
              Error(c.question_id, absl::StrCat(owner, " compares against a value of the wrong kind"),
                    "match the question's response kind");
            }
          } else if constexpr (std::is_same_v<T, ContainsEntity>) {
            CheckTextQuestion(c.question_id, owner);
          } else {
            CheckTextQuestion(c.question_id, owner);
            if (c.threshold < -1.0 || c.threshold > 1.0) {
              Error(c.question_id, absl::StrCat(owner, " sentiment threshold outside [-1, 1]"),
                    "use a threshold between -1 and 1");
            }
          }
        },
        rule.trigger);
  }

  void CheckBranchRules() {
    std::set<std::string> seen;
    for (const BranchRule &rule : s_.branch_rules) {
      if (!seen.insert(rule.rule_id).second) {
        Error(kScriptLevel, absl::StrCat("duplicate rule id '", rule.rule_id, "'"),
              "rename one of the duplicated rules");
      }
      if (rule.follow_ups.empty()) {
        Error(kScriptLevel, absl::StrCat("rule ", rule.rule_id, " has no follow-up questions"),
              "list at least one follow-up question id");
      }
      for (const std::string &f : rule.follow_ups) {
        RequireQuestion(f, absl::StrCat("rule ", rule.rule_id));
      }
      CheckCondition(rule);
    }
  }

  // Edges run from a rule's anchor question to each follow-up.
  void CheckCycles() {
    struct Edge {
      std::string to;
      std::string rule_id;
    };
    std::map<std::string, std::vector<Edge>> graph;
    for (const BranchRule &rule : s_.branch_rules) {
      const std::string anchor = RuleAnchor(s_, rule);
      if (anchor.empty()) continue;
      for (const std::string &f : rule.follow_ups) graph[anchor].push_back({f, rule.rule_id});
    }

    std::map<std::string, int> state;  // 0 new, 1 on stack, 2 done
    std::vector<std::pair<std::string, std::string>> stack;  // (question, rule into it)
    std::set<std::set<std::string>> reported;

    std::function<void(const std::string &)> visit = [&](const std::string &node) {
      state[node] = 1;
      for (const Edge &e : graph[node]) {
        if (state[e.to] == 1) {
          std::vector<std::string> rules{e.rule_id};
          for (auto it = stack.rbegin(); it != stack.rend() && it->first != e.to; ++it) {
            rules.push_back(it->second);
          }
          std::reverse(rules.begin(), rules.end());
          std::set<std::string> key(rules.begin(), rules.end());
          if (reported.insert(key).second) {
            std::vector<std::string> sorted(key.begin(), key.end());
            Error(e.to, absl::StrCat("branch rules form a cycle: ", absl::StrJoin(sorted, ", ")),
                  "remove a follow-up so no question can re-trigger itself");
          }
        } else if (state[e.to] == 0) {
          stack.emplace_back(e.to, e.rule_id);
          visit(e.to);
          stack.pop_back();
        }
      }
      state[node] = 2;
    };
    for (const auto &[node, edges] : graph) {
      if (state[node] == 0) visit(node);
    }
  }

  void CheckConsistencyPairs() {
    for (const ConsistencyPair &p : s_.consistency_pairs) {
      const std::string owner = absl::StrCat("consistency pair ", p.question_a, "/", p.question_b);
      if (p.question_a == p.question_b) {
        Error(p.question_a, absl::StrCat(owner, " pairs a question with itself"),
              "pair two different questions");
      }
      if (p.expected_sign != 1 && p.expected_sign != -1) {
        Error(p.question_a, absl::StrCat(owner, " expected_sign must be +1 or -1"),
              "use 1 for similar answers, -1 for opposite answers");
      }
      for (const std::string &id : {p.question_a, p.question_b}) {
        const Question *q = RequireQuestion(id, owner);
        if (q != nullptr && !std::holds_alternative<ObjectiveScale>(q->response_kind)) {
          Error(id, absl::StrCat(owner, " needs objective_scale questions"),
                "pair scale questions only");
        }
      }
    }
  }

  void CheckIndices() {
    std::set<std::string> seen;
    for (const IndexDefinition &x : s_.indices) {
      const std::string owner = absl::StrCat("index ", x.index_id);
      if (!seen.insert(x.index_id).second) {
        Error(kScriptLevel, absl::StrCat("duplicate index id '", x.index_id, "'"),
              "rename one of the duplicated indices");
      }
      if (x.item_question_ids.empty()) {
        Error(kScriptLevel, absl::StrCat(owner, " has no items"), "list the item question ids");
        continue;
      }
      if (x.item_polarity.size() != x.item_question_ids.size()) {
        Error(kScriptLevel, absl::StrCat(owner, " item_polarity length differs from item count"),
              "give one polarity per item");
      }
      for (int p : x.item_polarity) {
        if (p != 1 && p != -1) {
          Error(kScriptLevel, absl::StrCat(owner, " item polarity must be +1 or -1"),
                "use 1 for normal items, -1 for reversed items");
          break;
        }
      }
      double raw_min = 0;
      double raw_max = 0;
      bool items_ok = true;
      for (const std::string &id : x.item_question_ids) {
        const Question *q = RequireQuestion(id, owner);
        const auto *scale = q ? std::get_if<ObjectiveScale>(&q->response_kind) : nullptr;
        if (q != nullptr && scale == nullptr) {
          Error(id, absl::StrCat(owner, " item is not an objective_scale question"),
                "use scale questions as index items");
        }
        if (scale == nullptr) {
          items_ok = false;
          continue;
        }
        raw_min += static_cast<double>(scale->min);
        raw_max += static_cast<double>(scale->max);
      }
      if (x.scale == 0) {
        Error(kScriptLevel, absl::StrCat(owner, " transform scale must be non-zero"),
              "use a positive scale");
      }
      if (x.bands.empty()) {
        Error(kScriptLevel, absl::StrCat(owner, " has no bands"), "declare at least one band");
        continue;
      }
      for (size_t i = 1; i < x.bands.size(); ++i) {
        if (!(x.bands[i].upper > x.bands[i - 1].upper)) {
          Error(kScriptLevel, absl::StrCat(owner, " band upper bounds are not strictly increasing"),
                "order bands by ascending upper bound");
          break;
        }
      }
      if (items_ok && x.scale != 0) {
        const double top = std::max(x.scale * raw_min, x.scale * raw_max) + x.offset;
        if (x.bands.back().upper < top) {
          Error(kScriptLevel, absl::StrCat(owner, " bands stop at ", x.bands.back().upper,
                                           " below the maximum score ", top),
                absl::StrCat("raise the last band's upper bound to ", top));
        }
      }
    }
  }

  void CheckHypotheses() {
    std::set<std::string> seen;
    for (const HypothesisDefinition &h : s_.hypotheses) {
      const std::string owner = absl::StrCat("hypothesis ", h.hypothesis_id);
      if (!seen.insert(h.hypothesis_id).second) {
        Error(kScriptLevel, absl::StrCat("duplicate hypothesis id '", h.hypothesis_id, "'"),
              "rename one of the duplicated hypotheses");
      }
      const Question *q = RequireQuestion(h.question_id(), owner);
      if (const auto *pt = std::get_if<ProportionTest>(&h.test)) {
        if (!(pt->null_p0 > 0.0 && pt->null_p0 < 1.0)) {
          Error(h.question_id(), absl::StrCat(owner, " null_p0 must lie strictly inside (0, 1)"),
                "use a null proportion such as 0.5");
        }
        if (q == nullptr) continue;
        const SuccessPredicate &p = pt->success;
        const ResponseKind &k = q->response_kind;
        bool ok = true;
        if (p.yes_no) ok = std::holds_alternative<YesNo>(k);
        if (p.scale_at_most || p.scale_at_least) ok = std::holds_alternative<ObjectiveScale>(k);
        if (p.rate_at_most || p.rate_at_least) ok = std::holds_alternative<Frequency>(k);
        if (p.contains_entity || p.sentiment_below) {
          ok = std::holds_alternative<FreeText>(k) || std::holds_alternative<Frequency>(k);
        }
        if (!ok) {
          Error(h.question_id(), absl::StrCat(owner, " predicate does not fit a ",
                                              ResponseKindName(k), " question"),
                "choose a predicate matching the question's response kind");
        }
      } else if (q != nullptr && std::holds_alternative<FreeText>(q->response_kind)) {
        Error(h.question_id(), absl::StrCat(owner, " mean test needs numeric answers"),
              "test a scale, yes/no or frequency question");
      }
    }
  }

  const InquiryScript &s_;
  ValidationReport report_;
};

}  // namespace

std::string ValidationError::ToLine() const {
  return absl::StrCat(question_id, ": ", message, " | ", suggestion);
}

std::string ValidationReport::ToText() const {
  std::string out;
  for (const ValidationError &e : errors) absl::StrAppend(&out, e.ToLine(), "\n");
  return out;
}

bool PromptHasUnitPhrase(std::string_view prompt, FrequencyUnits units) {
  const std::regex pattern(
      absl::StrCat("\\b", ActivityPattern(units.activity),
                   "(?:\\s+|\\s*-\\s*)(?:a|an|per|each|every|in\\s+a)(?:\\s+|\\s*-\\s*)",
                   PeriodUnitName(units.period), "\\b"),
      std::regex::ECMAScript | std::regex::icase);
  const std::string lower = ToLower(prompt);
  return std::regex_search(lower, pattern);
}

ValidationReport ValidateScript(const InquiryScript &script) {
  return Validator(script).Run();
}

ValidationReport ValidateScriptText(std::string_view text) {
  absl::StatusOr<InquiryScript> script = ParseScriptText(text);
  if (!script.ok()) {
    ValidationReport report;
    report.errors.push_back({kScriptLevel, std::string(script.status().message()),
                             "fix the script's JSON structure"});
    return report;
  }
  return ValidateScript(*script);
}

}  // namespace echo
