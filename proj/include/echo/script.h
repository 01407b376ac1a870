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

// Inquiry scripts: the question set an inquirer designs, its branch rules,
// consistency pairs, scored indices and hypotheses. Scripts are parsed from a
// single JSON document and are immutable once validated.

#ifndef ECHO_SCRIPT_H_
#define ECHO_SCRIPT_H_

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "echo/answer.h"
#include "echo/quantify.h"
#include "json.hpp"

namespace echo {

struct ObjectiveScale {
  int64_t min = 1;
  int64_t max = 5;
  std::vector<std::string> labels;  // optional, one per scale point
};
struct FreeText {};
struct Frequency {
  FrequencyUnits units;
};
struct YesNo {};

using ResponseKind = std::variant<ObjectiveScale, FreeText, Frequency, YesNo>;

std::string ResponseKindName(const ResponseKind &kind);

struct Question {
  std::string question_id;
  std::string prompt;
  ResponseKind response_kind;
};

// Branch conditions.
struct ScoreBelow {
  std::string question_id;
  double threshold = 0;
};
struct ScoreAtLeast {
  std::string question_id;
  double threshold = 0;
};
struct IndexInBand {
  std::string index_id;
  std::string band;
};
struct AnswerIs {
  std::string question_id;
  nlohmann::json value;  // integer, boolean or string
};
struct ContainsEntity {
  std::string question_id;
  std::string lemma;
};
struct SentimentBelow {
  std::string question_id;
  double threshold = 0;
};

using Condition = std::variant<ScoreBelow, ScoreAtLeast, IndexInBand, AnswerIs,
                               ContainsEntity, SentimentBelow>;

struct BranchRule {
  std::string rule_id;
  Condition trigger;
  std::vector<std::string> follow_ups;
};

struct ConsistencyPair {
  std::string question_a;
  std::string question_b;
  int expected_sign = 1;  // +1 or -1
};

struct IndexBand {
  std::string label;
  double upper = 0;  // inclusive
};

struct IndexDefinition {
  std::string index_id;
  std::vector<std::string> item_question_ids;
  std::vector<int> item_polarity;  // +1 normal, -1 reversed
  double scale = 1;
  double offset = 0;
  std::vector<IndexBand> bands;  // ascending upper bounds

  // Label of the first band whose upper bound is >= score.
  std::optional<std::string> BandFor(double transformed) const;
};

enum class Tail { kLeft, kRight, kTwo };
std::string TailName(Tail tail);
std::optional<Tail> ParseTail(std::string_view name);

// Success predicate of a proportion test. Exactly one field is set.
struct SuccessPredicate {
  std::optional<bool> yes_no;
  std::optional<double> scale_at_most;
  std::optional<double> scale_at_least;
  std::optional<double> rate_at_most;   // occurrences per day
  std::optional<double> rate_at_least;  // occurrences per day
  std::optional<std::string> contains_entity;
  std::optional<double> sentiment_below;

  std::string Describe() const;
  nlohmann::ordered_json ToJson() const;
};

struct ProportionTest {
  std::string question_id;
  SuccessPredicate success;
  double null_p0 = 0.5;
  Tail tail = Tail::kTwo;
};
struct MeanTest {
  std::string question_id;
  double null_mu0 = 0;
  Tail tail = Tail::kTwo;
};

struct HypothesisDefinition {
  std::string hypothesis_id;
  std::string statement;
  std::variant<ProportionTest, MeanTest> test;

  const std::string &question_id() const;
  Tail tail() const;
};

struct InquiryScript {
  std::string script_id;
  std::string title;
  std::vector<Question> questions;
  std::vector<BranchRule> branch_rules;
  std::vector<ConsistencyPair> consistency_pairs;
  std::vector<IndexDefinition> indices;
  std::vector<HypothesisDefinition> hypotheses;

  const Question *FindQuestion(std::string_view id) const;
  const IndexDefinition *FindIndex(std::string_view id) const;
  // Position of the question in declaration order, or -1.
  int QuestionOrder(std::string_view id) const;
};

// Structural parse. Fails with a single InvalidArgument status describing the
// first structural problem; semantic checks belong to ValidateScript.
absl::StatusOr<InquiryScript> ParseScript(const nlohmann::json &j);
absl::StatusOr<InquiryScript> ParseScriptText(std::string_view text);
absl::StatusOr<InquiryScript> LoadScriptFile(const std::string &path);

nlohmann::ordered_json ScriptToJson(const InquiryScript &script);

// ---------------------------------------------------------------------------
// Validation

struct ValidationError {
  std::string question_id;  // "*" for script-level problems
  std::string message;
  std::string suggestion;

  std::string ToLine() const;  // "question_id: message | suggestion"
  bool operator==(const ValidationError &) const = default;
};

struct ValidationReport {
  std::vector<ValidationError> errors;
  bool ok() const { return errors.empty(); }
  std::string ToText() const;  // one line per error
};

ValidationReport ValidateScript(const InquiryScript &script);

// Runs the structural parse and validation; a parse failure becomes the single
// fatal error of the report.
ValidationReport ValidateScriptText(std::string_view text);

// True when the prompt holds "<activity-unit> (a|per) <period-unit>" for the
// declared units (case-insensitive, with unit synonyms).
bool PromptHasUnitPhrase(std::string_view prompt, FrequencyUnits units);

// ---------------------------------------------------------------------------
// Branching

struct BranchPlan {
  std::vector<std::string> pending;      // unanswered, in delivery order
  std::vector<std::string> newly_fired;  // satisfied rules not yet fired
};

// Questions that follow-ups of some rule are "probes"; every other question
// is a base question. The full delivery order is the base questions in script
// order, each followed by the follow-ups of its satisfied or already fired
// rules (declaration order), recursively.
BranchPlan PlanNext(const InquiryScript &script, const AnswerMap &answered,
                    const std::set<std::string> &fired_rules);

std::vector<std::string> NextQuestionIds(const InquiryScript &script,
                                         const AnswerMap &answered,
                                         const std::set<std::string> &fired_rules);

// Question after which a rule is evaluated: the question its condition reads,
// or for an index condition the item declared last in the script.
std::string RuleAnchor(const InquiryScript &script, const BranchRule &rule);

bool ConditionHolds(const InquiryScript &script, const Condition &condition,
                    const AnswerMap &answered);

// ---------------------------------------------------------------------------
// Index scoring

struct IndexResult {
  double raw_sum = 0;
  double transformed = 0;
  std::string band;
};

// Fails with FailedPrecondition listing missing item ids when an item is
// unanswered or not a scale answer.
absl::StatusOr<IndexResult> ComputeIndex(const InquiryScript &script,
                                         const IndexDefinition &index,
                                         const AnswerMap &answered);

// Bundled instrument definitions over the given item question ids.
IndexDefinition Who5Index(std::vector<std::string> items);
IndexDefinition Mhi5Index(std::vector<std::string> items,
                          std::vector<int> polarity);
IndexDefinition Phq9Index(std::vector<std::string> items);

}  // namespace echo

#endif  // ECHO_SCRIPT_H_
