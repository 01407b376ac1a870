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

#include <gtest/gtest.h>

#include "echo/script.h"

namespace echo {
namespace {

using json = nlohmann::json;

json Scale(const std::string &id, int lo, int hi) {
  return {{"question_id", id}, {"prompt", id + "?"},
          {"response_kind", {{"type", "objective_scale"}, {"min", lo}, {"max", hi}}}};
}

json FrequencyQ(const std::string &id, const std::string &prompt, const std::string &activity,
                const std::string &period) {
  return {{"question_id", id}, {"prompt", prompt},
          {"response_kind",
           {{"type", "frequency"}, {"activity_unit", activity}, {"period_unit", period}}}};
}

json TextQ(const std::string &id) {
  return {{"question_id", id}, {"prompt", id + "?"}, {"response_kind", {{"type", "free_text"}}}};
}

InquiryScript MustParse(const json &j) {
  absl::StatusOr<InquiryScript> s = ParseScript(j);
  EXPECT_TRUE(s.ok()) << s.status();
  return s.ok() ? *s : InquiryScript{};
}

const InquiryScript &Bundled() {
  static const InquiryScript *s =
      new InquiryScript(*LoadScriptFile(ECHO_DATA_DIR "/scripts/mental_health.json"));
  return *s;
}

Answer ScaleAnswer(const std::string &id, int64_t v) { return {id, v, std::nullopt}; }

TEST(ParseScript, RoundTripsThroughJson) {
  const InquiryScript &s = Bundled();
  const absl::StatusOr<InquiryScript> again = ParseScript(json::parse(ScriptToJson(s).dump()));
  ASSERT_TRUE(again.ok()) << again.status();
  EXPECT_EQ(ScriptToJson(*again).dump(), ScriptToJson(s).dump());
}

TEST(ParseScript, StructuralErrors) {
  EXPECT_FALSE(ParseScriptText("[1, 2]").ok());
  EXPECT_FALSE(ParseScriptText("{not json").ok());
  EXPECT_FALSE(ParseScript(json{{"script_id", "x"}}).ok());
  json bad{{"script_id", "x"},
           {"questions", {{{"question_id", "q"}, {"prompt", "?"},
                           {"response_kind", {{"type", "essay"}}}}}}};
  const auto s = ParseScript(bad);
  ASSERT_FALSE(s.ok());
  EXPECT_NE(std::string(s.status().message()).find("essay"), std::string::npos);
}

TEST(Validate, BundledScriptIsClean) {
  const ValidationReport r = ValidateScript(Bundled());
  EXPECT_TRUE(r.ok()) << r.ToText();
}

TEST(Validate, FrequencyPromptWithUnitPhrase) {
  const json j{{"script_id", "s"},
               {"questions", {FrequencyQ("q", "On average, how many days a month do you exercise?",
                                         "days", "month")}}};
  EXPECT_TRUE(ValidateScript(MustParse(j)).ok());
}

TEST(Validate, FrequencyPromptMissingUnitPhrase) {
  const json j{{"script_id", "s"},
               {"questions", {FrequencyQ("q", "Do you exercise often?", "days", "week")}}};
  const ValidationReport r = ValidateScript(MustParse(j));
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].question_id, "q");
  EXPECT_EQ(r.errors[0].message, "missing unit phrase");
  EXPECT_NE(r.errors[0].suggestion.find("days per week"), std::string::npos);
  EXPECT_EQ(r.errors[0].ToLine().rfind("q: missing unit phrase | ", 0), 0u);
}

TEST(Validate, UnitPhraseSynonyms) {
  const FrequencyUnits u{ActivityUnit::kTimes, PeriodUnit::kMonth};
  EXPECT_TRUE(PromptHasUnitPhrase("How many TIMES PER MONTH?", u));
  EXPECT_TRUE(PromptHasUnitPhrase("how many times a month", u));
  EXPECT_FALSE(PromptHasUnitPhrase("how many times a week", u));
}

TEST(Validate, TwoRuleCycleNamesBothRules) {
  const json j{
      {"script_id", "s"},
      {"questions", {Scale("a", 1, 5), Scale("b", 1, 5)}},
      {"branch_rules",
       {{{"rule_id", "A"},
         {"trigger", {{"type", "score_below"}, {"question_id", "a"}, {"threshold", 3}}},
         {"follow_ups", {"b"}}},
        {{"rule_id", "B"},
         {"trigger", {{"type", "score_below"}, {"question_id", "b"}, {"threshold", 3}}},
         {"follow_ups", {"a"}}}}}};
  const ValidationReport r = ValidateScript(MustParse(j));
  ASSERT_FALSE(r.ok());
  bool found = false;
  for (const ValidationError &e : r.errors) {
    if (e.message.find("cycle") != std::string::npos) {
      found = true;
      EXPECT_NE(e.message.find("A"), std::string::npos);
      EXPECT_NE(e.message.find("B"), std::string::npos);
    }
  }
  EXPECT_TRUE(found) << r.ToText();
}

TEST(Validate, AccumulatesManyErrors) {
  const json j{
      {"script_id", "s"},
      {"questions", {Scale("a", 5, 1), Scale("a", 1, 5), TextQ("t")}},
      {"consistency_pairs", {{{"question_a", "a"}, {"question_b", "zz"}, {"expected_sign", 2}}}},
      {"hypotheses",
       {{{"hypothesis_id", "h"},
         {"test", {{"type", "proportion"}, {"question_id", "t"}, {"success", {{"yes_no", true}}},
                   {"null_p0", 1.0}, {"tail", "right"}}}}}}};
  const ValidationReport r = ValidateScript(MustParse(j));
  EXPECT_GE(r.errors.size(), 5u) << r.ToText();
}

TEST(Validate, IdempotentReports) {
  const json j{{"script_id", "s"},
               {"questions", {FrequencyQ("q", "Often?", "days", "week"), Scale("a", 3, 1)}}};
  const InquiryScript s = MustParse(j);
  EXPECT_EQ(ValidateScript(s).ToText(), ValidateScript(s).ToText());
}

TEST(Validate, ParseFailureIsSingleFatalError) {
  const ValidationReport r = ValidateScriptText("{");
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].question_id, "*");
}

TEST(Branching, NoAnswersGivesFirstBaseQuestion) {
  const auto ids = NextQuestionIds(Bundled(), {}, {});
  ASSERT_FALSE(ids.empty());
  EXPECT_EQ(ids.front(), "who5_1");
}

AnswerMap Who5(int value) {
  AnswerMap m;
  for (int k = 1; k <= 5; ++k) {
    const std::string id = "who5_" + std::to_string(k);
    m[id] = ScaleAnswer(id, value);
  }
  return m;
}

TEST(Branching, PoorWellbeingInsertsProbesNext) {
  const BranchPlan plan = PlanNext(Bundled(), Who5(1), {});
  ASSERT_GE(plan.pending.size(), 3u);
  EXPECT_EQ(plan.pending[0], "probe_distress");
  EXPECT_EQ(plan.pending[1], "probe_sleep");
  EXPECT_EQ(plan.pending[2], "mhi5_1");
  EXPECT_EQ(plan.newly_fired, std::vector<std::string>{"low_wellbeing"});
}

TEST(Branching, GoodWellbeingSkipsProbes) {
  const BranchPlan plan = PlanNext(Bundled(), Who5(5), {});
  EXPECT_EQ(plan.pending.front(), "mhi5_1");
  for (const std::string &id : plan.pending) EXPECT_NE(id.rfind("probe_", 0), 0u) << id;
  EXPECT_TRUE(plan.newly_fired.empty());
}

TEST(Branching, FiredRuleStaysFired) {
  AnswerMap answered = Who5(1);
  answered["probe_distress"] = {"probe_distress", std::string("exams"), std::nullopt};
  // Index no longer needs to hold once the rule has fired.
  answered["who5_1"] = ScaleAnswer("who5_1", 5);
  answered["who5_2"] = ScaleAnswer("who5_2", 5);
  answered["who5_3"] = ScaleAnswer("who5_3", 5);
  const auto ids = NextQuestionIds(Bundled(), answered, {"low_wellbeing"});
  EXPECT_EQ(ids.front(), "probe_sleep");
}

TEST(Branching, AllAnsweredIsEmpty) {
  AnswerMap answered;
  for (const Question &q : Bundled().questions) {
    answered[q.question_id] = ScaleAnswer(q.question_id, 3);
  }
  EXPECT_TRUE(NextQuestionIds(Bundled(), answered, {"low_wellbeing", "therapy_doubt"}).empty());
}

TEST(Branching, ProbesCanTriggerProbes) {
  const json j{
      {"script_id", "s"},
      {"questions", {Scale("a", 1, 5), Scale("p1", 1, 5), Scale("p2", 1, 5), Scale("z", 1, 5)}},
      {"branch_rules",
       {{{"rule_id", "r1"},
         {"trigger", {{"type", "score_below"}, {"question_id", "a"}, {"threshold", 3}}},
         {"follow_ups", {"p1"}}},
        {{"rule_id", "r2"},
         {"trigger", {{"type", "score_at_least"}, {"question_id", "p1"}, {"threshold", 4}}},
         {"follow_ups", {"p2"}}}}}};
  const InquiryScript s = MustParse(j);
  ASSERT_TRUE(ValidateScript(s).ok());
  AnswerMap answered{{"a", ScaleAnswer("a", 1)}, {"p1", ScaleAnswer("p1", 5)}};
  EXPECT_EQ(NextQuestionIds(s, answered, {"r1"}), (std::vector<std::string>{"p2", "z"}));
}

TEST(Branching, EachQuestionEmittedOnce) {
  AnswerMap answered;
  std::set<std::string> fired;
  std::set<std::string> seen;
  const InquiryScript &s = Bundled();
  for (int step = 0; step < 100; ++step) {
    const BranchPlan plan = PlanNext(s, answered, fired);
    fired.insert(plan.newly_fired.begin(), plan.newly_fired.end());
    if (plan.pending.empty()) break;
    const std::string id = plan.pending.front();
    EXPECT_TRUE(seen.insert(id).second) << id;
    const Question *q = s.FindQuestion(id);
    if (std::holds_alternative<ObjectiveScale>(q->response_kind)) {
      answered[id] = ScaleAnswer(id, std::get<ObjectiveScale>(q->response_kind).min);
    } else if (std::holds_alternative<YesNo>(q->response_kind)) {
      answered[id] = {id, false, std::nullopt};
    } else {
      answered[id] = {id, std::string("fine"), std::nullopt};
    }
  }
  EXPECT_TRUE(PlanNext(s, answered, fired).pending.empty());
  EXPECT_TRUE(seen.contains("probe_distress"));
}

TEST(Branching, ConditionKinds) {
  const InquiryScript &s = Bundled();
  AnswerMap m;
  m["q4"] = {"q4", false, std::nullopt};
  EXPECT_TRUE(ConditionHolds(s, AnswerIs{"q4", false}, m));
  EXPECT_FALSE(ConditionHolds(s, AnswerIs{"q4", true}, m));
  m["who5_1"] = ScaleAnswer("who5_1", 2);
  EXPECT_TRUE(ConditionHolds(s, ScoreBelow{"who5_1", 3}, m));
  EXPECT_FALSE(ConditionHolds(s, ScoreAtLeast{"who5_1", 3}, m));
  Answer text{"q3", std::string("money and exams"), DerivedQuantities{}};
  Entity e;
  e.lemma = "money";
  e.token_lemmas = {"money"};
  text.derived->entities.push_back(e);
  m["q3"] = text;
  EXPECT_TRUE(ConditionHolds(s, ContainsEntity{"q3", "money"}, m));
  EXPECT_FALSE(ConditionHolds(s, ContainsEntity{"q3", "family"}, m));
  EXPECT_FALSE(ConditionHolds(s, ScoreBelow{"missing", 3}, m));
  EXPECT_FALSE(ConditionHolds(s, IndexInBand{"who5", "poor"}, m));  // incomplete
}

// Published PHQ-9 severity cut-points.
std::string Phq9Severity(int total) {
  if (total <= 4) return "minimal";
  if (total <= 9) return "mild";
  if (total <= 14) return "moderate";
  if (total <= 19) return "moderately severe";
  return "severe";
}

TEST(Index, Who5FloorAndCeiling) {
  const InquiryScript &s = Bundled();
  const IndexDefinition *who5 = s.FindIndex("who5");
  ASSERT_NE(who5, nullptr);
  auto floor = ComputeIndex(s, *who5, Who5(0));
  ASSERT_TRUE(floor.ok());
  EXPECT_EQ(floor->transformed, 0);
  EXPECT_EQ(floor->band, "poor");
  auto ceiling = ComputeIndex(s, *who5, Who5(5));
  ASSERT_TRUE(ceiling.ok());
  EXPECT_EQ(ceiling->transformed, 100);
}

TEST(Index, Phq9BandsMatchPublishedCutPoints) {
  const InquiryScript &s = Bundled();
  const IndexDefinition *phq = s.FindIndex("phq9");
  ASSERT_NE(phq, nullptr);
  for (int total = 0; total <= 27; ++total) {
    AnswerMap m;
    int left = total;
    for (int k = 1; k <= 9; ++k) {
      const int v = std::min(3, left);
      left -= v;
      const std::string id = "phq9_" + std::to_string(k);
      m[id] = ScaleAnswer(id, v);
    }
    auto r = ComputeIndex(s, *phq, m);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r->raw_sum, total);
    EXPECT_EQ(r->band, Phq9Severity(total)) << total;
  }
}

TEST(Index, Phq9TwelveIsModerate) {
  const IndexDefinition d = Phq9Index({"a", "b", "c", "d", "e", "f", "g", "h", "i"});
  InquiryScript s;
  for (const std::string &id : d.item_question_ids) {
    s.questions.push_back({id, id, ObjectiveScale{0, 3, {}}});
  }
  AnswerMap m;
  const int values[9] = {3, 3, 2, 1, 1, 1, 1, 0, 0};
  for (int k = 0; k < 9; ++k) m[d.item_question_ids[k]] = ScaleAnswer(d.item_question_ids[k], values[k]);
  EXPECT_EQ(ComputeIndex(s, d, m)->band, "moderate");
}

TEST(Index, Mhi5ReversedItemsAndRange) {
  const InquiryScript &s = Bundled();
  const IndexDefinition *mhi = s.FindIndex("mhi5");
  ASSERT_NE(mhi, nullptr);
  // Best possible answers: never nervous/down/blue, always calm/happy.
  AnswerMap best, worst;
  const int good[5] = {1, 1, 6, 1, 6};
  for (int k = 1; k <= 5; ++k) {
    const std::string id = "mhi5_" + std::to_string(k);
    best[id] = ScaleAnswer(id, good[k - 1]);
    worst[id] = ScaleAnswer(id, 7 - good[k - 1]);
  }
  EXPECT_EQ(ComputeIndex(s, *mhi, best)->transformed, 100);
  EXPECT_EQ(ComputeIndex(s, *mhi, worst)->transformed, 0);
  EXPECT_EQ(ComputeIndex(s, *mhi, worst)->band, "poor");
}

TEST(Index, MissingItemsAreNamed) {
  const InquiryScript &s = Bundled();
  AnswerMap m = Who5(3);
  m.erase("who5_2");
  m.erase("who5_4");
  auto r = ComputeIndex(s, *s.FindIndex("who5"), m);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_NE(std::string(r.status().message()).find("who5_2, who5_4"), std::string::npos);
}

TEST(Index, BundledDefinitions) {
  const IndexDefinition w = Who5Index({"a", "b", "c", "d", "e"});
  EXPECT_EQ(w.scale, 4);
  EXPECT_EQ(w.BandFor(50), "poor");
  EXPECT_EQ(w.BandFor(52), "good");
  EXPECT_FALSE(w.BandFor(101));
}

}  // namespace
}  // namespace echo
