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

#include "echo/script.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "echo/lexicon.h"

namespace echo {
namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

// Structural errors are raised as this and converted at the API boundary.
struct ParseError {
  std::string message;
};

[[noreturn]] void Fail(std::string message) { throw ParseError{std::move(message)}; }

const json &Require(const json &j, const char *key, const std::string &where) {
  if (!j.is_object() || !j.contains(key)) {
    Fail(absl::StrCat(where, ": missing field '", key, "'"));
  }
  return j.at(key);
}

std::string RequireString(const json &j, const char *key, const std::string &where) {
  const json &v = Require(j, key, where);
  if (!v.is_string()) Fail(absl::StrCat(where, ": field '", key, "' must be a string"));
  return v.get<std::string>();
}

double RequireNumber(const json &j, const char *key, const std::string &where) {
  const json &v = Require(j, key, where);
  if (!v.is_number()) Fail(absl::StrCat(where, ": field '", key, "' must be a number"));
  return v.get<double>();
}

int64_t RequireInt(const json &j, const char *key, const std::string &where) {
  const json &v = Require(j, key, where);
  if (!v.is_number_integer()) {
    Fail(absl::StrCat(where, ": field '", key, "' must be an integer"));
  }
  return v.get<int64_t>();
}

const json &RequireArray(const json &j, const char *key, const std::string &where) {
  const json &v = Require(j, key, where);
  if (!v.is_array()) Fail(absl::StrCat(where, ": field '", key, "' must be an array"));
  return v;
}

const json &OptionalArray(const json &j, const char *key, const std::string &where) {
  static const json kEmpty = json::array();
  if (!j.contains(key)) return kEmpty;
  return RequireArray(j, key, where);
}

std::vector<std::string> StringList(const json &arr, const std::string &where) {
  std::vector<std::string> out;
  for (const json &v : arr) {
    if (!v.is_string()) Fail(absl::StrCat(where, ": expected a list of strings"));
    out.push_back(v.get<std::string>());
  }
  return out;
}

Tail RequireTail(const json &j, const std::string &where) {
  if (!j.contains("tail")) return Tail::kTwo;
  const json &v = j.at("tail");
  if (!v.is_string()) Fail(absl::StrCat(where, ": tail must be a string"));
  const auto tail = ParseTail(v.get<std::string>());
  if (!tail) Fail(absl::StrCat(where, ": tail must be left, right or two"));
  return *tail;
}

ResponseKind ParseResponseKind(const json &j, const std::string &where) {
  const std::string type = RequireString(j, "type", where);
  if (type == "objective_scale") {
    ObjectiveScale s;
    s.min = RequireInt(j, "min", where);
    s.max = RequireInt(j, "max", where);
    if (j.contains("labels")) s.labels = StringList(RequireArray(j, "labels", where), where);
    return s;
  }
  if (type == "free_text") return FreeText{};
  if (type == "yes_no") return YesNo{};
  if (type == "frequency") {
    const std::string activity = RequireString(j, "activity_unit", where);
    const std::string period = RequireString(j, "period_unit", where);
    const auto a = ParseActivityUnit(activity);
    const auto p = ParsePeriodUnit(period);
    if (!a) Fail(absl::StrCat(where, ": unknown activity_unit '", activity, "'"));
    if (!p) Fail(absl::StrCat(where, ": unknown period_unit '", period, "'"));
    return Frequency{{*a, *p}};
  }
  Fail(absl::StrCat(where, ": unknown response kind '", type, "'"));
}

Condition ParseCondition(const json &j, const std::string &where) {
  const std::string type = RequireString(j, "type", where);
  if (type == "score_below") {
    return ScoreBelow{RequireString(j, "question_id", where),
                      RequireNumber(j, "threshold", where)};
  }
  if (type == "score_at_least") {
    return ScoreAtLeast{RequireString(j, "question_id", where),
                        RequireNumber(j, "threshold", where)};
  }
  if (type == "index_in_band") {
    return IndexInBand{RequireString(j, "index_id", where),
                       RequireString(j, "band", where)};
  }
  if (type == "answer_is") {
    const json &v = Require(j, "value", where);
    if (!v.is_number_integer() && !v.is_boolean() && !v.is_string()) {
      Fail(absl::StrCat(where, ": answer_is value must be integer, boolean or string"));
    }
    return AnswerIs{RequireString(j, "question_id", where), v};
  }
  if (type == "contains_entity") {
    return ContainsEntity{RequireString(j, "question_id", where),
                          RequireString(j, "lemma", where)};
  }
  if (type == "sentiment_below") {
    return SentimentBelow{RequireString(j, "question_id", where),
                          RequireNumber(j, "threshold", where)};
  }
  Fail(absl::StrCat(where, ": unknown condition type '", type, "'"));
}

SuccessPredicate ParsePredicate(const json &j, const std::string &where) {
  if (!j.is_object() || j.size() != 1) {
    Fail(absl::StrCat(where, ": success predicate must have exactly one field"));
  }
  SuccessPredicate p;
  const std::string key = j.begin().key();
  const json &v = j.begin().value();
  auto number = [&]() {
    if (!v.is_number()) Fail(absl::StrCat(where, ": predicate ", key, " needs a number"));
    return v.get<double>();
  };
  if (key == "yes_no") {
    if (!v.is_boolean()) Fail(absl::StrCat(where, ": predicate yes_no needs a boolean"));
    p.yes_no = v.get<bool>();
  } else if (key == "scale_at_most") {
    p.scale_at_most = number();
  } else if (key == "scale_at_least") {
    p.scale_at_least = number();
  } else if (key == "rate_at_most") {
    p.rate_at_most = number();
  } else if (key == "rate_at_least") {
    p.rate_at_least = number();
  } else if (key == "sentiment_below") {
    p.sentiment_below = number();
  } else if (key == "contains_entity") {
    if (!v.is_string()) Fail(absl::StrCat(where, ": predicate contains_entity needs a string"));
    p.contains_entity = v.get<std::string>();
  } else {
    Fail(absl::StrCat(where, ": unknown success predicate '", key, "'"));
  }
  return p;
}

InquiryScript ParseScriptOrThrow(const json &j) {
  if (!j.is_object()) Fail("script: top level must be a JSON object");
  InquiryScript s;
  s.script_id = RequireString(j, "script_id", "script");
  s.title = j.contains("title") ? RequireString(j, "title", "script") : "";

  for (const json &q : RequireArray(j, "questions", "script")) {
    const std::string where = absl::StrCat("question ", q.value("question_id", "?"));
    Question question;
    question.question_id = RequireString(q, "question_id", where);
    question.prompt = RequireString(q, "prompt", where);
    question.response_kind = ParseResponseKind(Require(q, "response_kind", where), where);
    s.questions.push_back(std::move(question));
  }
  for (const json &r : OptionalArray(j, "branch_rules", "script")) {
    const std::string where = absl::StrCat("branch rule ", r.value("rule_id", "?"));
    BranchRule rule;
    rule.rule_id = RequireString(r, "rule_id", where);
    rule.trigger = ParseCondition(Require(r, "trigger", where), where);
    rule.follow_ups = StringList(RequireArray(r, "follow_ups", where), where);
    s.branch_rules.push_back(std::move(rule));
  }
  for (const json &p : OptionalArray(j, "consistency_pairs", "script")) {
    ConsistencyPair pair;
    pair.question_a = RequireString(p, "question_a", "consistency pair");
    pair.question_b = RequireString(p, "question_b", "consistency pair");
    pair.expected_sign = static_cast<int>(RequireInt(p, "expected_sign", "consistency pair"));
    s.consistency_pairs.push_back(std::move(pair));
  }
  for (const json &x : OptionalArray(j, "indices", "script")) {
    const std::string where = absl::StrCat("index ", x.value("index_id", "?"));
    IndexDefinition index;
    index.index_id = RequireString(x, "index_id", where);
    index.item_question_ids = StringList(RequireArray(x, "item_question_ids", where), where);
    if (x.contains("item_polarity")) {
      for (const json &v : RequireArray(x, "item_polarity", where)) {
        if (!v.is_number_integer()) Fail(absl::StrCat(where, ": item_polarity must be integers"));
        index.item_polarity.push_back(v.get<int>());
      }
    } else {
      index.item_polarity.assign(index.item_question_ids.size(), 1);
    }
    if (x.contains("transform")) {
      const json &t = Require(x, "transform", where);
      index.scale = RequireNumber(t, "scale", where);
      index.offset = RequireNumber(t, "offset", where);
    }
    for (const json &b : RequireArray(x, "bands", where)) {
      index.bands.push_back({RequireString(b, "label", where), RequireNumber(b, "upper", where)});
    }
    s.indices.push_back(std::move(index));
  }
  for (const json &h : OptionalArray(j, "hypotheses", "script")) {
    const std::string where = absl::StrCat("hypothesis ", h.value("hypothesis_id", "?"));
    HypothesisDefinition hyp;
    hyp.hypothesis_id = RequireString(h, "hypothesis_id", where);
    hyp.statement = h.contains("statement") ? RequireString(h, "statement", where) : "";
    const json &t = Require(h, "test", where);
    const std::string type = RequireString(t, "type", where);
    if (type == "proportion") {
      ProportionTest pt;
      pt.question_id = RequireString(t, "question_id", where);
      pt.success = ParsePredicate(Require(t, "success", where), where);
      pt.null_p0 = RequireNumber(t, "null_p0", where);
      pt.tail = RequireTail(t, where);
      hyp.test = std::move(pt);
    } else if (type == "mean") {
      MeanTest mt;
      mt.question_id = RequireString(t, "question_id", where);
      mt.null_mu0 = RequireNumber(t, "null_mu0", where);
      mt.tail = RequireTail(t, where);
      hyp.test = std::move(mt);
    } else {
      Fail(absl::StrCat(where, ": unknown test type '", type, "'"));
    }
    s.hypotheses.push_back(std::move(hyp));
  }
  return s;
}

ojson ConditionToJson(const Condition &c) {
  return std::visit(
      [](const auto &v) -> ojson {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ScoreBelow>) {
          return {{"type", "score_below"}, {"question_id", v.question_id}, {"threshold", v.threshold}};
        } else if constexpr (std::is_same_v<T, ScoreAtLeast>) {
          return {{"type", "score_at_least"}, {"question_id", v.question_id}, {"threshold", v.threshold}};
        } else if constexpr (std::is_same_v<T, IndexInBand>) {
          return {{"type", "index_in_band"}, {"index_id", v.index_id}, {"band", v.band}};
        } else if constexpr (std::is_same_v<T, AnswerIs>) {
          return {{"type", "answer_is"}, {"question_id", v.question_id}, {"value", ojson::parse(v.value.dump())}};
        } else if constexpr (std::is_same_v<T, ContainsEntity>) {
          return {{"type", "contains_entity"}, {"question_id", v.question_id}, {"lemma", v.lemma}};
        } else {
          return {{"type", "sentiment_below"}, {"question_id", v.question_id}, {"threshold", v.threshold}};
        }
      },
      c);
}

}  // namespace

std::string ResponseKindName(const ResponseKind &kind) {
  switch (kind.index()) {
    case 0: return "objective_scale";
    case 1: return "free_text";
    case 2: return "frequency";
    default: return "yes_no";
  }
}

std::string TailName(Tail tail) {
  switch (tail) {
    case Tail::kLeft: return "left";
    case Tail::kRight: return "right";
    case Tail::kTwo: return "two";
  }
  return "two";
}

std::optional<Tail> ParseTail(std::string_view name) {
  if (name == "left") return Tail::kLeft;
  if (name == "right") return Tail::kRight;
  if (name == "two") return Tail::kTwo;
  return std::nullopt;
}

std::optional<std::string> IndexDefinition::BandFor(double transformed) const {
  for (const IndexBand &b : bands) {
    if (transformed <= b.upper) return b.label;
  }
  return std::nullopt;
}

std::string SuccessPredicate::Describe() const {
  if (yes_no) return absl::StrCat("answer is ", *yes_no ? "yes" : "no");
  if (scale_at_most) return absl::StrCat("scale value <= ", *scale_at_most);
  if (scale_at_least) return absl::StrCat("scale value >= ", *scale_at_least);
  if (rate_at_most) return absl::StrCat("per-day rate <= ", *rate_at_most);
  if (rate_at_least) return absl::StrCat("per-day rate >= ", *rate_at_least);
  if (contains_entity) return absl::StrCat("mentions '", *contains_entity, "'");
  if (sentiment_below) return absl::StrCat("sentiment score < ", *sentiment_below);
  return "always false";
}

ojson SuccessPredicate::ToJson() const {
  if (yes_no) return {{"yes_no", *yes_no}};
  if (scale_at_most) return {{"scale_at_most", *scale_at_most}};
  if (scale_at_least) return {{"scale_at_least", *scale_at_least}};
  if (rate_at_most) return {{"rate_at_most", *rate_at_most}};
  if (rate_at_least) return {{"rate_at_least", *rate_at_least}};
  if (contains_entity) return {{"contains_entity", *contains_entity}};
  if (sentiment_below) return {{"sentiment_below", *sentiment_below}};
  return ojson::object();
}

const std::string &HypothesisDefinition::question_id() const {
  return std::visit([](const auto &t) -> const std::string & { return t.question_id; }, test);
}

Tail HypothesisDefinition::tail() const {
  return std::visit([](const auto &t) { return t.tail; }, test);
}

const Question *InquiryScript::FindQuestion(std::string_view id) const {
  for (const Question &q : questions) {
    if (q.question_id == id) return &q;
  }
  return nullptr;
}

const IndexDefinition *InquiryScript::FindIndex(std::string_view id) const {
  for (const IndexDefinition &x : indices) {
    if (x.index_id == id) return &x;
  }
  return nullptr;
}

int InquiryScript::QuestionOrder(std::string_view id) const {
  for (size_t i = 0; i < questions.size(); ++i) {
    if (questions[i].question_id == id) return static_cast<int>(i);
  }
  return -1;
}

absl::StatusOr<InquiryScript> ParseScript(const json &j) {
  try {
    return ParseScriptOrThrow(j);
  } catch (const ParseError &e) {
    return absl::InvalidArgumentError(e.message);
  } catch (const json::exception &e) {
    return absl::InvalidArgumentError(absl::StrCat("script: ", e.what()));
  }
}

absl::StatusOr<InquiryScript> ParseScriptText(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return absl::InvalidArgumentError("script: not valid JSON");
  return ParseScript(j);
}

absl::StatusOr<InquiryScript> LoadScriptFile(const std::string &path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  return ParseScriptText(*text);
}

ojson ScriptToJson(const InquiryScript &s) {
  ojson j;
  j["script_id"] = s.script_id;
  j["title"] = s.title;
  ojson questions = ojson::array();
  for (const Question &q : s.questions) {
    ojson kind;
    kind["type"] = ResponseKindName(q.response_kind);
    if (const auto *scale = std::get_if<ObjectiveScale>(&q.response_kind)) {
      kind["min"] = scale->min;
      kind["max"] = scale->max;
      if (!scale->labels.empty()) kind["labels"] = scale->labels;
    } else if (const auto *f = std::get_if<Frequency>(&q.response_kind)) {
      kind["activity_unit"] = ActivityUnitName(f->units.activity);
      kind["period_unit"] = PeriodUnitName(f->units.period);
    }
    questions.push_back({{"question_id", q.question_id},
                         {"prompt", q.prompt},
                         {"response_kind", std::move(kind)}});
  }
  j["questions"] = std::move(questions);
  ojson rules = ojson::array();
  for (const BranchRule &r : s.branch_rules) {
    rules.push_back({{"rule_id", r.rule_id},
                     {"trigger", ConditionToJson(r.trigger)},
                     {"follow_ups", r.follow_ups}});
  }
  j["branch_rules"] = std::move(rules);
  ojson pairs = ojson::array();
  for (const ConsistencyPair &p : s.consistency_pairs) {
    pairs.push_back({{"question_a", p.question_a},
                     {"question_b", p.question_b},
                     {"expected_sign", p.expected_sign}});
  }
  j["consistency_pairs"] = std::move(pairs);
  ojson indices = ojson::array();
  for (const IndexDefinition &x : s.indices) {
    ojson bands = ojson::array();
    for (const IndexBand &b : x.bands) bands.push_back({{"label", b.label}, {"upper", b.upper}});
    indices.push_back({{"index_id", x.index_id},
                       {"item_question_ids", x.item_question_ids},
                       {"item_polarity", x.item_polarity},
                       {"transform", {{"scale", x.scale}, {"offset", x.offset}}},
                       {"bands", std::move(bands)}});
  }
  j["indices"] = std::move(indices);
  ojson hyps = ojson::array();
  for (const HypothesisDefinition &h : s.hypotheses) {
    ojson test;
    if (const auto *pt = std::get_if<ProportionTest>(&h.test)) {
      test = {{"type", "proportion"},
              {"question_id", pt->question_id},
              {"success", pt->success.ToJson()},
              {"null_p0", pt->null_p0},
              {"tail", TailName(pt->tail)}};
    } else {
      const auto &mt = std::get<MeanTest>(h.test);
      test = {{"type", "mean"},
              {"question_id", mt.question_id},
              {"null_mu0", mt.null_mu0},
              {"tail", TailName(mt.tail)}};
    }
    hyps.push_back({{"hypothesis_id", h.hypothesis_id},
                    {"statement", h.statement},
                    {"test", std::move(test)}});
  }
  j["hypotheses"] = std::move(hyps);
  return j;
}

}  // namespace echo
