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

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "echo/coding.h"

namespace echo {
namespace {

bool PredicateFits(const SuccessPredicate &p, const ResponseKind &kind) {
  if (p.yes_no) return std::holds_alternative<YesNo>(kind);
  if (p.scale_at_most || p.scale_at_least) return std::holds_alternative<ObjectiveScale>(kind);
  if (p.rate_at_most || p.rate_at_least) return std::holds_alternative<Frequency>(kind);
  return std::holds_alternative<FreeText>(kind) || std::holds_alternative<Frequency>(kind);
}

Verdict Judge(const SuccessPredicate &p, const Answer &a) {
  auto verdict = [](bool ok) { return ok ? Verdict::kSupports : Verdict::kRefutes; };
  if (p.yes_no) {
    if (!a.is_yes_no()) return Verdict::kNotApplicable;
    return verdict(std::get<bool>(a.value) == *p.yes_no);
  }
  if (p.scale_at_most || p.scale_at_least) {
    if (!a.is_scale()) return Verdict::kNotApplicable;
    const double v = static_cast<double>(std::get<int64_t>(a.value));
    return verdict(p.scale_at_most ? v <= *p.scale_at_most : v >= *p.scale_at_least);
  }
  if (!a.derived) return Verdict::kNotApplicable;
  if (p.rate_at_most || p.rate_at_least) {
    if (!a.derived->frequency) return Verdict::kNotApplicable;
    const double rate = a.derived->frequency->per_day_rate;
    return verdict(p.rate_at_most ? rate <= *p.rate_at_most : rate >= *p.rate_at_least);
  }
  if (p.contains_entity) return verdict(AnswerMentions(a, *p.contains_entity));
  if (!a.derived->sentiment) return Verdict::kNotApplicable;
  return verdict(a.derived->sentiment->score < *p.sentiment_below);
}

}  // namespace

std::string VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kSupports: return "supports";
    case Verdict::kRefutes: return "refutes";
    case Verdict::kNotApplicable: return "not-applicable";
  }
  return "not-applicable";
}

std::optional<double> NumericValue(const Question &question, const Answer &answer) {
  if (const auto *v = std::get_if<int64_t>(&answer.value)) return static_cast<double>(*v);
  if (const auto *b = std::get_if<bool>(&answer.value)) return *b ? 1.0 : 0.0;
  const auto *f = std::get_if<Frequency>(&question.response_kind);
  if (f != nullptr && answer.derived && answer.derived->frequency) {
    return answer.derived->frequency->RateIn(f->units.period);
  }
  return std::nullopt;
}

absl::StatusOr<HypothesisCoding> CodeHypothesis(const InquiryScript &script,
                                                const HypothesisDefinition &hypothesis,
                                                const std::vector<HypothesisInput> &responses) {
  const Question *q = script.FindQuestion(hypothesis.question_id());
  if (q == nullptr) {
    return absl::InvalidArgumentError(absl::StrCat(
        hypothesis.hypothesis_id, ": unknown question '", hypothesis.question_id(), "'"));
  }
  HypothesisCoding out;
  out.hypothesis_id = hypothesis.hypothesis_id;
  const auto *prop = std::get_if<ProportionTest>(&hypothesis.test);
  const auto *mean = std::get_if<MeanTest>(&hypothesis.test);
  if (prop != nullptr) {
    if (!PredicateFits(prop->success, q->response_kind)) {
      return absl::InvalidArgumentError(
          absl::StrCat(hypothesis.hypothesis_id, ": predicate '", prop->success.Describe(),
                       "' does not fit question '", q->question_id, "' (",
                       ResponseKindName(q->response_kind), ")"));
    }
    out.predicate = prop->success.Describe();
  } else {
    if (std::holds_alternative<FreeText>(q->response_kind)) {
      return absl::InvalidArgumentError(absl::StrCat(
          hypothesis.hypothesis_id, ": mean test needs numeric answers on question '",
          q->question_id, "'"));
    }
    const char *op = mean->tail == Tail::kRight ? ">" : mean->tail == Tail::kLeft ? "<" : "!=";
    out.predicate = absl::StrCat("value ", op, " ", mean->null_mu0);
  }

  for (const HypothesisInput &r : responses) {
    Verdict v = Verdict::kNotApplicable;
    if (r.answer != nullptr) {
      if (prop != nullptr) {
        v = Judge(prop->success, *r.answer);
      } else if (const std::optional<double> x = NumericValue(*q, *r.answer)) {
        const bool side = mean->tail == Tail::kRight  ? *x > mean->null_mu0
                          : mean->tail == Tail::kLeft ? *x < mean->null_mu0
                                                      : *x != mean->null_mu0;
        v = side ? Verdict::kSupports : Verdict::kRefutes;
      }
    }
    switch (v) {
      case Verdict::kSupports: ++out.supports; break;
      case Verdict::kRefutes: ++out.refutes; break;
      case Verdict::kNotApplicable: ++out.not_applicable; break;
    }
    out.verdicts.emplace_back(r.response_id, v);
  }
  return out;
}

}  // namespace echo
