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

#include "echo/answer.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace echo {
namespace {

using ojson = nlohmann::ordered_json;

ojson SpanToJson(const Span &span) { return ojson::array({span.start, span.end}); }

Span SpanFromJson(const nlohmann::json &j) {
  return {j.at(0).get<size_t>(), j.at(1).get<size_t>()};
}

}  // namespace

bool AnswerMentions(const Answer &answer, std::string_view lemma) {
  if (!answer.derived) return false;
  const std::string wanted = ToLower(Trim(lemma));
  const std::string stripped = Lemmatize(wanted);
  for (const Entity &e : answer.derived->entities) {
    if (e.lemma == wanted || e.lemma == stripped) return true;
    for (const std::string &t : e.token_lemmas) {
      if (t == wanted || t == stripped) return true;
    }
  }
  return false;
}

ojson EntityToJson(const Entity &e) {
  ojson mentions = ojson::array();
  for (const Span &m : e.mentions) mentions.push_back(SpanToJson(m));
  return ojson{{"surface", e.surface},
               {"lemma", e.lemma},
               {"token_lemmas", e.token_lemmas},
               {"start", e.span.start},
               {"end", e.span.end},
               {"mentions", std::move(mentions)},
               {"label", EntityLabelName(e.label)},
               {"salience", e.salience}};
}

ojson SentimentToJson(const SentimentResult &s) {
  ojson terms = ojson::array();
  for (const SentimentTerm &t : s.matched_terms) {
    terms.push_back(ojson::array({t.lemma, t.weight}));
  }
  return ojson{{"score", s.score},
               {"magnitude", s.magnitude},
               {"token_count", s.token_count},
               {"matched_terms", std::move(terms)}};
}

ojson FrequencyToJson(const FrequencyScore &f) {
  return ojson{{"start", f.matched_span.start},
               {"end", f.matched_span.end},
               {"per_day_rate", f.per_day_rate},
               {"source_kind", FrequencySourceName(f.source_kind)},
               {"vocabulary_key", f.vocabulary_key}};
}

ojson AnswerToJson(const Answer &a) {
  ojson j;
  j["question_id"] = a.question_id;
  if (const auto *v = std::get_if<int64_t>(&a.value)) {
    j["kind"] = "scale";
    j["value"] = *v;
  } else if (const auto *b = std::get_if<bool>(&a.value)) {
    j["kind"] = "yesno";
    j["value"] = *b;
  } else {
    j["kind"] = "text";
    j["value"] = std::get<std::string>(a.value);
  }
  if (a.derived) {
    ojson d = ojson::object();
    ojson entities = ojson::array();
    for (const Entity &e : a.derived->entities) entities.push_back(EntityToJson(e));
    d["entities"] = std::move(entities);
    d["sentiment"] =
        a.derived->sentiment ? SentimentToJson(*a.derived->sentiment) : ojson();
    d["frequency"] =
        a.derived->frequency ? FrequencyToJson(*a.derived->frequency) : ojson();
    j["derived"] = std::move(d);
  }
  return j;
}

absl::StatusOr<Answer> AnswerFromJson(const nlohmann::json &j) {
  try {
    Answer a;
    a.question_id = j.at("question_id").get<std::string>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "scale") {
      a.value = j.at("value").get<int64_t>();
    } else if (kind == "yesno") {
      a.value = j.at("value").get<bool>();
    } else if (kind == "text") {
      a.value = j.at("value").get<std::string>();
    } else {
      return absl::InvalidArgumentError(absl::StrCat("unknown answer kind ", kind));
    }
    if (j.contains("derived") && j["derived"].is_object()) {
      const nlohmann::json &d = j["derived"];
      DerivedQuantities derived;
      for (const auto &ej : d.value("entities", nlohmann::json::array())) {
        Entity e;
        e.surface = ej.at("surface").get<std::string>();
        e.lemma = ej.at("lemma").get<std::string>();
        e.token_lemmas = ej.value("token_lemmas", std::vector<std::string>{});
        e.span = {ej.at("start").get<size_t>(), ej.at("end").get<size_t>()};
        for (const auto &m : ej.value("mentions", nlohmann::json::array())) {
          e.mentions.push_back(SpanFromJson(m));
        }
        e.label = ej.at("label").get<std::string>() == "proper-noun"
                      ? EntityLabel::kProperNoun
                      : EntityLabel::kCommonNoun;
        e.salience = ej.at("salience").get<double>();
        derived.entities.push_back(std::move(e));
      }
      if (d.contains("sentiment") && d["sentiment"].is_object()) {
        const nlohmann::json &sj = d["sentiment"];
        SentimentResult s;
        s.score = sj.at("score").get<double>();
        s.magnitude = sj.at("magnitude").get<double>();
        s.token_count = sj.value("token_count", 0);
        for (const auto &t : sj.value("matched_terms", nlohmann::json::array())) {
          s.matched_terms.push_back({t.at(0).get<std::string>(), t.at(1).get<double>()});
        }
        derived.sentiment = std::move(s);
      }
      if (d.contains("frequency") && d["frequency"].is_object()) {
        const nlohmann::json &fj = d["frequency"];
        FrequencyScore f;
        f.matched_span = {fj.at("start").get<size_t>(), fj.at("end").get<size_t>()};
        f.per_day_rate = fj.at("per_day_rate").get<double>();
        const std::string src = fj.at("source_kind").get<std::string>();
        for (FrequencySource s :
             {FrequencySource::kDefiniteCount, FrequencySource::kRange,
              FrequencySource::kAdverb, FrequencySource::kOrdinalWord}) {
          if (FrequencySourceName(s) == src) f.source_kind = s;
        }
        f.vocabulary_key = fj.value("vocabulary_key", "");
        derived.frequency = std::move(f);
      }
      a.derived = std::move(derived);
    }
    return a;
  } catch (const nlohmann::json::exception &e) {
    return absl::InvalidArgumentError(absl::StrCat("malformed answer: ", e.what()));
  }
}

}  // namespace echo
