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

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "echo/quantify.h"

namespace echo {

std::string ActivityUnitName(ActivityUnit unit) {
  switch (unit) {
    case ActivityUnit::kTimes: return "times";
    case ActivityUnit::kDays: return "days";
    case ActivityUnit::kHours: return "hours";
    case ActivityUnit::kMinutes: return "minutes";
    case ActivityUnit::kSessions: return "sessions";
  }
  return "times";
}

std::string PeriodUnitName(PeriodUnit unit) {
  switch (unit) {
    case PeriodUnit::kDay: return "day";
    case PeriodUnit::kWeek: return "week";
    case PeriodUnit::kMonth: return "month";
    case PeriodUnit::kYear: return "year";
  }
  return "day";
}

std::optional<ActivityUnit> ParseActivityUnit(std::string_view name) {
  for (ActivityUnit u : {ActivityUnit::kTimes, ActivityUnit::kDays,
                         ActivityUnit::kHours, ActivityUnit::kMinutes,
                         ActivityUnit::kSessions}) {
    if (name == ActivityUnitName(u)) return u;
  }
  return std::nullopt;
}

std::optional<PeriodUnit> ParsePeriodUnit(std::string_view name) {
  for (PeriodUnit u : {PeriodUnit::kDay, PeriodUnit::kWeek, PeriodUnit::kMonth,
                       PeriodUnit::kYear}) {
    if (name == PeriodUnitName(u)) return u;
  }
  return std::nullopt;
}

double PeriodDays(PeriodUnit unit) {
  switch (unit) {
    case PeriodUnit::kDay: return 1.0;
    case PeriodUnit::kWeek: return 7.0;
    case PeriodUnit::kMonth: return 30.57;
    case PeriodUnit::kYear: return 365.25;
  }
  return 1.0;
}

std::optional<FrequencyUnits> ParseFrequencyUnits(std::string_view text) {
  const size_t slash = text.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  const auto activity = ParseActivityUnit(ToLower(Trim(text.substr(0, slash))));
  const auto period = ParsePeriodUnit(ToLower(Trim(text.substr(slash + 1))));
  if (!activity || !period) return std::nullopt;
  return FrequencyUnits{*activity, *period};
}

std::string EntityLabelName(EntityLabel label) {
  return label == EntityLabel::kProperNoun ? "proper-noun" : "common-noun";
}

std::string FrequencySourceName(FrequencySource source) {
  switch (source) {
    case FrequencySource::kDefiniteCount: return "definite-count";
    case FrequencySource::kRange: return "range";
    case FrequencySource::kAdverb: return "adverb";
    case FrequencySource::kOrdinalWord: return "ordinal-word";
  }
  return "definite-count";
}

absl::StatusOr<FrequencyVocabulary> FrequencyVocabulary::FromEntries(
    const std::vector<TsvEntry> &entries) {
  FrequencyVocabulary vocab;
  for (const TsvEntry &e : entries) {
    std::vector<std::string> parts =
        absl::StrSplit(e.value, ' ', absl::SkipEmpty());
    if (parts.size() != 2) {
      return absl::InvalidArgumentError(absl::StrCat(
          "vocabulary line ", e.line, ": value must be '<kind> <number>'"));
    }
    VocabularyRule rule;
    rule.key = e.term;
    rule.words = absl::StrSplit(e.term, ' ', absl::SkipEmpty());
    if (parts[0] == "count") {
      rule.kind = VocabularyRuleKind::kCount;
    } else if (parts[0] == "rate") {
      rule.kind = VocabularyRuleKind::kFixedRate;
    } else if (parts[0] == "fraction") {
      rule.kind = VocabularyRuleKind::kPeriodFraction;
    } else {
      return absl::InvalidArgumentError(absl::StrCat(
          "vocabulary line ", e.line, ": unknown rule kind '", parts[0], "'"));
    }
    absl::StatusOr<double> value = ParseNumber(parts[1]);
    if (!value.ok()) return value.status();
    rule.value = *value;
    if (rule.value < 0 ||
        (rule.kind == VocabularyRuleKind::kPeriodFraction && rule.value > 1)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "vocabulary line ", e.line, ": value out of range for ", e.term));
    }
    vocab.rules_.push_back(std::move(rule));
  }
  return vocab;
}

absl::StatusOr<SentimentLexicon> SentimentLexicon::FromEntries(
    const std::vector<TsvEntry> &entries) {
  SentimentLexicon lexicon;
  for (const TsvEntry &e : entries) {
    absl::StatusOr<double> w = ParseNumber(e.value);
    if (!w.ok()) return w.status();
    if (*w < -1.0 || *w > 1.0) {
      return absl::InvalidArgumentError(absl::StrCat(
          "sentiment line ", e.line, ": weight outside [-1, 1] for ", e.term));
    }
    lexicon.weights_[e.term] = *w;
  }
  return lexicon;
}

std::optional<double> SentimentLexicon::Weight(std::string_view lower,
                                               std::string_view lemma) const {
  auto it = weights_.find(std::string(lower));
  if (it != weights_.end()) return it->second;
  it = weights_.find(std::string(lemma));
  if (it != weights_.end()) return it->second;
  return std::nullopt;
}

NounLexicon NounLexicon::FromEntries(const std::vector<TsvEntry> &entries) {
  NounLexicon lexicon;
  for (const TsvEntry &e : entries) lexicon.nouns_.insert(e.term);
  return lexicon;
}

bool NounLexicon::Contains(std::string_view lower) const {
  return nouns_.contains(std::string(lower));
}

std::string NounLexicon::Lemma(std::string_view lower) const {
  if (Contains(lower)) return std::string(lower);
  std::string lemma = Lemmatize(lower);
  if (!Contains(lemma) && Contains(lemma + "e")) lemma += "e";
  return lemma;
}

QuantifierPaths QuantifierPaths::Bundled() {
  const std::string dir = ECHO_DATA_DIR;
  return {dir + "/nouns.tsv", dir + "/sentiment_lexicon.tsv",
          dir + "/frequency_vocabulary.tsv"};
}

absl::StatusOr<Quantifier> Quantifier::Load(const QuantifierPaths &paths) {
  auto nouns = ReadTsvFile(paths.nouns);
  if (!nouns.ok()) return nouns.status();
  auto sentiment_entries = ReadTsvFile(paths.sentiment_lexicon);
  if (!sentiment_entries.ok()) return sentiment_entries.status();
  auto vocab_entries = ReadTsvFile(paths.frequency_vocabulary);
  if (!vocab_entries.ok()) return vocab_entries.status();

  auto sentiment = SentimentLexicon::FromEntries(*sentiment_entries);
  if (!sentiment.ok()) return sentiment.status();
  auto vocab = FrequencyVocabulary::FromEntries(*vocab_entries);
  if (!vocab.ok()) return vocab.status();

  auto data = std::make_shared<Data>(Data{NounLexicon::FromEntries(*nouns),
                                          std::move(*sentiment),
                                          std::move(*vocab)});
  return Quantifier(std::move(data));
}

absl::StatusOr<Quantifier> Quantifier::LoadBundled() {
  return Load(QuantifierPaths::Bundled());
}

std::vector<Entity> Quantifier::ExtractEntities(std::string_view text) const {
  return echo::ExtractEntities(text, data_->nouns);
}

std::optional<FrequencyScore> Quantifier::ScoreFrequency(
    std::string_view text, FrequencyUnits units) const {
  return echo::ScoreFrequency(text, units, data_->vocabulary);
}

SentimentResult Quantifier::AnalyzeSentiment(std::string_view text) const {
  return echo::AnalyzeSentiment(text, data_->sentiment);
}

std::string Quantifier::LemmaOf(std::string_view word) const {
  return data_->nouns.Lemma(ToLower(word));
}

std::string Quantifier::PhraseLemma(std::string_view phrase) const {
  std::vector<std::string> lemmas;
  for (const Token &t : Tokenize(phrase)) {
    if (t.kind != TokenKind::kPunct) lemmas.push_back(data_->nouns.Lemma(t.lower));
  }
  return absl::StrJoin(lemmas, " ");
}

}  // namespace echo
