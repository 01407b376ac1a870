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

// Quantification of free-form responses: entity enumeration with source
// offsets, frequency-of-occurrence scoring, and lexicon sentiment.

#ifndef ECHO_QUANTIFY_H_
#define ECHO_QUANTIFY_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "absl/status/statusor.h"
#include "echo/lexicon.h"
#include "echo/text.h"

namespace echo {

enum class ActivityUnit { kTimes, kDays, kHours, kMinutes, kSessions };
enum class PeriodUnit { kDay, kWeek, kMonth, kYear };

std::string ActivityUnitName(ActivityUnit unit);  // "times", "days", ...
std::string PeriodUnitName(PeriodUnit unit);      // "day", "week", ...
std::optional<ActivityUnit> ParseActivityUnit(std::string_view name);
std::optional<PeriodUnit> ParsePeriodUnit(std::string_view name);

// Days per period: day 1, week 7, month 30.57, year 365.25.
double PeriodDays(PeriodUnit unit);

struct FrequencyUnits {
  ActivityUnit activity = ActivityUnit::kTimes;
  PeriodUnit period = PeriodUnit::kWeek;
};

// Parses "days/week" style unit strings.
std::optional<FrequencyUnits> ParseFrequencyUnits(std::string_view text);

enum class EntityLabel { kCommonNoun, kProperNoun };
std::string EntityLabelName(EntityLabel label);

// One distinct entity of a response. `span` is the first mention; `mentions`
// lists every occurrence in source order.
struct Entity {
  std::string surface;
  std::string lemma;
  std::vector<std::string> token_lemmas;
  Span span;
  std::vector<Span> mentions;
  EntityLabel label = EntityLabel::kCommonNoun;
  double salience = 0;
};

enum class FrequencySource { kDefiniteCount, kRange, kAdverb, kOrdinalWord };
std::string FrequencySourceName(FrequencySource source);

struct FrequencyScore {
  Span matched_span;
  double per_day_rate = 0;
  FrequencySource source_kind = FrequencySource::kDefiniteCount;
  std::string vocabulary_key;

  double RateIn(PeriodUnit unit) const {
    return per_day_rate * PeriodDays(unit);
  }
};

struct SentimentTerm {
  std::string lemma;
  double weight = 0;  // signed, after negation
};

struct SentimentResult {
  double score = 0;
  double magnitude = 0;
  int token_count = 0;
  std::vector<SentimentTerm> matched_terms;
};

// Frequency vocabulary. Rules are loaded from a TSV file whose values read
// `count <n>`, `rate <per-day>` or `fraction <0..1>`; numbers may be written
// as fractions ("1/14"). The numeric "x times" and "x-y times" patterns are
// built in and always take count precedence.
enum class VocabularyRuleKind { kCount, kFixedRate, kPeriodFraction };

struct VocabularyRule {
  std::string key;
  std::vector<std::string> words;  // key split on spaces
  VocabularyRuleKind kind = VocabularyRuleKind::kPeriodFraction;
  double value = 0;
};

class FrequencyVocabulary {
 public:
  static absl::StatusOr<FrequencyVocabulary> FromEntries(
      const std::vector<TsvEntry> &entries);

  const std::vector<VocabularyRule> &rules() const { return rules_; }

 private:
  std::vector<VocabularyRule> rules_;
};

class SentimentLexicon {
 public:
  static absl::StatusOr<SentimentLexicon> FromEntries(
      const std::vector<TsvEntry> &entries);

  // Looks up the lowercased surface first, then its lemma.
  std::optional<double> Weight(std::string_view lower,
                               std::string_view lemma) const;
  size_t size() const { return weights_.size(); }

 private:
  std::unordered_map<std::string, double> weights_;
};

class NounLexicon {
 public:
  static NounLexicon FromEntries(const std::vector<TsvEntry> &entries);

  bool Contains(std::string_view lower) const;
  // Lexicon words are their own lemma; otherwise the suffix-stripped form,
  // preferring a stripped form with a restored final 'e' when the lexicon
  // knows it ("exercises" -> "exercise").
  std::string Lemma(std::string_view lower) const;
  size_t size() const { return nouns_.size(); }

 private:
  std::unordered_set<std::string> nouns_;
};

struct QuantifierPaths {
  std::string nouns;
  std::string sentiment_lexicon;
  std::string frequency_vocabulary;

  // Files shipped under data/.
  static QuantifierPaths Bundled();
};

// Immutable after construction; cheap to copy and safe to share.
class Quantifier {
 public:
  static absl::StatusOr<Quantifier> Load(const QuantifierPaths &paths);
  static absl::StatusOr<Quantifier> LoadBundled();

  std::vector<Entity> ExtractEntities(std::string_view text) const;
  std::optional<FrequencyScore> ScoreFrequency(std::string_view text,
                                               FrequencyUnits units) const;
  SentimentResult AnalyzeSentiment(std::string_view text) const;

  // Lemma used for entities and codebook triggers.
  std::string LemmaOf(std::string_view word) const;
  std::string PhraseLemma(std::string_view phrase) const;

  const NounLexicon &nouns() const { return data_->nouns; }
  const SentimentLexicon &sentiment() const { return data_->sentiment; }
  const FrequencyVocabulary &vocabulary() const { return data_->vocabulary; }

 private:
  struct Data {
    NounLexicon nouns;
    SentimentLexicon sentiment;
    FrequencyVocabulary vocabulary;
  };
  explicit Quantifier(std::shared_ptr<const Data> data)
      : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

// Free-function forms over explicit lexicons.
std::vector<Entity> ExtractEntities(std::string_view text,
                                    const NounLexicon &nouns);
std::optional<FrequencyScore> ScoreFrequency(std::string_view text,
                                             FrequencyUnits units,
                                             const FrequencyVocabulary &vocab);
SentimentResult AnalyzeSentiment(std::string_view text,
                                 const SentimentLexicon &lexicon);

// Tokens of `text` with punctuation and "[REDACTED:...]" markers removed.
std::vector<Token> ContentTokens(std::string_view text);

}  // namespace echo

#endif  // ECHO_QUANTIFY_H_
