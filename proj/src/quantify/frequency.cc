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
#include <cstdlib>
#include <string>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_replace.h"
#include "echo/quantify.h"

namespace echo {
namespace {

// Candidate precedence: counts beat fixed rates beat period fractions.
// Built-in numeric counts outrank count words from the vocabulary.
constexpr int kNumericCountPrecedence = 4;
constexpr int kCountPrecedence = 3;
constexpr int kFixedRatePrecedence = 2;
constexpr int kFractionPrecedence = 1;

struct Candidate {
  Span span;
  int precedence = 0;
  double per_day = 0;
  FrequencySource source = FrequencySource::kDefiniteCount;
  std::string key;
};

struct PeriodMatch {
  double days = 0;
  size_t last = 0;  // index of the final token of the period phrase
};

class Matcher {
 public:
  Matcher(std::vector<Token> tokens, FrequencyUnits units,
          const FrequencyVocabulary &vocab)
      : toks_(std::move(tokens)), units_(units), vocab_(vocab) {}

  std::vector<Candidate> Run() {
    std::vector<Candidate> out;
    for (size_t i = 0; i < toks_.size(); ++i) {
      MatchEveryN(i, &out);
      MatchNumericCount(i, &out);
      MatchVocabulary(i, &out);
    }
    return out;
  }

 private:
  const std::string &Lower(size_t i) const { return toks_[i].lower; }

  std::optional<double> NumberAt(size_t i) const {
    if (i >= toks_.size()) return std::nullopt;
    const Token &t = toks_[i];
    if (t.kind == TokenKind::kNumber) {
      const std::string digits = absl::StrReplaceAll(t.text, {{",", ""}});
      return std::strtod(digits.c_str(), nullptr);
    }
    if (t.kind == TokenKind::kWord) {
      const int v = NumberWordValue(t.lower);
      if (v >= 0) return v;
    }
    return std::nullopt;
  }

  // Canonical plural unit name, or empty.
  std::string UnitAt(size_t i) const {
    if (i >= toks_.size() || !toks_[i].is_word()) return {};
    const std::string &w = Lower(i);
    if (w == "time" || w == "times") return "times";
    if (w == "day" || w == "days") return "days";
    if (w == "hour" || w == "hours" || w == "hr" || w == "hrs") return "hours";
    if (w == "minute" || w == "minutes" || w == "min" || w == "mins") {
      return "minutes";
    }
    if (w == "session" || w == "sessions") return "sessions";
    if (w == "night" || w == "nights") return "nights";
    return {};
  }

  static std::optional<double> PeriodWordDays(std::string_view w) {
    if (w == "day" || w == "night") return 1.0;
    if (w == "week") return 7.0;
    if (w == "fortnight") return 14.0;
    if (w == "month") return PeriodDays(PeriodUnit::kMonth);
    if (w == "year") return PeriodDays(PeriodUnit::kYear);
    return std::nullopt;
  }

  std::optional<PeriodMatch> PeriodAt(size_t i) const {
    if (i >= toks_.size()) return std::nullopt;
    const std::string &w = Lower(i);
    if (toks_[i].is_word()) {
      if (w == "daily" || w == "nightly") return PeriodMatch{1.0, i};
      if (w == "weekly") return PeriodMatch{7.0, i};
      if (w == "fortnightly") return PeriodMatch{14.0, i};
      if (w == "monthly") return PeriodMatch{PeriodDays(PeriodUnit::kMonth), i};
      if (w == "yearly" || w == "annually") {
        return PeriodMatch{PeriodDays(PeriodUnit::kYear), i};
      }
    }
    size_t j = i;
    if (w == "in" && j + 1 < toks_.size() &&
        (Lower(j + 1) == "a" || Lower(j + 1) == "an")) {
      j += 2;
    } else if (w == "a" || w == "an" || w == "per" || w == "each" ||
               w == "every" || w == "/") {
      j += 1;
    } else {
      return std::nullopt;
    }
    if (j >= toks_.size()) return std::nullopt;
    if (auto days = PeriodWordDays(Lower(j))) return PeriodMatch{*days, j};
    return std::nullopt;
  }

  Span SpanOf(size_t first, size_t last) const {
    return {toks_[first].span.start, toks_[last].span.end};
  }

  // Applies an explicit trailing period, else the question's period.
  void FinishCount(double count, size_t first, size_t last, Candidate c,
                   std::vector<Candidate> *out, int precedence = kCountPrecedence) const {
    double days = PeriodDays(units_.period);
    if (auto period = PeriodAt(last + 1)) {
      days = period->days;
      last = period->last;
    }
    c.span = SpanOf(first, last);
    c.precedence = precedence;
    c.per_day = count / days;
    out->push_back(std::move(c));
  }

  // "every 3 days" -> one occurrence per 3 days.
  void MatchEveryN(size_t i, std::vector<Candidate> *out) const {
    if (Lower(i) != "every") return;
    const auto n = NumberAt(i + 1);
    if (!n || *n <= 0 || i + 2 >= toks_.size()) return;
    std::string w = Lower(i + 2);
    if (w.size() > 1 && w.back() == 's') w.pop_back();
    const auto days = PeriodWordDays(w);
    if (!days) return;
    Candidate c;
    c.span = SpanOf(i, i + 2);
    c.precedence = kFixedRatePrecedence;
    c.per_day = 1.0 / (*n * *days);
    c.source = FrequencySource::kAdverb;
    c.key = absl::StrCat("every x ", w, "s");
    out->push_back(std::move(c));
  }

  // "x times", "x-y times", "x to y days", "3 per week".
  void MatchNumericCount(size_t i, std::vector<Candidate> *out) const {
    const auto first = NumberAt(i);
    if (!first) return;
    if (i > 0 && Lower(i - 1) == "every") return;
    size_t j = i + 1;
    std::optional<double> second;
    if (j + 1 < toks_.size()) {
      const std::string &sep = Lower(j);
      if (sep == "-" || sep == "–" || sep == "—" || sep == "to" || sep == "or") {
        second = NumberAt(j + 1);
        if (second) j += 2;
      }
    }
    const std::string unit = UnitAt(j);
    Candidate c;
    size_t last = 0;
    if (!unit.empty()) {
      last = j;
    } else if (PeriodAt(j)) {
      last = j - 1;
    } else {
      return;
    }
    const std::string unit_name = unit.empty() ? "times" : unit;
    if (second) {
      c.source = FrequencySource::kRange;
      c.key = absl::StrCat("x-y ", unit_name);
      FinishCount((*first + *second) / 2.0, i, last, std::move(c), out, kNumericCountPrecedence);
    } else {
      c.source = FrequencySource::kDefiniteCount;
      c.key = absl::StrCat("x ", unit_name);
      FinishCount(*first, i, last, std::move(c), out, kNumericCountPrecedence);
    }
  }

  void MatchVocabulary(size_t i, std::vector<Candidate> *out) const {
    for (const VocabularyRule &rule : vocab_.rules()) {
      if (rule.words.empty() || i + rule.words.size() > toks_.size()) continue;
      bool match = true;
      for (size_t k = 0; k < rule.words.size(); ++k) {
        if (Lower(i + k) != rule.words[k]) {
          match = false;
          break;
        }
      }
      if (!match) continue;
      const size_t last = i + rule.words.size() - 1;
      Candidate c;
      c.key = rule.key;
      switch (rule.kind) {
        case VocabularyRuleKind::kCount:
          c.source = FrequencySource::kOrdinalWord;
          FinishCount(rule.value, i, last, std::move(c), out);
          break;
        case VocabularyRuleKind::kFixedRate:
          c.span = SpanOf(i, last);
          c.precedence = kFixedRatePrecedence;
          c.per_day = rule.value;
          c.source = FrequencySource::kAdverb;
          out->push_back(std::move(c));
          break;
        case VocabularyRuleKind::kPeriodFraction:
          c.span = SpanOf(i, last);
          c.precedence = kFractionPrecedence;
          c.per_day = rule.value;
          c.source = FrequencySource::kAdverb;
          out->push_back(std::move(c));
          break;
      }
    }
  }

  std::vector<Token> toks_;
  FrequencyUnits units_;
  const FrequencyVocabulary &vocab_;
};

}  // namespace

std::optional<FrequencyScore> ScoreFrequency(std::string_view text,
                                             FrequencyUnits units,
                                             const FrequencyVocabulary &vocab) {
  // Punctuation matters here ("3-5", "2/week"), so only redaction markers are
  // dropped from the token stream.
  std::vector<Token> tokens;
  const std::vector<Token> content = ContentTokens(text);
  for (Token &t : Tokenize(text)) {
    if (t.kind == TokenKind::kPunct) {
      tokens.push_back(std::move(t));
      continue;
    }
    const bool kept = std::any_of(content.begin(), content.end(), [&](const Token &c) {
      return c.span == t.span;
    });
    if (kept) tokens.push_back(std::move(t));
  }

  std::vector<Candidate> candidates = Matcher(std::move(tokens), units, vocab).Run();
  if (candidates.empty()) return std::nullopt;

  // A match nested strictly inside a longer one ("once" in "once in a while",
  // "daily" in "twice daily") is part of that phrase, not a rival.
  std::vector<Candidate> kept;
  for (const Candidate &c : candidates) {
    const bool nested = std::any_of(
        candidates.begin(), candidates.end(), [&](const Candidate &o) {
          return o.span.Contains(c.span) && !(o.span == c.span);
        });
    if (!nested) kept.push_back(c);
  }

  const Candidate &best = *std::min_element(
      kept.begin(), kept.end(), [](const Candidate &a, const Candidate &b) {
        if (a.precedence != b.precedence) return a.precedence > b.precedence;
        if (a.span.start != b.span.start) return a.span.start < b.span.start;
        return a.span.length() > b.span.length();
      });

  FrequencyScore score;
  score.matched_span = best.span;
  score.per_day_rate = best.per_day;
  score.source_kind = best.source;
  score.vocabulary_key = best.key;
  return score;
}

}  // namespace echo
