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

// Automated qualitative coding: deductive and inductive themes, causation
// chains, emotion labels and hypothesis verdicts.

#ifndef ECHO_CODING_H_
#define ECHO_CODING_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "echo/answer.h"
#include "echo/quantify.h"
#include "echo/script.h"
#include "json.hpp"

namespace echo {

// "cause-first" connectives ("because", "due to") introduce the cause, so the
// clause after them is the cause. "effect-first" ones ("causes", "so")
// introduce the effect.
enum class CausalDirection { kCauseFirst, kEffectFirst };
std::string CausalDirectionName(CausalDirection direction);

struct Connective {
  std::string pattern;             // as written, e.g. "leads to"
  std::vector<std::string> words;  // lowercased tokens of the pattern
  CausalDirection direction = CausalDirection::kEffectFirst;
};

enum class EmotionLabel { kNegative, kNeutral, kPositive };
std::string EmotionLabelName(EmotionLabel label);  // "Negative", ...

// Scores strictly below `negative_below` are Negative, strictly above
// `positive_above` Positive, anything between Neutral.
struct EmotionBands {
  double negative_below = -0.25;
  double positive_above = 0.25;
};

struct Theme {
  std::string label;
  std::set<std::string> triggers;  // lemmatized
};

struct Codebook {
  std::vector<Theme> themes;
  std::vector<std::string> theme_priority;  // optional, highest first
  EmotionBands emotion_bands;
  std::vector<Connective> connectives;

  static std::vector<Connective> DefaultConnectives();
  // No themes, default bands and connectives.
  static Codebook Default();

  // Theme owning each trigger lemma once priorities are applied.
  std::map<std::string, std::string> TriggerOwners() const;
};

// Reads {"themes": {label: [words]}, "theme_priority": [...],
// "emotion_bands": {"negative_below": x, "positive_above": y},
// "connectives": [{"pattern": "...", "direction": "cause-first"}]}.
// Trigger words are lemmatized with `quantifier`. Overlapping triggers
// without a priority covering both themes are an error.
absl::StatusOr<Codebook> ParseCodebook(const nlohmann::json &j,
                                       const Quantifier &quantifier);
absl::StatusOr<Codebook> LoadCodebookFile(const std::string &path,
                                          const Quantifier &quantifier);

// A text response to be coded.
struct CodingInput {
  std::string response_id;
  std::string text;  // scrubbed
  std::vector<Entity> entities;
  std::optional<SentimentResult> sentiment;
};

enum class ThemeMode { kDeductive, kInductive };

struct ThemeEvidence {
  std::string lemma;
  std::vector<Span> spans;
};

struct ThemeAssignment {
  std::string response_id;
  std::string theme;
  std::vector<ThemeEvidence> evidence;
  ThemeMode mode = ThemeMode::kDeductive;
};

nlohmann::ordered_json ThemeAssignmentToJson(const ThemeAssignment &a);

std::vector<ThemeAssignment> CodeThemesDeductive(const std::vector<CodingInput> &responses,
                                                 const Codebook &codebook);

struct EmergentTheme {
  std::string label;                 // most frequent member
  std::vector<std::string> members;  // sorted
};

// Candidate lemmas are entity lemmas found in at least `min_support`
// responses. Two candidates are linked when the Jaccard index of the
// response sets they occur in reaches `jaccard_threshold`; themes are the
// connected components. Sorted by label.
std::vector<EmergentTheme> CodeThemesInductive(const std::vector<CodingInput> &responses,
                                               int min_support, double jaccard_threshold);

// Attaches emergent themes to the responses that mention their members.
std::vector<ThemeAssignment> AssignEmergentThemes(const std::vector<CodingInput> &responses,
                                                  const std::vector<EmergentTheme> &themes);

struct CausalChain {
  std::vector<std::string> codes;  // length >= 2
  std::vector<Span> evidence;      // one span per link
};

std::string ChainToString(const CausalChain &chain);  // "a → b → c"

std::vector<CausalChain> CodeCausation(const CodingInput &response,
                                       const Codebook &codebook);

struct EmotionCode {
  std::string response_id;
  EmotionLabel label = EmotionLabel::kNeutral;
  double score = 0;
  double magnitude = 0;
};

EmotionLabel EmotionFor(double score, const EmotionBands &bands);
EmotionCode CodeEmotion(const CodingInput &response, const Codebook &codebook);

// ---------------------------------------------------------------------------
// Hypothesis coding

enum class Verdict { kSupports, kRefutes, kNotApplicable };
std::string VerdictName(Verdict verdict);  // "supports", "refutes", "not-applicable"

struct HypothesisCoding {
  std::string hypothesis_id;
  std::string predicate;
  std::vector<std::pair<std::string, Verdict>> verdicts;  // per response
  int supports = 0;
  int refutes = 0;
  int not_applicable = 0;
};

// One respondent's answer to the hypothesis question; null when unanswered.
struct HypothesisInput {
  std::string response_id;
  const Answer *answer = nullptr;
};

// Numeric reading of an answer: scale value, 1/0 for yes/no, or the rate in
// the question's own period for frequency answers.
std::optional<double> NumericValue(const Question &question, const Answer &answer);

// Proportion tests apply the success predicate. Mean tests count a response
// as supporting when its value lies on the alternative's side of the null
// mean. Fails when the predicate does not fit the question's kind.
absl::StatusOr<HypothesisCoding> CodeHypothesis(const InquiryScript &script,
                                                const HypothesisDefinition &hypothesis,
                                                const std::vector<HypothesisInput> &responses);

}  // namespace echo

#endif  // ECHO_CODING_H_
