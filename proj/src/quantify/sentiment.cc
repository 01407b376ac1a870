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

#include "echo/quantify.h"

namespace echo {

// Negators reach this many tokens ahead.
constexpr size_t kNegationWindow = 3;

SentimentResult AnalyzeSentiment(std::string_view text,
                                 const SentimentLexicon &lexicon) {
  SentimentResult result;
  const std::vector<Token> tokens = ContentTokens(text);
  result.token_count = static_cast<int>(tokens.size());

  double signed_sum = 0;
  double absolute_sum = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const Token &tok = tokens[i];
    if (IsNegator(tok.lower)) continue;
    const std::optional<double> weight = lexicon.Weight(tok.lower, tok.lemma);
    if (!weight) continue;
    bool negated = false;
    for (size_t back = 1; back <= kNegationWindow && back <= i; ++back) {
      if (IsNegator(tokens[i - back].lower)) {
        negated = true;
        break;
      }
    }
    const double w = negated ? -*weight : *weight;
    signed_sum += w;
    absolute_sum += std::abs(w);
    result.matched_terms.push_back({tok.lemma, w});
  }
  if (!result.matched_terms.empty()) {
    result.score = signed_sum / static_cast<double>(result.matched_terms.size());
    result.magnitude = absolute_sum / static_cast<double>(result.token_count);
  }
  return result;
}

}  // namespace echo
