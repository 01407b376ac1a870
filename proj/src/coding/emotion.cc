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

#include "echo/coding.h"

namespace echo {

EmotionLabel EmotionFor(double score, const EmotionBands &bands) {
  if (score < bands.negative_below) return EmotionLabel::kNegative;
  if (score > bands.positive_above) return EmotionLabel::kPositive;
  return EmotionLabel::kNeutral;
}

EmotionCode CodeEmotion(const CodingInput &response, const Codebook &codebook) {
  EmotionCode code;
  code.response_id = response.response_id;
  if (response.sentiment) {
    code.score = response.sentiment->score;
    code.magnitude = response.sentiment->magnitude;
  }
  code.label = EmotionFor(code.score, codebook.emotion_bands);
  return code;
}

}  // namespace echo
