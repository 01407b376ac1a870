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
#include "absl/strings/str_join.h"
#include "echo/script.h"

namespace echo {

absl::StatusOr<IndexResult> ComputeIndex(const InquiryScript &script,
                                         const IndexDefinition &index,
                                         const AnswerMap &answered) {
  std::vector<std::string> missing;
  double raw = 0;
  for (size_t i = 0; i < index.item_question_ids.size(); ++i) {
    const std::string &qid = index.item_question_ids[i];
    const auto it = answered.find(qid);
    const Question *q = script.FindQuestion(qid);
    const auto *scale = q ? std::get_if<ObjectiveScale>(&q->response_kind) : nullptr;
    if (it == answered.end() || !it->second.is_scale() || scale == nullptr) {
      missing.push_back(qid);
      continue;
    }
    const int64_t v = std::get<int64_t>(it->second.value);
    const int polarity = i < index.item_polarity.size() ? index.item_polarity[i] : 1;
    raw += static_cast<double>(polarity < 0 ? scale->min + scale->max - v : v);
  }
  if (!missing.empty()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "incomplete index ", index.index_id, ": missing ", absl::StrJoin(missing, ", ")));
  }
  IndexResult result;
  result.raw_sum = raw;
  result.transformed = index.scale * raw + index.offset;
  result.band = index.BandFor(result.transformed).value_or("");
  return result;
}

IndexDefinition Who5Index(std::vector<std::string> items) {
  IndexDefinition d;
  d.index_id = "WHO5";
  d.item_polarity.assign(items.size(), 1);
  d.item_question_ids = std::move(items);
  d.scale = 4;
  d.bands = {{"poor", 50}, {"good", 100}};
  return d;
}

IndexDefinition Mhi5Index(std::vector<std::string> items, std::vector<int> polarity) {
  IndexDefinition d;
  d.index_id = "MHI5";
  d.item_question_ids = std::move(items);
  d.item_polarity = std::move(polarity);
  d.scale = 4;
  d.offset = -4.0 * static_cast<double>(d.item_question_ids.size());
  d.bands = {{"poor", 60}, {"good", 100}};
  return d;
}

IndexDefinition Phq9Index(std::vector<std::string> items) {
  IndexDefinition d;
  d.index_id = "PHQ9";
  d.item_polarity.assign(items.size(), 1);
  d.item_question_ids = std::move(items);
  d.bands = {{"minimal", 4},
             {"mild", 9},
             {"moderate", 14},
             {"moderately severe", 19},
             {"severe", 27}};
  return d;
}

}  // namespace echo
