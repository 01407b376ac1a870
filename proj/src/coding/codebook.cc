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

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "echo/coding.h"
#include "echo/lexicon.h"

namespace echo {
namespace {

Connective MakeConnective(std::string pattern, CausalDirection direction) {
  Connective c;
  for (const Token &t : Tokenize(pattern)) c.words.push_back(t.lower);
  c.pattern = std::move(pattern);
  c.direction = direction;
  return c;
}

}  // namespace

std::string CausalDirectionName(CausalDirection direction) {
  return direction == CausalDirection::kCauseFirst ? "cause-first" : "effect-first";
}

std::string EmotionLabelName(EmotionLabel label) {
  switch (label) {
    case EmotionLabel::kNegative: return "Negative";
    case EmotionLabel::kNeutral: return "Neutral";
    case EmotionLabel::kPositive: return "Positive";
  }
  return "Neutral";
}

std::vector<Connective> Codebook::DefaultConnectives() {
  std::vector<Connective> out;
  for (const char *p : {"because of", "because", "due to", "owing to", "since", "caused by",
                        "as a result of", "results from", "resulting from"}) {
    out.push_back(MakeConnective(p, CausalDirection::kCauseFirst));
  }
  for (const char *p : {"causes", "cause", "caused", "leads to", "lead to", "led to",
                        "results in", "resulted in", "so", "as a result", "therefore", "→"}) {
    out.push_back(MakeConnective(p, CausalDirection::kEffectFirst));
  }
  return out;
}

Codebook Codebook::Default() {
  Codebook c;
  c.connectives = DefaultConnectives();
  return c;
}

std::map<std::string, std::string> Codebook::TriggerOwners() const {
  std::vector<const Theme *> order;
  for (const std::string &label : theme_priority) {
    for (const Theme &t : themes) {
      if (t.label == label) order.push_back(&t);
    }
  }
  for (const Theme &t : themes) {
    if (std::find(order.begin(), order.end(), &t) == order.end()) order.push_back(&t);
  }
  std::map<std::string, std::string> owners;
  for (const Theme *t : order) {
    for (const std::string &lemma : t->triggers) owners.emplace(lemma, t->label);
  }
  return owners;
}

absl::StatusOr<Codebook> ParseCodebook(const nlohmann::json &j, const Quantifier &quantifier) {
  if (!j.is_object()) return absl::InvalidArgumentError("codebook must be a JSON object");
  Codebook book = Codebook::Default();
  try {
    if (j.contains("themes")) {
      const nlohmann::json &themes = j["themes"];
      if (!themes.is_object()) return absl::InvalidArgumentError("themes must be an object");
      for (const auto &[label, words] : themes.items()) {
        Theme t;
        t.label = label;
        for (const auto &w : words) {
          const std::string lemma = quantifier.PhraseLemma(w.get<std::string>());
          if (!lemma.empty()) t.triggers.insert(lemma);
        }
        if (t.triggers.empty()) {
          return absl::InvalidArgumentError(absl::StrCat("theme '", label, "' has no triggers"));
        }
        book.themes.push_back(std::move(t));
      }
    }
    if (j.contains("theme_priority")) {
      book.theme_priority = j["theme_priority"].get<std::vector<std::string>>();
    }
    if (j.contains("emotion_bands")) {
      const nlohmann::json &b = j["emotion_bands"];
      book.emotion_bands.negative_below = b.value("negative_below", -0.25);
      book.emotion_bands.positive_above = b.value("positive_above", 0.25);
    }
    if (j.contains("connectives")) {
      book.connectives.clear();
      for (const auto &c : j["connectives"]) {
        const std::string dir = c.at("direction").get<std::string>();
        if (dir != "cause-first" && dir != "effect-first") {
          return absl::InvalidArgumentError(absl::StrCat("unknown connective direction ", dir));
        }
        Connective conn = MakeConnective(c.at("pattern").get<std::string>(),
                                         dir == "cause-first" ? CausalDirection::kCauseFirst
                                                              : CausalDirection::kEffectFirst);
        if (conn.words.empty()) return absl::InvalidArgumentError("empty connective pattern");
        book.connectives.push_back(std::move(conn));
      }
    }
  } catch (const nlohmann::json::exception &e) {
    return absl::InvalidArgumentError(absl::StrCat("malformed codebook: ", e.what()));
  }

  const EmotionBands &b = book.emotion_bands;
  if (b.negative_below < -1 || b.positive_above > 1 || b.negative_below > b.positive_above) {
    return absl::InvalidArgumentError(
        "emotion bands need -1 <= negative_below <= positive_above <= 1");
  }
  auto prioritized = [&](const std::string &label) {
    return std::find(book.theme_priority.begin(), book.theme_priority.end(), label) !=
           book.theme_priority.end();
  };
  for (size_t a = 0; a < book.themes.size(); ++a) {
    for (size_t c = a + 1; c < book.themes.size(); ++c) {
      for (const std::string &lemma : book.themes[a].triggers) {
        if (!book.themes[c].triggers.contains(lemma)) continue;
        if (!prioritized(book.themes[a].label) || !prioritized(book.themes[c].label)) {
          return absl::InvalidArgumentError(absl::StrCat(
              "themes '", book.themes[a].label, "' and '", book.themes[c].label,
              "' share trigger '", lemma, "'; list both in theme_priority"));
        }
      }
    }
  }
  return book;
}

absl::StatusOr<Codebook> LoadCodebookFile(const std::string &path, const Quantifier &quantifier) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  const nlohmann::json j = nlohmann::json::parse(*text, nullptr, false);
  if (j.is_discarded()) return absl::InvalidArgumentError(absl::StrCat(path, ": not valid JSON"));
  return ParseCodebook(j, quantifier);
}

}  // namespace echo
