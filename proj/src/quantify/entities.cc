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

// Rule-based entity enumeration. A token is a noun candidate when it is a
// capitalized word that does not open a sentence (proper noun), or when the
// noun lexicon knows it or it carries a nominal suffix (common noun).
// Adjacent candidates merge into one phrase.

#include <algorithm>
#include <map>

#include "absl/strings/str_join.h"
#include "echo/quantify.h"

namespace echo {
namespace {

constexpr std::string_view kRedactionPrefix = "[REDACTED:";

std::vector<Span> RedactionMarkers(std::string_view text) {
  std::vector<Span> markers;
  size_t pos = 0;
  while ((pos = text.find(kRedactionPrefix, pos)) != std::string_view::npos) {
    const size_t close = text.find(']', pos);
    if (close == std::string_view::npos) break;
    markers.push_back({pos, close + 1});
    pos = close + 1;
  }
  return markers;
}

bool HasNominalSuffix(std::string_view w) {
  if (w.size() < 6) return false;
  for (std::string_view suffix :
       {"tion", "ment", "ness", "ship", "ics", "ity", "tions", "ments",
        "nesses", "ships", "ities"}) {
    if (w.ends_with(suffix)) return true;
  }
  return false;
}

enum class Candidate { kNone, kCommon, kProper };

Candidate Classify(const Token &tok, const NounLexicon &nouns) {
  if (!tok.is_word() || IsStopword(tok.lower)) return Candidate::kNone;
  if (tok.lower.size() < 2) return Candidate::kNone;
  if (nouns.Contains(tok.lower) || nouns.Contains(nouns.Lemma(tok.lower)) ||
      HasNominalSuffix(tok.lower)) {
    return Candidate::kCommon;
  }
  if ((tok.capitalized || tok.all_caps) && !tok.sentence_initial) {
    return Candidate::kProper;
  }
  return Candidate::kNone;
}

}  // namespace

std::vector<Token> ContentTokens(std::string_view text) {
  const std::vector<Span> markers = RedactionMarkers(text);
  std::vector<Token> out;
  for (Token &tok : Tokenize(text)) {
    if (tok.kind == TokenKind::kPunct) continue;
    const bool masked = std::any_of(markers.begin(), markers.end(),
                                    [&](const Span &m) { return m.Overlaps(tok.span); });
    if (!masked) out.push_back(std::move(tok));
  }
  return out;
}

std::vector<Entity> ExtractEntities(std::string_view text,
                                    const NounLexicon &nouns) {
  const std::vector<Span> markers = RedactionMarkers(text);
  const std::vector<Token> tokens = Tokenize(text);

  struct Phrase {
    size_t first_token = 0;  // index among word/number tokens
    Span span;
    std::vector<std::string> lemmas;
    bool proper = true;
  };
  std::vector<Phrase> phrases;

  size_t word_index = 0;
  bool open = false;  // previous token extended the current phrase
  for (const Token &tok : tokens) {
    const bool masked = std::any_of(markers.begin(), markers.end(),
                                    [&](const Span &m) { return m.Overlaps(tok.span); });
    if (tok.kind == TokenKind::kPunct || masked) {
      open = false;
      continue;
    }
    const Candidate c = Classify(tok, nouns);
    if (c == Candidate::kNone) {
      open = false;
      ++word_index;
      continue;
    }
    if (!open) {
      phrases.push_back({word_index, tok.span, {}, true});
    }
    Phrase &p = phrases.back();
    p.span.end = tok.span.end;
    p.lemmas.push_back(nouns.Lemma(tok.lower));
    p.proper = p.proper && c == Candidate::kProper;
    open = true;
    ++word_index;
  }
  const size_t token_count = word_index;
  if (phrases.empty()) return {};

  // Group mentions by lemma, keeping first-occurrence order.
  std::map<std::string, size_t> by_lemma;
  std::vector<Entity> entities;
  std::vector<size_t> first_position;
  for (const Phrase &p : phrases) {
    const std::string lemma = absl::StrJoin(p.lemmas, " ");
    auto [it, inserted] = by_lemma.emplace(lemma, entities.size());
    if (inserted) {
      Entity e;
      e.surface = std::string(text.substr(p.span.start, p.span.length()));
      e.lemma = lemma;
      e.token_lemmas = p.lemmas;
      e.span = p.span;
      e.label = p.proper ? EntityLabel::kProperNoun : EntityLabel::kCommonNoun;
      entities.push_back(std::move(e));
      first_position.push_back(p.first_token);
    }
    entities[it->second].mentions.push_back(p.span);
  }

  // salience ∝ tf × (1 + position weight), position weight = 1 - i/n for the
  // first mention at word index i of n.
  double total = 0;
  for (size_t i = 0; i < entities.size(); ++i) {
    const double tf = static_cast<double>(entities[i].mentions.size());
    const double position_weight =
        1.0 - static_cast<double>(first_position[i]) /
                  static_cast<double>(token_count);
    entities[i].salience = tf * (1.0 + position_weight);
    total += entities[i].salience;
  }
  for (Entity &e : entities) e.salience /= total;
  return entities;
}

}  // namespace echo
