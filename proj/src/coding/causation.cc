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

#include "echo/coding.h"

namespace echo {
namespace {

struct Clause {
  size_t first = 0;  // token index range [first, last)
  size_t last = 0;
  bool empty() const { return first == last; }
};

struct Boundary {
  const Connective *connective = nullptr;  // null for plain breaks
  Span span;
};

struct Code {
  std::string key;   // lemma used for joining
  std::string text;  // shown in the chain
};

struct Link {
  Code cause;
  Code effect;
  Span evidence;
};

bool IsPlainBreak(const Token &t) {
  return t.kind == TokenKind::kPunct || t.lower == "and" || t.lower == "but";
}

// Longest connective starting at token i, with its token length.
std::pair<const Connective *, size_t> MatchConnective(const std::vector<Token> &tokens,
                                                      size_t i, const Codebook &book) {
  const Connective *best = nullptr;
  size_t best_len = 0;
  for (const Connective &c : book.connectives) {
    if (c.words.size() <= best_len || i + c.words.size() > tokens.size()) continue;
    bool match = true;
    for (size_t k = 0; k < c.words.size() && match; ++k) {
      match = tokens[i + k].lower == c.words[k];
    }
    if (match) {
      best = &c;
      best_len = c.words.size();
    }
  }
  return {best, best_len};
}

std::optional<Code> ClauseCode(const CodingInput &r, const std::vector<Token> &tokens,
                               const Clause &clause) {
  const Span span{tokens[clause.first].span.start, tokens[clause.last - 1].span.end};
  const Entity *best = nullptr;
  Span best_mention;
  for (const Entity &e : r.entities) {
    const std::vector<Span> mentions = e.mentions.empty() ? std::vector<Span>{e.span} : e.mentions;
    for (const Span &m : mentions) {
      if (!span.Contains(m)) continue;
      if (best == nullptr || e.salience > best->salience ||
          (e.salience == best->salience && m.start < best_mention.start)) {
        best = &e;
        best_mention = m;
      }
      break;
    }
  }
  if (best != nullptr) {
    return Code{best->lemma,
                ToLower(std::string_view(r.text).substr(best_mention.start, best_mention.length()))};
  }
  for (size_t i = clause.first; i < clause.last; ++i) {
    const Token &t = tokens[i];
    if (t.is_word() && !IsStopword(t.lower) && !IsNegator(t.lower) && t.lower != "redacted") {
      return Code{t.lemma, t.lower};
    }
  }
  return std::nullopt;
}

Span Cover(const std::vector<Token> &tokens, const Clause &a, const Clause &b) {
  const size_t first = std::min(a.first, b.first);
  const size_t last = std::max(a.last, b.last);
  return {tokens[first].span.start, tokens[last - 1].span.end};
}

}  // namespace

std::string ChainToString(const CausalChain &chain) {
  std::string out;
  for (size_t i = 0; i < chain.codes.size(); ++i) {
    if (i > 0) out += " → ";
    out += chain.codes[i];
  }
  return out;
}

std::vector<CausalChain> CodeCausation(const CodingInput &r, const Codebook &codebook) {
  const std::vector<Token> tokens = Tokenize(r.text);
  std::vector<Clause> clauses;
  std::vector<Boundary> boundaries;  // boundaries[k] sits between clauses[k] and [k+1]
  Clause current{0, 0};
  size_t i = 0;
  while (i < tokens.size()) {
    const auto [conn, len] = MatchConnective(tokens, i, codebook);
    if (conn != nullptr || IsPlainBreak(tokens[i])) {
      const size_t n = conn != nullptr ? len : 1;
      current.last = i;
      clauses.push_back(current);
      boundaries.push_back({conn, {tokens[i].span.start, tokens[i + n - 1].span.end}});
      i += n;
      current = Clause{i, i};
      continue;
    }
    ++i;
  }
  current.last = tokens.size();
  clauses.push_back(current);

  std::vector<Link> links;
  for (size_t k = 0; k < boundaries.size(); ++k) {
    if (boundaries[k].connective == nullptr) continue;
    Clause left = clauses[k];
    Clause right = clauses[k + 1];
    if (right.empty()) continue;
    if (left.empty()) {
      // Leading connective: "Because of exams, I worry".
      if (k + 2 >= clauses.size() || boundaries[k + 1].connective != nullptr) continue;
      left = clauses[k + 2];
      if (left.empty()) continue;
    }
    const std::optional<Code> lc = ClauseCode(r, tokens, left);
    const std::optional<Code> rc = ClauseCode(r, tokens, right);
    if (!lc || !rc || lc->key == rc->key) continue;
    const bool cause_first = boundaries[k].connective->direction == CausalDirection::kCauseFirst;
    links.push_back({cause_first ? *rc : *lc, cause_first ? *lc : *rc, Cover(tokens, left, right)});
  }

  // Join links into maximal paths where one effect is the next cause.
  std::vector<bool> used(links.size(), false);
  auto is_start = [&](size_t a) {
    for (size_t b = 0; b < links.size(); ++b) {
      if (b != a && links[b].effect.key == links[a].cause.key) return false;
    }
    return true;
  };
  std::vector<CausalChain> chains;
  auto grow = [&](size_t start) {
    CausalChain chain;
    chain.codes = {links[start].cause.text, links[start].effect.text};
    chain.evidence = {links[start].evidence};
    std::vector<std::string> keys = {links[start].cause.key, links[start].effect.key};
    used[start] = true;
    for (bool extended = true; extended;) {
      extended = false;
      for (size_t j = 0; j < links.size(); ++j) {
        if (used[j] || links[j].cause.key != keys.back()) continue;
        if (std::find(keys.begin(), keys.end(), links[j].effect.key) != keys.end()) continue;
        used[j] = true;
        keys.push_back(links[j].effect.key);
        chain.codes.push_back(links[j].effect.text);
        chain.evidence.push_back(links[j].evidence);
        extended = true;
        break;
      }
    }
    chains.push_back(std::move(chain));
  };
  for (size_t a = 0; a < links.size(); ++a) {
    if (!used[a] && is_start(a)) grow(a);
  }
  for (size_t a = 0; a < links.size(); ++a) {
    if (!used[a]) grow(a);
  }
  return chains;
}

}  // namespace echo
