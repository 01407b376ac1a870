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

#include "echo/pii.h"

#include <algorithm>
#include <set>

#include "absl/strings/str_cat.h"

namespace echo {
namespace {

const std::regex &UrlPattern() {
  static const std::regex *re =
      new std::regex(R"((?:https?://|www\.)[^\s<>"]+)", std::regex::icase);
  return *re;
}

// Capitalized words that are common in answers and are not names.
const std::set<std::string> &NameAllowlist() {
  static const auto *words = new std::set<std::string>{
      "monday", "tuesday", "wednesday", "thursday", "friday", "saturday",
      "sunday", "january", "february", "march", "april", "may", "june",
      "july", "august", "september", "october", "november", "december",
      "christmas", "easter", "english", "internet", "covid", "god",
      "university", "college", "school", "doctor", "dr", "mr", "mrs", "ms",
      "mom", "mum", "dad", "i", "i'm", "i've", "i'd", "i'll", "ok", "okay",
      "yes", "no", "mental", "health", "the", "a", "an", "and", "or", "but",
      "so", "if", "when", "my", "we", "you", "he", "she", "they", "it"};
  return *words;
}

bool IsMarkerStart(std::string_view text, size_t pos) {
  return text.substr(pos).starts_with("[REDACTED:");
}

std::vector<Span> MarkerSpans(std::string_view text) {
  std::vector<Span> out;
  size_t pos = 0;
  while ((pos = text.find("[REDACTED:", pos)) != std::string_view::npos) {
    const size_t close = text.find(']', pos);
    if (close == std::string_view::npos) break;
    out.push_back({pos, close + 1});
    pos = close + 1;
  }
  return out;
}

void AddRegexMatches(std::string_view text, const std::regex &re, PiiKind kind,
                     std::vector<Redaction> *out) {
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator();
       ++it) {
    size_t start = static_cast<size_t>(it->position());
    size_t end = start + static_cast<size_t>(it->length());
    if (kind == PiiKind::kUrl) {
      while (end > start && std::string_view(".,;:!?)'").find(s[end - 1]) !=
                                std::string_view::npos) {
        --end;
      }
    }
    if (end > start) out->push_back({kind, {start, end}});
  }
}

void AddNameCandidates(std::string_view text, std::vector<Redaction> *out) {
  const std::vector<Token> tokens = Tokenize(text);
  auto eligible = [&](const Token &t) {
    return t.is_word() && t.capitalized && !t.sentence_initial && t.text.size() >= 2 &&
           !NameAllowlist().contains(t.lower) && !IsMarkerStart(text, t.span.start);
  };
  size_t i = 0;
  while (i < tokens.size()) {
    if (!eligible(tokens[i])) {
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < tokens.size() && eligible(tokens[j])) {
      const std::string_view gap =
          text.substr(tokens[j - 1].span.end, tokens[j].span.start - tokens[j - 1].span.end);
      if (gap.empty() || Trim(gap).size() != 0) break;
      ++j;
    }
    if (j - i >= 2) out->push_back({PiiKind::kName, {tokens[i].span.start, tokens[j - 1].span.end}});
    i = j;
  }
}

}  // namespace

std::string PiiKindName(PiiKind kind) {
  switch (kind) {
    case PiiKind::kUrl: return "URL";
    case PiiKind::kEmail: return "EMAIL";
    case PiiKind::kPhone: return "PHONE";
    case PiiKind::kName: return "NAME";
  }
  return "NAME";
}

const std::regex &EmailPattern() {
  static const std::regex *re =
      new std::regex(R"([A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,})");
  return *re;
}

const std::regex &PhonePattern() {
  static const std::regex *re = new std::regex(R"(\+?\(?\d(?:[ \t.()-]{0,2}\d){6,14})");
  return *re;
}

bool MatchesPiiPattern(std::string_view text) {
  const std::string s(text);
  return std::regex_search(s, EmailPattern()) || std::regex_search(s, PhonePattern());
}

ScrubResult ScrubPii(std::string_view text) {
  std::vector<Redaction> candidates;
  AddRegexMatches(text, UrlPattern(), PiiKind::kUrl, &candidates);
  AddRegexMatches(text, EmailPattern(), PiiKind::kEmail, &candidates);
  AddRegexMatches(text, PhonePattern(), PiiKind::kPhone, &candidates);
  AddNameCandidates(text, &candidates);

  // Existing markers are never rewritten, so scrubbing is idempotent.
  std::vector<Span> taken = MarkerSpans(text);
  ScrubResult result;
  for (const Redaction &r : candidates) {
    const bool clash = std::any_of(taken.begin(), taken.end(),
                                   [&](const Span &s) { return s.Overlaps(r.span); });
    if (clash) continue;
    taken.push_back(r.span);
    result.redactions.push_back(r);
  }
  std::sort(result.redactions.begin(), result.redactions.end(),
            [](const Redaction &a, const Redaction &b) { return a.span.start < b.span.start; });

  size_t pos = 0;
  for (const Redaction &r : result.redactions) {
    result.scrubbed.append(text.substr(pos, r.span.start - pos));
    absl::StrAppend(&result.scrubbed, "[REDACTED:", PiiKindName(r.kind), "]");
    pos = r.span.end;
  }
  result.scrubbed.append(text.substr(pos));
  return result;
}

}  // namespace echo
