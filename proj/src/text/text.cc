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

#include "echo/text.h"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>


namespace echo {
namespace {

enum class CharClass { kSpace, kNewline, kPunct, kApostrophe, kWord };

// Decodes one code point at text[pos]. Invalid sequences are consumed one
// byte at a time and treated as word characters.
char32_t Decode(std::string_view text, size_t pos, size_t *len) {
  const auto b0 = static_cast<unsigned char>(text[pos]);
  if (b0 < 0x80) {
    *len = 1;
    return b0;
  }
  int extra = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    cp = b0 & 0x07;
  } else {
    *len = 1;
    return 0xFFFD;
  }
  if (pos + extra >= text.size()) {
    *len = 1;
    return 0xFFFD;
  }
  for (int i = 1; i <= extra; ++i) {
    const auto b = static_cast<unsigned char>(text[pos + i]);
    if ((b & 0xC0) != 0x80) {
      *len = 1;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  *len = extra + 1;
  return cp;
}

CharClass Classify(char32_t cp) {
  if (cp == '\n' || cp == '\r' || cp == 0x2028 || cp == 0x2029) {
    return CharClass::kNewline;
  }
  if (cp == ' ' || cp == '\t' || cp == '\v' || cp == '\f' || cp == 0x00A0 ||
      (cp >= 0x2000 && cp <= 0x200B) || cp == 0x202F || cp == 0x205F ||
      cp == 0x3000) {
    return CharClass::kSpace;
  }
  if (cp == '\'' || cp == 0x2019) return CharClass::kApostrophe;
  if (cp < 0x80) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
        (cp >= '0' && cp <= '9') || cp == '_') {
      return CharClass::kWord;
    }
    if (cp < 0x20 || cp == 0x7F) return CharClass::kSpace;
    return CharClass::kPunct;
  }
  if ((cp >= 0x00A1 && cp <= 0x00BF) || cp == 0x00D7 || cp == 0x00F7 ||
      (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E) ||
      (cp >= 0x2190 && cp <= 0x21FF) || (cp >= 0x2200 && cp <= 0x22FF) ||
      (cp >= 0x3001 && cp <= 0x3003)) {
    return CharClass::kPunct;
  }
  return CharClass::kWord;
}

bool IsAsciiDigit(char c) { return c >= '0' && c <= '9'; }
bool IsAsciiUpper(char c) { return c >= 'A' && c <= 'Z'; }
bool IsAsciiLower(char c) { return c >= 'a' && c <= 'z'; }

bool EndsSentence(std::string_view punct) {
  return punct == "." || punct == "!" || punct == "?" || punct == "…";
}

}  // namespace

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char &c : out) {
    if (IsAsciiUpper(c)) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view Trim(std::string_view text) {
  const char *ws = " \t\r\n\v\f";
  const size_t first = text.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const size_t last = text.find_last_not_of(ws);
  return text.substr(first, last - first + 1);
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  bool at_sentence_start = true;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t len = 0;
    const char32_t cp = Decode(text, pos, &len);
    const CharClass cls = Classify(cp);
    if (cls == CharClass::kSpace) {
      pos += len;
      continue;
    }
    if (cls == CharClass::kNewline) {
      at_sentence_start = true;
      pos += len;
      continue;
    }
    if (cls == CharClass::kPunct || cls == CharClass::kApostrophe) {
      Token tok;
      tok.kind = TokenKind::kPunct;
      tok.span = {pos, pos + len};
      tok.text = std::string(text.substr(pos, len));
      tok.lower = tok.text;
      if (EndsSentence(tok.text)) at_sentence_start = true;
      tokens.push_back(std::move(tok));
      pos += len;
      continue;
    }

    // Word run: word characters, apostrophes between word characters, and
    // decimal points or thousands separators between digits.
    const size_t start = pos;
    size_t end = pos;
    while (end < text.size()) {
      size_t l = 0;
      const char32_t c = Decode(text, end, &l);
      const CharClass k = Classify(c);
      if (k == CharClass::kWord) {
        end += l;
        continue;
      }
      if (end + l < text.size()) {
        size_t nl = 0;
        const char32_t next = Decode(text, end + l, &nl);
        if (k == CharClass::kApostrophe && Classify(next) == CharClass::kWord &&
            next < 0x80 && (IsAsciiLower(static_cast<char>(next)) ||
                            IsAsciiUpper(static_cast<char>(next)))) {
          end += l;
          continue;
        }
        if ((c == '.' || c == ',') && IsAsciiDigit(text[end - 1]) &&
            next < 0x80 && IsAsciiDigit(static_cast<char>(next))) {
          end += l;
          continue;
        }
      }
      break;
    }

    Token tok;
    tok.span = {start, end};
    tok.text = std::string(text.substr(start, end - start));
    tok.lower = ToLower(tok.text);
    // Normalize the typographic apostrophe so lexicon lookups see one form.
    for (size_t i; (i = tok.lower.find("’")) != std::string::npos;) {
      tok.lower.replace(i, 3, "'");
    }
    const bool numeric =
        std::all_of(tok.text.begin(), tok.text.end(), [](char c) {
          return IsAsciiDigit(c) || c == '.' || c == ',';
        });
    tok.kind = numeric ? TokenKind::kNumber : TokenKind::kWord;
    tok.sentence_initial = at_sentence_start;
    if (!numeric) {
      tok.lemma = Lemmatize(tok.lower);
      int letters = 0;
      int uppers = 0;
      for (char c : tok.text) {
        if (IsAsciiUpper(c)) ++uppers;
        if (IsAsciiUpper(c) || IsAsciiLower(c)) ++letters;
      }
      tok.all_caps = letters >= 2 && uppers == letters;
      tok.capitalized = IsAsciiUpper(tok.text[0]) && !tok.all_caps;
    } else {
      tok.lemma = tok.lower;
    }
    at_sentence_start = false;
    tokens.push_back(std::move(tok));
    pos = end;
  }
  return tokens;
}

std::string Lemmatize(std::string_view w) {
  auto stem = [&](size_t suffix) { return w.substr(0, w.size() - suffix); };
  if (w.size() >= 5 && w.ends_with("ies")) {
    return std::string(stem(3)) + "y";
  }
  if (w.size() >= 7 && w.ends_with("ing")) {
    return std::string(stem(3));
  }
  if (w.size() >= 5 && w.ends_with("ied")) {
    return std::string(stem(3)) + "y";
  }
  if (w.size() >= 6 && w.ends_with("ed") && !w.ends_with("eed")) {
    return std::string(stem(2));
  }
  if (w.size() >= 5 && w.ends_with("es")) {
    const std::string_view s = stem(2);
    if (s.ends_with("s") || s.ends_with("x") ||
        s.ends_with("z") || s.ends_with("ch") ||
        s.ends_with("sh")) {
      return std::string(s);
    }
  }
  if (w.size() >= 4 && w.ends_with("s") && !w.ends_with("ss") &&
      !w.ends_with("us") && !w.ends_with("is") &&
      !w.ends_with("'s")) {
    return std::string(stem(1));
  }
  if (w.ends_with("'s")) return std::string(stem(2));
  return std::string(w);
}

bool IsStopword(std::string_view w) {
  static const auto *const kStopwords = new std::unordered_set<std::string_view>{
      "a",       "about",   "above",    "after",   "again",   "against",
      "all",     "also",    "am",       "an",      "and",     "any",
      "are",     "aren't",  "as",       "at",      "be",      "because",
      "been",    "before",  "being",    "below",   "between", "both",
      "but",     "by",      "can",      "cannot",  "can't",   "could",
      "couldn't", "did",    "didn't",   "do",      "does",    "doesn't",
      "doing",   "don't",   "down",     "during",  "each",    "else",
      "even",    "ever",    "few",      "for",     "from",    "further",
      "get",     "gets",    "got",      "had",     "hadn't",  "has",
      "hasn't",  "have",    "haven't",  "having",  "he",      "her",
      "here",    "hers",    "herself",  "him",     "himself", "his",
      "how",     "however", "i",        "i'd",     "i'll",    "i'm",
      "i've",    "if",      "in",       "into",    "is",      "isn't",
      "it",      "it's",    "its",      "itself",  "just",    "let",
      "like",    "lot",     "lots",     "many",    "may",     "me",
      "might",   "more",    "most",     "much",    "must",    "my",
      "myself",  "no",      "nor",      "not",     "nothing", "now",
      "of",      "off",     "often",    "on",      "once",    "one",
      "only",    "or",      "other",    "others",  "our",     "ours",
      "ourselves", "out",   "over",     "own",     "per",     "quite",
      "rather",  "really",  "same",     "she",     "should",  "shouldn't",
      "since",   "so",      "some",     "something", "still", "such",
      "than",    "that",    "that's",   "the",     "their",   "theirs",
      "them",    "themselves", "then",  "there",   "these",   "they",
      "thing",   "things",  "this",     "those",   "though",  "through",
      "thus",    "to",      "too",      "under",   "until",   "up",
      "upon",    "us",      "very",     "was",     "wasn't",  "we",
      "were",    "weren't", "what",     "when",    "where",   "which",
      "while",   "who",     "whom",     "why",     "will",    "with",
      "won't",   "would",   "wouldn't", "yes",     "yet",     "you",
      "your",    "yours",   "yourself", "yourselves", "never", "always",
      "sometimes", "usually", "every",  "etc",     "e.g",     "ie",
      "eg",      "way",     "ways",     "kind",    "sort",    "lot",
      "bit",     "anything", "everything", "someone", "anyone", "everyone",
      "somebody", "anybody", "everybody", "nobody", "none",   "whatever",
  };
  return kStopwords->contains(w);
}

bool IsNegator(std::string_view w) {
  return w == "not" || w == "never" || w == "no" || w == "cannot" ||
         w.ends_with("n't");
}

int NumberWordValue(std::string_view w) {
  static const auto *const kNumbers =
      new std::unordered_map<std::string_view, int>{
          {"zero", 0},     {"one", 1},       {"two", 2},        {"three", 3},
          {"four", 4},     {"five", 5},      {"six", 6},        {"seven", 7},
          {"eight", 8},    {"nine", 9},      {"ten", 10},       {"eleven", 11},
          {"twelve", 12},  {"thirteen", 13}, {"fourteen", 14},  {"fifteen", 15},
          {"sixteen", 16}, {"seventeen", 17}, {"eighteen", 18}, {"nineteen", 19},
          {"twenty", 20},  {"thirty", 30},   {"forty", 40},     {"fifty", 50},
          {"hundred", 100},
      };
  const auto it = kNumbers->find(w);
  return it == kNumbers->end() ? -1 : it->second;
}

}  // namespace echo
