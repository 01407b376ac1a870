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

#ifndef ECHO_TEXT_H_
#define ECHO_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace echo {

// Byte offsets into a UTF-8 source string. Slicing the source with
// [start, end) reproduces the surface text of whatever the span describes.
struct Span {
  size_t start = 0;
  size_t end = 0;

  size_t length() const { return end - start; }
  bool Contains(const Span &other) const {
    return start <= other.start && other.end <= end;
  }
  bool Overlaps(const Span &other) const {
    return start < other.end && other.start < end;
  }
  bool operator==(const Span &other) const = default;
};

enum class TokenKind { kWord, kNumber, kPunct };

struct Token {
  TokenKind kind = TokenKind::kWord;
  std::string text;   // surface form, exactly source[span]
  std::string lower;  // ASCII-lowercased surface, apostrophes normalized
  std::string lemma;  // suffix-stripped lower form (words only)
  Span span;
  bool sentence_initial = false;
  bool capitalized = false;  // first letter upper, rest not all upper
  bool all_caps = false;

  bool is_word() const { return kind == TokenKind::kWord; }
};

// Splits on Unicode whitespace and punctuation. Punctuation characters are
// kept as single kPunct tokens (multi-byte marks such as an arrow or a dash
// are one token). Apostrophes inside words stay part of the word.
std::vector<Token> Tokenize(std::string_view text);

// ASCII lowercase; non-ASCII bytes pass through unchanged so offsets stay
// aligned with the source.
std::string ToLower(std::string_view text);

std::string_view Trim(std::string_view text);

// Strips -s, -es, -ies, -ing and -ed. Plural suffixes require a stem of at
// least 3 characters, verbal suffixes a stem of at least 4.
std::string Lemmatize(std::string_view lower_word);

bool IsStopword(std::string_view lower_word);

// True for "not", "never", "no" and any word ending in "n't".
bool IsNegator(std::string_view lower_word);

// Parses "zero" through "twenty" and a few round tens. Returns -1 when the
// word is not a number word.
int NumberWordValue(std::string_view lower_word);

}  // namespace echo

#endif  // ECHO_TEXT_H_
