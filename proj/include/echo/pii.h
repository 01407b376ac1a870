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

// PII scrubbing applied to every respondent utterance before it is stored or
// quantified.

#ifndef ECHO_PII_H_
#define ECHO_PII_H_

#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "echo/text.h"

namespace echo {

// Listed in overlap priority order.
enum class PiiKind { kUrl, kEmail, kPhone, kName };

std::string PiiKindName(PiiKind kind);  // "URL", "EMAIL", "PHONE", "NAME"

struct Redaction {
  PiiKind kind = PiiKind::kName;
  Span span;  // into the unscrubbed text
};

struct ScrubResult {
  std::string scrubbed;
  std::vector<Redaction> redactions;  // in source order
};

// Replaces URLs, emails, phone numbers (7 to 15 digits with optional
// separators or a leading '+') and runs of two or more capitalized,
// non-sentence-initial words by "[REDACTED:<KIND>]". Idempotent.
ScrubResult ScrubPii(std::string_view text);

const std::regex &EmailPattern();
const std::regex &PhonePattern();

// True when `text` holds an email or phone pattern match.
bool MatchesPiiPattern(std::string_view text);

}  // namespace echo

#endif  // ECHO_PII_H_
