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

#ifndef ECHO_LEXICON_H_
#define ECHO_LEXICON_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace echo {

// One `term<TAB>value` line of a lexicon or vocabulary file.
struct TsvEntry {
  std::string term;
  std::string value;
  int line = 0;
};

// Parses the shared lexicon file format: UTF-8, one `term<TAB>value` entry
// per line, blank lines and lines starting with '#' ignored. Terms are
// lowercased. A line without a tab is an error.
absl::StatusOr<std::vector<TsvEntry>> ParseTsv(std::string_view contents,
                                               std::string_view source_name);

absl::StatusOr<std::vector<TsvEntry>> ReadTsvFile(const std::string &path);

absl::StatusOr<std::string> ReadFile(const std::string &path);

// Accepts a decimal number or a fraction "a/b".
absl::StatusOr<double> ParseNumber(std::string_view text);

}  // namespace echo

#endif  // ECHO_LEXICON_H_
