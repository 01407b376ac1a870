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

#include "echo/lexicon.h"

#include <fstream>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "echo/text.h"

namespace echo {

absl::StatusOr<std::vector<TsvEntry>> ParseTsv(std::string_view contents,
                                               std::string_view source_name) {
  std::vector<TsvEntry> entries;
  int line_no = 0;
  for (absl::string_view piece :
       absl::StrSplit(absl::string_view(contents.data(), contents.size()), '\n')) {
    std::string_view line(piece.data(), piece.size());
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || line.front() == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      return absl::InvalidArgumentError(absl::StrCat(
          std::string(source_name), ":", line_no, ": expected term<TAB>value"));
    }
    TsvEntry entry;
    entry.term = ToLower(Trim(line.substr(0, tab)));
    entry.value = std::string(Trim(line.substr(tab + 1)));
    entry.line = line_no;
    if (entry.term.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat(std::string(source_name), ":", line_no, ": empty term"));
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

absl::StatusOr<std::string> ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::StatusOr<std::vector<TsvEntry>> ReadTsvFile(const std::string &path) {
  absl::StatusOr<std::string> contents = ReadFile(path);
  if (!contents.ok()) return contents.status();
  return ParseTsv(*contents, path);
}

absl::StatusOr<double> ParseNumber(std::string_view text) {
  text = Trim(text);
  const size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    double num = 0;
    double den = 0;
    if (!absl::SimpleAtod(std::string(text.substr(0, slash)), &num) ||
        !absl::SimpleAtod(std::string(text.substr(slash + 1)), &den) || den == 0) {
      return absl::InvalidArgumentError(absl::StrCat("bad fraction: ", std::string(text)));
    }
    return num / den;
  }
  double value = 0;
  if (!absl::SimpleAtod(std::string(text), &value)) {
    return absl::InvalidArgumentError(absl::StrCat("bad number: ", std::string(text)));
  }
  return value;
}

}  // namespace echo
