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
#include <numeric>

#include "echo/coding.h"

namespace echo {
namespace {

// Groups matched lemmas into per-theme evidence, ordered by first offset.
void Collect(const std::string &response_id, ThemeMode mode,
             std::map<std::string, std::map<std::string, std::vector<Span>>> &by_theme,
             std::vector<ThemeAssignment> *out) {
  for (auto &[theme, lemmas] : by_theme) {
    ThemeAssignment a;
    a.response_id = response_id;
    a.theme = theme;
    a.mode = mode;
    for (auto &[lemma, spans] : lemmas) {
      std::sort(spans.begin(), spans.end(),
                [](const Span &x, const Span &y) { return x.start < y.start; });
      spans.erase(std::unique(spans.begin(), spans.end()), spans.end());
      a.evidence.push_back({lemma, spans});
    }
    std::sort(a.evidence.begin(), a.evidence.end(),
              [](const ThemeEvidence &x, const ThemeEvidence &y) {
                return x.spans.front().start < y.spans.front().start;
              });
    out->push_back(std::move(a));
  }
}

std::vector<Span> MentionsOf(const Entity &e) {
  return e.mentions.empty() ? std::vector<Span>{e.span} : e.mentions;
}

}  // namespace

nlohmann::ordered_json ThemeAssignmentToJson(const ThemeAssignment &a) {
  nlohmann::ordered_json evidence = nlohmann::ordered_json::array();
  for (const ThemeEvidence &e : a.evidence) {
    nlohmann::ordered_json spans = nlohmann::ordered_json::array();
    for (const Span &s : e.spans) spans.push_back({s.start, s.end});
    evidence.push_back({{"lemma", e.lemma}, {"spans", std::move(spans)}});
  }
  return {{"response_id", a.response_id},
          {"theme", a.theme},
          {"mode", a.mode == ThemeMode::kDeductive ? "deductive" : "inductive"},
          {"evidence", std::move(evidence)}};
}

std::vector<ThemeAssignment> CodeThemesDeductive(const std::vector<CodingInput> &responses,
                                                 const Codebook &codebook) {
  const std::map<std::string, std::string> owners = codebook.TriggerOwners();
  std::vector<ThemeAssignment> out;
  for (const CodingInput &r : responses) {
    std::map<std::string, std::map<std::string, std::vector<Span>>> by_theme;
    for (const Entity &e : r.entities) {
      std::vector<std::string> lemmas = e.token_lemmas;
      lemmas.push_back(e.lemma);
      for (const std::string &lemma : lemmas) {
        const auto it = owners.find(lemma);
        if (it == owners.end()) continue;
        auto &spans = by_theme[it->second][lemma];
        const std::vector<Span> mentions = MentionsOf(e);
        spans.insert(spans.end(), mentions.begin(), mentions.end());
      }
    }
    Collect(r.response_id, ThemeMode::kDeductive, by_theme, &out);
  }
  return out;
}

std::vector<EmergentTheme> CodeThemesInductive(const std::vector<CodingInput> &responses,
                                               int min_support, double jaccard_threshold) {
  std::map<std::string, std::set<size_t>> docs;
  for (size_t i = 0; i < responses.size(); ++i) {
    for (const Entity &e : responses[i].entities) docs[e.lemma].insert(i);
  }
  std::vector<std::string> lemmas;
  for (const auto &[lemma, d] : docs) {
    if (static_cast<int>(d.size()) >= min_support) lemmas.push_back(lemma);
  }

  std::vector<size_t> parent(lemmas.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t a = 0; a < lemmas.size(); ++a) {
    for (size_t b = a + 1; b < lemmas.size(); ++b) {
      const std::set<size_t> &da = docs[lemmas[a]];
      const std::set<size_t> &db = docs[lemmas[b]];
      size_t both = 0;
      for (size_t d : da) both += db.contains(d);
      const double jaccard =
          static_cast<double>(both) / static_cast<double>(da.size() + db.size() - both);
      if (jaccard >= jaccard_threshold) parent[find(a)] = find(b);
    }
  }

  std::map<size_t, std::vector<std::string>> groups;
  for (size_t i = 0; i < lemmas.size(); ++i) groups[find(i)].push_back(lemmas[i]);
  std::vector<EmergentTheme> out;
  for (auto &[root, members] : groups) {
    EmergentTheme t;
    std::sort(members.begin(), members.end());
    t.label = members.front();
    for (const std::string &m : members) {
      if (docs[m].size() > docs[t.label].size()) t.label = m;
    }
    t.members = std::move(members);
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(),
            [](const EmergentTheme &a, const EmergentTheme &b) { return a.label < b.label; });
  return out;
}

std::vector<ThemeAssignment> AssignEmergentThemes(const std::vector<CodingInput> &responses,
                                                  const std::vector<EmergentTheme> &themes) {
  std::map<std::string, std::string> owner;
  for (const EmergentTheme &t : themes) {
    for (const std::string &m : t.members) owner.emplace(m, t.label);
  }
  std::vector<ThemeAssignment> out;
  for (const CodingInput &r : responses) {
    std::map<std::string, std::map<std::string, std::vector<Span>>> by_theme;
    for (const Entity &e : r.entities) {
      const auto it = owner.find(e.lemma);
      if (it == owner.end()) continue;
      auto &spans = by_theme[it->second][e.lemma];
      const std::vector<Span> mentions = MentionsOf(e);
      spans.insert(spans.end(), mentions.begin(), mentions.end());
    }
    Collect(r.response_id, ThemeMode::kInductive, by_theme, &out);
  }
  return out;
}

}  // namespace echo
