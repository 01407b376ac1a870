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
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "echo/analytics.h"

namespace echo {
namespace {

std::optional<double> ScaleValue(const SessionRecord &s, const std::string &question_id) {
  const Answer *a = s.FindAnswer(question_id);
  if (a == nullptr || !a->is_scale()) return std::nullopt;
  return static_cast<double>(std::get<int64_t>(a->value));
}

void MeanAndSd(const std::vector<double> &v, double *mean, double *sd) {
  double sum = 0;
  for (double x : v) sum += x;
  *mean = sum / static_cast<double>(v.size());
  double ss = 0;
  for (double x : v) ss += (x - *mean) * (x - *mean);
  *sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

absl::StatusOr<IndexScore> ScoreIndex(const SessionRecord &session, const InquiryScript &script,
                                      const IndexDefinition &index) {
  absl::StatusOr<IndexResult> r = ComputeIndex(script, index, session.AnswerIndex());
  if (!r.ok()) return r.status();
  return IndexScore{session.session_id, index.index_id, r->raw_sum, r->transformed, r->band};
}

ConsistencyReport ComputeConsistency(const std::vector<SessionRecord> &sessions,
                                     const std::vector<ConsistencyPair> &pairs) {
  ConsistencyReport report;
  std::vector<double> contribution(sessions.size(), 0);
  std::vector<int> used(sessions.size(), 0);
  for (const ConsistencyPair &pair : pairs) {
    PairConsistency pc;
    pc.pair = pair;
    std::vector<size_t> who;
    std::vector<double> a, b;
    for (size_t i = 0; i < sessions.size(); ++i) {
      const std::optional<double> va = ScaleValue(sessions[i], pair.question_a);
      const std::optional<double> vb = ScaleValue(sessions[i], pair.question_b);
      if (!va || !vb) continue;
      who.push_back(i);
      a.push_back(*va);
      b.push_back(*vb);
    }
    pc.n = static_cast<int>(who.size());
    const absl::StatusOr<double> r = Pearson(a, b);
    if (!r.ok()) {
      pc.excluded = true;
      pc.note = std::string(r.status().message());
      report.pairs.push_back(std::move(pc));
      continue;
    }
    pc.r = *r;
    pc.sign_matches = (*r > 0 ? 1 : *r < 0 ? -1 : 0) == pair.expected_sign;
    double ma, sa, mb, sb;
    MeanAndSd(a, &ma, &sa);
    MeanAndSd(b, &mb, &sb);
    for (size_t k = 0; k < who.size(); ++k) {
      contribution[who[k]] += pair.expected_sign * ((a[k] - ma) / sa) * ((b[k] - mb) / sb);
      ++used[who[k]];
    }
    report.pairs.push_back(std::move(pc));
  }
  int consistent = 0;
  for (size_t i = 0; i < sessions.size(); ++i) {
    if (used[i] == 0) continue;
    SessionConsistency sc;
    sc.session_id = sessions[i].session_id;
    sc.index = contribution[i] / used[i];
    sc.consistent = sc.index > 0;
    consistent += sc.consistent;
    report.sessions.push_back(std::move(sc));
  }
  if (!report.sessions.empty()) {
    report.consistent_fraction =
        static_cast<double>(consistent) / static_cast<double>(report.sessions.size());
  }
  return report;
}

Distribution ComputeDistribution(std::string variable, const std::vector<double> &values,
                                 const std::vector<double> &bin_uppers) {
  Distribution d;
  d.variable = std::move(variable);
  d.n = static_cast<int>(values.size());
  if (values.empty()) return d;

  double sum = 0;
  for (double v : values) sum += v;
  d.mean = sum / static_cast<double>(values.size());

  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  d.median = n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2;

  int best = 0;
  for (size_t i = 0; i < n;) {
    size_t j = i;
    while (j < n && sorted[j] == sorted[i]) ++j;
    if (static_cast<int>(j - i) > best) {
      best = static_cast<int>(j - i);
      d.mode = sorted[i];
    }
    i = j;
  }

  std::vector<double> uppers = bin_uppers;
  if (uppers.empty()) {
    uppers = sorted;
    uppers.erase(std::unique(uppers.begin(), uppers.end()), uppers.end());
  } else if (sorted.back() > uppers.back()) {
    uppers.push_back(sorted.back());
  }
  for (double u : uppers) d.bins.push_back({u, 0});
  for (double v : sorted) {
    const auto it = std::lower_bound(uppers.begin(), uppers.end(), v);
    ++d.bins[static_cast<size_t>(it - uppers.begin())].count;
  }
  int running = 0;
  for (const Bin &b : d.bins) {
    running += b.count;
    d.cdf.push_back(static_cast<double>(running) / static_cast<double>(n));
  }
  return d;
}

absl::StatusOr<HypothesisOutcome> TestHypothesis(const InquiryScript &script,
                                                 const HypothesisDefinition &hypothesis,
                                                 const std::vector<SessionRecord> &sessions,
                                                 double alpha) {
  std::vector<HypothesisInput> inputs;
  for (const SessionRecord &s : sessions) {
    inputs.push_back({s.session_id, s.FindAnswer(hypothesis.question_id())});
  }
  absl::StatusOr<HypothesisCoding> coding = CodeHypothesis(script, hypothesis, inputs);
  if (!coding.ok()) return coding.status();

  absl::StatusOr<TestResult> result;
  if (const auto *p = std::get_if<ProportionTest>(&hypothesis.test)) {
    result = ProportionZTest(coding->supports, coding->supports + coding->refutes, p->null_p0,
                             p->tail, alpha);
  } else {
    const auto &m = std::get<MeanTest>(hypothesis.test);
    const Question *q = script.FindQuestion(m.question_id);
    std::vector<double> sample;
    for (const HypothesisInput &in : inputs) {
      if (in.answer == nullptr) continue;
      if (const std::optional<double> v = NumericValue(*q, *in.answer)) sample.push_back(*v);
    }
    result = MeanTTest(sample, m.null_mu0, m.tail, alpha);
  }
  if (!result.ok()) return result.status();
  result->hypothesis_id = hypothesis.hypothesis_id;
  return HypothesisOutcome{*std::move(coding), *std::move(result)};
}

std::vector<std::pair<std::string, int>> TermFrequencies(
    const std::vector<std::vector<Entity>> &responses) {
  std::map<std::string, int> counts;
  for (const std::vector<Entity> &entities : responses) {
    for (const Entity &e : entities) {
      if (IsStopword(e.lemma)) continue;
      counts[e.lemma] += std::max<int>(1, static_cast<int>(e.mentions.size()));
    }
  }
  std::vector<std::pair<std::string, int>> out(counts.begin(), counts.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto &a, const auto &b) { return a.second > b.second; });
  return out;
}

}  // namespace echo
