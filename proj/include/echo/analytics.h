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

// Cohort analytics over exported session records: index scores, response
// consistency, distributions, one-sample tests and term frequencies.

#ifndef ECHO_ANALYTICS_H_
#define ECHO_ANALYTICS_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "echo/coding.h"
#include "echo/script.h"
#include "echo/session.h"
#include "json.hpp"

namespace echo {

// ---------------------------------------------------------------------------
// Distributions and tests of the standard normal and Student t.

double NormalCdf(double z);
// Regularized incomplete beta I_x(a, b), continued fraction evaluation.
double IncompleteBeta(double a, double b, double x);
double StudentTCdf(double t, double df);

// Tail probability of an observed statistic.
double NormalPValue(double z, Tail tail);
double StudentTPValue(double t, double df, Tail tail);

// Fails with InvalidArgument on length mismatch, fewer than two points, or
// zero variance in either input.
absl::StatusOr<double> Pearson(const std::vector<double> &x, const std::vector<double> &y);

// ---------------------------------------------------------------------------
// Index scores

struct IndexScore {
  std::string session_id;
  std::string index_id;
  double raw_sum = 0;
  double transformed = 0;
  std::string band;
};

absl::StatusOr<IndexScore> ScoreIndex(const SessionRecord &session, const InquiryScript &script,
                                      const IndexDefinition &index);

// ---------------------------------------------------------------------------
// Consistency

struct PairConsistency {
  ConsistencyPair pair;
  int n = 0;
  std::optional<double> r;  // unset when excluded
  bool excluded = false;
  std::string note;          // why the pair was excluded
  bool sign_matches = false;  // sign(r) == expected_sign
};

struct SessionConsistency {
  std::string session_id;
  double index = 0;  // mean of expected_sign * z(a) * z(b) over usable pairs
  bool consistent = false;
};

struct ConsistencyReport {
  std::vector<PairConsistency> pairs;
  std::vector<SessionConsistency> sessions;  // sessions answering a usable pair
  double consistent_fraction = 0;
};

// z-scores use the cohort mean and sample standard deviation of each item
// over the sessions that answered both items of the pair.
ConsistencyReport ComputeConsistency(const std::vector<SessionRecord> &sessions,
                                     const std::vector<ConsistencyPair> &pairs);

// ---------------------------------------------------------------------------
// Distributions

struct Bin {
  double upper = 0;  // inclusive
  int count = 0;
};

struct Distribution {
  std::string variable;
  int n = 0;
  std::vector<Bin> bins;
  std::vector<double> cdf;  // cumulative fraction per bin
  double mean = 0;
  double median = 0;
  double mode = 0;  // smallest of the most frequent values
};

// With no bin bounds each distinct value is its own bin. A value above the
// last bound opens a final bin at the maximum value. Empty input yields n = 0.
Distribution ComputeDistribution(std::string variable, const std::vector<double> &values,
                                 const std::vector<double> &bin_uppers = {});

// ---------------------------------------------------------------------------
// Hypothesis tests

struct TestResult {
  std::string hypothesis_id;
  std::string test;  // "proportion" or "mean"
  double estimate = 0;  // p-hat or sample mean
  double statistic = 0;
  double p_value = 1;
  Tail tail = Tail::kTwo;
  int n = 0;
  double alpha = 0.05;
  bool reject = false;
};

std::string DecisionName(const TestResult &result);  // "reject H0" / "fail to reject H0"

absl::StatusOr<TestResult> ProportionZTest(int successes, int n, double p0, Tail tail,
                                           double alpha = 0.05);
absl::StatusOr<TestResult> MeanTTest(const std::vector<double> &sample, double mu0, Tail tail,
                                     double alpha = 0.05);

// Codes the hypothesis over the sessions and runs its test. Not-applicable
// responses are left out of n.
struct HypothesisOutcome {
  HypothesisCoding coding;
  TestResult result;
};
absl::StatusOr<HypothesisOutcome> TestHypothesis(const InquiryScript &script,
                                                 const HypothesisDefinition &hypothesis,
                                                 const std::vector<SessionRecord> &sessions,
                                                 double alpha = 0.05);

// ---------------------------------------------------------------------------
// Term frequencies: entity mention counts, descending, ties lexicographic.

std::vector<std::pair<std::string, int>> TermFrequencies(
    const std::vector<std::vector<Entity>> &responses);

// ---------------------------------------------------------------------------
// Report

struct ReportOptions {
  double alpha = 0.05;
};

// Aggregate-only report over the sessions of one script. Respondents appear
// as ordinals in session_id order, never by id.
nlohmann::ordered_json BuildReport(const InquiryScript &script,
                                   const std::vector<SessionRecord> &sessions,
                                   const ReportOptions &options = {});

// The serialized report as written by the CLI and served over HTTP.
std::string ReportToString(const nlohmann::ordered_json &report);

// Flat CSV tables keyed by table name: index_scores, consistency_pairs,
// distributions, hypotheses, term_frequencies.
std::map<std::string, std::string> ReportToCsv(const nlohmann::ordered_json &report);

}  // namespace echo

#endif  // ECHO_ANALYTICS_H_
