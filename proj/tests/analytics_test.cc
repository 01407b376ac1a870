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

#include <cmath>
#include <fstream>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "cohort.h"
#include "echo/analytics.h"
#include "oracles.h"

namespace echo {
namespace {

const Quantifier &Q() {
  static const Quantifier *q = new Quantifier(*Quantifier::LoadBundled());
  return *q;
}

const InquiryScript &Bundled() {
  static const InquiryScript *s =
      new InquiryScript(*LoadScriptFile(ECHO_DATA_DIR "/scripts/mental_health.json"));
  return *s;
}

TEST(Stats, NormalCdfMatchesQuadrature) {
  for (double z = -6; z <= 6; z += 0.37) {
    EXPECT_NEAR(NormalCdf(z), oracle::NormalCdf(z), 1e-9) << z;
  }
}

TEST(Stats, StudentTCdfMatchesQuadrature) {
  for (double df : {1.0, 2.0, 4.0, 9.0, 30.0, 120.0}) {
    for (double t = -8; t <= 8; t += 0.53) {
      EXPECT_NEAR(StudentTCdf(t, df), oracle::StudentTCdf(t, df), 1e-8) << t << " " << df;
    }
  }
}

TEST(Stats, IncompleteBetaEdges) {
  EXPECT_EQ(IncompleteBeta(2, 3, 0), 0);
  EXPECT_EQ(IncompleteBeta(2, 3, 1), 1);
  EXPECT_NEAR(IncompleteBeta(1, 1, 0.3), 0.3, 1e-12);
}

TEST(Pearson, IdentityAndNegation) {
  const std::vector<double> x = {1, 2, 4, 7, 3};
  std::vector<double> neg;
  for (double v : x) neg.push_back(-v);
  EXPECT_NEAR(*Pearson(x, x), 1.0, 1e-15);
  EXPECT_NEAR(*Pearson(x, neg), -1.0, 1e-15);
}

TEST(Pearson, TenElementsMatchDirectFormula) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> d(0, 3);
  std::vector<double> x(10), y(10);
  for (int i = 0; i < 10; ++i) {
    x[i] = d(rng);
    y[i] = 0.5 * x[i] + d(rng);
  }
  EXPECT_NEAR(*Pearson(x, y), oracle::Pearson(x, y), 1e-12);
}

TEST(Pearson, Errors) {
  EXPECT_FALSE(Pearson({1, 2}, {1}).ok());
  EXPECT_FALSE(Pearson({1}, {1}).ok());
  const auto zero = Pearson({2, 2, 2}, {1, 2, 3});
  ASSERT_FALSE(zero.ok());
  EXPECT_NE(std::string(zero.status().message()).find("zero variance"), std::string::npos);
}

TEST(Pearson, AffineInvarianceIsExact) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> v(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(20), y(20), ax(20);
    for (int i = 0; i < 20; ++i) {
      x[i] = v(rng);
      y[i] = v(rng);
    }
    const auto r = Pearson(x, y);
    if (!r.ok()) continue;
    for (double a : {2.0, 4.0, 0.5}) {
      for (double b : {-3.0, 0.0, 17.0}) {
        for (int i = 0; i < 20; ++i) ax[i] = a * x[i] + b;
        EXPECT_EQ(*Pearson(ax, y), *r);
      }
    }
  }
}

TEST(ProportionTest, NullEstimateGivesZero) {
  auto r = ProportionZTest(50, 100, 0.5, Tail::kTwo);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->statistic, 0);
  EXPECT_EQ(r->p_value, 1);
  EXPECT_FALSE(r->reject);
}

// z = (0.71 - 0.5) / sqrt(0.25 / 100) = 0.21 / 0.05 = 4.2
TEST(ProportionTest, SeventyOnePercentRejects) {
  auto r = ProportionZTest(71, 100, 0.5, Tail::kRight);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->statistic, 4.2, 1e-12);
  EXPECT_LT(r->p_value, 0.001);
  EXPECT_TRUE(r->reject);
  EXPECT_EQ(DecisionName(*r), "reject H0");
  const auto o = oracle::ProportionZ(71, 100, 0.5, 1);
  EXPECT_NEAR(r->p_value, o.p_value, 1e-9);
}

TEST(ProportionTest, Errors) {
  EXPECT_FALSE(ProportionZTest(1, 0, 0.5, Tail::kTwo).ok());
  EXPECT_FALSE(ProportionZTest(1, 10, 1.0, Tail::kTwo).ok());
}

TEST(MeanTest, FiveSamplesMatchQuadrature) {
  const std::vector<double> sample = {2.1, 3.4, 1.9, 4.2, 2.8};
  for (Tail tail : {Tail::kLeft, Tail::kRight, Tail::kTwo}) {
    auto r = MeanTTest(sample, 2.0, tail);
    ASSERT_TRUE(r.ok());
    const auto o = oracle::MeanT(sample, 2.0, static_cast<int>(tail));
    EXPECT_NEAR(r->statistic, o.statistic, 1e-9);
    EXPECT_NEAR(r->p_value, o.p_value, 1e-6);
  }
}

TEST(MeanTest, ZeroVariance) {
  auto r = MeanTTest({3, 3, 3}, 2, Tail::kTwo);
  ASSERT_FALSE(r.ok());
  EXPECT_FALSE(MeanTTest({3}, 2, Tail::kTwo).ok());
}

TEST(Consistency, SyntheticCohortSignsAndFraction) {
  const cohort::Cohort c = cohort::WellbeingCohort(200, 0.10, 2024);
  const ConsistencyReport r = ComputeConsistency(c.sessions, cohort::WellbeingPairs());
  ASSERT_EQ(r.pairs.size(), 3u);
  for (const PairConsistency &p : r.pairs) {
    ASSERT_TRUE(p.r) << p.note;
    EXPECT_TRUE(p.sign_matches) << p.pair.question_a << "/" << p.pair.question_b << " r=" << *p.r;
    EXPECT_GT(std::abs(*p.r), 0.5);
  }
  EXPECT_NEAR(r.consistent_fraction, 0.90, 0.03);
  for (const SessionConsistency &s : r.sessions) {
    EXPECT_EQ(s.consistent, !c.contrarians.contains(s.session_id)) << s.session_id;
  }
}

TEST(Consistency, IdenticalRespondentsFlagged) {
  std::vector<SessionRecord> sessions;
  for (int i = 0; i < 5; ++i) {
    SessionRecord r;
    r.session_id = cohort::SessionId(i);
    r.answers = {cohort::Scale("who5_1", 3), cohort::Scale("mhi5_2", 3)};
    sessions.push_back(r);
  }
  const ConsistencyReport r = ComputeConsistency(sessions, {{"who5_1", "mhi5_2", -1}});
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_TRUE(r.pairs[0].excluded);
  EXPECT_FALSE(r.pairs[0].r);
  EXPECT_NE(r.pairs[0].note.find("zero variance"), std::string::npos);
  EXPECT_TRUE(r.sessions.empty());
}

TEST(Distribution, ConstantValues) {
  const Distribution d = ComputeDistribution("x", {3, 3, 3});
  EXPECT_EQ(d.mode, 3);
  ASSERT_FALSE(d.cdf.empty());
  EXPECT_EQ(d.cdf.back(), 1.0);
}

TEST(Distribution, EvenMedian) {
  const Distribution d = ComputeDistribution("x", {1, 2, 3, 4});
  EXPECT_EQ(d.median, 2.5);
  EXPECT_EQ(d.mean, 2.5);
  EXPECT_EQ(d.mode, 1);
}

TEST(Distribution, BinsWithOverflow) {
  const Distribution d = ComputeDistribution("x", {0.5, 1, 1.5, 9}, {1, 2});
  ASSERT_EQ(d.bins.size(), 3u);
  EXPECT_EQ(d.bins[0].count, 2);
  EXPECT_EQ(d.bins[1].count, 1);
  EXPECT_EQ(d.bins[2].upper, 9);
  EXPECT_EQ(ComputeDistribution("x", {}).n, 0);
}

TEST(Distribution, GoldenSentimentMeanMatchesBatch) {
  std::ifstream in(ECHO_TEST_DATA_DIR "/golden_sentiment.txt");
  std::string line;
  std::vector<double> scores;
  double sum = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    scores.push_back(Q().AnalyzeSentiment(line).score);
    sum += scores.back();
  }
  ASSERT_FALSE(scores.empty());
  EXPECT_EQ(ComputeDistribution("sentiment", scores).mean, sum / scores.size());
}

TEST(TermFrequency, JudgementRanksFirst) {
  std::vector<std::vector<Entity>> responses;
  for (const char *t : {"judgement and money stop me", "fear of judgement", "judgement from family",
                        "money"}) {
    responses.push_back(Q().ExtractEntities(t));
  }
  const auto tf = TermFrequencies(responses);
  ASSERT_FALSE(tf.empty());
  EXPECT_EQ(tf[0].first, "judgement");
  EXPECT_EQ(tf[0].second, 3);
  EXPECT_TRUE(TermFrequencies({}).empty());
}

TEST(TermFrequency, TiesAreLexicographic) {
  const auto tf = TermFrequencies({Q().ExtractEntities("money and exams and family")});
  ASSERT_EQ(tf.size(), 3u);
  EXPECT_EQ(tf[0].first, "exam");
  EXPECT_EQ(tf[1].first, "family");
  EXPECT_EQ(tf[2].first, "money");
}

TEST(Hypothesis, ThroughSessions) {
  const auto sessions = cohort::YesNoCohort(100, 71, false);
  const HypothesisDefinition *h = &Bundled().hypotheses[0];
  ASSERT_EQ(h->hypothesis_id, "never_visited");
  auto o = TestHypothesis(Bundled(), *h, sessions);
  ASSERT_TRUE(o.ok()) << o.status();
  EXPECT_EQ(o->coding.supports, 71);
  EXPECT_EQ(o->result.n, 100);
  EXPECT_TRUE(o->result.reject);
}

TEST(Index, ScoreIndexFromRecord) {
  SessionRecord r;
  r.session_id = "s";
  for (int k = 1; k <= 5; ++k) r.answers.push_back(cohort::Scale("who5_" + std::to_string(k), 5));
  auto s = ScoreIndex(r, Bundled(), *Bundled().FindIndex("who5"));
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->transformed, 100);
  EXPECT_EQ(s->band, "good");
}

TEST(Report, EmptyCohort) {
  const auto report = BuildReport(Bundled(), {});
  EXPECT_EQ(report["sessions"]["total"], 0);
  EXPECT_EQ(report["script_id"], "mental_health");
  EXPECT_TRUE(report["term_frequencies"].empty());
  const auto csv = ReportToCsv(report);
  EXPECT_EQ(csv.size(), 5u);
}

TEST(Report, UsesOrdinalsNotIds) {
  cohort::Cohort c = cohort::WellbeingCohort(30, 0.1, 9);
  for (SessionRecord &r : c.sessions) r.session_id = "deadbeef" + r.session_id.substr(8);
  const std::string text = ReportToString(BuildReport(Bundled(), c.sessions));
  EXPECT_EQ(text.find("deadbeef"), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["sessions"]["total"], 30);
  EXPECT_EQ(j["consistency"]["pairs"].size(), 3u);
  EXPECT_EQ(j["indices"][0]["index_id"], "who5");
  EXPECT_EQ(j["indices"][0]["n"], 30);
}

TEST(Report, Deterministic) {
  const cohort::Cohort c = cohort::WellbeingCohort(50, 0.1, 1);
  EXPECT_EQ(ReportToString(BuildReport(Bundled(), c.sessions)),
            ReportToString(BuildReport(Bundled(), c.sessions)));
}

TEST(Pearson, NegativeScaleFlipsSignExactly) {
  const std::vector<double> x = {1, 4, 2, 6, 3, 5}, y = {2, 5, 1, 6, 4, 4};
  std::vector<double> ax;
  for (double v : x) ax.push_back(-2 * v + 7);
  EXPECT_EQ(*Pearson(ax, y), -*Pearson(x, y));
}

void ExpectNearNormal(Tail tail) {
  for (double df : {200.0, 500.0, 5000.0}) {
    for (double t = -4; t <= 4; t += 0.25) {
      EXPECT_NEAR(StudentTPValue(t, df, tail), NormalPValue(t, tail), 1e-3)
          << "df " << df << " t " << t;
    }
  }
}

TEST(Stats, LargeDfApproachesNormalOneSided) {
  ExpectNearNormal(Tail::kLeft);
  ExpectNearNormal(Tail::kRight);
}

// Two-sided p-values double the one-sided gap; at df 200 it peaks near
// 1.6e-3 around |t| = 1.
TEST(Stats, LargeDfApproachesNormalTwoSided) {
  ExpectNearNormal(Tail::kTwo);
}

TEST(Index, MonotoneInNormalItems) {
  const InquiryScript &s = Bundled();
  const IndexDefinition &mhi = *s.FindIndex("mhi5");
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> v(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    SessionRecord r;
    for (int k = 1; k <= 5; ++k) r.answers.push_back(cohort::Scale("mhi5_" + std::to_string(k), v(rng)));
    const double before = ScoreIndex(r, s, mhi)->transformed;
    for (size_t k = 0; k < 5; ++k) {
      if (mhi.item_polarity[k] != 1) continue;
      SessionRecord up = r;
      int64_t &val = std::get<int64_t>(up.answers[k].value);
      if (val == 6) continue;
      ++val;
      EXPECT_GE(ScoreIndex(up, s, mhi)->transformed, before);
    }
  }
}

TEST(Consistency, InvariantUnderRelabelingAndOrder) {
  cohort::Cohort c = cohort::WellbeingCohort(60, 0.1, 77);
  const ConsistencyReport base = ComputeConsistency(c.sessions, cohort::WellbeingPairs());
  std::map<std::string, bool> verdict;
  for (const auto &s : base.sessions) verdict[s.session_id] = s.consistent;
  std::vector<SessionRecord> shuffled = c.sessions;
  std::mt19937 rng(1);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  std::map<std::string, std::string> renamed;
  for (size_t i = 0; i < shuffled.size(); ++i) {
    const std::string fresh = "z" + std::to_string(1000 - i);
    renamed[fresh] = shuffled[i].session_id;
    shuffled[i].session_id = fresh;
  }
  const ConsistencyReport again = ComputeConsistency(shuffled, cohort::WellbeingPairs());
  EXPECT_EQ(again.consistent_fraction, base.consistent_fraction);
  for (const auto &s : again.sessions) EXPECT_EQ(s.consistent, verdict[renamed[s.session_id]]);
}

TEST(Distribution, CdfEndsAtOne) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> v(1000);
  for (double &x : v) x = u(rng);
  const Distribution d = ComputeDistribution("x", v, {-0.5, 0, 0.5});
  EXPECT_NEAR(d.cdf.back(), 1.0, 1e-12);
}

}  // namespace
}  // namespace echo
