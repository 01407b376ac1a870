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

#include "echo/analytics.h"

namespace echo {
namespace {

using ojson = nlohmann::ordered_json;

ojson DistributionToJson(const Distribution &d) {
  ojson bins = ojson::array();
  for (const Bin &b : d.bins) bins.push_back({{"upper", b.upper}, {"count", b.count}});
  ojson j{{"variable", d.variable}, {"n", d.n}};
  j["mean"] = d.n > 0 ? ojson(d.mean) : ojson();
  j["median"] = d.n > 0 ? ojson(d.median) : ojson();
  j["mode"] = d.n > 0 ? ojson(d.mode) : ojson();
  j["bins"] = std::move(bins);
  j["cdf"] = d.cdf;
  return j;
}

std::vector<double> SentimentBins() {
  std::vector<double> uppers;
  for (int k = -3; k <= 4; ++k) uppers.push_back(0.25 * k);
  return uppers;
}

ojson SessionCounts(const std::vector<SessionRecord> &sessions) {
  int active = 0, completed = 0, abandoned = 0;
  for (const SessionRecord &s : sessions) {
    switch (s.status) {
      case SessionStatus::kActive: ++active; break;
      case SessionStatus::kCompleted: ++completed; break;
      case SessionStatus::kAbandoned: ++abandoned; break;
    }
  }
  return {{"total", sessions.size()},
          {"active", active},
          {"completed", completed},
          {"abandoned", abandoned}};
}

ojson IndexSection(const InquiryScript &script, const std::vector<SessionRecord> &sessions) {
  ojson out = ojson::array();
  for (const IndexDefinition &index : script.indices) {
    ojson scores = ojson::array();
    std::vector<double> transformed;
    std::map<std::string, int> band_counts;
    for (size_t i = 0; i < sessions.size(); ++i) {
      absl::StatusOr<IndexScore> s = ScoreIndex(sessions[i], script, index);
      if (!s.ok()) continue;
      scores.push_back({{"respondent", i + 1},
                        {"raw_sum", s->raw_sum},
                        {"transformed", s->transformed},
                        {"band", s->band}});
      transformed.push_back(s->transformed);
      ++band_counts[s->band];
    }
    ojson bands = ojson::object();
    for (const IndexBand &b : index.bands) bands[b.label] = band_counts[b.label];
    std::vector<double> uppers;
    for (const IndexBand &b : index.bands) uppers.push_back(b.upper);
    out.push_back({{"index_id", index.index_id},
                   {"n", transformed.size()},
                   {"band_counts", std::move(bands)},
                   {"distribution", DistributionToJson(ComputeDistribution(
                                        index.index_id, transformed, uppers))},
                   {"scores", std::move(scores)}});
  }
  return out;
}

ojson ConsistencySection(const InquiryScript &script,
                         const std::vector<SessionRecord> &sessions) {
  const ConsistencyReport report = ComputeConsistency(sessions, script.consistency_pairs);
  ojson pairs = ojson::array();
  for (const PairConsistency &p : report.pairs) {
    pairs.push_back({{"question_a", p.pair.question_a},
                     {"question_b", p.pair.question_b},
                     {"expected_sign", p.pair.expected_sign},
                     {"n", p.n},
                     {"r", p.r ? ojson(*p.r) : ojson()},
                     {"sign_matches", p.sign_matches},
                     {"excluded", p.excluded},
                     {"note", p.note}});
  }
  std::map<std::string, size_t> ordinal;
  for (size_t i = 0; i < sessions.size(); ++i) ordinal[sessions[i].session_id] = i + 1;
  ojson respondents = ojson::array();
  for (const SessionConsistency &s : report.sessions) {
    respondents.push_back({{"respondent", ordinal[s.session_id]},
                           {"consistency_index", s.index},
                           {"verdict", s.consistent ? "consistent" : "inconsistent"}});
  }
  return {{"pairs", std::move(pairs)},
          {"n", report.sessions.size()},
          {"consistent_fraction", report.consistent_fraction},
          {"respondents", std::move(respondents)}};
}

ojson DistributionSection(const InquiryScript &script,
                          const std::vector<SessionRecord> &sessions) {
  ojson out = ojson::array();
  for (const Question &q : script.questions) {
    std::vector<double> values;
    std::vector<double> sentiment;
    for (const SessionRecord &s : sessions) {
      const Answer *a = s.FindAnswer(q.question_id);
      if (a == nullptr) continue;
      if (const std::optional<double> v = NumericValue(q, *a)) values.push_back(*v);
      if (a->derived && a->derived->sentiment) sentiment.push_back(a->derived->sentiment->score);
    }
    if (const auto *scale = std::get_if<ObjectiveScale>(&q.response_kind)) {
      std::vector<double> uppers;
      for (int64_t v = scale->min; v <= scale->max; ++v) uppers.push_back(static_cast<double>(v));
      out.push_back(DistributionToJson(ComputeDistribution(q.question_id, values, uppers)));
    } else if (std::holds_alternative<YesNo>(q.response_kind)) {
      out.push_back(DistributionToJson(ComputeDistribution(q.question_id, values, {0, 1})));
    } else {
      if (const auto *f = std::get_if<Frequency>(&q.response_kind)) {
        out.push_back(DistributionToJson(ComputeDistribution(
            q.question_id + ":rate_per_" + PeriodUnitName(f->units.period), values)));
      }
      out.push_back(DistributionToJson(
          ComputeDistribution(q.question_id + ":sentiment", sentiment, SentimentBins())));
    }
  }
  return out;
}

ojson HypothesisSection(const InquiryScript &script, const std::vector<SessionRecord> &sessions,
                        double alpha) {
  ojson out = ojson::array();
  for (const HypothesisDefinition &h : script.hypotheses) {
    ojson j{{"hypothesis_id", h.hypothesis_id},
            {"statement", h.statement},
            {"question_id", h.question_id()},
            {"test", std::holds_alternative<ProportionTest>(h.test) ? "proportion" : "mean"},
            {"tail", TailName(h.tail())}};
    absl::StatusOr<HypothesisOutcome> outcome = TestHypothesis(script, h, sessions, alpha);
    if (!outcome.ok()) {
      j["error"] = std::string(outcome.status().message());
      out.push_back(std::move(j));
      continue;
    }
    const HypothesisCoding &c = outcome->coding;
    const TestResult &r = outcome->result;
    j["predicate"] = c.predicate;
    j["supports"] = c.supports;
    j["refutes"] = c.refutes;
    j["not_applicable"] = c.not_applicable;
    j["n"] = r.n;
    j["estimate"] = r.estimate;
    j["statistic"] = r.statistic;
    j["p_value"] = r.p_value;
    j["alpha"] = r.alpha;
    j["decision"] = DecisionName(r);
    out.push_back(std::move(j));
  }
  return out;
}

ojson TermSection(const std::vector<SessionRecord> &sessions) {
  std::vector<std::vector<Entity>> responses;
  for (const SessionRecord &s : sessions) {
    for (const Answer &a : s.answers) {
      if (a.derived) responses.push_back(a.derived->entities);
    }
  }
  ojson out = ojson::array();
  for (const auto &[lemma, count] : TermFrequencies(responses)) {
    out.push_back({{"lemma", lemma}, {"count", count}});
  }
  return out;
}

std::string CsvField(const ojson &v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.is_null() ? "" : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string CsvRow(const std::vector<ojson> &fields) {
  std::string row;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) row += ',';
    row += CsvField(fields[i]);
  }
  return row + "\n";
}

}  // namespace

ojson BuildReport(const InquiryScript &script, const std::vector<SessionRecord> &sessions,
                  const ReportOptions &options) {
  std::vector<SessionRecord> mine;
  for (const SessionRecord &s : sessions) {
    if (s.script_id == script.script_id) mine.push_back(s);
  }
  std::sort(mine.begin(), mine.end(), [](const SessionRecord &a, const SessionRecord &b) {
    return a.session_id < b.session_id;
  });
  return {{"script_id", script.script_id},
          {"title", script.title},
          {"alpha", options.alpha},
          {"sessions", SessionCounts(mine)},
          {"indices", IndexSection(script, mine)},
          {"consistency", ConsistencySection(script, mine)},
          {"distributions", DistributionSection(script, mine)},
          {"hypotheses", HypothesisSection(script, mine, options.alpha)},
          {"term_frequencies", TermSection(mine)}};
}

std::string ReportToString(const ojson &report) { return report.dump(2) + "\n"; }

std::map<std::string, std::string> ReportToCsv(const ojson &report) {
  std::map<std::string, std::string> out;
  std::string &idx = out["index_scores"];
  idx = "index_id,respondent,raw_sum,transformed,band\n";
  for (const ojson &index : report.at("indices")) {
    for (const ojson &s : index.at("scores")) {
      idx += CsvRow({index.at("index_id"), s.at("respondent"), s.at("raw_sum"),
                     s.at("transformed"), s.at("band")});
    }
  }
  std::string &pairs = out["consistency_pairs"];
  pairs = "question_a,question_b,expected_sign,n,r,sign_matches,excluded\n";
  for (const ojson &p : report.at("consistency").at("pairs")) {
    pairs += CsvRow({p.at("question_a"), p.at("question_b"), p.at("expected_sign"), p.at("n"),
                     p.at("r"), p.at("sign_matches"), p.at("excluded")});
  }
  std::string &dist = out["distributions"];
  dist = "variable,upper,count,cdf\n";
  for (const ojson &d : report.at("distributions")) {
    const ojson &bins = d.at("bins");
    for (size_t i = 0; i < bins.size(); ++i) {
      dist += CsvRow({d.at("variable"), bins[i].at("upper"), bins[i].at("count"),
                      d.at("cdf")[i]});
    }
  }
  std::string &hyp = out["hypotheses"];
  hyp = "hypothesis_id,test,tail,n,supports,refutes,not_applicable,estimate,statistic,p_value,"
        "decision\n";
  for (const ojson &h : report.at("hypotheses")) {
    auto get = [&](const char *k) { return h.contains(k) ? h.at(k) : ojson(); };
    hyp += CsvRow({h.at("hypothesis_id"), h.at("test"), h.at("tail"), get("n"), get("supports"),
                   get("refutes"), get("not_applicable"), get("estimate"), get("statistic"),
                   get("p_value"), get("decision")});
  }
  std::string &terms = out["term_frequencies"];
  terms = "lemma,count\n";
  for (const ojson &t : report.at("term_frequencies")) {
    terms += CsvRow({t.at("lemma"), t.at("count")});
  }
  return out;
}

}  // namespace echo
