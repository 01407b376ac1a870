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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "echo/session.h"
#include "json.hpp"

namespace echo {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct CliRun {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path Dir() {
  const fs::path dir = fs::temp_directory_path() / "echo_cli_test" /
                       ::testing::UnitTest::GetInstance()->current_test_info()->name();
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string Quote(const std::string &s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

CliRun Echoctl(const std::vector<std::string> &args) {
  const fs::path err = fs::temp_directory_path() / "echo_cli_test_stderr.txt";
  std::string cmd = ECHOCTL_PATH;
  for (const std::string &a : args) cmd += " " + Quote(a);
  cmd += " 2>" + err.string();
  CliRun run;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return run;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) run.out.append(buf.data(), n);
  const int status = pclose(pipe);
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  run.err = Slurp(err);
  return run;
}

const std::string kScript = ECHO_DATA_DIR "/scripts/mental_health.json";

// A finished session for the bundled script written to `store`.
void WriteStore(const fs::path &store, int sessions) {
  SessionStore s(store.string());
  SessionEngine engine({*LoadScriptFile(kScript)}, *Quantifier::LoadBundled(), &s);
  for (int i = 0; i < sessions; ++i) {
    const StartResult started = *engine.StartSession("mental_health");
    std::optional<PromptInfo> next = started.first;
    for (int turn = 0; next && turn < 100; ++turn) {
      std::string text = "exams and deadlines because of money worries";
      if (std::holds_alternative<ObjectiveScale>(next->kind)) {
        text = std::to_string(1 + (i + turn) % 3);
      } else if (std::holds_alternative<YesNo>(next->kind)) {
        text = i % 3 == 0 ? "yes" : "no";
      } else if (std::holds_alternative<Frequency>(next->kind)) {
        text = i % 2 ? "twice" : "never";
      }
      const absl::StatusOr<Reply> reply = engine.SubmitUtterance(started.session_id, text);
      ASSERT_TRUE(reply.ok() && reply->accepted) << text;
      next = reply->next_question;
    }
  }
}

TEST(Cli, ValidateGoodIsSilent) {
  const CliRun r = Echoctl({"validate", kScript});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "");
}

TEST(Cli, ValidateBadPrintsOneLinePerError) {
  const fs::path bad = Dir() / "bad.json";
  std::ofstream(bad) << R"({"script_id": "bad", "questions": [
    {"question_id": "f", "prompt": "Do you exercise often?", "response_kind":
      {"type": "frequency", "activity_unit": "days", "period_unit": "week"}},
    {"question_id": "s", "prompt": "Rate", "response_kind":
      {"type": "objective_scale", "min": 5, "max": 1}}]})";
  const CliRun r = Echoctl({"validate", bad.string()});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("f: missing unit phrase | "), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("days per week"), std::string::npos);
  EXPECT_NE(r.out.find("\ns: "), std::string::npos);
}

TEST(Cli, AnalyzeMissingStore) {
  const std::string missing = (Dir() / "none.ndjson").string();
  const CliRun r = Echoctl({"analyze", "--store", missing, "--script", kScript});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("store not found: " + missing), std::string::npos) << r.err;
}

TEST(Cli, ServePortZeroIsUsageError) {
  const CliRun r = Echoctl({"serve", "--port", "0"});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(Echoctl({"frobnicate"}).exit_code, 2);
  EXPECT_EQ(Echoctl({"analyze"}).exit_code, 2);
  EXPECT_EQ(Echoctl({"code", "--method", "astrology", "--store", "x"}).exit_code, 2);
}

TEST(Cli, Quantify) {
  const CliRun r = Echoctl({"quantify", "--text", "4 days, call 555-123-4567", "--units", "days/month"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["frequency"]["per_day_rate"].get<double>(), 4 / 30.57, 1e-12);
  EXPECT_EQ(r.out.find("555"), std::string::npos);
}

TEST(Cli, AnalyzeExportAndCode) {
  const fs::path dir = Dir();
  const fs::path store = dir / "store.ndjson";
  WriteStore(store, 6);

  CliRun r = Echoctl({"analyze", "--store", store.string(), "--script", kScript, "--out",
                   (dir / "report.json").string(), "--csv"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json report = json::parse(Slurp(dir / "report.json"));
  EXPECT_EQ(report["sessions"]["completed"], 6);
  for (const char *table : {"index_scores", "consistency_pairs", "distributions", "hypotheses",
                            "term_frequencies"}) {
    EXPECT_TRUE(fs::exists(dir / (std::string("report_") + table + ".csv"))) << table;
  }
  const CliRun again = Echoctl({"analyze", "--store", store.string(), "--script", kScript});
  EXPECT_EQ(again.out, Slurp(dir / "report.json"));

  r = Echoctl({"export", "--store", store.string()});
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 6);
  const std::string first_id = json::parse(r.out.substr(0, r.out.find('\n')))["session_id"];
  const CliRun one = Echoctl({"export", "--store", store.string(), "--session", first_id});
  EXPECT_EQ(one.out, r.out.substr(0, r.out.find('\n') + 1));
  EXPECT_EQ(Echoctl({"export", "--store", store.string(), "--session", "nope"}).exit_code, 1);
  EXPECT_EQ(Echoctl({"export", "--store", store.string(), "--compact"}).exit_code, 0);
  const std::string compacted = Slurp(store);
  EXPECT_EQ(std::count(compacted.begin(), compacted.end(), '\n'), 6);

  r = Echoctl({"code", "--method", "thematic", "--store", store.string(), "--inductive"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("academics and work"), std::string::npos);
  r = Echoctl({"code", "--method", "causation", "--store", store.string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("money worries"), std::string::npos) << r.out;
  r = Echoctl({"code", "--method", "emotion", "--store", store.string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("\"label\""), std::string::npos);
  r = Echoctl({"code", "--method", "hypothesis", "--store", store.string(), "--script", kScript});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("never_visited"), std::string::npos);
}

}  // namespace
}  // namespace echo
