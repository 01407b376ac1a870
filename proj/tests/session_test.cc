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

#include <filesystem>
#include <fstream>
#include <regex>
#include <thread>

#include <gtest/gtest.h>

#include "echo/pii.h"
#include "echo/session.h"
#include "pii_scan.h"

namespace echo {
namespace {

namespace fs = std::filesystem;
using std::chrono::system_clock;

std::string TempPath(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / "echo_session_test";
  fs::create_directories(dir);
  const fs::path p = dir / (name + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
  fs::remove(p);
  return p.string();
}

std::string Slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const Quantifier &Q() {
  static const Quantifier *q = new Quantifier(*Quantifier::LoadBundled());
  return *q;
}

const InquiryScript &Bundled() {
  static const InquiryScript *s =
      new InquiryScript(*LoadScriptFile(ECHO_DATA_DIR "/scripts/mental_health.json"));
  return *s;
}

// ---------------------------------------------------------------------------
// PII

TEST(Pii, Phone) {
  const ScrubResult r = ScrubPii("call me at 555-123-4567");
  EXPECT_EQ(r.scrubbed, "call me at [REDACTED:PHONE]");
  ASSERT_EQ(r.redactions.size(), 1u);
  EXPECT_EQ(r.redactions[0].span, (Span{11, 23}));
}

TEST(Pii, NothingToScrub) {
  const ScrubResult r = ScrubPii("I'm fine");
  EXPECT_EQ(r.scrubbed, "I'm fine");
  EXPECT_TRUE(r.redactions.empty());
}

// "email a@b.com or see John Smith": the address starts after "email " (6)
// and is 7 bytes; the name starts after " or see " at 21 and is 10 bytes.
TEST(Pii, EmailAndName) {
  const ScrubResult r = ScrubPii("email a@b.com or see John Smith");
  EXPECT_EQ(r.scrubbed, "email [REDACTED:EMAIL] or see [REDACTED:NAME]");
  ASSERT_EQ(r.redactions.size(), 2u);
  EXPECT_EQ(r.redactions[0].kind, PiiKind::kEmail);
  EXPECT_EQ(r.redactions[0].span, (Span{6, 13}));
  EXPECT_EQ(r.redactions[1].kind, PiiKind::kName);
  EXPECT_EQ(r.redactions[1].span, (Span{21, 31}));
}

TEST(Pii, UrlAndInternationalPhone) {
  const ScrubResult r = ScrubPii("see https://example.org/x. Or ring +44 20 7946 0958!");
  EXPECT_EQ(r.scrubbed, "see [REDACTED:URL]. Or ring [REDACTED:PHONE]!");
}

TEST(Pii, ShortNumbersAndSentenceStartsKept) {
  for (const char *t : {"I sleep 6 hours and exercise 3 times a week",
                        "Therapy Helps sometimes", "My exams are in 2026"}) {
    EXPECT_TRUE(ScrubPii(t).redactions.empty()) << t;
  }
}

TEST(Pii, Idempotent) {
  for (const char *t : {"email a@b.com or see John Smith", "call 555 123 4567 now",
                        "ask Mary Jane Watson at www.site.com"}) {
    const std::string once = ScrubPii(t).scrubbed;
    const ScrubResult twice = ScrubPii(once);
    EXPECT_EQ(twice.scrubbed, once);
    EXPECT_TRUE(twice.redactions.empty());
  }
}

TEST(Pii, OffsetsPointIntoSource) {
  const std::string text = "Write to jo.doe+x@mail.co.uk or 0044 (0)20 1234 5678, thanks";
  const ScrubResult r = ScrubPii(text);
  ASSERT_EQ(r.redactions.size(), 2u);
  EXPECT_EQ(text.substr(r.redactions[0].span.start, r.redactions[0].span.length()),
            "jo.doe+x@mail.co.uk");
  EXPECT_FALSE(MatchesPiiPattern(r.scrubbed));
}

// ---------------------------------------------------------------------------
// Answer parsing

TEST(ParseAnswer, ScaleDigitsAndWords) {
  const ObjectiveScale s{1, 6, {}};
  EXPECT_EQ(*ParseScaleAnswer("4", s), 4);
  EXPECT_EQ(*ParseScaleAnswer("I'd say five", s), 5);
  EXPECT_EQ(*ParseScaleAnswer(" 6. ", s), 6);
  EXPECT_FALSE(ParseScaleAnswer("7", s).ok());
  EXPECT_FALSE(ParseScaleAnswer("4.5", s).ok());
}

TEST(ParseAnswer, ScaleRetryNamesRange) {
  const auto r = ParseScaleAnswer("banana", ObjectiveScale{1, 6, {}});
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_NE(std::string(r.status().message()).find("1–6"), std::string::npos);
}

TEST(ParseAnswer, ScaleLabels) {
  const ObjectiveScale s{0, 3, {"Not at all", "Several days", "More than half the days",
                                "Nearly every day"}};
  EXPECT_EQ(*ParseScaleAnswer("nearly every day", s), 3);
  EXPECT_EQ(*ParseScaleAnswer("more than half the days I think", s), 2);
  EXPECT_EQ(*ParseScaleAnswer("zero", s), 0);
}

TEST(ParseAnswer, YesNo) {
  EXPECT_EQ(*ParseYesNoAnswer("no, never have"), false);
  EXPECT_EQ(*ParseYesNoAnswer("Yes"), true);
  EXPECT_EQ(*ParseYesNoAnswer("yeah once"), true);
  EXPECT_EQ(*ParseYesNoAnswer("nope"), false);
  EXPECT_EQ(*ParseYesNoAnswer("I never have"), false);
  EXPECT_EQ(*ParseYesNoAnswer("I have, twice"), true);
  EXPECT_FALSE(ParseYesNoAnswer("banana").ok());
}

TEST(ParseAnswer, TextRejectsBlank) {
  EXPECT_FALSE(ParseTextAnswer("   ").ok());
  EXPECT_EQ(*ParseTextAnswer("  exams  "), "exams");
}

// ---------------------------------------------------------------------------
// Records and store

SessionRecord SampleRecord(const std::string &id, SessionStatus status) {
  SessionRecord r;
  r.session_id = id;
  r.script_id = "mental_health";
  r.status = status;
  r.created_at = "2026-03-01T10:00:00Z";
  r.updated_at = "2026-03-01T10:05:00Z";
  r.answers.push_back({"who5_1", int64_t{3}, std::nullopt});
  r.answers.push_back({"q4", false, std::nullopt});
  return r;
}

TEST(Record, JsonRoundTrip) {
  const SessionRecord r = SampleRecord("a", SessionStatus::kCompleted);
  const auto back = RecordFromJson(nlohmann::json::parse(RecordToLine(r)));
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(RecordToLine(*back), RecordToLine(r));
  EXPECT_EQ(RecordToLine(r).find('\n'), std::string::npos);
}

TEST(Record, UtcFormat) {
  const auto t = ParseUtc("2026-03-01T10:00:00Z");
  ASSERT_TRUE(t);
  EXPECT_EQ(FormatUtc(*t), "2026-03-01T10:00:00Z");
  EXPECT_FALSE(ParseUtc("yesterday"));
}

TEST(Store, LatestLineWinsAndCompacts) {
  const std::string path = TempPath("store");
  SessionStore store(path);
  ASSERT_TRUE(store.Append(SampleRecord("b", SessionStatus::kActive)).ok());
  ASSERT_TRUE(store.Append(SampleRecord("a", SessionStatus::kActive)).ok());
  ASSERT_TRUE(store.Append(SampleRecord("b", SessionStatus::kCompleted)).ok());
  auto snap = SessionStore::Load(path);
  ASSERT_TRUE(snap.ok());
  ASSERT_EQ(snap->records.size(), 2u);
  EXPECT_EQ(snap->records[0].session_id, "a");
  EXPECT_EQ(snap->records[1].status, SessionStatus::kCompleted);

  ASSERT_TRUE(store.Compact().ok());
  const std::string compacted = Slurp(path);
  EXPECT_EQ(std::count(compacted.begin(), compacted.end(), '\n'), 2);
  auto again = SessionStore::Load(path);
  ASSERT_TRUE(again.ok());
  ASSERT_EQ(again->records.size(), 2u);
  EXPECT_EQ(RecordToLine(again->records[1]), RecordToLine(snap->records[1]));
}

TEST(Store, TruncatedTailSkipped) {
  const std::string path = TempPath("truncated");
  {
    std::ofstream out(path);
    out << RecordToLine(SampleRecord("a", SessionStatus::kCompleted)) << "\n"
        << R"({"session_id":"b","scri)";
  }
  auto snap = SessionStore::Load(path);
  ASSERT_TRUE(snap.ok());
  EXPECT_EQ(snap->records.size(), 1u);
  EXPECT_EQ(snap->skipped_lines, 1);
  // The next append starts on a fresh line.
  SessionStore store(path);
  ASSERT_TRUE(store.Append(SampleRecord("c", SessionStatus::kActive)).ok());
  snap = SessionStore::Load(path);
  EXPECT_EQ(snap->records.size(), 2u);
}

TEST(Store, MissingFile) {
  auto snap = SessionStore::Load("/nonexistent/dir/store.ndjson");
  ASSERT_FALSE(snap.ok());
  EXPECT_EQ(snap.status().code(), absl::StatusCode::kNotFound);
  EXPECT_NE(std::string(snap.status().message()).find("store not found"), std::string::npos);
}

TEST(Store, ConcurrentAppends) {
  const std::string path = TempPath("concurrent");
  SessionStore store(path);
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 50; ++i) {
        ASSERT_TRUE(store.Append(SampleRecord(std::to_string(t * 100 + i), SessionStatus::kActive)).ok());
      }
    });
  }
  for (auto &th : threads) th.join();
  auto snap = SessionStore::Load(path);
  ASSERT_TRUE(snap.ok());
  EXPECT_EQ(snap->records.size(), 400u);
  EXPECT_EQ(snap->skipped_lines, 0);
}

// ---------------------------------------------------------------------------
// Engine

struct FakeClock {
  system_clock::time_point now = *ParseUtc("2026-05-01T12:00:00Z");
};

SessionOptions Deterministic(FakeClock *clock) {
  SessionOptions o;
  o.clock = [clock] { return clock->now; };
  auto counter = std::make_shared<int>(0);
  o.token = [counter] {
    char buf[33];
    std::snprintf(buf, sizeof(buf), "%032x", ++*counter);
    return std::string(buf);
  };
  return o;
}

InquiryScript SmallScript() {
  return *ParseScriptText(R"({
    "script_id": "small",
    "questions": [
      {"question_id": "mood", "prompt": "Rate your mood from 1 to 6.",
       "response_kind": {"type": "objective_scale", "min": 1, "max": 6}},
      {"question_id": "visited", "prompt": "Have you seen a counsellor?",
       "response_kind": {"type": "yes_no"}},
      {"question_id": "why", "prompt": "What keeps you from going?",
       "response_kind": {"type": "free_text"}},
      {"question_id": "talk", "prompt": "How many times a month do you talk about it?",
       "response_kind": {"type": "frequency", "activity_unit": "times", "period_unit": "month"}}
    ]})");
}

TEST(Engine, StartGivesHexIdAndFirstPrompt) {
  SessionEngine engine({SmallScript()}, Q(), nullptr);
  auto a = engine.StartSession("small");
  auto b = engine.StartSession("small");
  ASSERT_TRUE(a.ok());
  ASSERT_TRUE(b.ok());
  EXPECT_TRUE(std::regex_match(a->session_id, std::regex("[0-9a-f]{32}")));
  EXPECT_NE(a->session_id, b->session_id);
  EXPECT_EQ(a->first.question_id, "mood");
  EXPECT_EQ(a->first.prompt, "Rate your mood from 1 to 6.");
}

TEST(Engine, UnknownScript) {
  SessionEngine engine({SmallScript()}, Q(), nullptr);
  auto r = engine.StartSession("nope");
  ASSERT_FALSE(r.ok());
  EXPECT_NE(std::string(r.status().message()).find("script not found"), std::string::npos);
}

TEST(Engine, FullConversation) {
  FakeClock clock;
  const std::string path = TempPath("engine");
  SessionStore store(path);
  SessionEngine engine({SmallScript()}, Q(), &store, Deterministic(&clock));
  const std::string id = engine.StartSession("small")->session_id;

  auto r = engine.SubmitUtterance(id, "banana");
  ASSERT_TRUE(r.ok());
  EXPECT_FALSE(r->accepted);
  ASSERT_TRUE(r->retry_message);
  EXPECT_NE(r->retry_message->find("1–6"), std::string::npos);
  EXPECT_EQ(r->next_question->question_id, "mood");

  r = engine.SubmitUtterance(id, "4");
  EXPECT_TRUE(r->accepted);
  EXPECT_EQ(r->next_question->question_id, "visited");
  EXPECT_EQ(std::get<int64_t>(engine.GetRecord(id)->FindAnswer("mood")->value), 4);

  r = engine.SubmitUtterance(id, "no, never have");
  EXPECT_TRUE(r->accepted);
  EXPECT_EQ(std::get<bool>(engine.GetRecord(id)->FindAnswer("visited")->value), false);

  r = engine.SubmitUtterance(id, "Honestly the cost, call me on 555-123-4567 if you like");
  EXPECT_TRUE(r->accepted);
  const SessionRecord after_why = *engine.GetRecord(id);
  const Answer *why = after_why.FindAnswer("why");
  ASSERT_NE(why, nullptr);
  EXPECT_NE(std::get<std::string>(why->value).find("[REDACTED:PHONE]"), std::string::npos);
  ASSERT_TRUE(why->derived);
  EXPECT_TRUE(why->derived->sentiment);

  r = engine.SubmitUtterance(id, "3-5 times");
  EXPECT_TRUE(r->accepted);
  EXPECT_TRUE(r->completed);
  EXPECT_EQ(r->next_prompt, std::string(kCompletionMessage));
  const SessionRecord final_record = *engine.GetRecord(id);
  const Answer *talk = final_record.FindAnswer("talk");
  ASSERT_TRUE(talk->derived && talk->derived->frequency);
  EXPECT_EQ(talk->derived->frequency->per_day_rate, 4 / 30.57);

  EXPECT_EQ(engine.GetRecord(id)->status, SessionStatus::kCompleted);
  auto after = engine.SubmitUtterance(id, "more");
  ASSERT_FALSE(after.ok());
  EXPECT_NE(std::string(after.status().message()).find("session not active"), std::string::npos);

  // Export is one line, stable, and scrubbed.
  const std::string e1 = *engine.ExportSession(id);
  EXPECT_EQ(e1, *engine.ExportSession(id));
  EXPECT_EQ(std::count(e1.begin(), e1.end(), '\n'), 0);
  EXPECT_EQ(scan::FirstLeak(e1), "");
  EXPECT_EQ(scan::FirstLeak(Slurp(path)), "");
  EXPECT_NE(e1.find("[REDACTED:PHONE]"), std::string::npos);

  // Transcript alternates prompts and scrubbed replies.
  auto transcript = engine.Transcript(id);
  ASSERT_TRUE(transcript.ok());
  EXPECT_EQ(transcript->front().author, Author::kSystem);
  for (const Utterance &u : *transcript) EXPECT_FALSE(MatchesPiiPattern(u.text));
}

TEST(Engine, ActiveExportAndUnknownSession) {
  SessionEngine engine({SmallScript()}, Q(), nullptr);
  const std::string id = engine.StartSession("small")->session_id;
  EXPECT_NE(engine.ExportSession(id)->find(R"("status":"active")"), std::string::npos);
  EXPECT_FALSE(engine.ExportSession("ffff").ok());
  EXPECT_FALSE(engine.SubmitUtterance("ffff", "4").ok());
}

TEST(Engine, IdleSessionsAreAbandoned) {
  FakeClock clock;
  SessionOptions opts = Deterministic(&clock);
  opts.ttl = std::chrono::hours(1);
  SessionEngine engine({SmallScript()}, Q(), nullptr, opts);
  const std::string idle = engine.StartSession("small")->session_id;
  clock.now += std::chrono::minutes(50);
  const std::string fresh = engine.StartSession("small")->session_id;
  clock.now += std::chrono::minutes(20);
  EXPECT_EQ(engine.ExpireIdle(), 1);
  EXPECT_EQ(engine.GetRecord(idle)->status, SessionStatus::kAbandoned);
  EXPECT_EQ(engine.GetRecord(fresh)->status, SessionStatus::kActive);
  EXPECT_FALSE(engine.SubmitUtterance(idle, "3").ok());
}

TEST(Engine, PoorWellbeingProbeFollows) {
  SessionEngine engine({Bundled()}, Q(), nullptr);
  const std::string id = engine.StartSession("mental_health")->session_id;
  absl::StatusOr<Reply> r;
  for (int k = 0; k < 5; ++k) r = engine.SubmitUtterance(id, "1");
  ASSERT_TRUE(r->accepted);
  EXPECT_EQ(r->next_question->question_id, "probe_distress");
}

TEST(Engine, RecoverRebuildsFromStore) {
  FakeClock clock;
  const std::string path = TempPath("recover");
  std::string id;
  {
    SessionStore store(path);
    SessionEngine engine({Bundled()}, Q(), &store, Deterministic(&clock));
    id = engine.StartSession("mental_health")->session_id;
    for (int k = 0; k < 5; ++k) ASSERT_TRUE(engine.SubmitUtterance(id, "0").ok());
    ASSERT_TRUE(engine.SubmitUtterance(id, "deadlines at work").ok());
  }
  SessionStore store(path);
  SessionEngine engine({Bundled()}, Q(), &store, Deterministic(&clock));
  ASSERT_TRUE(engine.Recover().ok());
  auto r = engine.SubmitUtterance(id, "three days a week");
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r->accepted);
  EXPECT_EQ(r->next_question->question_id, "mhi5_1");
}

TEST(Engine, ConcurrentSessions) {
  const std::string path = TempPath("concurrent_engine");
  SessionStore store(path);
  SessionEngine engine({SmallScript()}, Q(), &store);
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 10; ++i) {
        const std::string id = engine.StartSession("small")->session_id;
        for (const char *u : {"3", "yes", "money", "twice"}) ASSERT_TRUE(engine.SubmitUtterance(id, u).ok());
      }
    });
  }
  for (auto &th : threads) th.join();
  auto snap = SessionStore::Load(path);
  ASSERT_TRUE(snap.ok());
  EXPECT_EQ(snap->records.size(), 80u);
  for (const SessionRecord &rec : snap->records) EXPECT_EQ(rec.status, SessionStatus::kCompleted);
}

}  // namespace
}  // namespace echo
