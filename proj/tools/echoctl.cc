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

// echoctl: operator command line for inquiry scripts, the session service,
// quantification, coding and analytics.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "echo/analytics.h"
#include "echo/coding.h"
#include "echo/lexicon.h"
#include "echo/pii.h"
#include "echo/service.h"

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kDomainError = 1;

int Fail(const absl::Status &status) {
  std::cerr << "error: " << status.message() << "\n";
  return kDomainError;
}

absl::StatusOr<echo::StoreSnapshot> LoadStore(const std::string &path) {
  if (!std::filesystem::exists(path)) {
    return absl::NotFoundError(absl::StrCat("store not found: ", path));
  }
  return echo::SessionStore::Load(path);
}

// Text answers of every stored session, in session order.
std::vector<echo::CodingInput> TextResponses(const std::vector<echo::SessionRecord> &records) {
  std::vector<echo::CodingInput> out;
  for (const echo::SessionRecord &r : records) {
    for (const echo::Answer &a : r.answers) {
      if (!a.is_text()) continue;
      echo::CodingInput in;
      in.response_id = r.session_id + "/" + a.question_id;
      in.text = std::get<std::string>(a.value);
      if (a.derived) {
        in.entities = a.derived->entities;
        in.sentiment = a.derived->sentiment;
      }
      out.push_back(std::move(in));
    }
  }
  return out;
}

int RunValidate(const std::string &path) {
  absl::StatusOr<std::string> text = echo::ReadFile(path);
  const echo::ValidationReport report =
      text.ok() ? echo::ValidateScriptText(*text)
                : echo::ValidationReport{{{"*", std::string(text.status().message()),
                                           "check the script path"}}};
  std::cout << report.ToText();
  return report.ok() ? kOk : kDomainError;
}

int RunQuantify(const std::string &text, const std::string &units_text) {
  absl::StatusOr<echo::Quantifier> q = echo::Quantifier::LoadBundled();
  if (!q.ok()) return Fail(q.status());
  std::optional<echo::FrequencyUnits> units;
  if (!units_text.empty()) {
    units = echo::ParseFrequencyUnits(units_text);
    if (!units) return Fail(absl::InvalidArgumentError("bad --units, expected e.g. days/week"));
  }
  const echo::ScrubResult scrubbed = echo::ScrubPii(text);
  ojson entities = ojson::array();
  for (const echo::Entity &e : q->ExtractEntities(scrubbed.scrubbed)) {
    entities.push_back(echo::EntityToJson(e));
  }
  ojson out{{"text", scrubbed.scrubbed}, {"entities", std::move(entities)}};
  out["frequency"] = ojson();
  if (units) {
    if (const auto f = q->ScoreFrequency(scrubbed.scrubbed, *units)) {
      out["frequency"] = echo::FrequencyToJson(*f);
      out["frequency"]["rate_in_period"] = f->RateIn(units->period);
      out["frequency"]["period"] = echo::PeriodUnitName(units->period);
    }
  }
  out["sentiment"] = echo::SentimentToJson(q->AnalyzeSentiment(scrubbed.scrubbed));
  std::cout << out.dump(2) << "\n";
  return kOk;
}

struct CodeArgs {
  std::string method;
  std::string store;
  std::string codebook;
  std::string script;
  bool inductive = false;
  int min_support = 2;
  double jaccard = 0.5;
};

int RunCode(const CodeArgs &args) {
  absl::StatusOr<echo::StoreSnapshot> snap = LoadStore(args.store);
  if (!snap.ok()) return Fail(snap.status());
  absl::StatusOr<echo::Quantifier> q = echo::Quantifier::LoadBundled();
  if (!q.ok()) return Fail(q.status());
  absl::StatusOr<echo::Codebook> book = echo::LoadCodebookFile(
      args.codebook.empty() ? std::string(ECHO_DATA_DIR "/codebook.json") : args.codebook, *q);
  if (!book.ok()) return Fail(book.status());
  const std::vector<echo::CodingInput> responses = TextResponses(snap->records);

  if (args.method == "thematic") {
    for (const echo::ThemeAssignment &a : echo::CodeThemesDeductive(responses, *book)) {
      std::cout << echo::ThemeAssignmentToJson(a).dump() << "\n";
    }
    if (args.inductive) {
      const auto themes = echo::CodeThemesInductive(responses, args.min_support, args.jaccard);
      for (const echo::ThemeAssignment &a : echo::AssignEmergentThemes(responses, themes)) {
        std::cout << echo::ThemeAssignmentToJson(a).dump() << "\n";
      }
    }
  } else if (args.method == "emotion") {
    for (const echo::CodingInput &r : responses) {
      const echo::EmotionCode c = echo::CodeEmotion(r, *book);
      std::cout << ojson{{"response_id", c.response_id},
                         {"label", echo::EmotionLabelName(c.label)},
                         {"score", c.score},
                         {"magnitude", c.magnitude}}
                       .dump()
                << "\n";
    }
  } else if (args.method == "causation") {
    for (const echo::CodingInput &r : responses) {
      for (const echo::CausalChain &chain : echo::CodeCausation(r, *book)) {
        ojson evidence = ojson::array();
        for (const echo::Span &s : chain.evidence) evidence.push_back({s.start, s.end});
        std::cout << ojson{{"response_id", r.response_id},
                           {"codes", chain.codes},
                           {"chain", echo::ChainToString(chain)},
                           {"evidence", std::move(evidence)}}
                         .dump()
                  << "\n";
      }
    }
  } else {
    if (args.script.empty()) {
      return Fail(absl::InvalidArgumentError("--script is required for hypothesis coding"));
    }
    absl::StatusOr<echo::InquiryScript> script = echo::LoadScriptFile(args.script);
    if (!script.ok()) return Fail(script.status());
    for (const echo::HypothesisDefinition &h : script->hypotheses) {
      std::vector<echo::HypothesisInput> inputs;
      for (const echo::SessionRecord &r : snap->records) {
        if (r.script_id != script->script_id) continue;
        inputs.push_back({r.session_id, r.FindAnswer(h.question_id())});
      }
      absl::StatusOr<echo::HypothesisCoding> c = echo::CodeHypothesis(*script, h, inputs);
      if (!c.ok()) return Fail(c.status());
      ojson verdicts = ojson::array();
      for (const auto &[id, v] : c->verdicts) {
        verdicts.push_back({{"response_id", id}, {"verdict", echo::VerdictName(v)}});
      }
      std::cout << ojson{{"hypothesis_id", c->hypothesis_id},
                         {"predicate", c->predicate},
                         {"supports", c->supports},
                         {"refutes", c->refutes},
                         {"not_applicable", c->not_applicable},
                         {"verdicts", std::move(verdicts)}}
                       .dump()
                << "\n";
    }
  }
  return kOk;
}

int RunAnalyze(const std::string &store, const std::string &script_path, const std::string &out,
               bool csv, double alpha) {
  absl::StatusOr<echo::StoreSnapshot> snap = LoadStore(store);
  if (!snap.ok()) return Fail(snap.status());
  absl::StatusOr<echo::InquiryScript> script = echo::LoadScriptFile(script_path);
  if (!script.ok()) return Fail(script.status());
  const ojson report = echo::BuildReport(*script, snap->records, echo::ReportOptions{alpha});
  const std::string text = echo::ReportToString(report);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    f << text;
    if (!f) return Fail(absl::UnavailableError(absl::StrCat("cannot write ", out)));
  }
  if (csv) {
    for (const auto &[table, content] : echo::ReportToCsv(report)) {
      if (out.empty()) {
        std::cout << "# " << table << "\n" << content;
        continue;
      }
      std::filesystem::path p(out);
      p.replace_filename(p.stem().string() + "_" + table + ".csv");
      std::ofstream f(p, std::ios::binary);
      f << content;
      if (!f) return Fail(absl::UnavailableError(absl::StrCat("cannot write ", p.string())));
    }
  }
  return kOk;
}

int RunExport(const std::string &store, const std::string &session_id, bool compact) {
  if (compact) {
    if (!std::filesystem::exists(store)) {
      return Fail(absl::NotFoundError(absl::StrCat("store not found: ", store)));
    }
    echo::SessionStore s(store);
    if (absl::Status st = s.Compact(); !st.ok()) return Fail(st);
  }
  absl::StatusOr<echo::StoreSnapshot> snap = LoadStore(store);
  if (!snap.ok()) return Fail(snap.status());
  bool found = session_id.empty();
  for (const echo::SessionRecord &r : snap->records) {
    if (!session_id.empty() && r.session_id != session_id) continue;
    found = true;
    std::cout << echo::RecordToLine(r) << "\n";
  }
  if (!found) return Fail(absl::NotFoundError(absl::StrCat("session not found: ", session_id)));
  return kOk;
}

struct ServeArgs {
  std::string config;
  std::string host;
  int port = 0;
  std::string store;
  std::string scripts;
};

int RunServe(const ServeArgs &args) {
  absl::StatusOr<echo::ServiceConfig> config = echo::LoadServiceConfig(
      args.config.empty() ? std::nullopt : std::optional<std::string>(args.config));
  if (!config.ok()) return Fail(config.status());
  if (!args.host.empty()) config->host = args.host;
  if (args.port != 0) config->port = args.port;
  if (!args.store.empty()) config->store_path = args.store;
  if (!args.scripts.empty()) config->scripts_dir = args.scripts;
  if (absl::Status s = echo::ValidateServiceConfig(*config); !s.ok()) return Fail(s);

  absl::StatusOr<std::vector<echo::InquiryScript>> scripts =
      echo::LoadScriptDirectory(config->scripts_dir);
  if (!scripts.ok()) return Fail(scripts.status());
  absl::StatusOr<echo::Quantifier> q = echo::Quantifier::Load(config->lexicons);
  if (!q.ok()) return Fail(q.status());

  echo::SessionStore store(config->store_path);
  echo::SessionOptions options;
  options.ttl = std::chrono::seconds(config->session_ttl_seconds);
  echo::SessionEngine engine(*std::move(scripts), *std::move(q), &store, options);
  if (absl::Status s = engine.Recover(); !s.ok()) return Fail(s);
  echo::Api api(&engine, config->alpha);

  std::atomic<bool> stop = false;
  std::thread reaper([&] {
    while (!stop) {
      for (int i = 0; i < 600 && !stop; ++i) std::this_thread::sleep_for(std::chrono::milliseconds(100));
      if (!stop) engine.ExpireIdle();
    }
  });
  std::cerr << "listening on " << config->host << ":" << config->port << "\n";
  const absl::Status s = echo::RunHttpServer(api, config->host, config->port);
  stop = true;
  reaper.join();
  return s.ok() ? kOk : Fail(s);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"ECHO contextual-inquiry operator tool"};
  app.require_subcommand(1);

  std::string validate_path;
  auto *validate = app.add_subcommand("validate", "Validate an inquiry script");
  validate->add_option("script", validate_path, "Script JSON file")->required();

  ServeArgs serve_args;
  auto *serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--config", serve_args.config, "JSON config file");
  serve->add_option("--host", serve_args.host, "Listen address");
  serve->add_option("--port", serve_args.port, "Listen port")->check(CLI::Range(1, 65535));
  serve->add_option("--store", serve_args.store, "Session store (NDJSON)");
  serve->add_option("--scripts", serve_args.scripts, "Script directory");

  std::string text, units;
  auto *quantify = app.add_subcommand("quantify", "Quantify one response");
  quantify->add_option("--text", text, "Response text")->required();
  quantify->add_option("--units", units, "Frequency units, e.g. days/week");

  CodeArgs code_args;
  auto *code = app.add_subcommand("code", "Code stored responses (NDJSON to stdout)");
  code->add_option("--method", code_args.method, "Coding method")
      ->required()
      ->check(CLI::IsMember({"thematic", "emotion", "causation", "hypothesis"}));
  code->add_option("--store", code_args.store, "Session store (NDJSON)")->required();
  code->add_option("--codebook", code_args.codebook, "Codebook JSON (default: bundled)");
  code->add_option("--script", code_args.script, "Script JSON (hypothesis coding)");
  code->add_flag("--inductive", code_args.inductive, "Add emergent themes");
  code->add_option("--min-support", code_args.min_support, "Emergent theme support")
      ->check(CLI::PositiveNumber);
  code->add_option("--jaccard", code_args.jaccard, "Emergent theme linkage threshold")
      ->check(CLI::Range(0.0, 1.0));

  std::string store, script, out;
  bool csv = false;
  double alpha = 0.05;
  auto *analyze = app.add_subcommand("analyze", "Build the analytics report");
  analyze->add_option("--store", store, "Session store (NDJSON)")->required();
  analyze->add_option("--script", script, "Script JSON")->required();
  analyze->add_option("--out", out, "Report path (stdout when omitted)");
  analyze->add_flag("--csv", csv, "Also write flat CSV tables");
  analyze->add_option("--alpha", alpha, "Significance level")->check(CLI::Range(1e-12, 1 - 1e-12));

  std::string export_store, session_id;
  bool compact = false;
  auto *export_cmd = app.add_subcommand("export", "Print anonymized session records");
  export_cmd->add_option("--store", export_store, "Session store (NDJSON)")->required();
  export_cmd->add_option("--session", session_id, "Only this session");
  export_cmd->add_flag("--compact", compact, "Rewrite the store keeping the latest records");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  if (*validate) return RunValidate(validate_path);
  if (*serve) return RunServe(serve_args);
  if (*quantify) return RunQuantify(text, units);
  if (*code) return RunCode(code_args);
  if (*analyze) return RunAnalyze(store, script, out, csv, alpha);
  return RunExport(export_store, session_id, compact);
}
