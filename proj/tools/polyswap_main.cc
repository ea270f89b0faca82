// Copyright 2026 The polyswap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// polyswap command-line tool. Exit code 0 iff every check passes; errors
// exit with 2 after printing their kebab-case code.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polyswap/equilibria.h"
#include "polyswap/error.h"
#include "polyswap/harness.h"
#include "polyswap/io.h"
#include "polyswap/regret.h"

namespace polyswap {
namespace {

constexpr double kConsistencyTol = 1e-9;

void Emit(const Json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    WriteTextFile(out_path, text);
  }
}

// Inline JSON text, or the path of a JSON file.
Json ParseParams(const std::string& text) {
  if (text.empty()) return Json::object();
  if (std::filesystem::exists(text)) return ReadJsonFile(text);
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("--params: ") + e.what());
  }
}

int Simulate(const std::string& config_path, const std::string& out, const std::string& summary) {
  MatchConfig config = MatchConfig::FromJson(ReadJsonFile(config_path));
  if (!out.empty()) config.transcript_path = out;
  if (!summary.empty()) config.summary_path = summary;
  const MatchResult result = RunMatch(config);
  if (!config.transcript_path.empty()) {
    std::ofstream file(config.transcript_path);
    if (!file) throw Error(ErrorCode::kParseError, "cannot write " + config.transcript_path);
    WriteTranscriptCsv(result.transcript, file);
  }
  Json report = SummarizeMatch(result);
  const double inconsistency = result.transcript.MaxInconsistency(*result.game.polytope);
  report["max_inconsistency"] = inconsistency;
  Emit(report, config.summary_path);
  return inconsistency <= kConsistencyTol ? 0 : 1;
}

int Regret(const std::string& transcript_path, const std::string& polytope_path,
           const std::string& game_path, const std::string& notion_name,
           const std::string& weights_text) {
  std::ifstream file(transcript_path);
  if (!file) throw Error(ErrorCode::kParseError, "cannot open " + transcript_path);
  const Transcript transcript = ReadTranscriptCsv(file);
  const Polytope polytope = [&] {
    if (!polytope_path.empty()) return PolytopeFromJson(ReadJsonFile(polytope_path));
    if (!game_path.empty()) return GameFromJson(ReadJsonFile(game_path)).polytope->polytope();
    throw Error(ErrorCode::kShapeError, "regret needs --polytope or --game");
  }();
  const auto rewards = transcript.rewards();
  const auto actions = transcript.actions();
  const RegretNotion notion = ParseRegretNotion(notion_name);
  RegretReport report;
  Eigen::VectorXd weights;
  switch (notion) {
    case RegretNotion::kExternal:
      report = ExternalRegret(rewards, actions);
      break;
    case RegretNotion::kSwap:
      report = SwapRegret(rewards, actions);
      break;
    case RegretNotion::kContextualExternal: {
      const auto& structure = polytope.structure();
      if (!structure) throw Error(ErrorCode::kShapeError, "contextual regret needs a product");
      weights = weights_text.empty() ? Eigen::VectorXd::Ones(structure->num_contexts)
                                     : VectorFromJson(ParseParams(weights_text));
      report = ContextualExternalRegret(weights, structure->num_actions, rewards, actions);
      break;
    }
    case RegretNotion::kLinearSwap:
      report = LinearSwapRegret(polytope, rewards, actions);
      break;
    case RegretNotion::kPolytopeSwap:
      report = PolytopeSwapRegret(polytope, rewards, actions);
      break;
  }
  const double replayed =
      EvaluateWitness(report, rewards, actions, &polytope, weights.size() ? &weights : nullptr);
  Json out = ToJson(report);
  out["witness_value"] = replayed;
  Emit(out, "");
  return std::abs(replayed - report.value) <= 1e-8 * std::max(1.0, std::abs(report.value)) ? 0
                                                                                           : 1;
}

int Solve(const std::string& benchmark, const std::string& game_path) {
  const LoadedGame game = GameFromJson(ReadJsonFile(game_path));
  if (benchmark == "stackelberg") {
    if (game.bayesian) {
      Emit(ToJson(StackelbergBayesian(*game.bayesian)), "");
    } else {
      Emit(ToJson(StackelbergPolytope(*game.polytope)), "");
    }
    return 0;
  }
  if (!game.bayesian && !game.standard) {
    throw Error(ErrorCode::kShapeError, benchmark + " needs a standard or Bayesian game");
  }
  const BayesianGame bayesian =
      game.bayesian ? *game.bayesian
                    : BayesianGame(Eigen::VectorXd::Ones(1), {game.standard->optimizer_utility()},
                                   {game.standard->learner_utility()});
  if (benchmark == "perconval") {
    Emit(Json{{"value", PerContextValue(bayesian)}}, "");
    return 0;
  }
  if (benchmark == "corrval") {
    const CorrelatedSolution solution = CorrelatedValue(bayesian);
    Json out = ToJson(solution);
    const double violation = CeViolation(bayesian, solution.distributions);
    out["ce_violation"] = violation;
    Emit(out, "");
    return violation <= 1e-8 ? 0 : 1;
  }
  throw Error(ErrorCode::kUnknownName, "unknown benchmark '" + benchmark + "'");
}

int Generate(const std::string& name, const std::string& params, std::uint64_t seed,
             const std::string& out) {
  const LoadedGame game = GenerateGame(name, ParseParams(params), seed);
  Json j;
  if (game.bayesian) {
    j = ToJson(*game.bayesian);
  } else if (game.standard) {
    j = ToJson(*game.standard);
  } else {
    j = ToJson(*game.polytope);
  }
  for (const auto& [key, value] : game.extras.items()) j[key] = value;
  Emit(j, out);
  return 0;
}

int ReproduceCases(const std::string& case_id, bool all, const std::string& out_dir) {
  std::vector<std::string> ids;
  if (all) {
    ids = CaseIds();
  } else if (!case_id.empty()) {
    ids.push_back(case_id);
  } else {
    throw Error(ErrorCode::kUnknownCase, "reproduce needs --case or --all");
  }
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  bool ok = true;
  for (const auto& id : ids) {
    const CaseReport report = Reproduce(id);
    ok = ok && report.passed();
    std::printf("%s %s\n", report.passed() ? "PASS" : "FAIL", id.c_str());
    for (const auto& c : report.checks) {
      std::printf("  %-4s %s: %.12g %s %.12g (tol %.3g)\n", c.passed ? "ok" : "FAIL",
                  c.name.c_str(), c.measured, c.relation.c_str(), c.expected, c.tolerance);
    }
    std::fflush(stdout);
    if (!out_dir.empty()) {
      WriteTextFile((std::filesystem::path(out_dir) / (id + ".json")).string(),
                    report.ToJson().dump(2) + "\n");
    }
  }
  return ok ? 0 : 1;
}

int Main(int argc, char** argv) {
  CLI::App app{"Learning-agent games: simulation, regret audits and equilibrium benchmarks"};
  app.require_subcommand(1);

  std::string config, out, summary;
  auto* simulate = app.add_subcommand("simulate", "Run a match from a JSON config");
  simulate->add_option("--config", config, "Match config JSON")->required();
  simulate->add_option("--out", out, "Transcript CSV path");
  simulate->add_option("--summary", summary, "Summary JSON path (default stdout)");

  std::string transcript, polytope, game, notion, weights;
  auto* regret = app.add_subcommand("regret", "Audit a transcript under a regret notion");
  regret->add_option("--transcript", transcript, "Transcript CSV")->required();
  regret->add_option("--polytope", polytope, "Learner polytope JSON");
  regret->add_option("--game", game, "Game JSON (its learner polytope is used)");
  regret->add_option("--notion", notion, "external|swap|contextual_external|linear_swap|polytope_swap")
      ->required();
  regret->add_option("--context-weights", weights, "JSON array of context weights");

  std::string benchmark, solve_game;
  auto* solve = app.add_subcommand("solve", "Compute an equilibrium benchmark");
  solve->add_option("--benchmark", benchmark, "stackelberg|perconval|corrval")->required();
  solve->add_option("--game", solve_game, "Game JSON")->required();

  std::string gen_name, gen_params, gen_out;
  std::uint64_t seed = 0;
  auto* generate = app.add_subcommand("generate", "Emit a generated game as JSON");
  generate->add_option("--name", gen_name, "Generator name")->required();
  generate->add_option("--params", gen_params, "Inline JSON or a JSON file");
  generate->add_option("--seed", seed, "Seed for random generators");
  generate->add_option("--out", gen_out, "Output path (default stdout)");

  std::string case_id, out_dir;
  bool all = false, list = false;
  auto* reproduce = app.add_subcommand("reproduce", "Run named reproduction cases");
  reproduce->add_option("--case", case_id, "Case id");
  reproduce->add_flag("--all", all, "Run every registered case");
  reproduce->add_flag("--list", list, "List case ids");
  reproduce->add_option("--out-dir", out_dir, "Directory for JSON reports");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return Simulate(config, out, summary);
    if (regret->parsed()) return Regret(transcript, polytope, game, notion, weights);
    if (solve->parsed()) return Solve(benchmark, solve_game);
    if (generate->parsed()) return Generate(gen_name, gen_params, seed, gen_out);
    if (reproduce->parsed()) {
      if (list) {
        for (const auto& id : CaseIds()) std::cout << id << "\n";
        return 0;
      }
      return ReproduceCases(case_id, all, out_dir);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace
}  // namespace polyswap

int main(int argc, char** argv) { return polyswap::Main(argc, argv); }
