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

// Match loop, experiment configuration and named reproduction cases.

#ifndef POLYSWAP_HARNESS_H_
#define POLYSWAP_HARNESS_H_

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "polyswap/games.h"
#include "polyswap/io.h"
#include "polyswap/learners.h"
#include "polyswap/optimizers.h"

namespace polyswap {

struct ComponentSpec {
  std::string name;
  Json params = Json::object();
};

// {"game": {"file": path} | {"generator": name, "params": {...}} | inline game,
//  "learner": {"name", "params"}, "optimizer": {"name", "params"},
//  "horizon": T, "seed": s, "output": {"transcript": path, "summary": path}}
struct MatchConfig {
  Json game_source;
  ComponentSpec learner;
  ComponentSpec optimizer;
  int horizon = 0;
  // Only consumed by random game generators.
  std::uint64_t seed = 0;
  std::string transcript_path;
  std::string summary_path;

  // Throws bad-horizon for T < 1 and unknown-name for unregistered components.
  static MatchConfig FromJson(const Json& j);
  Json ToJson() const;
};

// Generator names: selling, separation, dominating_set, lemma1, lemma_linear,
// random_standard, random_bayesian, random_polytope.
const std::vector<std::string>& GeneratorNames();
LoadedGame GenerateGame(const std::string& name, const Json& params, std::uint64_t seed);
LoadedGame LoadGameSource(const Json& source, std::uint64_t seed);

// Learner names: hedge, blum_mansour, vertex_lifted, per_context,
// context_swap, scripted.
const std::vector<std::string>& LearnerNames();
std::unique_ptr<Learner> MakeLearner(const ComponentSpec& spec, const LoadedGame& game,
                                     int horizon);

// Optimizer names: static, perturbed_stackelberg, replay, two_phase_price.
const std::vector<std::string>& OptimizerNames();
std::unique_ptr<Optimizer> MakeOptimizer(const ComponentSpec& spec, const LoadedGame& game,
                                         int horizon);

// T rounds of simultaneous play. After round t the learner sees the reward
// vector r^t of the optimizer's mixed action.
Transcript RunMatch(std::shared_ptr<const PolytopeGame> game, Learner& learner,
                    Optimizer& optimizer, int horizon);

struct MatchResult {
  LoadedGame game;
  Transcript transcript;
};

MatchResult RunMatch(const MatchConfig& config);

// Totals, per-round averages and the Stackelberg value of the game.
Json SummarizeMatch(const MatchResult& result);

// The learner's points against a fixed reward sequence.
std::vector<Point> PlayInstance(Learner& learner, const std::vector<Eigen::VectorXd>& rewards);

struct Check {
  std::string name;
  double measured = 0.0;
  // "==" passes when |measured - expected| <= tolerance, "<=" when
  // measured <= expected + tolerance, ">=" when measured >= expected - tolerance.
  std::string relation;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

Check MakeCheck(std::string name, double measured, std::string relation, double expected,
                double tolerance);

struct CaseReport {
  std::string id;
  std::string anchor;
  std::vector<Check> checks;
  Json details = Json::object();

  bool passed() const;
  Json ToJson() const;
};

const std::vector<std::string>& CaseIds();

// Throws unknown-case for unregistered ids.
CaseReport Reproduce(const std::string& case_id);

}  // namespace polyswap

#endif  // POLYSWAP_HARNESS_H_
