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

#include "polyswap/harness.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <utility>

#include "polyswap/equilibria.h"
#include "polyswap/error.h"
#include "polyswap/generators.h"
#include "polyswap/regret.h"

namespace polyswap {
namespace {

bool Contains(const std::vector<std::string>& names, const std::string& name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

LoadedGame FromStandard(StandardGame game) {
  LoadedGame out;
  out.type = "standard";
  out.polytope = std::make_shared<PolytopeGame>(StandardToPolytope(game));
  out.standard.emplace(std::move(game));
  return out;
}

LoadedGame FromBayesian(BayesianGame game) {
  LoadedGame out;
  out.type = "bayesian";
  out.polytope = std::make_shared<PolytopeGame>(BayesianToPolytope(game));
  out.bayesian.emplace(std::move(game));
  return out;
}

LoadedGame FromPolytope(PolytopeGame game) {
  LoadedGame out;
  out.type = "polytope";
  out.polytope = std::make_shared<PolytopeGame>(std::move(game));
  return out;
}

Json PointsToJson(const std::vector<Eigen::VectorXd>& points) {
  Json out = Json::array();
  for (const auto& p : points) out.push_back(ToJson(p));
  return out;
}

std::vector<Eigen::VectorXd> PointsFromJson(const Json& j) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& p : j) out.push_back(VectorFromJson(p));
  return out;
}

// Uniform draw from the probability simplex.
Eigen::VectorXd RandomDistribution(int n, std::mt19937_64* rng) {
  std::exponential_distribution<double> exp(1.0);
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w(i) = exp(*rng);
  return w / w.sum();
}

Graph GraphFromParams(const Json& params) {
  if (params.contains("graph")) return Graph::Parse(params["graph"].get<std::string>());
  if (params.contains("graph_file")) {
    return Graph::Parse(ReadTextFile(params["graph_file"].get<std::string>()));
  }
  const std::string named = params.value("named", "edge");
  if (named == "edge") return Graph(2, {{0, 1}});
  if (named == "triangle") return Graph(3, {{0, 1}, {0, 2}, {1, 2}});
  if (named == "petersen") return PetersenGraph();
  throw Error(ErrorCode::kUnknownName, "unknown named graph '" + named + "'");
}

struct RecordedRun {
  LearningInstance instance;
  std::vector<Point> actions;
  RegretReport regret;
};

// Hedge on an adversarial cycling instance, scored by swap regret.
RecordedRun RecordHedgeRun(int num_actions, int horizon, int period, std::uint64_t seed) {
  LearningInstance instance = MakeCyclingInstance(num_actions, horizon, period, seed);
  HedgeLearner learner(num_actions, horizon);
  std::vector<Point> actions = PlayInstance(learner, instance.rewards);
  RegretReport regret = SwapRegret(instance.rewards, actions);
  return {std::move(instance), std::move(actions), std::move(regret)};
}

// Per-block Hedge on random rewards over a simplex product, scored by
// linear swap regret.
RecordedRun RecordBlockHedgeRun(int num_actions, int num_contexts, int horizon,
                                std::uint64_t seed) {
  LearningInstance instance =
      MakeRandomInstance(SimplexProduct(num_actions, num_contexts), horizon, seed);
  PerContextLearner learner(Eigen::VectorXd::Ones(num_contexts), num_actions, horizon,
                            InnerAlgorithm::kHedge);
  std::vector<Point> actions = PlayInstance(learner, instance.rewards);
  RegretReport regret = LinearSwapRegret(instance.polytope, instance.rewards, actions);
  return {std::move(instance), std::move(actions), std::move(regret)};
}

constexpr double kPositiveRegret = 1e-6;

LoadedGame GenerateLemma1(const Json& params, std::uint64_t seed) {
  const RecordedRun run =
      RecordHedgeRun(params.value("num_actions", 3), params.value("horizon", 1000),
                     params.value("period", 25), params.value("seed", seed));
  if (run.regret.value <= kPositiveRegret) {
    throw Error(ErrorCode::kDegenerateGame, "recorded run has no positive swap regret");
  }
  Lemma1Game lemma = MakeLemma1Game(run.instance, run.regret.swap);
  LoadedGame out = FromStandard(std::move(lemma.game));
  out.extras["schedule"] = PointsToJson(lemma.schedule);
  out.extras["trajectory"] = PointsToJson(run.actions);
  out.extras["swap"] = run.regret.swap;
  out.extras["swap_regret"] = run.regret.value;
  return out;
}

LoadedGame GenerateLemmaLinear(const Json& params, std::uint64_t seed) {
  const RecordedRun run = RecordBlockHedgeRun(
      params.value("num_actions", 2), params.value("num_contexts", 2),
      params.value("horizon", 500), params.value("seed", seed));
  if (run.regret.value <= kPositiveRegret) {
    throw Error(ErrorCode::kDegenerateGame, "recorded run has no positive linear swap regret");
  }
  LinearSwapGame lemma = MakeLemmaLinearGame(run.instance, run.regret.contraction);
  LoadedGame out = FromPolytope(std::move(lemma.game));
  out.extras["schedule"] = PointsToJson(lemma.schedule);
  out.extras["trajectory"] = PointsToJson(run.actions);
  out.extras["contraction"] = ToJson(run.regret.contraction);
  out.extras["linear_swap_regret"] = run.regret.value;
  out.extras["lambda"] = lemma.lambda;
  return out;
}

// Context weights for per-context learners: the Bayesian prior, else the
// "context_weights" parameter, else all ones.
Eigen::VectorXd ContextWeights(const ComponentSpec& spec, const LoadedGame& game,
                               int num_contexts) {
  if (game.bayesian) return game.bayesian->context_probs();
  if (spec.params.contains("context_weights")) {
    Eigen::VectorXd w = VectorFromJson(spec.params["context_weights"]);
    if (w.size() != num_contexts) {
      throw Error(ErrorCode::kShapeError, "context_weights must have one entry per context");
    }
    return w;
  }
  return Eigen::VectorXd::Ones(num_contexts);
}

const ProductOfSimplices& RequireProduct(const LoadedGame& game, const std::string& who,
                                         bool single_simplex) {
  const auto& structure = game.polytope->polytope().structure();
  if (!structure || (single_simplex && structure->num_contexts != 1)) {
    throw Error(ErrorCode::kShapeError,
                who + " needs a " + (single_simplex ? "simplex" : "simplex-product") +
                    " learner polytope");
  }
  return *structure;
}

std::vector<Eigen::VectorXd> RequireSequence(const ComponentSpec& spec, const LoadedGame& game,
                                             const std::string& key, int horizon) {
  const Json* source = nullptr;
  if (spec.params.contains(key)) {
    source = &spec.params[key];
  } else if (game.extras.contains(key)) {
    source = &game.extras[key];
  } else {
    throw Error(ErrorCode::kShapeError, spec.name + " needs a '" + key + "'");
  }
  std::vector<Eigen::VectorXd> out = PointsFromJson(*source);
  if (static_cast<int>(out.size()) < horizon) {
    throw Error(ErrorCode::kBadHorizon, spec.name + " " + key + " has " +
                                            std::to_string(out.size()) + " rounds, T is " +
                                            std::to_string(horizon));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reproduction cases.

using CaseFn = std::function<CaseReport()>;

CaseReport StartCase(std::string id, std::string anchor) {
  CaseReport report;
  report.id = std::move(id);
  report.anchor = std::move(anchor);
  return report;
}

double Average(const Transcript& transcript) {
  return transcript.total_optimizer_utility() / transcript.num_rounds();
}

Transcript Play(const PolytopeGame& game, Learner& learner, Optimizer& optimizer, int horizon) {
  return RunMatch(std::make_shared<PolytopeGame>(game), learner, optimizer, horizon);
}

CaseReport SeparationRegretCase() {
  CaseReport report = StartCase("B1-separation",
                                "polytope swap regret is linear while linear swap regret is 0");
  constexpr int kHorizon = 40;
  const SeparationInstance sep = MakeSeparationInstance(kHorizon);
  const auto& polytope = sep.instance.polytope;
  const RegretReport poly = PolytopeSwapRegret(polytope, sep.instance.rewards, sep.trajectory);
  PolytopeSwapOptions cutting;
  cutting.method = PolytopeSwapOptions::Method::kCuttingPlane;
  const RegretReport poly_cp =
      PolytopeSwapRegret(polytope, sep.instance.rewards, sep.trajectory, cutting);
  const RegretReport lin = LinearSwapRegret(polytope, sep.instance.rewards, sep.trajectory);
  report.checks.push_back(
      MakeCheck("polytope_swap_regret", poly.value, "==", kHorizon / 2.0, 1e-8));
  report.checks.push_back(MakeCheck("polytope_swap_regret_cutting_plane", poly_cp.value, "==",
                                    kHorizon / 2.0, 1e-8));
  report.checks.push_back(MakeCheck("linear_swap_regret", lin.value, "<=", 0.0, 1e-9));
  report.details = {{"horizon", kHorizon},
                    {"polytope_swap", ToJson(poly)},
                    {"cutting_plane_lower_bound", poly_cp.lower_bound},
                    {"linear_swap", ToJson(lin)}};
  return report;
}

CaseReport SeparationGameCase() {
  CaseReport report = StartCase("B2-game",
                                "a no-linear-swap-regret learner is exploited above Val");
  constexpr int kHorizon = 400;
  const SeparationGame sep = MakeSeparationGame(kHorizon);
  const StackelbergSolution val = StackelbergPolytope(sep.game);
  ScriptedLearner learner(sep.trajectory);
  ReplayOptimizer optimizer(sep.schedule);
  const Transcript transcript = Play(sep.game, learner, optimizer, kHorizon);
  const RegretReport lin =
      LinearSwapRegret(sep.game.polytope(), transcript.rewards(), transcript.actions());
  report.checks.push_back(MakeCheck("stackelberg_value", val.value, "==", 0.74, 1e-6));
  report.checks.push_back(
      MakeCheck("replay_average", Average(transcript), "==", 0.7575, 1e-9));
  report.checks.push_back(MakeCheck("learner_linear_swap_regret", lin.value, "<=", 0.0, 1e-9));
  report.details = {{"horizon", kHorizon}, {"stackelberg", ToJson(val)}};
  return report;
}

CaseReport Lemma1Case() {
  CaseReport report = StartCase("Lemma1-pipeline",
                                "positive swap regret yields a zero-value game exploited by R/2");
  constexpr int kRuns = 10, kActions = 3, kHorizon = 1000;
  double worst_value = -1e300, worst_gap = 0.0;
  int found = 0;
  Json runs = Json::array();
  for (std::uint64_t seed = 0; seed < 200 && found < kRuns; ++seed) {
    const int period = 20 + 5 * static_cast<int>(seed % 5);
    const RecordedRun run = RecordHedgeRun(kActions, kHorizon, period, seed);
    if (run.regret.value <= kPositiveRegret) continue;
    ++found;
    const Lemma1Game lemma = MakeLemma1Game(run.instance, run.regret.swap);
    const double value = StackelbergStandard(lemma.game).value;
    HedgeLearner replayed(kActions, kHorizon);
    ReplayOptimizer optimizer(lemma.schedule);
    const Transcript transcript =
        Play(StandardToPolytope(lemma.game), replayed, optimizer, kHorizon);
    const double total = transcript.total_optimizer_utility();
    worst_value = std::max(worst_value, value);
    worst_gap = std::max(worst_gap, std::abs(total - run.regret.value / 2.0));
    runs.push_back({{"seed", seed},
                    {"period", period},
                    {"swap_regret", run.regret.value},
                    {"stackelberg_value", value},
                    {"replay_total", total}});
  }
  report.checks.push_back(MakeCheck("runs_with_positive_regret", found, "==", kRuns, 0.0));
  report.checks.push_back(MakeCheck("max_stackelberg_value", worst_value, "<=", 0.0, 1e-9));
  report.checks.push_back(MakeCheck("max_abs_replay_total_minus_half_R", worst_gap, "<=", 0.0,
                                    1e-8));
  report.details = {{"runs", runs}};
  return report;
}

CaseReport Lemma42Case() {
  CaseReport report =
      StartCase("Lemma42-pipeline",
                "positive linear swap regret yields a zero-value game exploited by R/(lambda+1)");
  constexpr int kRuns = 10, kHorizon = 500;
  double worst_value = -1e300, worst_gap = 0.0;
  int found = 0;
  Json runs = Json::array();
  for (std::uint64_t seed = 0; seed < 200 && found < kRuns; ++seed) {
    const RecordedRun run = RecordBlockHedgeRun(2, 2, kHorizon, seed);
    if (run.regret.value <= kPositiveRegret) continue;
    ++found;
    const LinearSwapGame lemma = MakeLemmaLinearGame(run.instance, run.regret.contraction);
    const double value = StackelbergPolytope(lemma.game).value;
    PerContextLearner replayed(Eigen::VectorXd::Ones(2), 2, kHorizon, InnerAlgorithm::kHedge);
    ReplayOptimizer optimizer(lemma.schedule);
    const Transcript transcript = Play(lemma.game, replayed, optimizer, kHorizon);
    const double total = transcript.total_optimizer_utility();
    const double expected = run.regret.value / (lemma.lambda + 1.0);
    worst_value = std::max(worst_value, value);
    worst_gap = std::max(worst_gap, std::abs(total - expected));
    runs.push_back({{"seed", seed},
                    {"linear_swap_regret", run.regret.value},
                    {"lambda", lemma.lambda},
                    {"stackelberg_value", value},
                    {"replay_total", total}});
  }
  report.checks.push_back(MakeCheck("runs_with_positive_regret", found, "==", kRuns, 0.0));
  report.checks.push_back(MakeCheck("max_stackelberg_value", worst_value, "<=", 0.0, 1e-9));
  report.checks.push_back(MakeCheck("max_abs_replay_total_minus_scaled_R", worst_gap, "<=", 0.0,
                                    1e-8));
  report.details = {{"runs", runs}};
  return report;
}

CaseReport SellingCase() {
  CaseReport report = StartCase("C2-selling",
                                "per-context no-swap-regret learners are exploited above Val");
  constexpr int kHorizon = 20000;
  const BayesianGame game = MakeSellingGame();
  const PolytopeGame pg = BayesianToPolytope(game);
  const double val = StackelbergBayesian(game).value;
  const double percon = PerContextValue(game);

  PerContextLearner exploited(game.context_probs(), 2, kHorizon, InnerAlgorithm::kHedge);
  TwoPhasePriceOptimizer two_phase(kHorizon);
  const double exploit_avg = Average(Play(pg, exploited, two_phase, kHorizon));

  PerContextLearner steady(game.context_probs(), 2, kHorizon, InnerAlgorithm::kHedge);
  const double bound = DefaultRegretBound(kHorizon, pg.polytope().num_vertices());
  PerturbedStackelbergOptimizer perturbed(pg, bound, kHorizon);
  const double perturbed_avg = Average(Play(pg, steady, perturbed, kHorizon));

  report.checks.push_back(MakeCheck("stackelberg_value", val, "==", 0.25, 1e-9));
  report.checks.push_back(MakeCheck("two_phase_average", exploit_avg, ">=", 0.36, 0.0));
  report.checks.push_back(MakeCheck("perturbed_stackelberg_average", perturbed_avg, ">=", 0.20,
                                    0.0));
  report.checks.push_back(MakeCheck("per_context_value", percon, "==", 0.375, 1e-9));
  report.checks.push_back(MakeCheck("two_phase_average_cap", exploit_avg, "<=", 0.375, 0.02));
  report.details = {{"horizon", kHorizon},
                    {"learner", "per_context(hedge)"},
                    {"perturbation_epsilon", perturbed.epsilon()},
                    {"perturbation_margin", perturbed.margin()},
                    {"perturbation_response", perturbed.response_index()},
                    {"regret_bound", bound}};
  return report;
}

struct ContextSwapRun {
  double average = 0.0;
  double ce_violation = 0.0;
  Json iterations;
};

ContextSwapRun RunContextSwap(const BayesianGame& game, int horizon) {
  const PolytopeGame pg = BayesianToPolytope(game);
  ContextSwapLearner learner(game.context_probs(), game.num_learner_actions(), horizon);
  TwoPhasePriceOptimizer optimizer(horizon);
  const Transcript transcript = Play(pg, learner, optimizer, horizon);
  std::vector<Eigen::VectorXd> weights;
  for (const auto& round : transcript.rounds()) weights.push_back(round.q_weights);
  ContextSwapRun run;
  run.average = Average(transcript);
  run.ce_violation = CeViolation(game, EmpiricalProfile(game, weights, transcript.actions()));
  const auto& plain = learner.iteration_log();
  const auto& damped = learner.damped_log();
  run.iterations = {
      {"solves", plain.size()},
      {"max_plain", plain.empty() ? 0 : *std::max_element(plain.begin(), plain.end())},
      {"mean_plain", plain.empty() ? 0.0
                                   : std::accumulate(plain.begin(), plain.end(), 0.0) /
                                         static_cast<double>(plain.size())},
      {"solves_needing_damping",
       std::count_if(damped.begin(), damped.end(), [](int d) { return d > 0; })}};
  return run;
}

CaseReport ContextSwapCase() {
  CaseReport report =
      StartCase("Alg2-cap", "the context-swap learner caps the optimizer at CorrVal");
  const BayesianGame game = MakeSellingGame();
  const double corr = CorrelatedValue(game).value;
  const ContextSwapRun small = RunContextSwap(game, 2000);
  const ContextSwapRun large = RunContextSwap(game, 20000);
  report.checks.push_back(MakeCheck("two_phase_average", large.average, "<=", corr, 0.02));
  report.checks.push_back(MakeCheck("ce_violation_decrease", small.ce_violation - large.ce_violation,
                                    ">=", 0.0, 0.0));
  // A tie would also pass the check above, so require a strict decrease.
  report.checks.back().passed = large.ce_violation < small.ce_violation;
  report.details = {{"corr_val", corr},
                    {"ce_violation_T2000", small.ce_violation},
                    {"ce_violation_T20000", large.ce_violation},
                    {"average_T2000", small.average},
                    {"average_T20000", large.average},
                    {"fixed_point_T2000", small.iterations},
                    {"fixed_point_T20000", large.iterations}};
  return report;
}

CaseReport ReductionCase() {
  CaseReport report = StartCase(
      "C1-reduction", "swap regret over vertices bounds polytope swap regret of the average");
  constexpr int kInstances = 20, kHorizon = 2000;
  const Polytope polytope = SimplexProduct(2, 2);
  const double cap = 2.0 * std::sqrt(kHorizon * 4.0 * std::log(4.0));
  double worst_excess = -1e300, worst_inner = -1e300;
  Json runs = Json::array();
  for (int seed = 0; seed < kInstances; ++seed) {
    const LearningInstance instance = MakeRandomInstance(polytope, kHorizon, 1000 + seed);
    VertexLiftedLearner learner(polytope, kHorizon);
    const std::vector<Point> actions = PlayInstance(learner, instance.rewards);
    const RegretReport poly = PolytopeSwapRegret(polytope, instance.rewards, actions);
    const RegretReport inner = SwapRegret(learner.inner_rewards(), learner.inner_actions());
    worst_excess = std::max(worst_excess, poly.value - inner.value);
    worst_inner = std::max(worst_inner, inner.value);
    runs.push_back({{"seed", 1000 + seed},
                    {"polytope_swap_regret", poly.value},
                    {"polytope_swap_lower_bound", poly.lower_bound},
                    {"inner_swap_regret", inner.value}});
  }
  report.checks.push_back(
      MakeCheck("max_polytope_minus_inner_swap_regret", worst_excess, "<=", 0.0, 1e-8));
  report.checks.push_back(MakeCheck("max_inner_swap_regret", worst_inner, "<=", cap, 0.0));
  report.details = {{"horizon", kHorizon}, {"runs", runs}};
  return report;
}

CaseReport StackelbergCapCase() {
  CaseReport report = StartCase(
      "Thm43-cap", "a no-polytope-swap-regret learner caps the optimizer at Val");
  constexpr int kGames = 10, kHorizon = 5000;
  double worst = -1e300;
  Json runs = Json::array();
  for (int g = 0; g < kGames; ++g) {
    const std::uint64_t seed = 2000 + g;
    const int num_q = 2 + g % 3;
    const PolytopeGame game = MakeRandomPolytopeGame(4, 4, num_q, seed);
    const StackelbergSolution val = StackelbergPolytope(game);

    VertexLiftedLearner vs_static(game.polytope(), kHorizon);
    StaticOptimizer fixed(val.strategy);
    const double static_avg = Average(Play(game, vs_static, fixed, kHorizon));

    std::mt19937_64 rng(seed);
    std::vector<Eigen::VectorXd> schedule;
    for (int t = 0; t < kHorizon; ++t) schedule.push_back(RandomDistribution(num_q, &rng));
    VertexLiftedLearner vs_replay(game.polytope(), kHorizon);
    ReplayOptimizer replay(std::move(schedule));
    const double replay_avg = Average(Play(game, vs_replay, replay, kHorizon));

    worst = std::max({worst, static_avg - val.value, replay_avg - val.value});
    runs.push_back({{"seed", seed},
                    {"num_q_vertices", num_q},
                    {"stackelberg_value", val.value},
                    {"static_average", static_avg},
                    {"replay_average", replay_avg}});
  }
  report.checks.push_back(MakeCheck("max_average_minus_val", worst, "<=", 0.0, 0.05));
  report.details = {{"horizon", kHorizon}, {"games", runs}};
  return report;
}

CaseReport RegretEqualityCase() {
  CaseReport report =
      StartCase("Regret-equality", "swap, linear swap and polytope swap regret agree on simplices");
  constexpr int kTranscripts = 50, kHorizon = 20, kActions = 3;
  const Polytope simplex = Simplex(kActions);
  std::mt19937_64 rng(3000);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double lin_gap = 0.0, poly_gap = 0.0;
  for (int k = 0; k < kTranscripts; ++k) {
    std::vector<Eigen::VectorXd> rewards, actions;
    for (int t = 0; t < kHorizon; ++t) {
      rewards.push_back(Eigen::VectorXd::NullaryExpr(kActions, [&] { return unit(rng); }));
      actions.push_back(RandomDistribution(kActions, &rng));
    }
    const double swap = SwapRegret(rewards, actions).value;
    lin_gap = std::max(lin_gap, std::abs(swap - LinearSwapRegret(simplex, rewards, actions).value));
    poly_gap =
        std::max(poly_gap, std::abs(swap - PolytopeSwapRegret(simplex, rewards, actions).value));
  }
  report.checks.push_back(MakeCheck("max_abs_swap_minus_linear_swap", lin_gap, "<=", 0.0, 1e-8));
  report.checks.push_back(
      MakeCheck("max_abs_swap_minus_polytope_swap", poly_gap, "<=", 0.0, 1e-8));
  report.details = {{"transcripts", kTranscripts}, {"horizon", kHorizon}, {"seed", 3000}};
  return report;
}

CaseReport HardnessFamilyCase() {
  CaseReport report =
      StartCase("C6-hardness-family", "dominating-set game value is (V - D) / (4 V^2)");
  double worst = 0.0;
  Json graphs = Json::array();
  for (int v : {2, 3}) {
    for (const Graph& graph : SmallGraphs(v)) {
      const int d = MinDominatingSet(graph);
      const double expected = (v - d) / (4.0 * v * v);
      const double value = StackelbergBayesian(MakeDominatingSetGame(graph)).value;
      worst = std::max(worst, std::abs(value - expected));
      graphs.push_back({{"edges", graph.edges()},
                        {"num_vertices", v},
                        {"min_dominating_set", d},
                        {"value", value},
                        {"expected", expected}});
    }
  }
  report.checks.push_back(MakeCheck("graphs", static_cast<double>(graphs.size()), "==", 6, 0.0));
  report.checks.push_back(MakeCheck("max_abs_value_minus_formula", worst, "<=", 0.0, 1e-7));
  report.details = {{"graphs", graphs}};
  return report;
}

CaseReport BenchmarkChainCase() {
  CaseReport report = StartCase("Benchmark-chain", "Val <= CorrVal <= PerConVal");
  constexpr int kGames = 50;
  std::mt19937_64 rng(4000);
  std::uniform_int_distribution<int> size(2, 3);
  double val_excess = -1e300, corr_excess = -1e300;
  for (int g = 0; g < kGames; ++g) {
    const int m = size(rng), n = size(rng), c = size(rng);
    const BayesianGame game = MakeRandomBayesianGame(m, n, c, rng());
    const double val = StackelbergBayesian(game).value;
    const double corr = CorrelatedValue(game).value;
    const double percon = PerContextValue(game);
    val_excess = std::max(val_excess, val - corr);
    corr_excess = std::max(corr_excess, corr - percon);
  }
  report.checks.push_back(MakeCheck("max_val_minus_corr_val", val_excess, "<=", 0.0, 1e-8));
  report.checks.push_back(
      MakeCheck("max_corr_val_minus_per_con_val", corr_excess, "<=", 0.0, 1e-8));
  report.details = {{"games", kGames}, {"seed", 4000}};
  return report;
}

CaseReport FixedPointCase() {
  CaseReport report =
      StartCase("Fixed-point-suite", "the context fixed-point iteration converges");
  constexpr int kInstances = 200, kMaxIters = 100'000;
  std::mt19937_64 rng(5000);
  std::uniform_int_distribution<int> size(1, 4);
  int converged = 0, damped = 0, worst_iters = 0;
  double worst_residual = 0.0, worst_drift = 0.0;
  std::vector<int> counts;
  for (int k = 0; k < kInstances; ++k) {
    FixedPointProblem problem{size(rng), size(rng), {}};
    for (int c = 0; c < problem.num_contexts; ++c) {
      Eigen::MatrixXd g(problem.num_actions, problem.num_actions + problem.num_contexts);
      for (int j = 0; j < problem.num_actions; ++j) {
        g.row(j) = RandomDistribution(static_cast<int>(g.cols()), &rng).transpose();
      }
      problem.gamma.push_back(std::move(g));
    }
    try {
      const FixedPointResult result = FixedPointSolve(problem, 1e-10, kMaxIters);
      const int total = result.iterations + result.damped_iterations;
      if (total <= kMaxIters) ++converged;
      damped += result.damped_iterations > 0;
      worst_iters = std::max(worst_iters, total);
      worst_residual = std::max(worst_residual, result.residual);
      worst_drift = std::max(worst_drift, result.max_stochastic_error);
      counts.push_back(total);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kFixedPointNotConverged) throw;
      counts.push_back(-1);
    }
  }
  report.checks.push_back(MakeCheck("converged_instances", converged, "==", kInstances, 0.0));
  report.checks.push_back(MakeCheck("max_residual", worst_residual, "<=", 1e-10, 0.0));
  report.checks.push_back(MakeCheck("max_iterations", worst_iters, "<=", kMaxIters, 0.0));
  report.checks.push_back(MakeCheck("max_row_stochastic_error", worst_drift, "<=", 0.0, 1e-12));
  std::vector<int> sorted = counts;
  std::sort(sorted.begin(), sorted.end());
  report.details = {{"iteration_counts", counts},
                    {"median_iterations", sorted[sorted.size() / 2]},
                    {"instances_needing_damping", damped}};
  return report;
}

CaseReport SellingValueCase() {
  CaseReport report = StartCase("C2-selling-val", "Stackelberg value of the selling game");
  report.checks.push_back(
      MakeCheck("stackelberg_value", StackelbergBayesian(MakeSellingGame()).value, "==", 0.25,
                1e-9));
  return report;
}

CaseReport EdgeGraphCase() {
  CaseReport report = StartCase("C6-edge-graph", "dominating-set game on a single edge");
  const StackelbergSolution val = StackelbergBayesian(MakeDominatingSetGame(Graph(2, {{0, 1}})));
  report.checks.push_back(MakeCheck("stackelberg_value", val.value, "==", 0.0625, 1e-7));
  report.details = {{"stackelberg", ToJson(val)}};
  return report;
}

const std::map<std::string, CaseFn>& CaseTable() {
  static const auto* table = new std::map<std::string, CaseFn>{
      {"B1-separation", SeparationRegretCase},
      {"B2-game", SeparationGameCase},
      {"Lemma1-pipeline", Lemma1Case},
      {"Lemma42-pipeline", Lemma42Case},
      {"C2-selling", SellingCase},
      {"Alg2-cap", ContextSwapCase},
      {"C1-reduction", ReductionCase},
      {"Thm43-cap", StackelbergCapCase},
      {"Regret-equality", RegretEqualityCase},
      {"C6-hardness-family", HardnessFamilyCase},
      {"Benchmark-chain", BenchmarkChainCase},
      {"Fixed-point-suite", FixedPointCase},
      {"C2-selling-val", SellingValueCase},
      {"C6-edge-graph", EdgeGraphCase},
  };
  return *table;
}

}  // namespace

MatchConfig MatchConfig::FromJson(const Json& j) {
  MatchConfig config;
  try {
    config.game_source = j.at("game");
    config.learner.name = j.at("learner").at("name").get<std::string>();
    config.learner.params = j.at("learner").value("params", Json::object());
    config.optimizer.name = j.at("optimizer").at("name").get<std::string>();
    config.optimizer.params = j.at("optimizer").value("params", Json::object());
    config.horizon = j.at("horizon").get<int>();
    config.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("output")) {
      config.transcript_path = j["output"].value("transcript", "");
      config.summary_path = j["output"].value("summary", "");
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("match config: ") + e.what());
  }
  if (config.horizon < 1) throw Error(ErrorCode::kBadHorizon, "match config needs T >= 1");
  if (!Contains(LearnerNames(), config.learner.name)) {
    throw Error(ErrorCode::kUnknownName, "unknown learner '" + config.learner.name + "'");
  }
  if (!Contains(OptimizerNames(), config.optimizer.name)) {
    throw Error(ErrorCode::kUnknownName, "unknown optimizer '" + config.optimizer.name + "'");
  }
  return config;
}

Json MatchConfig::ToJson() const {
  Json out{{"game", game_source},
           {"learner", {{"name", learner.name}, {"params", learner.params}}},
           {"optimizer", {{"name", optimizer.name}, {"params", optimizer.params}}},
           {"horizon", horizon},
           {"seed", seed}};
  if (!transcript_path.empty() || !summary_path.empty()) {
    out["output"] = {{"transcript", transcript_path}, {"summary", summary_path}};
  }
  return out;
}

const std::vector<std::string>& GeneratorNames() {
  static const auto* names = new std::vector<std::string>{
      "selling",         "separation",      "dominating_set",  "lemma1",
      "lemma_linear",    "random_standard", "random_bayesian", "random_polytope"};
  return *names;
}

LoadedGame GenerateGame(const std::string& name, const Json& params, std::uint64_t seed) {
  try {
    if (name == "selling") return FromBayesian(MakeSellingGame());
    if (name == "separation") {
      SeparationGame sep = MakeSeparationGame(params.value("horizon", 40));
      LoadedGame out = FromPolytope(std::move(sep.game));
      out.extras["schedule"] = PointsToJson(sep.schedule);
      out.extras["trajectory"] = PointsToJson(sep.trajectory);
      return out;
    }
    if (name == "dominating_set") {
      const std::string payoffs = params.value("payoffs", "normalized");
      if (payoffs != "normalized" && payoffs != "as_displayed") {
        throw Error(ErrorCode::kUnknownName, "unknown payoffs '" + payoffs + "'");
      }
      return FromBayesian(MakeDominatingSetGame(
          GraphFromParams(params), payoffs == "normalized" ? DominatingSetPayoffs::kNormalized
                                                           : DominatingSetPayoffs::kAsDisplayed));
    }
    if (name == "lemma1") return GenerateLemma1(params, seed);
    if (name == "lemma_linear") return GenerateLemmaLinear(params, seed);
    if (name == "random_standard") {
      return FromStandard(MakeRandomStandardGame(params.value("num_optimizer_actions", 3),
                                                 params.value("num_learner_actions", 3), seed));
    }
    if (name == "random_bayesian") {
      return FromBayesian(MakeRandomBayesianGame(params.value("num_optimizer_actions", 2),
                                                 params.value("num_learner_actions", 2),
                                                 params.value("num_contexts", 2), seed));
    }
    if (name == "random_polytope") {
      return FromPolytope(MakeRandomPolytopeGame(params.value("dim", 4),
                                                 params.value("num_vertices", 4),
                                                 params.value("num_q_vertices", 4), seed));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, "generator params: " + std::string(e.what()));
  }
  throw Error(ErrorCode::kUnknownName, "unknown generator '" + name + "'");
}

LoadedGame LoadGameSource(const Json& source, std::uint64_t seed) {
  if (source.is_string()) return GameFromJson(ReadJsonFile(source.get<std::string>()));
  if (!source.is_object()) throw Error(ErrorCode::kParseError, "game source must be an object");
  if (source.contains("file")) return GameFromJson(ReadJsonFile(source["file"].get<std::string>()));
  if (source.contains("generator")) {
    return GenerateGame(source["generator"].get<std::string>(),
                        source.value("params", Json::object()), seed);
  }
  return GameFromJson(source);
}

const std::vector<std::string>& LearnerNames() {
  static const auto* names = new std::vector<std::string>{
      "hedge", "blum_mansour", "vertex_lifted", "per_context", "context_swap", "scripted"};
  return *names;
}

std::unique_ptr<Learner> MakeLearner(const ComponentSpec& spec, const LoadedGame& game,
                                     int horizon) {
  const std::string& name = spec.name;
  if (name == "hedge" || name == "blum_mansour") {
    const int n = RequireProduct(game, name, true).num_actions;
    if (name == "hedge") return std::make_unique<HedgeLearner>(n, horizon);
    return std::make_unique<BlumMansourLearner>(n, horizon);
  }
  if (name == "vertex_lifted") {
    return std::make_unique<VertexLiftedLearner>(game.polytope->polytope(), horizon);
  }
  if (name == "per_context" || name == "context_swap") {
    const ProductOfSimplices& s = RequireProduct(game, name, false);
    Eigen::VectorXd weights = ContextWeights(spec, game, s.num_contexts);
    if (name == "context_swap") {
      return std::make_unique<ContextSwapLearner>(std::move(weights), s.num_actions, horizon,
                                                  spec.params.value("tol", 1e-10),
                                                  spec.params.value("max_iters", 100'000));
    }
    const std::string inner = spec.params.value("inner", "blum_mansour");
    if (inner != "blum_mansour" && inner != "hedge") {
      throw Error(ErrorCode::kUnknownName, "unknown inner algorithm '" + inner + "'");
    }
    return std::make_unique<PerContextLearner>(
        std::move(weights), s.num_actions, horizon,
        inner == "hedge" ? InnerAlgorithm::kHedge : InnerAlgorithm::kBlumMansour);
  }
  if (name == "scripted") {
    return std::make_unique<ScriptedLearner>(RequireSequence(spec, game, "trajectory", horizon));
  }
  throw Error(ErrorCode::kUnknownName, "unknown learner '" + name + "'");
}

const std::vector<std::string>& OptimizerNames() {
  static const auto* names = new std::vector<std::string>{
      "static", "perturbed_stackelberg", "replay", "two_phase_price"};
  return *names;
}

std::unique_ptr<Optimizer> MakeOptimizer(const ComponentSpec& spec, const LoadedGame& game,
                                         int horizon) {
  const std::string& name = spec.name;
  if (name == "static") {
    if (spec.params.contains("weights")) {
      return std::make_unique<StaticOptimizer>(VectorFromJson(spec.params["weights"]));
    }
    return std::make_unique<StaticOptimizer>(StackelbergPolytope(*game.polytope).strategy);
  }
  if (name == "perturbed_stackelberg") {
    const double bound =
        spec.params.contains("regret_bound")
            ? spec.params["regret_bound"].get<double>()
            : DefaultRegretBound(horizon, game.polytope->polytope().num_vertices());
    const std::string choice = spec.params.value("response_choice", "largest_margin");
    if (choice != "largest_margin" && choice != "smallest_index") {
      throw Error(ErrorCode::kUnknownName, "unknown response_choice '" + choice + "'");
    }
    return std::make_unique<PerturbedStackelbergOptimizer>(
        *game.polytope, bound, horizon,
        choice == "largest_margin" ? ResponseChoice::kLargestMargin
                                   : ResponseChoice::kSmallestIndex);
  }
  if (name == "replay") {
    return std::make_unique<ReplayOptimizer>(RequireSequence(spec, game, "schedule", horizon));
  }
  if (name == "two_phase_price") {
    return std::make_unique<TwoPhasePriceOptimizer>(
        horizon, spec.params.value("num_actions", game.polytope->num_q_vertices()));
  }
  throw Error(ErrorCode::kUnknownName, "unknown optimizer '" + name + "'");
}

Transcript RunMatch(std::shared_ptr<const PolytopeGame> game, Learner& learner,
                    Optimizer& optimizer, int horizon) {
  if (horizon < 1) throw Error(ErrorCode::kBadHorizon, "need T >= 1");
  if (learner.dim() != game->dim()) {
    throw Error(ErrorCode::kShapeError, "learner dimension " + std::to_string(learner.dim()) +
                                            " does not match the game's " +
                                            std::to_string(game->dim()));
  }
  Transcript transcript(game);
  std::vector<Point> history;
  history.reserve(horizon);
  for (int t = 0; t < horizon; ++t) {
    Eigen::VectorXd weights = optimizer.Act(t, history);
    if (weights.size() != game->num_q_vertices()) {
      throw Error(ErrorCode::kShapeError, "optimizer weights do not match the Q vertices");
    }
    Point x = learner.Act();
    QVertex q = game->Mix(weights);
    Round round;
    round.optimizer_utility = q.s.dot(x);
    round.learner_utility = q.r.dot(x);
    learner.Observe(q.r);
    history.push_back(x);
    round.q_weights = std::move(weights);
    round.x = std::move(x);
    round.reward = std::move(q.r);
    transcript.Append(std::move(round));
  }
  transcript.Freeze();
  return transcript;
}

MatchResult RunMatch(const MatchConfig& config) {
  if (config.horizon < 1) throw Error(ErrorCode::kBadHorizon, "need T >= 1");
  LoadedGame game = LoadGameSource(config.game_source, config.seed);
  std::unique_ptr<Learner> learner = MakeLearner(config.learner, game, config.horizon);
  std::unique_ptr<Optimizer> optimizer = MakeOptimizer(config.optimizer, game, config.horizon);
  Transcript transcript = RunMatch(game.polytope, *learner, *optimizer, config.horizon);
  return {std::move(game), std::move(transcript)};
}

Json SummarizeMatch(const MatchResult& result) {
  const Transcript& transcript = result.transcript;
  const double rounds = transcript.num_rounds();
  return {{"horizon", transcript.num_rounds()},
          {"optimizer_total", transcript.total_optimizer_utility()},
          {"learner_total", transcript.total_learner_utility()},
          {"optimizer_average", transcript.total_optimizer_utility() / rounds},
          {"learner_average", transcript.total_learner_utility() / rounds},
          {"stackelberg_value", StackelbergPolytope(*result.game.polytope).value}};
}

std::vector<Point> PlayInstance(Learner& learner, const std::vector<Eigen::VectorXd>& rewards) {
  std::vector<Point> actions;
  actions.reserve(rewards.size());
  for (const auto& r : rewards) {
    actions.push_back(learner.Act());
    learner.Observe(r);
  }
  return actions;
}

Check MakeCheck(std::string name, double measured, std::string relation, double expected,
                double tolerance) {
  Check check{std::move(name), measured, std::move(relation), expected, tolerance, false};
  if (check.relation == "==") {
    check.passed = std::abs(measured - expected) <= tolerance;
  } else if (check.relation == "<=") {
    check.passed = measured <= expected + tolerance;
  } else if (check.relation == ">=") {
    check.passed = measured >= expected - tolerance;
  } else {
    throw Error(ErrorCode::kUnknownName, "unknown check relation '" + check.relation + "'");
  }
  return check;
}

bool CaseReport::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

Json CaseReport::ToJson() const {
  Json list = Json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name},
                    {"measured", c.measured},
                    {"relation", c.relation},
                    {"expected", c.expected},
                    {"tolerance", c.tolerance},
                    {"passed", c.passed}});
  }
  return {{"case", id}, {"anchor", anchor}, {"passed", passed()}, {"checks", list},
          {"details", details}};
}

const std::vector<std::string>& CaseIds() {
  static const auto* ids = new std::vector<std::string>{
      "B1-separation",   "B2-game",        "Lemma1-pipeline",    "Lemma42-pipeline",
      "C2-selling",      "Alg2-cap",       "C1-reduction",       "Thm43-cap",
      "Regret-equality", "C6-hardness-family", "Benchmark-chain", "Fixed-point-suite",
      "C2-selling-val",  "C6-edge-graph"};
  return *ids;
}

CaseReport Reproduce(const std::string& case_id) {
  const auto& table = CaseTable();
  const auto it = table.find(case_id);
  if (it == table.end()) throw Error(ErrorCode::kUnknownCase, "unknown case '" + case_id + "'");
  return it->second();
}

}  // namespace polyswap
