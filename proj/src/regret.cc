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

#include "polyswap/regret.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "polyswap/error.h"
#include "polyswap/lp.h"

namespace polyswap {
namespace {

void CheckShapes(const RewardSequence& rewards, const ActionSequence& actions,
                 Eigen::Index dim) {
  if (rewards.size() != actions.size()) {
    throw Error(ErrorCode::kShapeError, "rewards and actions differ in length");
  }
  for (size_t t = 0; t < rewards.size(); ++t) {
    if (rewards[t].size() != dim || actions[t].size() != dim) {
      throw Error(ErrorCode::kShapeError,
                  "round " + std::to_string(t) + " has the wrong dimension");
    }
  }
}

Eigen::Index DimOf(const RewardSequence& rewards) {
  if (rewards.empty()) throw Error(ErrorCode::kShapeError, "empty transcript");
  return rewards[0].size();
}

double Baseline(const RewardSequence& rewards, const ActionSequence& actions) {
  double total = 0.0;
  for (size_t t = 0; t < rewards.size(); ++t) total += rewards[t].dot(actions[t]);
  return total;
}

void Finish(RegretReport* report) {
  report->numerically_zero = std::abs(report->value) < kNumericalZero;
}

// <r^t, v> for every round and vertex.
Eigen::MatrixXd VertexPayoffs(const Polytope& polytope,
                              const RewardSequence& rewards) {
  const auto& vertices = polytope.vertices();
  Eigen::MatrixXd a(rewards.size(), vertices.size());
  for (size_t t = 0; t < rewards.size(); ++t) {
    for (size_t v = 0; v < vertices.size(); ++v) a(t, v) = rewards[t].dot(vertices[v]);
  }
  return a;
}

// G(v, v') = sum_t rho^t_v <r^t, v'>.
Eigen::MatrixXd GainMatrix(const Eigen::MatrixXd& payoffs,
                           const std::vector<Eigen::VectorXd>& rho) {
  const Eigen::Index nv = payoffs.cols();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(nv, nv);
  for (size_t t = 0; t < rho.size(); ++t) {
    g.noalias() += rho[t] * payoffs.row(t);
  }
  return g;
}

double RowMaxSum(const Eigen::MatrixXd& g, std::vector<int>* argmax) {
  double total = 0.0;
  if (argmax) argmax->assign(g.rows(), 0);
  for (Eigen::Index v = 0; v < g.rows(); ++v) {
    Eigen::Index best = 0;
    for (Eigen::Index w = 1; w < g.cols(); ++w) {
      if (g(v, w) > g(v, best)) best = w;
    }
    total += g(v, best);
    if (argmax) (*argmax)[v] = static_cast<int>(best);
  }
  return total;
}

// Decompositions of one learner point, with the LP prebuilt.
class DecompositionOracle {
 public:
  DecompositionOracle(const Polytope& polytope, const Point& x)
      : program_(static_cast<int>(polytope.num_vertices())) {
    const auto& vertices = polytope.vertices();
    for (size_t v = 0; v < vertices.size(); ++v) {
      if ((vertices[v] - x).cwiseAbs().maxCoeff() <= 1e-12) forced_ = static_cast<int>(v);
    }
    for (int k = 0; k < polytope.dim(); ++k) {
      std::vector<std::pair<int, double>> terms;
      for (size_t v = 0; v < vertices.size(); ++v) {
        terms.emplace_back(static_cast<int>(v), vertices[v](k));
      }
      program_.AddSparseRow(terms, lp::Relation::kEqual, x(k));
    }
    std::vector<double> ones(vertices.size(), 1.0);
    program_.AddRow(ones, lp::Relation::kEqual, 1.0);
    program_.set_maximize(false);
  }

  // argmin of cost . rho over the decompositions of x.
  Eigen::VectorXd Minimize(const Eigen::VectorXd& cost) {
    const int n = program_.num_vars();
    Eigen::VectorXd rho = Eigen::VectorXd::Zero(n);
    if (forced_ >= 0) {
      rho(forced_) = 1.0;
      return rho;
    }
    program_.set_objective(std::span<const double>(cost.data(), n));
    const auto solution = lp::Solve(program_);
    if (!solution.optimal()) {
      throw Error(ErrorCode::kLpInfeasible, "learner point has no vertex decomposition");
    }
    for (int v = 0; v < n; ++v) rho(v) = std::max(0.0, solution.values[v]);
    return rho / rho.sum();
  }

 private:
  lp::LinearProgram program_;
  int forced_ = -1;
};

RegretReport PolytopeSwapDirect(const Polytope& polytope,
                                const RewardSequence& rewards,
                                const ActionSequence& actions,
                                const Eigen::MatrixXd& payoffs) {
  const auto& vertices = polytope.vertices();
  const int nv = static_cast<int>(vertices.size());
  const int rounds = static_cast<int>(rewards.size());
  const int dim = polytope.dim();
  const int z0 = rounds * nv;
  lp::LinearProgram program(z0 + nv);
  program.set_maximize(false);
  for (int v = 0; v < nv; ++v) {
    program.set_objective(z0 + v, 1.0);
    program.set_free(z0 + v);
  }
  for (int t = 0; t < rounds; ++t) {
    for (int k = 0; k < dim; ++k) {
      std::vector<std::pair<int, double>> terms;
      for (int v = 0; v < nv; ++v) terms.emplace_back(t * nv + v, vertices[v](k));
      program.AddSparseRow(terms, lp::Relation::kEqual, actions[t](k));
    }
    std::vector<std::pair<int, double>> terms;
    for (int v = 0; v < nv; ++v) terms.emplace_back(t * nv + v, 1.0);
    program.AddSparseRow(terms, lp::Relation::kEqual, 1.0);
  }
  for (int v = 0; v < nv; ++v) {
    for (int w = 0; w < nv; ++w) {
      std::vector<std::pair<int, double>> terms{{z0 + v, 1.0}};
      for (int t = 0; t < rounds; ++t) terms.emplace_back(t * nv + v, -payoffs(t, w));
      program.AddSparseRow(terms, lp::Relation::kGreaterEqual, 0.0);
    }
  }
  const auto solution = lp::Solve(program);
  if (!solution.optimal()) {
    throw Error(ErrorCode::kLpInfeasible,
                std::string("polytope swap LP: ") + lp::StatusName(solution.status));
  }
  RegretReport report;
  report.notion = RegretNotion::kPolytopeSwap;
  for (int t = 0; t < rounds; ++t) {
    Eigen::VectorXd rho(nv);
    for (int v = 0; v < nv; ++v) rho(v) = std::max(0.0, solution.values[t * nv + v]);
    report.decompositions.push_back(rho / rho.sum());
  }
  const double baseline = Baseline(rewards, actions);
  report.value =
      RowMaxSum(GainMatrix(payoffs, report.decompositions), &report.swap) - baseline;
  report.lower_bound = solution.objective - baseline;
  return report;
}

RegretReport PolytopeSwapCuttingPlane(const Polytope& polytope,
                                      const RewardSequence& rewards,
                                      const ActionSequence& actions,
                                      const Eigen::MatrixXd& payoffs,
                                      const PolytopeSwapOptions& options) {
  const int nv = static_cast<int>(polytope.num_vertices());
  const int rounds = static_cast<int>(rewards.size());
  std::vector<DecompositionOracle> oracles;
  oracles.reserve(rounds);
  for (int t = 0; t < rounds; ++t) oracles.emplace_back(polytope, actions[t]);

  // h(lambda) = sum_t min_rho sum_v rho_v sum_v' lambda(v, v') a^t_v'; its
  // maximum over row-stochastic lambda equals the epigraph LP optimum.
  struct Cut {
    Eigen::MatrixXd gain;
    std::vector<Eigen::VectorXd> rho;
  };
  std::vector<Cut> cuts;
  auto evaluate = [&](const Eigen::MatrixXd& lambda) {
    Cut cut;
    cut.rho.reserve(rounds);
    for (int t = 0; t < rounds; ++t) {
      const Eigen::VectorXd cost = lambda * payoffs.row(t).transpose();
      cut.rho.push_back(oracles[t].Minimize(cost));
    }
    cut.gain = GainMatrix(payoffs, cut.rho);
    const double value = (cut.gain.array() * lambda.array()).sum();
    cuts.push_back(std::move(cut));
    return value;
  };

  const int nl = nv * nv;
  Eigen::MatrixXd center = Eigen::MatrixXd::Identity(nv, nv);
  double lower = evaluate(center);
  double upper = std::numeric_limits<double>::infinity();
  constexpr double kInOut = 0.5;

  while (static_cast<int>(cuts.size()) < options.max_cuts) {
    lp::LinearProgram master(nl + 1);
    master.set_free(nl);
    master.set_objective(nl, 1.0);
    for (int v = 0; v < nv; ++v) {
      std::vector<std::pair<int, double>> terms;
      for (int w = 0; w < nv; ++w) terms.emplace_back(v * nv + w, 1.0);
      master.AddSparseRow(terms, lp::Relation::kEqual, 1.0);
    }
    for (const auto& cut : cuts) {
      std::vector<std::pair<int, double>> terms{{nl, 1.0}};
      for (int v = 0; v < nv; ++v) {
        for (int w = 0; w < nv; ++w) terms.emplace_back(v * nv + w, -cut.gain(v, w));
      }
      master.AddSparseRow(terms, lp::Relation::kLessEqual, 0.0);
    }
    const auto solution = lp::Solve(master);
    if (!solution.optimal()) {
      throw Error(ErrorCode::kLpInfeasible, "cutting-plane master failed");
    }
    upper = solution.objective;
    if (upper - lower <= options.gap_tolerance * std::max(1.0, std::abs(upper))) break;

    Eigen::MatrixXd trial(nv, nv);
    for (int v = 0; v < nv; ++v) {
      for (int w = 0; w < nv; ++w) trial(v, w) = solution.values[v * nv + w];
    }
    const Eigen::MatrixXd query = kInOut * center + (1.0 - kInOut) * trial;
    const double at_query = evaluate(query);
    if (at_query > lower) {
      lower = at_query;
      center = query;
    }
    // Mispricing: the stabilized cut does not separate the master point.
    const double cut_at_trial = (cuts.back().gain.array() * trial.array()).sum();
    if (cut_at_trial >= upper - options.gap_tolerance * std::max(1.0, std::abs(upper))) {
      const double at_trial = evaluate(trial);
      if (at_trial > lower) {
        lower = at_trial;
        center = trial;
      }
    }
  }

  // Recover decompositions: min sum_v u_v s.t. u_v >= sum_k w_k G_k(v, v').
  const int nk = static_cast<int>(cuts.size());
  lp::LinearProgram recovery(nk + nv);
  recovery.set_maximize(false);
  for (int v = 0; v < nv; ++v) {
    recovery.set_free(nk + v);
    recovery.set_objective(nk + v, 1.0);
  }
  for (int v = 0; v < nv; ++v) {
    for (int w = 0; w < nv; ++w) {
      std::vector<std::pair<int, double>> terms{{nk + v, 1.0}};
      for (int k = 0; k < nk; ++k) terms.emplace_back(k, -cuts[k].gain(v, w));
      recovery.AddSparseRow(terms, lp::Relation::kGreaterEqual, 0.0);
    }
  }
  std::vector<double> ones(nk + nv, 0.0);
  for (int k = 0; k < nk; ++k) ones[k] = 1.0;
  recovery.AddRow(ones, lp::Relation::kEqual, 1.0);
  const auto mix = lp::Solve(recovery);
  if (!mix.optimal()) {
    throw Error(ErrorCode::kLpInfeasible,
                std::string("decomposition recovery failed: ") + lp::StatusName(mix.status));
  }

  RegretReport report;
  report.notion = RegretNotion::kPolytopeSwap;
  report.decompositions.assign(rounds, Eigen::VectorXd::Zero(nv));
  double mass = 0.0;
  for (int k = 0; k < nk; ++k) {
    const double w = std::max(0.0, mix.values[k]);
    if (w == 0.0) continue;
    mass += w;
    for (int t = 0; t < rounds; ++t) report.decompositions[t] += w * cuts[k].rho[t];
  }
  for (auto& rho : report.decompositions) rho /= mass;
  const double baseline = Baseline(rewards, actions);
  report.value =
      RowMaxSum(GainMatrix(payoffs, report.decompositions), &report.swap) - baseline;
  report.lower_bound = lower - baseline;
  return report;
}

}  // namespace

std::string_view RegretNotionName(RegretNotion notion) {
  switch (notion) {
    case RegretNotion::kExternal: return "external";
    case RegretNotion::kSwap: return "swap";
    case RegretNotion::kContextualExternal: return "contextual_external";
    case RegretNotion::kLinearSwap: return "linear_swap";
    case RegretNotion::kPolytopeSwap: return "polytope_swap";
  }
  return "unknown";
}

RegretNotion ParseRegretNotion(std::string_view name) {
  for (auto notion : {RegretNotion::kExternal, RegretNotion::kSwap,
                      RegretNotion::kContextualExternal, RegretNotion::kLinearSwap,
                      RegretNotion::kPolytopeSwap}) {
    if (RegretNotionName(notion) == name) return notion;
  }
  throw Error(ErrorCode::kUnknownName, "unknown regret notion '" + std::string(name) + "'");
}

RegretReport ExternalRegret(const RewardSequence& rewards,
                            const ActionSequence& actions) {
  const Eigen::Index n = DimOf(rewards);
  CheckShapes(rewards, actions, n);
  Eigen::VectorXd cumulative = Eigen::VectorXd::Zero(n);
  for (const auto& r : rewards) cumulative += r;
  RegretReport report;
  report.notion = RegretNotion::kExternal;
  Eigen::Index best = 0;
  cumulative.maxCoeff(&best);
  report.best_action = static_cast<int>(best);
  report.value = cumulative(best) - Baseline(rewards, actions);
  Finish(&report);
  return report;
}

RegretReport SwapRegret(const RewardSequence& rewards,
                        const ActionSequence& actions) {
  const Eigen::Index n = DimOf(rewards);
  CheckShapes(rewards, actions, n);
  // gain(j, j') = sum_t beta^t_j (r^t_j' - r^t_j).
  Eigen::MatrixXd gain = Eigen::MatrixXd::Zero(n, n);
  for (size_t t = 0; t < rewards.size(); ++t) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = actions[t](j);
      if (w == 0.0) continue;
      gain.row(j) += w * (rewards[t].array() - rewards[t](j)).matrix().transpose();
    }
  }
  RegretReport report;
  report.notion = RegretNotion::kSwap;
  report.value = RowMaxSum(gain, &report.swap);
  Finish(&report);
  return report;
}

RegretReport ContextualExternalRegret(const Eigen::VectorXd& context_weights,
                                      int num_actions,
                                      const RewardSequence& rewards,
                                      const ActionSequence& actions) {
  const Eigen::Index contexts = context_weights.size();
  if (num_actions <= 0 || contexts <= 0) {
    throw Error(ErrorCode::kShapeError, "need N, C >= 1");
  }
  CheckShapes(rewards, actions, contexts * num_actions);
  Eigen::VectorXd cumulative = Eigen::VectorXd::Zero(contexts * num_actions);
  double earned = 0.0;
  for (size_t t = 0; t < rewards.size(); ++t) {
    cumulative += rewards[t];
    for (Eigen::Index c = 0; c < contexts; ++c) {
      earned += context_weights(c) *
                rewards[t].segment(c * num_actions, num_actions)
                    .dot(actions[t].segment(c * num_actions, num_actions));
    }
  }
  RegretReport report;
  report.notion = RegretNotion::kContextualExternal;
  double best_total = 0.0;
  for (Eigen::Index c = 0; c < contexts; ++c) {
    Eigen::Index best = 0;
    cumulative.segment(c * num_actions, num_actions).maxCoeff(&best);
    report.response_map.push_back(static_cast<int>(best));
    best_total += context_weights(c) * cumulative(c * num_actions + best);
  }
  report.value = best_total - earned;
  Finish(&report);
  return report;
}

RegretReport LinearSwapRegret(const Polytope& polytope,
                              const RewardSequence& rewards,
                              const ActionSequence& actions) {
  const int d = polytope.dim();
  CheckShapes(rewards, actions, d);
  for (size_t t = 0; t < actions.size(); ++t) {
    if (!polytope.Contains(actions[t])) {
      throw Error(ErrorCode::kPointNotInPolytope,
                  "learner point at round " + std::to_string(t) + " is outside P");
    }
  }
  // Objective <M, sum_t r^t (x^t)^T>.
  Eigen::MatrixXd outer = Eigen::MatrixXd::Zero(d, d);
  for (size_t t = 0; t < rewards.size(); ++t) {
    outer.noalias() += rewards[t] * actions[t].transpose();
  }
  lp::LinearProgram program(d * d);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      program.set_free(k * d + l);
      program.set_objective(k * d + l, outer(k, l));
    }
  }
  ContractionConstraints(polytope).AppendTo(&program, 0);
  const Eigen::MatrixXd complement = VertexSpanComplement(polytope);
  for (Eigen::Index c = 0; c < complement.cols(); ++c) {
    for (int k = 0; k < d; ++k) {
      std::vector<std::pair<int, double>> terms;
      for (int l = 0; l < d; ++l) terms.emplace_back(k * d + l, complement(l, c));
      program.AddSparseRow(terms, lp::Relation::kEqual, 0.0);
    }
  }
  const auto solution = lp::Solve(program);
  if (!solution.optimal()) {
    throw Error(ErrorCode::kLpInfeasible,
                std::string("linear swap LP: ") + lp::StatusName(solution.status));
  }
  RegretReport report;
  report.notion = RegretNotion::kLinearSwap;
  report.contraction.resize(d, d);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) report.contraction(k, l) = solution.values[k * d + l];
  }
  report.value = EvaluateWitness(report, rewards, actions, &polytope);
  Finish(&report);
  return report;
}

RegretReport PolytopeSwapRegret(const Polytope& polytope,
                                const RewardSequence& rewards,
                                const ActionSequence& actions,
                                const PolytopeSwapOptions& options) {
  const int d = polytope.dim();
  CheckShapes(rewards, actions, d);
  for (size_t t = 0; t < actions.size(); ++t) {
    if (!polytope.Contains(actions[t])) {
      throw Error(ErrorCode::kLpInfeasible,
                  "learner point at round " + std::to_string(t) + " is outside P");
    }
  }
  const Eigen::MatrixXd payoffs = VertexPayoffs(polytope, rewards);
  const long rows = static_cast<long>(rewards.size()) * (d + 1) +
                    static_cast<long>(polytope.num_vertices()) * polytope.num_vertices();
  bool direct = options.method == PolytopeSwapOptions::Method::kDirect;
  if (options.method == PolytopeSwapOptions::Method::kAuto) {
    direct = rows <= options.direct_row_limit;
  }
  RegretReport report =
      direct ? PolytopeSwapDirect(polytope, rewards, actions, payoffs)
             : PolytopeSwapCuttingPlane(polytope, rewards, actions, payoffs, options);
  Finish(&report);
  return report;
}

double VertexSwapValue(const Polytope& polytope, const RewardSequence& rewards,
                       const std::vector<Eigen::VectorXd>& decompositions,
                       std::vector<int>* swap) {
  return RowMaxSum(GainMatrix(VertexPayoffs(polytope, rewards), decompositions),
                   swap);
}

double EvaluateWitness(const RegretReport& report,
                       const RewardSequence& rewards,
                       const ActionSequence& actions, const Polytope* polytope,
                       const Eigen::VectorXd* context_weights) {
  switch (report.notion) {
    case RegretNotion::kExternal: {
      double total = 0.0;
      for (const auto& r : rewards) total += r(report.best_action);
      return total - Baseline(rewards, actions);
    }
    case RegretNotion::kSwap: {
      double total = 0.0;
      for (size_t t = 0; t < rewards.size(); ++t) {
        for (Eigen::Index j = 0; j < rewards[t].size(); ++j) {
          total += actions[t](j) * (rewards[t](report.swap[j]) - rewards[t](j));
        }
      }
      return total;
    }
    case RegretNotion::kContextualExternal: {
      if (context_weights == nullptr) {
        throw Error(ErrorCode::kShapeError, "contextual witness needs context weights");
      }
      const Eigen::Index contexts = context_weights->size();
      const Eigen::Index n = rewards.at(0).size() / contexts;
      double total = 0.0;
      for (size_t t = 0; t < rewards.size(); ++t) {
        for (Eigen::Index c = 0; c < contexts; ++c) {
          const auto r = rewards[t].segment(c * n, n);
          total += (*context_weights)(c) *
                   (r(report.response_map[c]) - r.dot(actions[t].segment(c * n, n)));
        }
      }
      return total;
    }
    case RegretNotion::kLinearSwap: {
      double total = 0.0;
      for (size_t t = 0; t < rewards.size(); ++t) {
        total += rewards[t].dot(report.contraction * actions[t] - actions[t]);
      }
      return total;
    }
    case RegretNotion::kPolytopeSwap: {
      if (polytope == nullptr) {
        throw Error(ErrorCode::kShapeError, "polytope witness needs the polytope");
      }
      const auto& vertices = polytope->vertices();
      double total = 0.0;
      for (size_t t = 0; t < rewards.size(); ++t) {
        const auto& rho = report.decompositions[t];
        for (size_t v = 0; v < vertices.size(); ++v) {
          if (rho(v) == 0.0) continue;
          total += rho(v) * rewards[t].dot(vertices[report.swap[v]]);
        }
      }
      return total - Baseline(rewards, actions);
    }
  }
  return 0.0;
}

}  // namespace polyswap
