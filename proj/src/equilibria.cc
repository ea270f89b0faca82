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

#include "polyswap/equilibria.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "polyswap/error.h"
#include "polyswap/lp.h"

namespace polyswap {
namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kOptimalTolerance = 1e-9;

// Rows sum_k w_k coeff_k >= 0 that make vertex v a weak best response. For
// simplex products one row per (context, alternative action) suffices.
class ResponseRegion {
 public:
  explicit ResponseRegion(const PolytopeGame& game) : game_(game) {
    const auto& q = game.q_vertices();
    const int k = static_cast<int>(q.size());
    rewards_.resize(game.dim(), k);
    payoffs_.resize(game.dim(), k);
    for (int i = 0; i < k; ++i) {
      rewards_.col(i) = q[i].r;
      payoffs_.col(i) = q[i].s;
    }
  }

  Point Vertex(std::int64_t index) const {
    const Polytope& p = game_.polytope();
    return p.has_explicit_vertices() ? p.vertices()[index] : p.vertex(index);
  }

  // Per Q vertex, <s_k, v>.
  Eigen::VectorXd Payoffs(const Point& v) const { return payoffs_.transpose() * v; }

  std::vector<Eigen::VectorXd> Rows(std::int64_t index, const Point& v) const {
    std::vector<Eigen::VectorXd> rows;
    const Polytope& p = game_.polytope();
    if (p.structure().has_value()) {
      const ProductOfSimplices& s = *p.structure();
      const std::vector<int> choices = ProductVertexChoices(s, index);
      for (int c = 0; c < s.num_contexts; ++c) {
        const int chosen = s.coordinate(c, choices[c]);
        for (int j = 0; j < s.num_actions; ++j) {
          if (j == choices[c]) continue;
          rows.push_back((rewards_.row(chosen) - rewards_.row(s.coordinate(c, j))).transpose());
        }
      }
      return rows;
    }
    const Eigen::VectorXd here = rewards_.transpose() * v;
    for (std::int64_t other = 0; other < p.num_vertices(); ++other) {
      if (other == index) continue;
      rows.push_back(here - rewards_.transpose() * Vertex(other));
    }
    return rows;
  }

 private:
  const PolytopeGame& game_;
  Eigen::MatrixXd rewards_;  // d x K
  Eigen::MatrixXd payoffs_;  // d x K
};

Eigen::VectorXd CleanWeights(const std::vector<double>& values, int count) {
  Eigen::VectorXd w(count);
  for (int i = 0; i < count; ++i) w(i) = std::max(0.0, values[i]);
  return w / w.sum();
}

// Sum of u_L(i, j, c) F(i, j) for one context's utility and a distribution.
double Expected(const Eigen::MatrixXd& utility, const Eigen::MatrixXd& f) {
  return (utility.array() * f.array()).sum();
}

}  // namespace

StackelbergSolution StackelbergPolytope(const PolytopeGame& game,
                                        const StackelbergOptions& options) {
  const Polytope& polytope = game.polytope();
  if (polytope.num_vertices() > options.lp_budget) {
    throw Error(ErrorCode::kVertexBudgetExceeded,
                "Stackelberg enumeration needs " + std::to_string(polytope.num_vertices()) +
                    " LPs, over the budget");
  }
  const int k = game.num_q_vertices();
  const ResponseRegion region(game);
  StackelbergSolution best;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::int64_t, Eigen::VectorXd>> solved;
  std::vector<double> solved_values;
  for (std::int64_t index = 0; index < polytope.num_vertices(); ++index) {
    const Point v = region.Vertex(index);
    const Eigen::VectorXd payoffs = region.Payoffs(v);
    if (best.response_index >= 0 &&
        payoffs.maxCoeff() < best.value - kOptimalTolerance) {
      continue;
    }

    lp::LinearProgram program(k);
    program.set_objective(std::span<const double>(payoffs.data(), k));
    for (const auto& row : region.Rows(index, v)) {
      program.AddRow(std::span<const double>(row.data(), k), lp::Relation::kGreaterEqual, 0.0);
    }
    program.AddRow(std::vector<double>(k, 1.0), lp::Relation::kEqual, 1.0);
    const auto solution = lp::Solve(program);
    if (!solution.optimal()) continue;
    const Eigen::VectorXd w = CleanWeights(solution.values, k);
    const double value = w.dot(payoffs);
    solved.emplace_back(index, w);
    solved_values.push_back(value);
    if (best.response_index < 0 || value > best.value + kTieTolerance) {
      best.value = value;
      best.strategy = w;
      best.response_index = index;
      best.response = v;
    }
  }
  if (best.response_index < 0) {
    throw Error(ErrorCode::kLpInfeasible, "no vertex is a best response to any strategy");
  }
  for (size_t i = 0; i < solved.size(); ++i) {
    if (solved_values[i] >= best.value - kOptimalTolerance) {
      best.optimal_responses.push_back(solved[i].first);
      best.optimal_strategies.push_back(std::move(solved[i].second));
    }
  }
  if (polytope.structure().has_value()) {
    best.response_map = ProductVertexChoices(*polytope.structure(), best.response_index);
  }
  if (options.compute_margin) {
    best.margin = StrictResponseMargin(game, best.response_index).margin;
  }
  return best;
}

StackelbergSolution StackelbergStandard(const StandardGame& game) {
  return StackelbergPolytope(StandardToPolytope(game));
}

StackelbergSolution StackelbergBayesian(const BayesianGame& game,
                                        const StackelbergOptions& options) {
  return StackelbergPolytope(BayesianToPolytope(game, options.lp_budget), options);
}

MarginSolution StrictResponseMargin(const PolytopeGame& game,
                                    std::int64_t vertex_index) {
  const int k = game.num_q_vertices();
  const ResponseRegion region(game);
  const Point v = region.Vertex(vertex_index);
  const auto rows = region.Rows(vertex_index, v);
  MarginSolution out;
  if (rows.empty()) {
    out.margin = std::numeric_limits<double>::infinity();
    out.strategy = Eigen::VectorXd::Unit(k, 0);
    return out;
  }
  lp::LinearProgram program(k + 1);
  program.set_free(k);
  program.set_objective(k, 1.0);
  for (const auto& row : rows) {
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < k; ++i) terms.emplace_back(i, row(i));
    terms.emplace_back(k, -1.0);
    program.AddSparseRow(terms, lp::Relation::kGreaterEqual, 0.0);
  }
  std::vector<double> simplex(k + 1, 1.0);
  simplex[k] = 0.0;
  program.AddRow(simplex, lp::Relation::kEqual, 1.0);
  const auto solution = lp::Solve(program);
  if (!solution.optimal()) {
    throw Error(ErrorCode::kLpInfeasible, "margin LP failed");
  }
  out.strategy = CleanWeights(solution.values, k);
  out.margin = std::numeric_limits<double>::infinity();
  for (const auto& row : rows) out.margin = std::min(out.margin, row.dot(out.strategy));
  return out;
}

double PerContextValue(const BayesianGame& game) {
  double total = 0.0;
  for (int c = 0; c < game.num_contexts(); ++c) {
    total += game.context_probs()(c) * StackelbergStandard(game.ContextGame(c)).value;
  }
  return total;
}

CorrelatedSolution CorrelatedValue(const BayesianGame& game) {
  const int m = game.num_optimizer_actions();
  const int n = game.num_learner_actions();
  const int contexts = game.num_contexts();
  const int block = m * n;
  auto var = [&](int c, int i, int j) { return c * block + i * n + j; };

  lp::LinearProgram program(contexts * block);
  for (int c = 0; c < contexts; ++c) {
    std::vector<std::pair<int, double>> norm;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        program.set_objective(var(c, i, j), game.context_probs()(c) * game.u_o(i, j, c));
        norm.emplace_back(var(c, i, j), 1.0);
      }
    }
    program.AddSparseRow(norm, lp::Relation::kEqual, 1.0);
  }
  for (int c = 0; c < contexts; ++c) {
    for (int other = 0; other < contexts; ++other) {
      if (other == c) continue;
      std::vector<std::pair<int, double>> terms;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
          terms.emplace_back(var(c, i, j), game.u_l(i, j, c));
          terms.emplace_back(var(other, i, j), -game.u_l(i, j, c));
        }
      }
      program.AddSparseRow(terms, lp::Relation::kGreaterEqual, 0.0);
    }
    for (int j = 0; j < n; ++j) {
      for (int alt = 0; alt < n; ++alt) {
        if (alt == j) continue;
        std::vector<std::pair<int, double>> terms;
        for (int i = 0; i < m; ++i) {
          terms.emplace_back(var(c, i, j), game.u_l(i, j, c) - game.u_l(i, alt, c));
        }
        program.AddSparseRow(terms, lp::Relation::kGreaterEqual, 0.0);
      }
    }
  }
  const auto solution = lp::Solve(program);
  if (!solution.optimal()) {
    throw Error(ErrorCode::kLpInfeasible, "correlated value LP failed");
  }
  CorrelatedSolution out;
  for (int c = 0; c < contexts; ++c) {
    Eigen::MatrixXd f(m, n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) f(i, j) = std::max(0.0, solution.values[var(c, i, j)]);
    }
    f /= f.sum();
    out.value += game.context_probs()(c) * Expected(game.optimizer_utility(c), f);
    out.distributions.push_back(std::move(f));
  }
  return out;
}

double CeViolation(const BayesianGame& game,
                   const std::vector<Eigen::MatrixXd>& distributions) {
  const int contexts = game.num_contexts();
  if (static_cast<int>(distributions.size()) != contexts) {
    throw Error(ErrorCode::kShapeError, "need one distribution per context");
  }
  for (const auto& f : distributions) {
    if (f.rows() != game.num_optimizer_actions() || f.cols() != game.num_learner_actions()) {
      throw Error(ErrorCode::kShapeError, "distribution must be M x N");
    }
  }
  double worst = 0.0;
  for (int c = 0; c < contexts; ++c) {
    const Eigen::MatrixXd& u = game.learner_utility(c);
    const double truthful = Expected(u, distributions[c]);
    for (int other = 0; other < contexts; ++other) {
      if (other != c) worst = std::max(worst, Expected(u, distributions[other]) - truthful);
    }
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      for (Eigen::Index alt = 0; alt < u.cols(); ++alt) {
        if (alt == j) continue;
        const double gain = distributions[c].col(j).dot(u.col(alt) - u.col(j));
        worst = std::max(worst, gain);
      }
    }
  }
  return worst;
}

std::vector<Eigen::MatrixXd> EmpiricalProfile(
    const BayesianGame& game, const std::vector<Eigen::VectorXd>& optimizer_weights,
    const std::vector<Point>& learner_points) {
  const int m = game.num_optimizer_actions();
  const int n = game.num_learner_actions();
  const int contexts = game.num_contexts();
  if (optimizer_weights.size() != learner_points.size() || optimizer_weights.empty()) {
    throw Error(ErrorCode::kShapeError, "profile needs matching nonempty sequences");
  }
  std::vector<Eigen::MatrixXd> profile(contexts, Eigen::MatrixXd::Zero(m, n));
  for (size_t t = 0; t < optimizer_weights.size(); ++t) {
    if (optimizer_weights[t].size() != m || learner_points[t].size() != n * contexts) {
      throw Error(ErrorCode::kShapeError, "round " + std::to_string(t) + " has the wrong shape");
    }
    for (int c = 0; c < contexts; ++c) {
      profile[c].noalias() +=
          optimizer_weights[t] * learner_points[t].segment(c * n, n).transpose();
    }
  }
  for (auto& f : profile) f /= static_cast<double>(optimizer_weights.size());
  return profile;
}

int MinDominatingSet(const Graph& graph) {
  const int v_count = graph.num_vertices();
  if (v_count > 20) throw Error(ErrorCode::kTooLargeGraph, "dominating set search needs V <= 20");
  std::vector<std::uint32_t> closed(v_count);
  for (int v = 0; v < v_count; ++v) {
    closed[v] = 1u << v;
    for (int w : graph.neighbors(v)) closed[v] |= 1u << w;
  }
  const std::uint32_t all = (v_count == 32) ? ~0u : ((1u << v_count) - 1);
  const int reach = graph.max_degree() + 1;
  for (int size = 1; size <= v_count; ++size) {
    if (size * reach < v_count) continue;
    // Lexicographic walk over size-subsets as index vectors.
    std::vector<int> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      std::uint32_t covered = 0;
      for (int v : pick) covered |= closed[v];
      if (covered == all) return size;
      int pos = size - 1;
      while (pos >= 0 && pick[pos] == v_count - size + pos) --pos;
      if (pos < 0) break;
      ++pick[pos];
      for (int i = pos + 1; i < size; ++i) pick[i] = pick[i - 1] + 1;
    }
  }
  return v_count;
}

}  // namespace polyswap
