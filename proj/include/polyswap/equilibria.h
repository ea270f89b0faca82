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

// Benchmark values: Stackelberg (standard, polytope, Bayesian), the
// per-context value, the correlated value, and an exact dominating-set
// solver for the hardness family.

#ifndef POLYSWAP_EQUILIBRIA_H_
#define POLYSWAP_EQUILIBRIA_H_

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "polyswap/games.h"
#include "polyswap/generators.h"
#include "polyswap/geometry.h"

namespace polyswap {

struct StackelbergSolution {
  double value = 0.0;
  // Mixed weights over the Q vertices (or the M optimizer actions).
  Eigen::VectorXd strategy;
  // Index of the learner's response among the vertices of P.
  std::int64_t response_index = -1;
  Point response;
  // Bayesian games: the response as a map context -> action.
  std::vector<int> response_map;
  // Smallest gap by which the response beats any other vertex under the
  // certifying strategy; 0 unless requested.
  double margin = 0.0;
  // Every solved vertex whose region attains the value within 1e-9, in index
  // order, with its certifying strategy.
  std::vector<std::int64_t> optimal_responses;
  std::vector<Eigen::VectorXd> optimal_strategies;
};

struct StackelbergOptions {
  // Maximum number of per-vertex LPs.
  std::int64_t lp_budget = 100'000;
  // Also solve the margin LP at the optimal response.
  bool compute_margin = false;
};

// For each vertex v of P: max <s, v> over Q subject to <r, v> >= <r, v'> for
// every other vertex v'. Vertices whose best conceivable payoff falls short
// of the incumbent are skipped; ties keep the smaller vertex index.
StackelbergSolution StackelbergPolytope(const PolytopeGame& game,
                                        const StackelbergOptions& options = {});
StackelbergSolution StackelbergStandard(const StandardGame& game);
StackelbergSolution StackelbergBayesian(const BayesianGame& game,
                                        const StackelbergOptions& options = {});

struct MarginSolution {
  // Largest delta with <r, v> >= <r, v'> + delta for all v' != v; +infinity
  // when P has a single vertex.
  double margin = 0.0;
  Eigen::VectorXd strategy;
};

// The strict-best-response margin of vertex `vertex_index` over Q.
MarginSolution StrictResponseMargin(const PolytopeGame& game,
                                    std::int64_t vertex_index);

// sum_c p_c Val(G_c).
double PerContextValue(const BayesianGame& game);

struct CorrelatedSolution {
  double value = 0.0;
  // distributions[c](i, j) = p_ij(c).
  std::vector<Eigen::MatrixXd> distributions;
};

// Optimizer-best one-sided correlated equilibrium: no profitable type
// misreport and no profitable pairwise action swap for the learner.
CorrelatedSolution CorrelatedValue(const BayesianGame& game);

// Largest violation (0 if none) of the misreport and pairwise swap
// constraints by the per-context distributions.
double CeViolation(const BayesianGame& game,
                   const std::vector<Eigen::MatrixXd>& distributions);

// F_c(i, j) = (1/T) sum_t alpha^t_i beta^t(c)_j for optimizer weights over
// [M] and learner points in simplex-product layout.
std::vector<Eigen::MatrixXd> EmpiricalProfile(
    const BayesianGame& game, const std::vector<Eigen::VectorXd>& optimizer_weights,
    const std::vector<Point>& learner_points);

// Exact minimum dominating set size for V <= 20.
int MinDominatingSet(const Graph& graph);

}  // namespace polyswap

#endif  // POLYSWAP_EQUILIBRIA_H_
