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

// Constructors for the named games and learning instances, plus seeded
// random families used by the property suites.

#ifndef POLYSWAP_GENERATORS_H_
#define POLYSWAP_GENERATORS_H_

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "polyswap/games.h"
#include "polyswap/geometry.h"

namespace polyswap {

// A polytope and the T reward vectors an adversary reveals on it.
struct LearningInstance {
  LearningInstance(Polytope polytope, std::vector<Eigen::VectorXd> rewards);

  Polytope polytope;
  std::vector<Eigen::VectorXd> rewards;

  int horizon() const { return static_cast<int>(rewards.size()); }
};

// Simple undirected graph on vertices 0..V-1.
class Graph {
 public:
  Graph(int num_vertices, const std::vector<std::pair<int, int>>& edges);

  // "V\nu v\nu v\n..." with vertices numbered from 0.
  static Graph Parse(const std::string& text);
  std::string ToEdgeList() const;

  int num_vertices() const { return static_cast<int>(adjacency_.size()); }
  // Sorted neighbor lists.
  const std::vector<int>& neighbors(int v) const { return adjacency_.at(v); }
  int max_degree() const;
  std::vector<std::pair<int, int>> edges() const;

 private:
  std::vector<std::vector<int>> adjacency_;
};

// The degree-at-most-3 graphs on 2 and 3 vertices, up to isomorphism: empty
// and single edge on 2; empty, one edge, path and triangle on 3.
std::vector<Graph> SmallGraphs(int num_vertices);
Graph PetersenGraph();

struct Lemma1Game {
  StandardGame game;
  // Mixed optimizer strategy per round; round t reproduces r^t exactly.
  std::vector<Eigen::VectorXd> schedule;
};

// Optimizer actions are the 2^N sign patterns s^i (SignPattern order) with
// u_L(i, j) = s^i_j and u_O(i, j) = (s^i_{swap(j)} - s^i_j) / 2.
Lemma1Game MakeLemma1Game(const LearningInstance& instance,
                          const std::vector<int>& swap);

struct LinearSwapGame {
  PolytopeGame game;
  std::vector<Eigen::VectorXd> schedule;
  double lambda = 0.0;
};

// Q vertex i is (y, (M - I)^T y / (lambda + 1)) for the i-th sign pattern y,
// lambda the largest absolute row sum of (M - I)^T.
LinearSwapGame MakeLemmaLinearGame(const LearningInstance& instance,
                                   const Eigen::MatrixXd& contraction);

// Scripted learner actions together with the instance they face.
struct SeparationInstance {
  LearningInstance instance;
  std::vector<Point> trajectory;
};

// Over Delta([2])^2: rewards v11, v12, v21, v11 and plays v11, v12, v21, v22,
// one quarter of the horizon each.
SeparationInstance MakeSeparationInstance(int horizon);

struct SeparationGame {
  PolytopeGame game;
  std::vector<Eigen::VectorXd> schedule;
  std::vector<Point> trajectory;
};

SeparationGame MakeSeparationGame(int horizon);

// Two prices i in {0, 1}, buy or not j in {0, 1}, two equally likely
// valuations c in {1, 2} (context index c - 1): u_L = (c/4 - i) j, u_O = i j.
BayesianGame MakeSellingGame();

enum class DominatingSetPayoffs {
  // u_O(i, 0bar, vbar) = -1(i = v): value (V - D) / (4 V^2).
  kNormalized,
  // u_O(i, 0bar, vbar) = 1/V - 1(i = v): the same game shifted by 1/(2V).
  kAsDisplayed,
};

// Optimizer actions 0..V-1 are graph vertices and V is the empty action;
// learner actions 0..3 pick nbr(v, j) and 4 is the opt-out; contexts 0..V-1
// are the vertex types and V..2V-1 their barred copies.
BayesianGame MakeDominatingSetGame(
    const Graph& graph,
    DominatingSetPayoffs payoffs = DominatingSetPayoffs::kNormalized);

// Rewards favor one action per block of `period` rounds, cycling through the
// actions; the other entries are uniform in [-1, 0].
LearningInstance MakeCyclingInstance(int num_actions, int horizon, int period,
                                     std::uint64_t seed);

// Uniform rewards in [-1, 1]^d on the given polytope.
LearningInstance MakeRandomInstance(const Polytope& polytope, int horizon,
                                    std::uint64_t seed);

StandardGame MakeRandomStandardGame(int num_optimizer_actions,
                                    int num_learner_actions,
                                    std::uint64_t seed);

BayesianGame MakeRandomBayesianGame(int num_optimizer_actions,
                                    int num_learner_actions, int num_contexts,
                                    std::uint64_t seed);

// The convex hull of num_vertices <= dim + 1 random points of [-1, 1]^dim,
// with Q vertices drawn uniformly from [-1, 1]^(2 dim).
PolytopeGame MakeRandomPolytopeGame(int dim, int num_vertices,
                                    int num_q_vertices, std::uint64_t seed);

}  // namespace polyswap

#endif  // POLYSWAP_GENERATORS_H_
