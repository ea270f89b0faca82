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

#ifndef POLYSWAP_GAMES_H_
#define POLYSWAP_GAMES_H_

#include <Eigen/Dense>

#include <memory>
#include <vector>

#include "polyswap/geometry.h"

namespace polyswap {

struct Utilities {
  double optimizer = 0.0;
  double learner = 0.0;
};

// Bimatrix game; rows are optimizer actions, columns learner actions.
class StandardGame {
 public:
  StandardGame(Eigen::MatrixXd optimizer_utility,
               Eigen::MatrixXd learner_utility);

  int num_optimizer_actions() const { return static_cast<int>(u_o_.rows()); }
  int num_learner_actions() const { return static_cast<int>(u_o_.cols()); }
  const Eigen::MatrixXd& optimizer_utility() const { return u_o_; }
  const Eigen::MatrixXd& learner_utility() const { return u_l_; }

 private:
  Eigen::MatrixXd u_o_;
  Eigen::MatrixXd u_l_;
};

// One M x N bimatrix per context, with a public context distribution.
class BayesianGame {
 public:
  BayesianGame(Eigen::VectorXd context_probs,
               std::vector<Eigen::MatrixXd> optimizer_utility,
               std::vector<Eigen::MatrixXd> learner_utility);

  int num_optimizer_actions() const { return static_cast<int>(u_o_[0].rows()); }
  int num_learner_actions() const { return static_cast<int>(u_o_[0].cols()); }
  int num_contexts() const { return static_cast<int>(u_o_.size()); }
  const Eigen::VectorXd& context_probs() const { return p_; }

  double u_o(int i, int j, int c) const { return u_o_[c](i, j); }
  double u_l(int i, int j, int c) const { return u_l_[c](i, j); }
  const Eigen::MatrixXd& optimizer_utility(int c) const { return u_o_[c]; }
  const Eigen::MatrixXd& learner_utility(int c) const { return u_l_[c]; }

  // The standard game played in context c.
  StandardGame ContextGame(int c) const;

 private:
  Eigen::VectorXd p_;
  std::vector<Eigen::MatrixXd> u_o_;
  std::vector<Eigen::MatrixXd> u_l_;
};

// Optimizer action (r, s): the learner earns <r, x>, the optimizer <s, x>.
struct QVertex {
  Eigen::VectorXd r;
  Eigen::VectorXd s;
};

// Learner picks x in P; the optimizer mixes over the listed Q vertices.
class PolytopeGame {
 public:
  PolytopeGame(Polytope polytope, std::vector<QVertex> q_vertices);

  const Polytope& polytope() const { return polytope_; }
  const std::vector<QVertex>& q_vertices() const { return q_; }
  int num_q_vertices() const { return static_cast<int>(q_.size()); }
  int dim() const { return polytope_.dim(); }

  // sum_i weights_i (r_i, s_i).
  QVertex Mix(const Eigen::VectorXd& weights) const;

 private:
  Polytope polytope_;
  std::vector<QVertex> q_;
};

Utilities StandardUtility(const StandardGame& game,
                          const Eigen::VectorXd& alpha,
                          const Eigen::VectorXd& beta);

// beta is a C x N row-stochastic matrix, row c the play in context c.
Utilities BayesianUtility(const BayesianGame& game,
                          const Eigen::VectorXd& alpha,
                          const Eigen::MatrixXd& beta);

Utilities PolytopeUtility(const PolytopeGame& game,
                          const Eigen::VectorXd& q_weights, const Point& x);

// P = Delta([N]); Q vertex i = (row i of u_L, row i of u_O).
PolytopeGame StandardToPolytope(const StandardGame& game);

// P = Delta([N])^C; Q vertex i has r_{i,j,c} = p_c u_L(i,j,c) and
// s_{i,j,c} = p_c u_O(i,j,c) at coordinate c * N + j.
PolytopeGame BayesianToPolytope(const BayesianGame& game,
                                std::int64_t vertex_budget = kDefaultVertexBudget);

// Flattens a C x N strategy matrix into simplex-product coordinates and back.
Point FlattenStrategy(const Eigen::MatrixXd& beta);
Eigen::MatrixXd UnflattenStrategy(const Point& x, int num_actions,
                                  int num_contexts);

// One round of a repeated polytope game.
struct Round {
  Eigen::VectorXd q_weights;
  Point x;
  Eigen::VectorXd reward;  // r^t revealed to the learner
  double optimizer_utility = 0.0;
  double learner_utility = 0.0;
};

// Append-only record of a match. Once frozen, appends throw.
class Transcript {
 public:
  Transcript() = default;
  explicit Transcript(std::shared_ptr<const PolytopeGame> game)
      : game_(std::move(game)) {}

  void Append(Round round);
  void Freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  const std::vector<Round>& rounds() const { return rounds_; }
  int num_rounds() const { return static_cast<int>(rounds_.size()); }
  const std::shared_ptr<const PolytopeGame>& game() const { return game_; }

  double total_optimizer_utility() const;
  double total_learner_utility() const;
  std::vector<Eigen::VectorXd> rewards() const;
  std::vector<Point> actions() const;

  // Largest discrepancy between stored and recomputed utilities, and of the
  // stored reward against the mixed Q point; points outside P count too.
  double MaxInconsistency(const PolytopeGame& game) const;

 private:
  std::shared_ptr<const PolytopeGame> game_;
  std::vector<Round> rounds_;
  bool frozen_ = false;
};

}  // namespace polyswap

#endif  // POLYSWAP_GAMES_H_
