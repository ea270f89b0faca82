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

#include "polyswap/games.h"

#include <algorithm>
#include <cmath>

#include "polyswap/error.h"

namespace polyswap {
namespace {

void CheckBounded(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite() || m.cwiseAbs().maxCoeff() > 1.0) {
    throw Error(ErrorCode::kRewardOutOfRange,
                std::string(what) + " has entries outside [-1, 1]");
  }
}

void CheckLength(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) throw Error(ErrorCode::kShapeError, std::string(what) + " has the wrong length");
}

}  // namespace

StandardGame::StandardGame(Eigen::MatrixXd optimizer_utility,
                           Eigen::MatrixXd learner_utility)
    : u_o_(std::move(optimizer_utility)), u_l_(std::move(learner_utility)) {
  if (u_o_.rows() == 0 || u_o_.cols() == 0) {
    throw Error(ErrorCode::kInvalidDimension, "game needs M, N >= 1");
  }
  if (u_o_.rows() != u_l_.rows() || u_o_.cols() != u_l_.cols()) {
    throw Error(ErrorCode::kShapeError, "utility matrices differ in shape");
  }
  CheckBounded(u_o_, "u_O");
  CheckBounded(u_l_, "u_L");
}

BayesianGame::BayesianGame(Eigen::VectorXd context_probs,
                           std::vector<Eigen::MatrixXd> optimizer_utility,
                           std::vector<Eigen::MatrixXd> learner_utility)
    : p_(std::move(context_probs)),
      u_o_(std::move(optimizer_utility)),
      u_l_(std::move(learner_utility)) {
  if (u_o_.empty() || u_o_.size() != u_l_.size() ||
      static_cast<Eigen::Index>(u_o_.size()) != p_.size()) {
    throw Error(ErrorCode::kShapeError, "context count mismatch");
  }
  if (u_o_[0].rows() == 0 || u_o_[0].cols() == 0) {
    throw Error(ErrorCode::kInvalidDimension, "game needs M, N >= 1");
  }
  for (size_t c = 0; c < u_o_.size(); ++c) {
    if (u_o_[c].rows() != u_o_[0].rows() || u_o_[c].cols() != u_o_[0].cols() ||
        u_l_[c].rows() != u_o_[0].rows() || u_l_[c].cols() != u_o_[0].cols()) {
      throw Error(ErrorCode::kShapeError, "per-context matrices differ in shape");
    }
    CheckBounded(u_o_[c], "u_O");
    CheckBounded(u_l_[c], "u_L");
  }
  if ((p_.array() < 0.0).any() || std::abs(p_.sum() - 1.0) > 1e-12) {
    throw Error(ErrorCode::kShapeError, "context probabilities must form a distribution");
  }
}

StandardGame BayesianGame::ContextGame(int c) const {
  return StandardGame(u_o_.at(c), u_l_.at(c));
}

PolytopeGame::PolytopeGame(Polytope polytope, std::vector<QVertex> q_vertices)
    : polytope_(std::move(polytope)), q_(std::move(q_vertices)) {
  if (q_.empty()) throw Error(ErrorCode::kInvalidDimension, "Q needs a vertex");
  for (const auto& q : q_) {
    CheckLength(q.r.size(), polytope_.dim(), "r");
    CheckLength(q.s.size(), polytope_.dim(), "s");
    CheckBounded(q.r, "r");
    CheckBounded(q.s, "s");
  }
}

QVertex PolytopeGame::Mix(const Eigen::VectorXd& weights) const {
  CheckLength(weights.size(), num_q_vertices(), "q_weights");
  QVertex mixed{Eigen::VectorXd::Zero(dim()), Eigen::VectorXd::Zero(dim())};
  for (int i = 0; i < num_q_vertices(); ++i) {
    if (weights(i) == 0.0) continue;
    mixed.r += weights(i) * q_[i].r;
    mixed.s += weights(i) * q_[i].s;
  }
  return mixed;
}

Utilities StandardUtility(const StandardGame& game,
                          const Eigen::VectorXd& alpha,
                          const Eigen::VectorXd& beta) {
  CheckLength(alpha.size(), game.num_optimizer_actions(), "alpha");
  CheckLength(beta.size(), game.num_learner_actions(), "beta");
  return {alpha.dot(game.optimizer_utility() * beta),
          alpha.dot(game.learner_utility() * beta)};
}

Utilities BayesianUtility(const BayesianGame& game,
                          const Eigen::VectorXd& alpha,
                          const Eigen::MatrixXd& beta) {
  CheckLength(alpha.size(), game.num_optimizer_actions(), "alpha");
  if (beta.rows() != game.num_contexts() ||
      beta.cols() != game.num_learner_actions()) {
    throw Error(ErrorCode::kShapeError, "beta must be C x N");
  }
  Utilities u;
  for (int c = 0; c < game.num_contexts(); ++c) {
    const Eigen::VectorXd row = beta.row(c).transpose();
    u.optimizer += game.context_probs()(c) *
                   alpha.dot(game.optimizer_utility(c) * row);
    u.learner += game.context_probs()(c) *
                 alpha.dot(game.learner_utility(c) * row);
  }
  return u;
}

Utilities PolytopeUtility(const PolytopeGame& game,
                          const Eigen::VectorXd& q_weights, const Point& x) {
  if (!game.polytope().Contains(x)) {
    throw Error(ErrorCode::kPointNotInPolytope, "learner point is outside P");
  }
  const QVertex q = game.Mix(q_weights);
  return {q.s.dot(x), q.r.dot(x)};
}

PolytopeGame StandardToPolytope(const StandardGame& game) {
  std::vector<QVertex> q;
  for (int i = 0; i < game.num_optimizer_actions(); ++i) {
    q.push_back({game.learner_utility().row(i).transpose(),
                 game.optimizer_utility().row(i).transpose()});
  }
  return PolytopeGame(Simplex(game.num_learner_actions()), std::move(q));
}

PolytopeGame BayesianToPolytope(const BayesianGame& game,
                                std::int64_t vertex_budget) {
  const int m = game.num_optimizer_actions();
  const int n = game.num_learner_actions();
  const int contexts = game.num_contexts();
  Polytope polytope = SimplexProduct(n, contexts, vertex_budget);
  std::vector<QVertex> q;
  for (int i = 0; i < m; ++i) {
    QVertex v{Eigen::VectorXd(n * contexts), Eigen::VectorXd(n * contexts)};
    for (int c = 0; c < contexts; ++c) {
      const double pc = game.context_probs()(c);
      for (int j = 0; j < n; ++j) {
        v.r(c * n + j) = pc * game.u_l(i, j, c);
        v.s(c * n + j) = pc * game.u_o(i, j, c);
      }
    }
    q.push_back(std::move(v));
  }
  return PolytopeGame(std::move(polytope), std::move(q));
}

Point FlattenStrategy(const Eigen::MatrixXd& beta) {
  Point x(beta.size());
  for (Eigen::Index c = 0; c < beta.rows(); ++c) {
    x.segment(c * beta.cols(), beta.cols()) = beta.row(c).transpose();
  }
  return x;
}

Eigen::MatrixXd UnflattenStrategy(const Point& x, int num_actions,
                                  int num_contexts) {
  CheckLength(x.size(), static_cast<Eigen::Index>(num_actions) * num_contexts, "x");
  Eigen::MatrixXd beta(num_contexts, num_actions);
  for (int c = 0; c < num_contexts; ++c) {
    beta.row(c) = x.segment(c * num_actions, num_actions).transpose();
  }
  return beta;
}

void Transcript::Append(Round round) {
  if (frozen_) throw Error(ErrorCode::kShapeError, "transcript is frozen");
  rounds_.push_back(std::move(round));
}

double Transcript::total_optimizer_utility() const {
  double total = 0.0;
  for (const auto& r : rounds_) total += r.optimizer_utility;
  return total;
}

double Transcript::total_learner_utility() const {
  double total = 0.0;
  for (const auto& r : rounds_) total += r.learner_utility;
  return total;
}

std::vector<Eigen::VectorXd> Transcript::rewards() const {
  std::vector<Eigen::VectorXd> out;
  out.reserve(rounds_.size());
  for (const auto& r : rounds_) out.push_back(r.reward);
  return out;
}

std::vector<Point> Transcript::actions() const {
  std::vector<Point> out;
  out.reserve(rounds_.size());
  for (const auto& r : rounds_) out.push_back(r.x);
  return out;
}

double Transcript::MaxInconsistency(const PolytopeGame& game) const {
  double worst = 0.0;
  for (const auto& round : rounds_) {
    const QVertex q = game.Mix(round.q_weights);
    worst = std::max(worst, game.polytope().MaxViolation(round.x));
    worst = std::max(worst, (q.r - round.reward).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(q.s.dot(round.x) - round.optimizer_utility));
    worst = std::max(worst, std::abs(q.r.dot(round.x) - round.learner_utility));
  }
  return worst;
}

}  // namespace polyswap
