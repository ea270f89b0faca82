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

#include "polyswap/learners.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "polyswap/error.h"

namespace polyswap {
namespace {

void CheckHorizon(int horizon) {
  if (horizon <= 0) throw Error(ErrorCode::kBadHorizon, "learner needs a horizon T >= 1");
}

void CheckRewardSize(const Eigen::VectorXd& reward, Eigen::Index want) {
  if (reward.size() != want) {
    throw Error(ErrorCode::kShapeError, "reward has length " + std::to_string(reward.size()) +
                                            ", expected " + std::to_string(want));
  }
}

double StationaryResidual(const Eigen::MatrixXd& q, const Eigen::VectorXd& p) {
  return (q.transpose() * p - p).cwiseAbs().maxCoeff();
}

Eigen::VectorXd PowerIterate(const Eigen::MatrixXd& q, Eigen::VectorXd p,
                             const StationaryOptions& options) {
  const Eigen::MatrixXd qt = q.transpose();
  for (int it = 0; it < options.max_iterations; ++it) {
    Eigen::VectorXd next = qt * p;
    next /= next.sum();
    const double change = (next - p).cwiseAbs().maxCoeff();
    p = std::move(next);
    if (change <= options.tolerance) break;
  }
  return p;
}

// Solves (Q^T - I) p = 0 with the last equation replaced by sum p = 1.
Eigen::VectorXd DirectSolve(const Eigen::MatrixXd& q) {
  const Eigen::Index n = q.rows();
  Eigen::MatrixXd a = q.transpose() - Eigen::MatrixXd::Identity(n, n);
  a.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  Eigen::VectorXd p = a.fullPivLu().solve(b);
  p = p.cwiseMax(0.0);
  return p / p.sum();
}

void NormalizeRows(Eigen::MatrixXd* beta) {
  for (Eigen::Index c = 0; c < beta->rows(); ++c) {
    beta->row(c) = beta->row(c).cwiseMax(0.0);
    beta->row(c) /= beta->row(c).sum();
  }
}

}  // namespace

Hedge::Hedge(int num_actions, int horizon) {
  if (num_actions <= 0) throw Error(ErrorCode::kInvalidDimension, "Hedge needs N >= 1");
  CheckHorizon(horizon);
  eta_ = std::sqrt(8.0 * std::log(static_cast<double>(num_actions)) / horizon);
  cumulative_ = Eigen::VectorXd::Zero(num_actions);
}

Eigen::VectorXd Hedge::Distribution() const {
  const double top = cumulative_.maxCoeff();
  Eigen::VectorXd w = (eta_ * (cumulative_.array() - top)).exp().matrix();
  return w / w.sum();
}

void Hedge::Update(const Eigen::VectorXd& reward) {
  CheckRewardSize(reward, cumulative_.size());
  cumulative_ += reward;
}

Eigen::VectorXd StationaryDistribution(const Eigen::MatrixXd& transition,
                                       const StationaryOptions& options) {
  const Eigen::Index n = transition.rows();
  if (n == 0 || transition.cols() != n) {
    throw Error(ErrorCode::kShapeError, "transition matrix must be square");
  }
  const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(n, 1.0 / n);
  auto attempt = [&](const Eigen::MatrixXd& q) -> std::optional<Eigen::VectorXd> {
    Eigen::VectorXd p = PowerIterate(q, uniform, options);
    if (p.allFinite() && StationaryResidual(q, p) <= options.max_residual) return p;
    p = DirectSolve(q);
    if (p.allFinite() && StationaryResidual(q, p) <= options.max_residual) return p;
    return std::nullopt;
  };
  if (auto p = attempt(transition)) return *p;
  const Eigen::MatrixXd smoothed =
      (1.0 - options.smoothing) * transition +
      Eigen::MatrixXd::Constant(n, n, options.smoothing / n);
  if (auto p = attempt(smoothed)) return *p;
  throw Error(ErrorCode::kStationarySolveFailed,
              "no stationary distribution within residual tolerance");
}

BlumMansour::BlumMansour(int num_actions, int horizon) {
  if (num_actions <= 0) throw Error(ErrorCode::kInvalidDimension, "need N >= 1");
  instances_.assign(num_actions, Hedge(num_actions, horizon));
}

Eigen::VectorXd BlumMansour::Distribution() {
  const int n = num_actions();
  Eigen::MatrixXd q(n, n);
  for (int j = 0; j < n; ++j) q.row(j) = instances_[j].Distribution().transpose();
  last_play_ = StationaryDistribution(q);
  return last_play_;
}

void BlumMansour::Update(const Eigen::VectorXd& reward) {
  if (last_play_.size() == 0) Distribution();
  for (int j = 0; j < num_actions(); ++j) instances_[j].Update(last_play_(j) * reward);
  last_play_.resize(0);
}

VertexLiftedLearner::VertexLiftedLearner(Polytope polytope, int horizon)
    : polytope_(std::move(polytope)),
      inner_(static_cast<int>(polytope_.vertices().size()), horizon) {
  const auto& vertices = polytope_.vertices();
  vertex_matrix_.resize(polytope_.dim(), static_cast<Eigen::Index>(vertices.size()));
  for (size_t v = 0; v < vertices.size(); ++v) vertex_matrix_.col(v) = vertices[v];
}

Point VertexLiftedLearner::Act() {
  Eigen::VectorXd beta = inner_.Distribution();
  inner_actions_.push_back(beta);
  return vertex_matrix_ * beta;
}

void VertexLiftedLearner::Observe(const Eigen::VectorXd& reward) {
  CheckRewardSize(reward, polytope_.dim());
  Eigen::VectorXd payoffs = vertex_matrix_.transpose() * reward;
  inner_.Update(payoffs);
  inner_rewards_.push_back(std::move(payoffs));
}

PerContextLearner::PerContextLearner(Eigen::VectorXd context_probs, int num_actions,
                                     int horizon, InnerAlgorithm inner)
    : p_(std::move(context_probs)), num_actions_(num_actions), inner_kind_(inner) {
  if (p_.size() == 0 || num_actions <= 0) {
    throw Error(ErrorCode::kInvalidDimension, "need N, C >= 1");
  }
  for (Eigen::Index c = 0; c < p_.size(); ++c) {
    if (inner_kind_ == InnerAlgorithm::kBlumMansour) {
      swap_.emplace_back(num_actions, horizon);
    } else {
      hedge_.emplace_back(num_actions, horizon);
    }
  }
}

Point PerContextLearner::Act() {
  Point x(dim());
  for (Eigen::Index c = 0; c < p_.size(); ++c) {
    x.segment(c * num_actions_, num_actions_) =
        inner_kind_ == InnerAlgorithm::kBlumMansour ? swap_[c].Distribution()
                                                    : hedge_[c].Distribution();
  }
  return x;
}

void PerContextLearner::Observe(const Eigen::VectorXd& reward) {
  CheckRewardSize(reward, dim());
  for (Eigen::Index c = 0; c < p_.size(); ++c) {
    Eigen::VectorXd slice = Eigen::VectorXd::Zero(num_actions_);
    if (p_(c) > 0.0) slice = reward.segment(c * num_actions_, num_actions_) / p_(c);
    if (inner_kind_ == InnerAlgorithm::kBlumMansour) {
      swap_[c].Update(slice);
    } else {
      hedge_[c].Update(slice);
    }
  }
}

void FixedPointProblem::Validate() const {
  if (num_actions <= 0 || num_contexts <= 0 ||
      static_cast<int>(gamma.size()) != num_contexts) {
    throw Error(ErrorCode::kShapeError, "fixed-point problem needs C blocks of gamma");
  }
  for (const auto& g : gamma) {
    if (g.rows() != num_actions || g.cols() != num_actions + num_contexts) {
      throw Error(ErrorCode::kShapeError, "gamma block must be N x (N + C)");
    }
    if ((g.array() < 0.0).any() ||
        ((g.rowwise().sum().array() - 1.0).abs() > 1e-12).any()) {
      throw Error(ErrorCode::kShapeError, "gamma rows must be distributions");
    }
  }
}

Eigen::MatrixXd FixedPointProblem::Apply(const Eigen::MatrixXd& beta) const {
  const int n = num_actions;
  Eigen::MatrixXd out(num_contexts, n);
  for (int c = 0; c < num_contexts; ++c) {
    const Eigen::RowVectorXd weights = beta.row(c);
    // Action part: sum_j' beta(c)_j' gamma_{c,j',j}.
    out.row(c) = weights * gamma[c].leftCols(n);
    // Context part: sum_c' (sum_j' beta(c)_j' gamma_{c,j',N+c'}) beta(c').
    const Eigen::RowVectorXd jump = weights * gamma[c].rightCols(num_contexts);
    out.row(c) += jump * beta;
  }
  return out;
}

FixedPointResult FixedPointSolve(const FixedPointProblem& problem, double tol,
                                 int max_iters) {
  problem.Validate();
  FixedPointResult result;
  result.beta = Eigen::MatrixXd::Constant(problem.num_contexts, problem.num_actions,
                                          1.0 / problem.num_actions);
  for (int phase = 0; phase < 2; ++phase) {
    for (int it = 0; it < max_iters; ++it) {
      Eigen::MatrixXd image = problem.Apply(result.beta);
      result.residual = (image - result.beta).cwiseAbs().maxCoeff();
      if (result.residual < tol) return result;
      if (phase == 1) image = 0.5 * (image + result.beta);
      NormalizeRows(&image);
      result.max_stochastic_error =
          std::max({result.max_stochastic_error,
                    (image.rowwise().sum().array() - 1.0).abs().maxCoeff(),
                    -image.minCoeff()});
      result.beta = std::move(image);
      ++(phase == 0 ? result.iterations : result.damped_iterations);
    }
  }
  result.residual = (problem.Apply(result.beta) - result.beta).cwiseAbs().maxCoeff();
  if (result.residual < tol) return result;
  throw Error(ErrorCode::kFixedPointNotConverged,
              "fixed point residual " + std::to_string(result.residual) + " after " +
                  std::to_string(2 * max_iters) + " iterations");
}

ContextSwapLearner::ContextSwapLearner(Eigen::VectorXd context_probs, int num_actions,
                                       int horizon, double tol, int max_iters)
    : p_(std::move(context_probs)), num_actions_(num_actions), tol_(tol),
      max_iters_(max_iters) {
  if (p_.size() == 0 || num_actions <= 0) {
    throw Error(ErrorCode::kInvalidDimension, "need N, C >= 1");
  }
  const int arms = num_actions + static_cast<int>(p_.size());
  instances_.assign(static_cast<size_t>(num_actions) * p_.size(), Hedge(arms, horizon));
}

Point ContextSwapLearner::Act() {
  const int n = num_actions_;
  const int contexts = static_cast<int>(p_.size());
  FixedPointProblem problem{n, contexts, {}};
  for (int c = 0; c < contexts; ++c) {
    Eigen::MatrixXd g(n, n + contexts);
    for (int j = 0; j < n; ++j) g.row(j) = instances_[c * n + j].Distribution().transpose();
    problem.gamma.push_back(std::move(g));
  }
  FixedPointResult solved = FixedPointSolve(problem, tol_, max_iters_);
  iteration_log_.push_back(solved.iterations);
  damped_log_.push_back(solved.damped_iterations);
  beta_ = std::move(solved.beta);
  Point x(dim());
  for (int c = 0; c < contexts; ++c) x.segment(c * n, n) = beta_.row(c).transpose();
  return x;
}

void ContextSwapLearner::Observe(const Eigen::VectorXd& reward) {
  CheckRewardSize(reward, dim());
  if (beta_.size() == 0) Act();
  const int n = num_actions_;
  const int contexts = static_cast<int>(p_.size());
  // utility(c, j') = u_L(alpha, j', c).
  Eigen::MatrixXd utility = Eigen::MatrixXd::Zero(contexts, n);
  for (int c = 0; c < contexts; ++c) {
    if (p_(c) > 0.0) utility.row(c) = reward.segment(c * n, n).transpose() / p_(c);
  }
  for (int c = 0; c < contexts; ++c) {
    // cross(c') = u_L(alpha, beta(c'), c).
    const Eigen::VectorXd cross = beta_ * utility.row(c).transpose();
    for (int j = 0; j < n; ++j) {
      const double weight = beta_(c, j);
      Eigen::VectorXd arm_reward(n + contexts);
      arm_reward.head(n) = weight * utility.row(c).transpose();
      arm_reward.tail(contexts) = weight * cross;
      instances_[c * n + j].Update(arm_reward);
    }
  }
  beta_.resize(0, 0);
}

ScriptedLearner::ScriptedLearner(std::vector<Point> trajectory)
    : trajectory_(std::move(trajectory)) {
  if (trajectory_.empty()) throw Error(ErrorCode::kBadHorizon, "empty trajectory");
}

const Point& ScriptedLearner::At(int t) const {
  if (t < 0 || t >= static_cast<int>(trajectory_.size())) {
    throw Error(ErrorCode::kOutOfRangeRound, "round " + std::to_string(t) +
                                                 " is past the scripted trajectory");
  }
  return trajectory_[t];
}

Point ScriptedLearner::Act() { return At(round_); }

}  // namespace polyswap
