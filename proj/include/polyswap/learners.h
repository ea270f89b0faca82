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

// Deterministic full-information learners. Each round the harness calls
// Act() for x^t and then Observe(r^t) with the realized reward vector.

#ifndef POLYSWAP_LEARNERS_H_
#define POLYSWAP_LEARNERS_H_

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "polyswap/geometry.h"

namespace polyswap {

// Multiplicative weights with fixed-horizon rate eta = sqrt(8 ln N / T).
class Hedge {
 public:
  Hedge(int num_actions, int horizon);

  int num_actions() const { return static_cast<int>(cumulative_.size()); }
  double eta() const { return eta_; }
  Eigen::VectorXd Distribution() const;
  void Update(const Eigen::VectorXd& reward);
  const Eigen::VectorXd& cumulative() const { return cumulative_; }

 private:
  double eta_;
  Eigen::VectorXd cumulative_;
};

struct StationaryOptions {
  double tolerance = 1e-12;
  int max_iterations = 100'000;
  double smoothing = 1e-6;
  // Largest acceptable ||p Q - p||_inf.
  double max_residual = 1e-10;
};

// p with p = p Q for a row-stochastic Q: power iteration, then a direct
// solve, then both again on (1 - s) Q + s / N. Throws stationary-solve-failed
// if none reaches max_residual.
Eigen::VectorXd StationaryDistribution(const Eigen::MatrixXd& transition,
                                       const StationaryOptions& options = {});

// N Hedge instances; instance j proposes row j of Q and is credited p_j r.
class BlumMansour {
 public:
  BlumMansour(int num_actions, int horizon);

  int num_actions() const { return static_cast<int>(instances_.size()); }
  // Computes and caches the stationary play for this round.
  Eigen::VectorXd Distribution();
  // Credits the instances using the play returned by the last Distribution().
  void Update(const Eigen::VectorXd& reward);

 private:
  std::vector<Hedge> instances_;
  Eigen::VectorXd last_play_;
};

class Learner {
 public:
  virtual ~Learner() = default;

  virtual std::string_view name() const = 0;
  virtual int dim() const = 0;
  virtual Point Act() = 0;
  virtual void Observe(const Eigen::VectorXd& reward) = 0;
};

class HedgeLearner : public Learner {
 public:
  HedgeLearner(int num_actions, int horizon) : hedge_(num_actions, horizon) {}

  std::string_view name() const override { return "hedge"; }
  int dim() const override { return hedge_.num_actions(); }
  Point Act() override { return hedge_.Distribution(); }
  void Observe(const Eigen::VectorXd& reward) override { hedge_.Update(reward); }

 private:
  Hedge hedge_;
};

class BlumMansourLearner : public Learner {
 public:
  BlumMansourLearner(int num_actions, int horizon) : inner_(num_actions, horizon) {}

  std::string_view name() const override { return "blum_mansour"; }
  int dim() const override { return inner_.num_actions(); }
  Point Act() override { return inner_.Distribution(); }
  void Observe(const Eigen::VectorXd& reward) override { inner_.Update(reward); }

 private:
  BlumMansour inner_;
};

// Blum-Mansour over one arm per vertex of P; plays the induced mixture and
// credits arm v with <r, v>. Records the inner play and rewards so the inner
// swap regret can be audited.
class VertexLiftedLearner : public Learner {
 public:
  VertexLiftedLearner(Polytope polytope, int horizon);

  std::string_view name() const override { return "vertex_lifted"; }
  int dim() const override { return polytope_.dim(); }
  Point Act() override;
  void Observe(const Eigen::VectorXd& reward) override;

  const std::vector<Eigen::VectorXd>& inner_actions() const { return inner_actions_; }
  const std::vector<Eigen::VectorXd>& inner_rewards() const { return inner_rewards_; }

 private:
  Polytope polytope_;
  Eigen::MatrixXd vertex_matrix_;  // d x |V|
  BlumMansour inner_;
  std::vector<Eigen::VectorXd> inner_actions_;
  std::vector<Eigen::VectorXd> inner_rewards_;
};

enum class InnerAlgorithm { kBlumMansour, kHedge };

// One learner per context over Delta([N])^C. Context c sees the unscaled
// slice r_{c, .} / p_c, i.e. its own utilities u_L(alpha, ., c).
class PerContextLearner : public Learner {
 public:
  PerContextLearner(Eigen::VectorXd context_probs, int num_actions, int horizon,
                    InnerAlgorithm inner = InnerAlgorithm::kBlumMansour);

  std::string_view name() const override { return "per_context"; }
  int dim() const override { return num_actions_ * static_cast<int>(p_.size()); }
  Point Act() override;
  void Observe(const Eigen::VectorXd& reward) override;

 private:
  Eigen::VectorXd p_;
  int num_actions_;
  InnerAlgorithm inner_kind_;
  std::vector<BlumMansour> swap_;
  std::vector<Hedge> hedge_;
};

// gamma[c] is N x (N + C); row j' holds the distribution gamma_{c, j'}.
struct FixedPointProblem {
  int num_actions = 0;
  int num_contexts = 0;
  std::vector<Eigen::MatrixXd> gamma;

  // Throws shape-error unless every row is a distribution within 1e-12.
  void Validate() const;
  // beta(c)_j -> sum_j' beta(c)_j' (gamma_{c,j',j} + sum_c' gamma_{c,j',N+c'} beta(c')_j).
  Eigen::MatrixXd Apply(const Eigen::MatrixXd& beta) const;
};

struct FixedPointResult {
  Eigen::MatrixXd beta;  // C x N, row-stochastic
  double residual = 0.0;
  int iterations = 0;
  int damped_iterations = 0;
  // Largest |row sum - 1| or negative entry seen over all iterates.
  double max_stochastic_error = 0.0;
};

// Iterates the map from uniform beta; after max_iters plain steps switches to
// beta <- (beta + Phi(beta)) / 2 for up to max_iters more. Rows are
// renormalized after every step.
FixedPointResult FixedPointSolve(const FixedPointProblem& problem,
                                 double tol = 1e-10, int max_iters = 100'000);

// N C Hedge instances over N + C arms whose proposals define a fixed point.
class ContextSwapLearner : public Learner {
 public:
  ContextSwapLearner(Eigen::VectorXd context_probs, int num_actions, int horizon,
                     double tol = 1e-10, int max_iters = 100'000);

  std::string_view name() const override { return "context_swap"; }
  int dim() const override { return num_actions_ * static_cast<int>(p_.size()); }
  Point Act() override;
  void Observe(const Eigen::VectorXd& reward) override;

  // Plain and damped iteration counts of every fixed-point solve so far.
  const std::vector<int>& iteration_log() const { return iteration_log_; }
  const std::vector<int>& damped_log() const { return damped_log_; }

 private:
  Eigen::VectorXd p_;
  int num_actions_;
  double tol_;
  int max_iters_;
  std::vector<Hedge> instances_;  // index c * N + j
  Eigen::MatrixXd beta_;
  std::vector<int> iteration_log_;
  std::vector<int> damped_log_;
};

// Replays a fixed trajectory; throws out-of-range-round past its end.
class ScriptedLearner : public Learner {
 public:
  explicit ScriptedLearner(std::vector<Point> trajectory);

  std::string_view name() const override { return "scripted"; }
  int dim() const override { return static_cast<int>(trajectory_.front().size()); }
  Point Act() override;
  void Observe(const Eigen::VectorXd&) override { ++round_; }

  // The trajectory entry for round t (0-based).
  const Point& At(int t) const;

 private:
  std::vector<Point> trajectory_;
  int round_ = 0;
};

}  // namespace polyswap

#endif  // POLYSWAP_LEARNERS_H_
