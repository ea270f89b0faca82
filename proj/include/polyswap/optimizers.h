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

// Optimizer strategies: each returns mixed weights over the Q vertices of
// the game for round t (0-based), given the learner's past points.

#ifndef POLYSWAP_OPTIMIZERS_H_
#define POLYSWAP_OPTIMIZERS_H_

#include <Eigen/Dense>

#include <cstdint>
#include <string_view>
#include <vector>

#include "polyswap/games.h"
#include "polyswap/geometry.h"

namespace polyswap {

class Optimizer {
 public:
  virtual ~Optimizer() = default;

  virtual std::string_view name() const = 0;
  virtual Eigen::VectorXd Act(int t, const std::vector<Point>& learner_history) = 0;
};

class StaticOptimizer : public Optimizer {
 public:
  // Throws shape-error unless the weights form a distribution within 1e-12.
  explicit StaticOptimizer(Eigen::VectorXd weights);

  std::string_view name() const override { return "static"; }
  Eigen::VectorXd Act(int, const std::vector<Point>&) override { return weights_; }

 private:
  Eigen::VectorXd weights_;
};

// sqrt(T ln max(2, K) / 2): the Hedge external regret bound over K arms,
// used as the default R(T).
double DefaultRegretBound(int horizon, std::int64_t num_arms);

// Which optimal Stackelberg response to perturb toward when several attain Val.
enum class ResponseChoice { kLargestMargin, kSmallestIndex };

// Plays (1 - eps) alpha + eps alpha_v with eps = min(1, sqrt(R / T)), where
// (alpha, v) is a Stackelberg solution and alpha_v makes v the strict best
// response with the largest margin.
class PerturbedStackelbergOptimizer : public Optimizer {
 public:
  // Throws degenerate-game if the margin at v is at most 1e-9.
  PerturbedStackelbergOptimizer(const PolytopeGame& game, double regret_bound, int horizon,
                                ResponseChoice choice = ResponseChoice::kLargestMargin);

  std::string_view name() const override { return "perturbed_stackelberg"; }
  Eigen::VectorXd Act(int, const std::vector<Point>&) override { return weights_; }

  double epsilon() const { return epsilon_; }
  double margin() const { return margin_; }
  double stackelberg_value() const { return value_; }
  std::int64_t response_index() const { return response_index_; }
  const Eigen::VectorXd& weights() const { return weights_; }

 private:
  Eigen::VectorXd weights_;
  double epsilon_ = 0.0;
  double margin_ = 0.0;
  double value_ = 0.0;
  std::int64_t response_index_ = -1;
};

class ReplayOptimizer : public Optimizer {
 public:
  explicit ReplayOptimizer(std::vector<Eigen::VectorXd> schedule);

  std::string_view name() const override { return "replay"; }
  // Throws out-of-range-round past the end of the schedule.
  Eigen::VectorXd Act(int t, const std::vector<Point>&) override;

 private:
  std::vector<Eigen::VectorXd> schedule_;
};

// Pure action 0 for the first T/2 rounds and pure action 1 afterwards.
class TwoPhasePriceOptimizer : public Optimizer {
 public:
  // Throws bad-horizon unless T is positive and even.
  explicit TwoPhasePriceOptimizer(int horizon, int num_actions = 2);

  std::string_view name() const override { return "two_phase_price"; }
  Eigen::VectorXd Act(int t, const std::vector<Point>&) override;

 private:
  int horizon_;
  int num_actions_;
};

}  // namespace polyswap

#endif  // POLYSWAP_OPTIMIZERS_H_
