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

#include "polyswap/optimizers.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "polyswap/equilibria.h"
#include "polyswap/error.h"

namespace polyswap {
namespace {

constexpr double kMinMargin = 1e-9;

void CheckDistribution(const Eigen::VectorXd& w, const char* what) {
  if (w.size() == 0 || !w.allFinite() || (w.array() < 0.0).any() ||
      std::abs(w.sum() - 1.0) > 1e-12) {
    throw Error(ErrorCode::kShapeError, std::string(what) + " must be a distribution");
  }
}

}  // namespace

StaticOptimizer::StaticOptimizer(Eigen::VectorXd weights) : weights_(std::move(weights)) {
  CheckDistribution(weights_, "static weights");
}

double DefaultRegretBound(int horizon, std::int64_t num_arms) {
  const double arms = std::max<double>(2.0, static_cast<double>(num_arms));
  return std::sqrt(horizon * std::log(arms) / 2.0);
}

PerturbedStackelbergOptimizer::PerturbedStackelbergOptimizer(const PolytopeGame& game,
                                                             double regret_bound,
                                                             int horizon,
                                                             ResponseChoice choice) {
  if (horizon <= 0) throw Error(ErrorCode::kBadHorizon, "need T >= 1");
  if (regret_bound < 0.0) throw Error(ErrorCode::kShapeError, "regret bound must be >= 0");
  const StackelbergSolution stackelberg = StackelbergPolytope(game);
  std::vector<std::int64_t> responses{stackelberg.response_index};
  std::vector<Eigen::VectorXd> strategies{stackelberg.strategy};
  if (choice == ResponseChoice::kLargestMargin) {
    responses = stackelberg.optimal_responses;
    strategies = stackelberg.optimal_strategies;
  }
  // The learner's convergence time scales with the inverse margin.
  size_t chosen = 0;
  MarginSolution strict;
  strict.margin = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < responses.size(); ++i) {
    MarginSolution candidate = StrictResponseMargin(game, responses[i]);
    if (candidate.margin > strict.margin + 1e-12) {
      strict = std::move(candidate);
      chosen = i;
    }
  }
  if (!(strict.margin > kMinMargin)) {
    throw Error(ErrorCode::kDegenerateGame,
                "no optimizer strategy makes the Stackelberg response strict");
  }
  epsilon_ = std::min(1.0, std::sqrt(regret_bound / horizon));
  margin_ = strict.margin;
  value_ = stackelberg.value;
  response_index_ = responses[chosen];
  weights_ = (1.0 - epsilon_) * strategies[chosen] + epsilon_ * strict.strategy;
  weights_ /= weights_.sum();
}

ReplayOptimizer::ReplayOptimizer(std::vector<Eigen::VectorXd> schedule)
    : schedule_(std::move(schedule)) {
  for (const auto& w : schedule_) CheckDistribution(w, "schedule entry");
}

Eigen::VectorXd ReplayOptimizer::Act(int t, const std::vector<Point>&) {
  if (t < 0 || t >= static_cast<int>(schedule_.size())) {
    throw Error(ErrorCode::kOutOfRangeRound,
                "round " + std::to_string(t) + " is past the replay schedule");
  }
  return schedule_[t];
}

TwoPhasePriceOptimizer::TwoPhasePriceOptimizer(int horizon, int num_actions)
    : horizon_(horizon), num_actions_(num_actions) {
  if (horizon <= 0 || horizon % 2 != 0) {
    throw Error(ErrorCode::kBadHorizon, "two-phase pricing needs an even horizon");
  }
  if (num_actions < 2) throw Error(ErrorCode::kShapeError, "need two price actions");
}

Eigen::VectorXd TwoPhasePriceOptimizer::Act(int t, const std::vector<Point>&) {
  if (t < 0 || t >= horizon_) {
    throw Error(ErrorCode::kOutOfRangeRound, "round " + std::to_string(t) + " is past T");
  }
  return Eigen::VectorXd::Unit(num_actions_, t < horizon_ / 2 ? 0 : 1);
}

}  // namespace polyswap
