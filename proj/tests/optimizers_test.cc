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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "polyswap/equilibria.h"
#include "polyswap/error.h"
#include "polyswap/generators.h"

namespace polyswap {
namespace {

TEST_CASE("static optimizer validates and repeats its weights") {
  StaticOptimizer opt(Eigen::Vector2d(0.25, 0.75));
  CHECK(opt.Act(0, {}) == Eigen::Vector2d(0.25, 0.75));
  CHECK(opt.Act(99, {}) == Eigen::Vector2d(0.25, 0.75));
  CHECK_THROWS_AS(StaticOptimizer(Eigen::Vector2d(0.5, 0.6)), Error);
  CHECK_THROWS_AS(StaticOptimizer(Eigen::Vector2d(1.5, -0.5)), Error);
}

TEST_CASE("default regret bound") {
  CHECK(DefaultRegretBound(100, 4) == doctest::Approx(std::sqrt(100 * std::log(4.0) / 2)));
  CHECK(DefaultRegretBound(100, 1) == doctest::Approx(std::sqrt(100 * std::log(2.0) / 2)));
}

TEST_CASE("perturbed Stackelberg makes its target a strict best response") {
  const PolytopeGame game = BayesianToPolytope(MakeSellingGame());
  const int horizon = 20000;
  const double bound = DefaultRegretBound(horizon, game.polytope().num_vertices());
  for (auto choice : {ResponseChoice::kLargestMargin, ResponseChoice::kSmallestIndex}) {
    PerturbedStackelbergOptimizer opt(game, bound, horizon, choice);
    CHECK(opt.epsilon() == doctest::Approx(std::min(1.0, std::sqrt(bound / horizon))));
    CHECK(opt.stackelberg_value() == doctest::Approx(0.25));
    CHECK(opt.response_index() == (choice == ResponseChoice::kLargestMargin ? 3 : 1));
    CHECK(opt.margin() ==
          doctest::Approx(choice == ResponseChoice::kLargestMargin ? 1.0 / 8 : 1.0 / 16));
    const Eigen::VectorXd w = opt.Act(0, {});
    CHECK(w.minCoeff() >= 0.0);
    CHECK(w.sum() == doctest::Approx(1.0));
    const QVertex q = game.Mix(w);
    const Point target = game.polytope().vertex(opt.response_index());
    for (std::int64_t v = 0; v < game.polytope().num_vertices(); ++v) {
      if (v == opt.response_index()) continue;
      CHECK(q.r.dot(target) - q.r.dot(game.polytope().vertex(v)) >=
            opt.epsilon() * opt.margin() - 1e-12);
    }
    // The optimizer gives up at most epsilon per round.
    CHECK(q.s.dot(target) >= opt.stackelberg_value() - opt.epsilon() - 1e-12);
  }
}

TEST_CASE("perturbed Stackelberg rejects games without a strict response") {
  const StandardGame flat(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Zero(2, 2));
  try {
    PerturbedStackelbergOptimizer(StandardToPolytope(flat), 1.0, 10);
    FAIL("expected degenerate-game");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateGame);
  }
}

TEST_CASE("replay and two-phase schedules") {
  ReplayOptimizer replay({Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)});
  CHECK(replay.Act(1, {}) == Eigen::Vector2d(0, 1));
  try {
    replay.Act(2, {});
    FAIL("expected out-of-range-round");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOutOfRangeRound);
  }
  TwoPhasePriceOptimizer two_phase(10);
  CHECK(two_phase.Act(0, {}) == Eigen::Vector2d(1, 0));
  CHECK(two_phase.Act(4, {}) == Eigen::Vector2d(1, 0));
  CHECK(two_phase.Act(5, {}) == Eigen::Vector2d(0, 1));
  CHECK(two_phase.Act(9, {}) == Eigen::Vector2d(0, 1));
  try {
    TwoPhasePriceOptimizer odd(7);
    FAIL("expected bad-horizon");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBadHorizon);
  }
}

}  // namespace
}  // namespace polyswap
