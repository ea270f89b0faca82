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

#include "polyswap/regret.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "polyswap/error.h"
#include "polyswap/generators.h"

namespace polyswap {
namespace {

struct Sample {
  RewardSequence rewards;
  ActionSequence actions;
};

Sample RandomSimplexSample(int n, int horizon, std::mt19937_64& rng) {
  Sample s;
  for (int t = 0; t < horizon; ++t) {
    s.rewards.push_back(oracles::RandomVector(n, -1.0, 1.0, rng));
    s.actions.push_back(oracles::RandomDistribution(n, rng));
  }
  return s;
}

// Points of Delta([2])^2 with vertex weights on the 1/resolution grid.
Sample GridSquareSample(int horizon, int resolution, std::mt19937_64& rng) {
  const Polytope square = SimplexProduct(2, 2);
  std::uniform_int_distribution<int> cut(0, resolution);
  Sample s;
  for (int t = 0; t < horizon; ++t) {
    std::vector<int> cuts = {cut(rng), cut(rng), cut(rng)};
    std::sort(cuts.begin(), cuts.end());
    const double w[4] = {static_cast<double>(cuts[0]), static_cast<double>(cuts[1] - cuts[0]),
                         static_cast<double>(cuts[2] - cuts[1]),
                         static_cast<double>(resolution - cuts[2])};
    Point x = Point::Zero(4);
    for (int v = 0; v < 4; ++v) x += w[v] / resolution * square.vertex(v);
    s.actions.push_back(x);
    s.rewards.push_back(oracles::RandomVector(4, -1.0, 1.0, rng));
  }
  return s;
}

TEST_CASE("notion names round-trip") {
  for (auto notion : {RegretNotion::kExternal, RegretNotion::kSwap,
                      RegretNotion::kContextualExternal, RegretNotion::kLinearSwap,
                      RegretNotion::kPolytopeSwap}) {
    CHECK(ParseRegretNotion(RegretNotionName(notion)) == notion);
  }
  try {
    ParseRegretNotion("internal");
    FAIL("expected unknown-name");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnknownName);
  }
}

TEST_CASE("external and swap regret match enumeration") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 4;
    const Sample s = RandomSimplexSample(n, 1 + trial % 15, rng);
    const RegretReport external = ExternalRegret(s.rewards, s.actions);
    const RegretReport swap = SwapRegret(s.rewards, s.actions);
    CHECK(external.value == doctest::Approx(oracles::ExternalRegret(s.rewards, s.actions)));
    CHECK(swap.value == doctest::Approx(oracles::SwapRegret(s.rewards, s.actions)));
    CHECK(swap.value >= external.value - 1e-12);
    CHECK(EvaluateWitness(swap, s.rewards, s.actions) == doctest::Approx(swap.value));
    CHECK(EvaluateWitness(external, s.rewards, s.actions) == doctest::Approx(external.value));
  }
}

TEST_CASE("a learner that always plays the best action has zero regret") {
  RewardSequence rewards(5, Eigen::Vector3d(0.1, 0.9, -0.2));
  ActionSequence actions(5, Eigen::Vector3d(0.0, 1.0, 0.0));
  CHECK(ExternalRegret(rewards, actions).numerically_zero);
  CHECK(SwapRegret(rewards, actions).value == doctest::Approx(0.0));
  CHECK(LinearSwapRegret(Simplex(3), rewards, actions).value <= 1e-9);
}

TEST_CASE("linear and polytope swap regret agree with swap regret on simplices") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const Sample s = RandomSimplexSample(3, 8, rng);
    const double swap = SwapRegret(s.rewards, s.actions).value;
    CHECK(LinearSwapRegret(Simplex(3), s.rewards, s.actions).value ==
          doctest::Approx(swap).epsilon(1e-8));
    CHECK(PolytopeSwapRegret(Simplex(3), s.rewards, s.actions).value ==
          doctest::Approx(swap).epsilon(1e-8));
  }
}

TEST_CASE("polytope swap regret matches the grid oracle on the square product") {
  std::mt19937_64 rng(23);
  const Polytope square = SimplexProduct(2, 2);
  for (int trial = 0; trial < 8; ++trial) {
    const Sample s = GridSquareSample(4, 20, rng);
    const RegretReport report = PolytopeSwapRegret(square, s.rewards, s.actions);
    const double grid =
        oracles::GridPolytopeSwapRegret(square.vertices(), s.rewards, s.actions, 20);
    // The grid minimizes over a subset of decompositions, so it bounds from above.
    CHECK(report.value <= grid + 1e-9);
    CHECK(grid - report.value <= 0.1);
    CHECK(EvaluateWitness(report, s.rewards, s.actions, &square) ==
          doctest::Approx(report.value).epsilon(1e-8));
  }
}

TEST_CASE("direct and cutting-plane polytope swap solvers agree") {
  std::mt19937_64 rng(24);
  const Polytope product = SimplexProduct(3, 2);
  for (int trial = 0; trial < 5; ++trial) {
    Sample s;
    for (int t = 0; t < 10; ++t) {
      Point x(6);
      x << oracles::RandomDistribution(3, rng), oracles::RandomDistribution(3, rng);
      s.actions.push_back(x);
      s.rewards.push_back(oracles::RandomVector(6, -1.0, 1.0, rng));
    }
    PolytopeSwapOptions direct;
    direct.method = PolytopeSwapOptions::Method::kDirect;
    PolytopeSwapOptions cutting;
    cutting.method = PolytopeSwapOptions::Method::kCuttingPlane;
    const RegretReport a = PolytopeSwapRegret(product, s.rewards, s.actions, direct);
    const RegretReport b = PolytopeSwapRegret(product, s.rewards, s.actions, cutting);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-8));
    CHECK(b.lower_bound <= b.value + 1e-9);
    CHECK(b.value - b.lower_bound <= 1e-8);
    // Contextual external regret never exceeds polytope swap regret.
    const RegretReport ctx =
        ContextualExternalRegret(Eigen::VectorXd::Ones(2), 3, s.rewards, s.actions);
    CHECK(ctx.value <= a.value + 1e-9);
  }
}

TEST_CASE("separation instance separates polytope and linear swap regret") {
  const SeparationInstance sep = MakeSeparationInstance(8);
  const auto& polytope = sep.instance.polytope;
  const RegretReport poly = PolytopeSwapRegret(polytope, sep.instance.rewards, sep.trajectory);
  const RegretReport linear = LinearSwapRegret(polytope, sep.instance.rewards, sep.trajectory);
  CHECK(poly.value == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(linear.value <= 1e-9);
  const double grid = oracles::GridPolytopeSwapRegret(polytope.vertices(), sep.instance.rewards,
                                                      sep.trajectory, 20);
  CHECK(std::abs(grid - poly.value) <= 0.02);
}

TEST_CASE("contextual external regret sums per-context best responses") {
  std::mt19937_64 rng(25);
  RewardSequence rewards;
  ActionSequence actions;
  for (int t = 0; t < 7; ++t) {
    rewards.push_back(oracles::RandomVector(6, -1.0, 1.0, rng));
    Point x(6);
    x << oracles::RandomDistribution(2, rng), oracles::RandomDistribution(2, rng),
        oracles::RandomDistribution(2, rng);
    actions.push_back(x);
  }
  const Eigen::Vector3d weights(0.2, 0.5, 0.3);
  double expected = 0.0;
  for (int c = 0; c < 3; ++c) {
    RewardSequence block_r;
    ActionSequence block_x;
    for (int t = 0; t < 7; ++t) {
      block_r.push_back(rewards[t].segment(2 * c, 2));
      block_x.push_back(actions[t].segment(2 * c, 2));
    }
    expected += weights(c) * oracles::ExternalRegret(block_r, block_x);
  }
  const RegretReport report = ContextualExternalRegret(weights, 2, rewards, actions);
  CHECK(report.value == doctest::Approx(expected));
  CHECK(report.response_map.size() == 3);
}

TEST_CASE("regret inputs are validated") {
  RewardSequence rewards = {Eigen::Vector2d(0.5, 0.5)};
  try {
    LinearSwapRegret(Simplex(2), rewards, {Eigen::Vector2d(0.9, 0.9)});
    FAIL("expected point-not-in-polytope");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPointNotInPolytope);
  }
  try {
    SwapRegret(rewards, {Eigen::Vector3d(1.0, 0.0, 0.0)});
    FAIL("expected shape-error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kShapeError);
  }
}

}  // namespace
}  // namespace polyswap
