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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "polyswap/error.h"
#include "polyswap/generators.h"
#include "polyswap/harness.h"
#include "polyswap/regret.h"

namespace polyswap {
namespace {

Eigen::MatrixXd RandomStochastic(int rows, int cols, std::mt19937_64& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) m.row(i) = oracles::RandomDistribution(cols, rng).transpose();
  return m;
}

TEST_CASE("Hedge step size and exponential weights") {
  Hedge hedge(4, 100);
  CHECK(hedge.eta() == doctest::Approx(std::sqrt(8.0 * std::log(4.0) / 100)));
  CHECK((hedge.Distribution() - Eigen::VectorXd::Constant(4, 0.25)).norm() <= 1e-15);
  const Eigen::Vector4d r(1.0, 0.0, -1.0, 0.5);
  hedge.Update(r);
  hedge.Update(r);
  Eigen::Vector4d expected = (2.0 * hedge.eta() * r).array().exp();
  expected /= expected.sum();
  CHECK((hedge.Distribution() - expected).norm() <= 1e-12);
  CHECK_THROWS_AS(Hedge(0, 10), Error);
  CHECK_THROWS_AS(Hedge(3, 0), Error);
}

TEST_CASE("Hedge and Blum-Mansour stay under their regret bounds") {
  std::mt19937_64 rng(41);
  const int horizon = 400;
  for (int n = 2; n <= 4; ++n) {
    HedgeLearner hedge(n, horizon);
    BlumMansourLearner bm(n, horizon);
    std::vector<Eigen::VectorXd> rewards;
    for (int t = 0; t < horizon; ++t) rewards.push_back(oracles::RandomVector(n, -1.0, 1.0, rng));
    const auto hedge_play = PlayInstance(hedge, rewards);
    const auto bm_play = PlayInstance(bm, rewards);
    // Hedge on rewards of range 2: 2 sqrt(T ln N / 2).
    const double bound = 2.0 * std::sqrt(horizon * std::log(n) / 2.0);
    CHECK(oracles::ExternalRegret(rewards, hedge_play) <= bound);
    CHECK(oracles::SwapRegret(rewards, bm_play) <= n * bound);
    for (const auto& x : bm_play) {
      CHECK(x.minCoeff() >= -1e-12);
      CHECK(x.sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("stationary distribution solves p Q = p") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 6;
    const Eigen::MatrixXd q = RandomStochastic(n, n, rng);
    const Eigen::VectorXd p = StationaryDistribution(q);
    CHECK((q.transpose() * p - p).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(p.sum() == doctest::Approx(1.0));
    CHECK(p.minCoeff() >= -1e-12);
    // Least-squares solve of [Q^T - I; 1^T] p = [0; 1].
    Eigen::MatrixXd a(n + 1, n);
    a.topRows(n) = q.transpose() - Eigen::MatrixXd::Identity(n, n);
    a.row(n).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
    b(n) = 1.0;
    const Eigen::VectorXd reference = a.colPivHouseholderQr().solve(b);
    CHECK((reference - p).cwiseAbs().maxCoeff() <= 1e-8);
  }
  // A periodic chain still has the uniform stationary distribution.
  Eigen::Matrix2d flip;
  flip << 0, 1, 1, 0;
  CHECK((StationaryDistribution(flip) - Eigen::Vector2d(0.5, 0.5)).norm() <= 1e-8);
}

TEST_CASE("vertex-lifted learner: polytope swap regret below inner swap regret") {
  const Polytope square = SimplexProduct(2, 2);
  for (int seed = 0; seed < 3; ++seed) {
    const LearningInstance instance = MakeRandomInstance(square, 300, 60 + seed);
    VertexLiftedLearner learner(square, instance.horizon());
    const auto play = PlayInstance(learner, instance.rewards);
    for (const auto& x : play) CHECK(square.Contains(x));
    const double poly = PolytopeSwapRegret(square, instance.rewards, play).value;
    const double inner =
        oracles::SwapRegret(learner.inner_rewards(), learner.inner_actions());
    CHECK(poly <= inner + 1e-8);
  }
}

TEST_CASE("per-context and context-swap learners play inside the product") {
  const BayesianGame selling = MakeSellingGame();
  const Polytope product = SimplexProduct(2, 2);
  const LearningInstance instance = MakeRandomInstance(product, 60, 7);
  PerContextLearner bm(selling.context_probs(), 2, 60);
  PerContextLearner hedge(selling.context_probs(), 2, 60, InnerAlgorithm::kHedge);
  ContextSwapLearner swap(selling.context_probs(), 2, 60);
  for (Learner* learner : std::vector<Learner*>{&bm, &hedge, &swap}) {
    CHECK(learner->dim() == 4);
    for (const auto& x : PlayInstance(*learner, instance.rewards)) CHECK(product.Contains(x));
  }
  CHECK(swap.iteration_log().size() == 60);
}

TEST_CASE("fixed-point solver returns a row-stochastic fixed point") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    FixedPointProblem problem;
    problem.num_actions = 1 + trial % 4;
    problem.num_contexts = 1 + (trial / 4) % 4;
    for (int c = 0; c < problem.num_contexts; ++c) {
      problem.gamma.push_back(
          RandomStochastic(problem.num_actions, problem.num_actions + problem.num_contexts, rng));
    }
    problem.Validate();
    const FixedPointResult result = FixedPointSolve(problem);
    CHECK(result.residual < 1e-10);
    CHECK((problem.Apply(result.beta) - result.beta).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(result.beta.minCoeff() >= 0.0);
    CHECK((result.beta.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-12);
    CHECK(result.max_stochastic_error <= 1e-12);
  }
  FixedPointProblem bad;
  bad.num_actions = 2;
  bad.num_contexts = 1;
  bad.gamma = {Eigen::MatrixXd::Constant(2, 3, 0.5)};
  CHECK_THROWS_AS(bad.Validate(), Error);
}

TEST_CASE("scripted learner replays its trajectory") {
  ScriptedLearner learner({Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)});
  CHECK(learner.Act() == Eigen::Vector2d(1, 0));
  learner.Observe(Eigen::Vector2d::Zero());
  CHECK(learner.Act() == Eigen::Vector2d(0, 1));
  learner.Observe(Eigen::Vector2d::Zero());
  try {
    learner.Act();
    FAIL("expected out-of-range-round");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOutOfRangeRound);
  }
}

}  // namespace
}  // namespace polyswap
