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

#include "polyswap/generators.h"

#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "polyswap/equilibria.h"
#include "polyswap/error.h"
#include "polyswap/regret.h"

namespace polyswap {
namespace {

TEST_CASE("graph parsing and validation") {
  const Graph g = Graph::Parse("3\n0 1\n1 2\n");
  CHECK(g.num_vertices() == 3);
  CHECK(g.neighbors(1) == std::vector<int>{0, 2});
  CHECK(g.max_degree() == 2);
  CHECK(Graph::Parse(g.ToEdgeList()).edges() == g.edges());
  CHECK_THROWS_AS(Graph::Parse("2\n0"), Error);
  CHECK_THROWS_AS(Graph::Parse("two\n"), Error);
  CHECK_THROWS_AS(Graph(2, {{0, 2}}), Error);
  CHECK_THROWS_AS(Graph(2, {{1, 1}}), Error);
  const Graph petersen = PetersenGraph();
  CHECK(petersen.num_vertices() == 10);
  CHECK(petersen.edges().size() == 15);
  CHECK(petersen.max_degree() == 3);
}

TEST_CASE("small graph families have the expected sizes") {
  CHECK(SmallGraphs(2).size() == 2);
  CHECK(SmallGraphs(3).size() == 4);
  CHECK_THROWS_AS(SmallGraphs(5), Error);
}

TEST_CASE("separation instance layout") {
  const SeparationInstance sep = MakeSeparationInstance(12);
  CHECK(sep.instance.horizon() == 12);
  CHECK(sep.trajectory.size() == 12);
  CHECK(sep.instance.polytope.num_vertices() == 4);
  CHECK(sep.trajectory[0] == sep.instance.polytope.vertex(0));
  CHECK(sep.trajectory[11] == sep.instance.polytope.vertex(3));
  CHECK_THROWS_AS(MakeSeparationInstance(10), Error);
  const SeparationGame game = MakeSeparationGame(8);
  CHECK(game.schedule.size() == 8);
  CHECK(game.trajectory.size() == 8);
}

TEST_CASE("sign-pattern game schedules reproduce the rewards") {
  const LearningInstance instance = MakeCyclingInstance(3, 50, 5, 9);
  const Lemma1Game built = MakeLemma1Game(instance, {1, 2, 0});
  const StandardGame& game = built.game;
  CHECK(game.num_optimizer_actions() == 8);
  for (int t = 0; t < instance.horizon(); ++t) {
    const Eigen::VectorXd r = game.learner_utility().transpose() * built.schedule[t];
    CHECK((r - instance.rewards[t]).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK(StackelbergStandard(game).value <= 1e-9);
  CHECK_THROWS_AS(MakeLemma1Game(instance, {0, 3, 1}), Error);
}

TEST_CASE("contraction game schedules reproduce the rewards") {
  const Polytope square = SimplexProduct(2, 2);
  const LearningInstance instance = MakeRandomInstance(square, 20, 4);
  Eigen::MatrixXd swap_blocks = Eigen::MatrixXd::Zero(4, 4);
  // Swap the two actions in the first block only.
  swap_blocks(0, 1) = swap_blocks(1, 0) = 1.0;
  swap_blocks(2, 2) = swap_blocks(3, 3) = 1.0;
  const LinearSwapGame built = MakeLemmaLinearGame(instance, swap_blocks);
  CHECK(built.lambda > 0.0);
  for (int t = 0; t < instance.horizon(); ++t) {
    const QVertex q = built.game.Mix(built.schedule[t]);
    CHECK((q.r - instance.rewards[t]).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK(StackelbergPolytope(built.game).value <= 1e-9);
}

TEST_CASE("selling and dominating-set games") {
  const BayesianGame selling = MakeSellingGame();
  CHECK(selling.num_contexts() == 2);
  CHECK(selling.context_probs() == Eigen::Vector2d(0.5, 0.5));
  // u_L = (value_c - price) * buy with value_c = (c + 1) / 4.
  CHECK(selling.u_l(1, 1, 0) == doctest::Approx(0.25 - 1.0));
  CHECK(selling.u_l(0, 1, 1) == doctest::Approx(0.5));
  CHECK(selling.u_o(1, 1, 0) == doctest::Approx(1.0));

  const Graph edge(2, {{0, 1}});
  const BayesianGame normalized = MakeDominatingSetGame(edge);
  const BayesianGame shifted = MakeDominatingSetGame(edge, DominatingSetPayoffs::kAsDisplayed);
  CHECK(normalized.num_contexts() == 4);
  CHECK(normalized.num_learner_actions() == 5);
  CHECK(StackelbergBayesian(shifted).value ==
        doctest::Approx(StackelbergBayesian(normalized).value + 1.0 / 4).epsilon(1e-7));
  CHECK_THROWS_AS(MakeDominatingSetGame(Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})), Error);
}

TEST_CASE("random generators are deterministic and in range") {
  CHECK(MakeRandomStandardGame(3, 2, 5).optimizer_utility() ==
        MakeRandomStandardGame(3, 2, 5).optimizer_utility());
  CHECK(MakeRandomStandardGame(3, 2, 5).optimizer_utility() !=
        MakeRandomStandardGame(3, 2, 6).optimizer_utility());
  const BayesianGame b = MakeRandomBayesianGame(2, 3, 3, 8);
  CHECK(b.context_probs().sum() == doctest::Approx(1.0));
  for (int c = 0; c < 3; ++c) CHECK(b.learner_utility(c).cwiseAbs().maxCoeff() <= 1.0);
  const PolytopeGame p = MakeRandomPolytopeGame(4, 4, 3, 2);
  CHECK(p.polytope().num_vertices() == 4);
  CHECK(p.num_q_vertices() == 3);
  const LearningInstance cyc = MakeCyclingInstance(3, 40, 10, 1);
  for (const auto& r : cyc.rewards) CHECK(r.cwiseAbs().maxCoeff() <= 1.0);
  CHECK_THROWS_AS(LearningInstance(Simplex(2), {Eigen::Vector2d(2.0, 0.0)}), Error);
}

}  // namespace
}  // namespace polyswap
