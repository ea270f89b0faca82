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

#include "polyswap/geometry.h"

#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "polyswap/error.h"

namespace polyswap {
namespace {

Point Vec(std::initializer_list<double> values) {
  Point p(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) p(i++) = v;
  return p;
}

TEST_CASE("simplex has unit vertices and rejects outside points") {
  const Polytope simplex = Simplex(3);
  CHECK(simplex.dim() == 3);
  REQUIRE(simplex.num_vertices() == 3);
  CHECK(simplex.vertex(1) == Vec({0, 1, 0}));
  CHECK(simplex.Contains(Vec({0.2, 0.3, 0.5})));
  CHECK_FALSE(simplex.Contains(Vec({0.2, 0.3, 0.6})));
  CHECK_FALSE(simplex.Contains(Vec({-0.1, 0.6, 0.5})));
  CHECK_THROWS_AS(Simplex(0), Error);
}

TEST_CASE("product vertices use context 0 as the most significant digit") {
  const Polytope product = SimplexProduct(2, 2);
  REQUIRE(product.num_vertices() == 4);
  CHECK(product.vertex(0) == Vec({1, 0, 1, 0}));
  CHECK(product.vertex(1) == Vec({1, 0, 0, 1}));
  CHECK(product.vertex(2) == Vec({0, 1, 1, 0}));
  const ProductOfSimplices s{3, 4};
  for (std::int64_t index = 0; index < 81; ++index) {
    CHECK(ProductVertexIndex(s, ProductVertexChoices(s, index)) == index);
  }
}

TEST_CASE("large products stay implicit under the vertex budget") {
  const Polytope big = SimplexProduct(5, 10, 1000);
  CHECK_FALSE(big.has_explicit_vertices());
  CHECK(big.num_vertices() == 9765625);
  CHECK(big.Contains(big.vertex(123456)));
  try {
    (void)big.vertices();
    FAIL("expected vertex-budget-exceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kVertexBudgetExceeded);
  }
}

TEST_CASE("constructor rejects a listed point that is not a vertex") {
  std::vector<Halfspace> facets = {{Vec({-1, 0}), 0}, {Vec({0, -1}), 0}, {Vec({1, 1}), 1}};
  CHECK_THROWS_AS(
      Polytope(2, {Vec({0, 0}), Vec({1, 0}), Vec({0, 1}), Vec({0.5, 0})}, facets, {}), Error);
  CHECK_NOTHROW(Polytope(2, {Vec({0, 0}), Vec({1, 0}), Vec({0, 1})}, facets, {}));
}

TEST_CASE("Caratheodory decompositions recompose with small support") {
  std::mt19937_64 rng(3);
  const Polytope product = SimplexProduct(3, 2);
  for (int trial = 0; trial < 50; ++trial) {
    Point x(6);
    x << oracles::RandomDistribution(3, rng), oracles::RandomDistribution(3, rng);
    const VertexDecomposition rho = CaratheodoryDecompose(product, x);
    CHECK(rho.weights.minCoeff() >= -1e-12);
    CHECK(rho.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho.support_size(1e-12) <= product.dim() + 1);
    CHECK((rho.Recompose(product) - x).cwiseAbs().maxCoeff() <= 1e-9);
  }
  CHECK_THROWS_AS(CaratheodoryDecompose(product, Point::Ones(6)), Error);
}

TEST_CASE("hypercube decomposition recomposes the reward") {
  CHECK(SignPattern(3, 0) == Vec({-1, -1, -1}));
  CHECK(SignPattern(3, 4) == Vec({1, -1, -1}));
  CHECK(SignPattern(3, 7) == Vec({1, 1, 1}));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd r = oracles::RandomVector(4, -1.0, 1.0, rng);
    const Eigen::VectorXd w = HypercubeDecompose(r);
    REQUIRE(w.size() == 16);
    CHECK(w.minCoeff() >= 0.0);
    CHECK(w.sum() == doctest::Approx(1.0));
    Eigen::VectorXd back = Eigen::VectorXd::Zero(4);
    for (int i = 0; i < 16; ++i) back += w(i) * SignPattern(4, i);
    CHECK((back - r).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("vertex swaps move weight onto images") {
  const Polytope simplex = Simplex(3);
  VertexDecomposition rho{Vec({0.5, 0.3, 0.2})};
  const auto [moved, point] = ApplyVertexSwap(simplex, VertexSwap{{2, 2, 0}}, rho);
  CHECK((moved.weights - Vec({0.2, 0.0, 0.8})).norm() <= 1e-15);
  CHECK((point - Vec({0.2, 0.0, 0.8})).norm() <= 1e-15);
  const auto [same, identity_point] =
      ApplyVertexSwap(simplex, VertexSwap::Identity(3), rho);
  CHECK((identity_point - rho.weights).norm() <= 1e-15);
}

TEST_CASE("contraction system contains the identity and vertex-constant maps") {
  const Polytope product = SimplexProduct(2, 2);
  const ContractionSystem system = ContractionConstraints(product);
  CHECK(system.Contains(Eigen::MatrixXd::Identity(4, 4)));
  // x -> v_0 for all x in P: M = v_0 * (sum of the first block).
  Eigen::MatrixXd constant = Eigen::MatrixXd::Zero(4, 4);
  constant.col(0) = product.vertex(0);
  constant.col(1) = product.vertex(0);
  CHECK(system.Contains(constant));
  CHECK_FALSE(system.Contains(2.0 * Eigen::MatrixXd::Identity(4, 4)));
  const Eigen::MatrixXd complement = VertexSpanComplement(product);
  REQUIRE(complement.cols() == 1);
  for (const auto& v : product.vertices()) CHECK(std::abs(complement.col(0).dot(v)) <= 1e-12);
}

// The affine self-maps of the unit square, read on Delta([2])^2 through
// p = (x_0, x_2), give the contractions of the product restricted to P.
TEST_CASE("contractions of the square product have 36 extreme points") {
  const auto extreme = oracles::SquareSelfMapExtremePoints();
  CHECK(extreme.size() == 36);

  const Polytope product = SimplexProduct(2, 2);
  const ContractionSystem system = ContractionConstraints(product);
  const auto& vertices = product.vertices();
  auto image = [](const Eigen::VectorXd& z, const Point& v) {
    const double p1 = v(0), p2 = v(2);
    const double y1 = z(0) * p1 + z(1) * p2 + z(4);
    const double y2 = z(2) * p1 + z(3) * p2 + z(5);
    return Vec({y1, 1.0 - y1, y2, 1.0 - y2});
  };
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Eigen::VectorXd> w;
    for (int v = 0; v < 4; ++v) w.push_back(oracles::RandomVector(4, -1.0, 1.0, rng));
    double oracle = -1e300;
    for (const auto& z : extreme) {
      double total = 0.0;
      for (int v = 0; v < 4; ++v) total += w[v].dot(image(z, vertices[v]));
      oracle = std::max(oracle, total);
    }
    lp::LinearProgram program(16);
    for (int k = 0; k < 16; ++k) program.set_free(k);
    for (int k = 0; k < 4; ++k) {
      for (int l = 0; l < 4; ++l) {
        double coeff = 0.0;
        for (int v = 0; v < 4; ++v) coeff += w[v](k) * vertices[v](l);
        program.set_objective(k * 4 + l, coeff);
      }
    }
    system.AppendTo(&program, 0);
    const lp::Solution s = lp::Solve(program);
    REQUIRE(s.optimal());
    CHECK(s.objective == doctest::Approx(oracle).epsilon(1e-9));
  }
}

}  // namespace
}  // namespace polyswap
