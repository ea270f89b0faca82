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

#include "polyswap/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"

namespace polyswap::lp {
namespace {

TEST_CASE("maximizes a bounded two-variable program") {
  // max x + 2y s.t. x + y <= 4, x <= 3, y <= 2.
  LinearProgram program(2);
  program.set_objective(std::vector<double>{1.0, 2.0});
  program.AddRow(std::vector<double>{1.0, 1.0}, Relation::kLessEqual, 4.0);
  program.AddRow(std::vector<double>{1.0, 0.0}, Relation::kLessEqual, 3.0);
  program.AddRow(std::vector<double>{0.0, 1.0}, Relation::kLessEqual, 2.0);
  const Solution s = Solve(program);
  REQUIRE(s.optimal());
  CHECK(s.objective == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(s.values[0] == doctest::Approx(2.0));
  CHECK(s.values[1] == doctest::Approx(2.0));
  CHECK(MaxViolation(program, s.values) <= 1e-12);
}

TEST_CASE("minimization with equality and greater-equal rows") {
  LinearProgram program(3);
  program.set_maximize(false);
  program.set_objective(std::vector<double>{2.0, 3.0, 1.0});
  program.AddRow(std::vector<double>{1.0, 1.0, 1.0}, Relation::kEqual, 1.0);
  program.AddRow(std::vector<double>{0.0, 0.0, 1.0}, Relation::kLessEqual, 0.25);
  program.AddRow(std::vector<double>{0.0, 1.0, 0.0}, Relation::kGreaterEqual, 0.5);
  const Solution s = Solve(program);
  REQUIRE(s.optimal());
  CHECK(s.objective == doctest::Approx(0.25 + 1.5 + 0.5));
}

TEST_CASE("free variables may go negative") {
  LinearProgram program(1);
  program.set_free(0);
  program.set_maximize(false);
  program.set_objective(0, 1.0);
  program.AddSparseRow({{0, 1.0}}, Relation::kGreaterEqual, -3.0);
  const Solution s = Solve(program);
  REQUIRE(s.optimal());
  CHECK(s.values[0] == doctest::Approx(-3.0));
}

TEST_CASE("reports infeasible and unbounded programs") {
  LinearProgram infeasible(1);
  infeasible.AddSparseRow({{0, 1.0}}, Relation::kLessEqual, 1.0);
  infeasible.AddSparseRow({{0, 1.0}}, Relation::kGreaterEqual, 2.0);
  CHECK(Solve(infeasible).status == Status::kInfeasible);

  LinearProgram unbounded(2);
  unbounded.set_objective(std::vector<double>{1.0, 0.0});
  unbounded.AddRow(std::vector<double>{0.0, 1.0}, Relation::kLessEqual, 1.0);
  CHECK(Solve(unbounded).status == Status::kUnbounded);
}

TEST_CASE("degenerate vertex does not stall") {
  // Several constraints through the optimum (1, 1).
  LinearProgram program(2);
  program.set_objective(std::vector<double>{1.0, 1.0});
  program.AddRow(std::vector<double>{1.0, 0.0}, Relation::kLessEqual, 1.0);
  program.AddRow(std::vector<double>{0.0, 1.0}, Relation::kLessEqual, 1.0);
  program.AddRow(std::vector<double>{1.0, 1.0}, Relation::kLessEqual, 2.0);
  program.AddRow(std::vector<double>{2.0, 1.0}, Relation::kLessEqual, 3.0);
  program.AddRow(std::vector<double>{1.0, 2.0}, Relation::kLessEqual, 3.0);
  const Solution s = Solve(program);
  REQUIRE(s.optimal());
  CHECK(s.objective == doctest::Approx(2.0));
}

TEST_CASE("Beale's cycling example terminates at the optimum") {
  // Dantzig pricing with lowest-index ties cycles on this program.
  LinearProgram program(4);
  program.set_maximize(false);
  program.set_objective(std::vector<double>{-0.75, 20.0, -0.5, 6.0});
  program.AddRow(std::vector<double>{0.25, -8.0, -1.0, 9.0}, Relation::kLessEqual, 0.0);
  program.AddRow(std::vector<double>{0.5, -12.0, -0.5, 3.0}, Relation::kLessEqual, 0.0);
  program.AddRow(std::vector<double>{0.0, 0.0, 1.0, 0.0}, Relation::kLessEqual, 1.0);
  const Solution s = Solve(program);
  REQUIRE(s.optimal());
  CHECK(s.objective == doctest::Approx(-1.25).epsilon(1e-12));
}

// Min over convex weights w of sum_v max_w' sum_k w_k G_k(v, w'), written with
// free epigraph variables: feasible for every G and highly degenerate.
TEST_CASE("degenerate epigraph programs with free variables stay feasible") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> gain(-3.0, 3.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int nk = 1 + trial % 15, nv = 2 + trial % 8;
    LinearProgram program(nk + nv);
    program.set_maximize(false);
    for (int v = 0; v < nv; ++v) {
      program.set_free(nk + v);
      program.set_objective(nk + v, 1.0);
    }
    for (int v = 0; v < nv; ++v) {
      for (int w = 0; w < nv; ++w) {
        std::vector<std::pair<int, double>> terms{{nk + v, 1.0}};
        for (int k = 0; k < nk; ++k) terms.emplace_back(k, -gain(rng));
        program.AddSparseRow(terms, Relation::kGreaterEqual, 0.0);
      }
    }
    std::vector<double> simplex(nk + nv, 0.0);
    for (int k = 0; k < nk; ++k) simplex[k] = 1.0;
    program.AddRow(simplex, Relation::kEqual, 1.0);
    const Solution s = Solve(program);
    REQUIRE(s.optimal());
    CHECK(MaxViolation(program, s.values) <= 1e-9);
  }
}

// Vertex enumeration of {x >= 0, A x <= b} in the plane.
double PlanarOptimum(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                     const std::vector<double>& c) {
  std::vector<std::vector<double>> lines = a;
  std::vector<double> rhs = b;
  lines.push_back({-1.0, 0.0});
  rhs.push_back(0.0);
  lines.push_back({0.0, -1.0});
  rhs.push_back(0.0);
  double best = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < lines.size(); ++i) {
    for (size_t j = i + 1; j < lines.size(); ++j) {
      const double det = lines[i][0] * lines[j][1] - lines[i][1] * lines[j][0];
      if (std::abs(det) < 1e-12) continue;
      const double x = (rhs[i] * lines[j][1] - lines[i][1] * rhs[j]) / det;
      const double y = (lines[i][0] * rhs[j] - rhs[i] * lines[j][0]) / det;
      bool feasible = true;
      for (size_t k = 0; k < lines.size(); ++k) {
        if (lines[k][0] * x + lines[k][1] * y > rhs[k] + 1e-9) feasible = false;
      }
      if (feasible) best = std::max(best, c[0] * x + c[1] * y);
    }
  }
  return best;
}

TEST_CASE("random planar programs match vertex enumeration") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_real_distribution<double> offset(0.5, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<double>> a = {{1.0, 1.0}};
    std::vector<double> b = {5.0};
    const int extra = 1 + trial % 5;
    for (int k = 0; k < extra; ++k) {
      a.push_back({coeff(rng), coeff(rng)});
      b.push_back(offset(rng));
    }
    const std::vector<double> c = {coeff(rng), coeff(rng)};
    LinearProgram program(2);
    program.set_objective(c);
    for (size_t k = 0; k < a.size(); ++k) program.AddRow(a[k], Relation::kLessEqual, b[k]);
    const Solution s = Solve(program);
    REQUIRE(s.optimal());
    CHECK(s.objective == doctest::Approx(PlanarOptimum(a, b, c)).epsilon(1e-9));
    CHECK(MaxViolation(program, s.values) <= 1e-9);
  }
}

TEST_CASE("status names") {
  CHECK(std::string(StatusName(Status::kOptimal)) == "optimal");
  CHECK(std::string(StatusName(Status::kInfeasible)) == "infeasible");
}

}  // namespace
}  // namespace polyswap::lp
