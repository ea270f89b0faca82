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
#include <cmath>
#include <limits>
#include <string>

#include "polyswap/error.h"

namespace polyswap {
namespace {

std::int64_t CheckedPower(std::int64_t base, int exponent,
                          std::int64_t limit) {
  std::int64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (result > limit / base) return -1;
    result *= base;
  }
  return result;
}

// True if `vertices[index]` is a convex combination of the other vertices.
bool IsRedundantVertex(const std::vector<Point>& vertices, size_t index) {
  const int others = static_cast<int>(vertices.size()) - 1;
  if (others == 0) return false;
  const int dim = static_cast<int>(vertices[index].size());
  lp::LinearProgram program(others);
  for (int k = 0; k < dim; ++k) {
    std::vector<std::pair<int, double>> terms;
    int col = 0;
    for (size_t v = 0; v < vertices.size(); ++v) {
      if (v == index) continue;
      terms.emplace_back(col++, vertices[v](k));
    }
    program.AddSparseRow(terms, lp::Relation::kEqual, vertices[index](k));
  }
  std::vector<double> ones(others, 1.0);
  program.AddRow(ones, lp::Relation::kEqual, 1.0);
  return lp::Solve(program).optimal();
}

}  // namespace

Polytope::Polytope(int dim, std::vector<Point> vertices,
                   std::vector<Halfspace> facets,
                   std::vector<Halfspace> equalities,
                   std::optional<ProductOfSimplices> structure)
    : dim_(dim),
      num_vertices_(static_cast<std::int64_t>(vertices.size())),
      vertices_(std::move(vertices)),
      facets_(std::move(facets)),
      equalities_(std::move(equalities)),
      structure_(structure) {
  if (dim_ <= 0) {
    throw Error(ErrorCode::kInvalidDimension, "polytope dimension must be positive");
  }
  if (vertices_.empty()) {
    throw Error(ErrorCode::kInvalidDimension, "polytope needs a vertex");
  }
  for (const auto& h : facets_) {
    if (h.normal.size() != dim_) throw Error(ErrorCode::kShapeError, "facet normal length");
  }
  for (const auto& h : equalities_) {
    if (h.normal.size() != dim_) throw Error(ErrorCode::kShapeError, "equality normal length");
  }
  for (size_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].size() != dim_) {
      throw Error(ErrorCode::kShapeError, "vertex length does not match dimension");
    }
    if (!vertices_[v].allFinite()) {
      throw Error(ErrorCode::kShapeError, "vertex has non-finite entries");
    }
    if (!Contains(vertices_[v])) {
      throw Error(ErrorCode::kPointNotInPolytope,
                  "vertex " + std::to_string(v) + " violates the constraints");
    }
  }
  if (structure_) {
    const auto& s = *structure_;
    if (s.num_actions * s.num_contexts != dim_ ||
        CheckedPower(s.num_actions, s.num_contexts,
                     std::numeric_limits<std::int64_t>::max()) != num_vertices_ ||
        static_cast<int>(equalities_.size()) != s.num_contexts) {
      throw Error(ErrorCode::kShapeError, "inconsistent product-of-simplices tag");
    }
  } else {
    for (size_t v = 0; v < vertices_.size(); ++v) {
      if (IsRedundantVertex(vertices_, v)) {
        throw Error(ErrorCode::kShapeError,
                    "vertex " + std::to_string(v) + " is not extreme");
      }
    }
  }
}

Polytope Polytope::ImplicitProduct(ProductOfSimplices structure,
                                   std::int64_t vertex_budget) {
  (void)vertex_budget;
  Polytope p;
  const int n = structure.num_actions;
  const int c = structure.num_contexts;
  p.dim_ = n * c;
  p.num_vertices_ = CheckedPower(n, c, std::int64_t{1} << 62);
  if (p.num_vertices_ < 0) {
    throw Error(ErrorCode::kVertexBudgetExceeded, "N^C does not fit in 62 bits");
  }
  p.implicit_ = true;
  p.structure_ = structure;
  for (int k = 0; k < p.dim_; ++k) {
    Halfspace h{Eigen::VectorXd::Zero(p.dim_), 0.0};
    h.normal(k) = -1.0;
    p.facets_.push_back(std::move(h));
  }
  for (int ctx = 0; ctx < c; ++ctx) {
    Halfspace h{Eigen::VectorXd::Zero(p.dim_), 1.0};
    h.normal.segment(ctx * n, n).setOnes();
    p.equalities_.push_back(std::move(h));
  }
  return p;
}

const std::vector<Point>& Polytope::vertices() const {
  if (implicit_) {
    throw Error(ErrorCode::kVertexBudgetExceeded,
                "vertex list of size " + std::to_string(num_vertices_) +
                    " was not materialized");
  }
  return vertices_;
}

Point Polytope::vertex(std::int64_t index) const {
  if (index < 0 || index >= num_vertices_) {
    throw Error(ErrorCode::kShapeError, "vertex index out of range");
  }
  if (!implicit_) return vertices_[index];
  const auto& s = *structure_;
  Point v = Point::Zero(dim_);
  const auto choices = ProductVertexChoices(s, index);
  for (int c = 0; c < s.num_contexts; ++c) v(s.coordinate(c, choices[c])) = 1.0;
  return v;
}

double Polytope::MaxViolation(const Point& x) const {
  if (x.size() != dim_) {
    throw Error(ErrorCode::kShapeError, "point length does not match dimension");
  }
  double worst = 0.0;
  for (const auto& h : facets_) worst = std::max(worst, h.normal.dot(x) - h.offset);
  for (const auto& h : equalities_) {
    worst = std::max(worst, std::abs(h.normal.dot(x) - h.offset));
  }
  return worst;
}

Point VertexDecomposition::Recompose(const Polytope& polytope) const {
  if (weights.size() != polytope.num_vertices()) {
    throw Error(ErrorCode::kShapeError, "decomposition length mismatch");
  }
  Point x = Point::Zero(polytope.dim());
  for (Eigen::Index v = 0; v < weights.size(); ++v) {
    if (weights(v) != 0.0) x += weights(v) * polytope.vertex(v);
  }
  return x;
}

int VertexDecomposition::support_size(double tol) const {
  return static_cast<int>((weights.array().abs() > tol).count());
}

VertexSwap VertexSwap::Identity(int num_vertices) {
  VertexSwap swap;
  swap.mapping.resize(num_vertices);
  for (int v = 0; v < num_vertices; ++v) swap.mapping[v] = v;
  return swap;
}

Polytope Simplex(int num_actions) {
  if (num_actions <= 0) {
    throw Error(ErrorCode::kInvalidDimension, "simplex needs N >= 1");
  }
  std::vector<Point> vertices;
  std::vector<Halfspace> facets;
  for (int j = 0; j < num_actions; ++j) {
    vertices.push_back(Point::Unit(num_actions, j));
    facets.push_back({-Eigen::VectorXd::Unit(num_actions, j), 0.0});
  }
  std::vector<Halfspace> equalities{{Eigen::VectorXd::Ones(num_actions), 1.0}};
  return Polytope(num_actions, std::move(vertices), std::move(facets),
                  std::move(equalities),
                  ProductOfSimplices{num_actions, 1});
}

std::vector<int> ProductVertexChoices(const ProductOfSimplices& structure,
                                      std::int64_t index) {
  std::vector<int> choices(structure.num_contexts);
  for (int c = structure.num_contexts - 1; c >= 0; --c) {
    choices[c] = static_cast<int>(index % structure.num_actions);
    index /= structure.num_actions;
  }
  return choices;
}

std::int64_t ProductVertexIndex(const ProductOfSimplices& structure,
                                const std::vector<int>& choices) {
  if (static_cast<int>(choices.size()) != structure.num_contexts) {
    throw Error(ErrorCode::kShapeError, "choice vector length mismatch");
  }
  std::int64_t index = 0;
  for (int c = 0; c < structure.num_contexts; ++c) {
    if (choices[c] < 0 || choices[c] >= structure.num_actions) {
      throw Error(ErrorCode::kShapeError, "choice out of range");
    }
    index = index * structure.num_actions + choices[c];
  }
  return index;
}

Polytope SimplexProduct(int num_actions, int num_contexts,
                        std::int64_t vertex_budget) {
  if (num_actions <= 0 || num_contexts <= 0) {
    throw Error(ErrorCode::kInvalidDimension, "simplex product needs N, C >= 1");
  }
  const ProductOfSimplices structure{num_actions, num_contexts};
  Polytope implicit = Polytope::ImplicitProduct(structure, vertex_budget);
  if (implicit.num_vertices() > vertex_budget) return implicit;

  std::vector<Point> vertices;
  vertices.reserve(implicit.num_vertices());
  for (std::int64_t k = 0; k < implicit.num_vertices(); ++k) {
    vertices.push_back(implicit.vertex(k));
  }
  return Polytope(implicit.dim(), std::move(vertices), implicit.facets(),
                  implicit.equalities(), structure);
}

Polytope SimplexFromVertices(const std::vector<Point>& points) {
  if (points.empty()) {
    throw Error(ErrorCode::kInvalidDimension, "need at least one point");
  }
  const int dim = static_cast<int>(points[0].size());
  const int k = static_cast<int>(points.size());
  if (k > dim + 1) {
    throw Error(ErrorCode::kShapeError, "more than dim + 1 points cannot be affinely independent");
  }
  // Barycentric coordinates: lambda = pinv([P; 1]) [x; 1].
  Eigen::MatrixXd lifted(dim + 1, k);
  for (int i = 0; i < k; ++i) {
    lifted.col(i).head(dim) = points[i];
    lifted(dim, i) = 1.0;
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(lifted);
  if (cod.rank() != k) {
    throw Error(ErrorCode::kShapeError, "points are not affinely independent");
  }
  const Eigen::MatrixXd pinv = cod.pseudoInverse();  // k x (dim + 1)

  std::vector<Halfspace> facets;
  if (k > 1) {
    for (int i = 0; i < k; ++i) {
      // lambda_i(x) = g . x + h >= 0  <=>  -g . x <= h.
      facets.push_back({-pinv.row(i).head(dim).transpose(), pinv(i, dim)});
    }
  }
  // Affine hull: normals n with n^T (p_i - p_0) = 0.
  std::vector<Halfspace> equalities;
  Eigen::MatrixXd directions(dim, std::max(k - 1, 1));
  directions.setZero();
  for (int i = 1; i < k; ++i) directions.col(i - 1) = points[i] - points[0];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(directions, Eigen::ComputeFullU);
  const int rank = k - 1;
  for (int j = rank; j < dim; ++j) {
    Eigen::VectorXd n = svd.matrixU().col(j);
    equalities.push_back({n, n.dot(points[0])});
  }
  return Polytope(dim, points, std::move(facets), std::move(equalities));
}

VertexDecomposition CaratheodoryDecompose(const Polytope& polytope,
                                          const Point& x) {
  if (!polytope.Contains(x)) {
    throw Error(ErrorCode::kPointNotInPolytope, "cannot decompose a point outside P");
  }
  const auto& vertices = polytope.vertices();
  const int dim = polytope.dim();
  std::vector<int> support(vertices.size());
  for (size_t v = 0; v < vertices.size(); ++v) support[v] = static_cast<int>(v);

  Eigen::VectorXd weights;
  while (true) {
    const int n = static_cast<int>(support.size());
    lp::LinearProgram program(n);
    for (int k = 0; k < dim; ++k) {
      std::vector<std::pair<int, double>> terms;
      for (int s = 0; s < n; ++s) terms.emplace_back(s, vertices[support[s]](k));
      program.AddSparseRow(terms, lp::Relation::kEqual, x(k));
    }
    std::vector<double> ones(n, 1.0);
    program.AddRow(ones, lp::Relation::kEqual, 1.0);
    const auto solution = lp::Solve(program);
    if (!solution.optimal()) {
      throw Error(ErrorCode::kPointNotInPolytope, "decomposition LP is infeasible");
    }
    std::vector<int> next;
    for (int s = 0; s < n; ++s) {
      if (solution.values[s] > 0.0) next.push_back(support[s]);
    }
    if (next.size() == support.size() &&
        static_cast<int>(next.size()) <= dim + 1) {
      weights = Eigen::VectorXd::Zero(polytope.num_vertices());
      for (int s = 0; s < n; ++s) weights(support[s]) = solution.values[s];
      break;
    }
    support = std::move(next);
  }
  weights /= weights.sum();
  return {weights};
}

Eigen::VectorXd SignPattern(int dim, std::int64_t index) {
  Eigen::VectorXd s(dim);
  for (int j = 0; j < dim; ++j) {
    s(j) = ((index >> (dim - 1 - j)) & 1) ? 1.0 : -1.0;
  }
  return s;
}

Eigen::VectorXd HypercubeDecompose(const Eigen::VectorXd& reward) {
  const int dim = static_cast<int>(reward.size());
  if (dim <= 0 || dim > 30) {
    throw Error(ErrorCode::kVertexBudgetExceeded, "hypercube dimension out of range");
  }
  for (int j = 0; j < dim; ++j) {
    if (!(std::abs(reward(j)) <= 1.0)) {
      throw Error(ErrorCode::kRewardOutOfRange, "reward coordinate outside [-1, 1]");
    }
  }
  const std::int64_t count = std::int64_t{1} << dim;
  Eigen::VectorXd weights(count);
  for (std::int64_t i = 0; i < count; ++i) {
    double w = 1.0;
    for (int j = 0; j < dim; ++j) {
      const bool plus = (i >> (dim - 1 - j)) & 1;
      w *= plus ? (1.0 + reward(j)) / 2.0 : (1.0 - reward(j)) / 2.0;
    }
    weights(i) = w;
  }
  return weights;
}

std::pair<VertexDecomposition, Point> ApplyVertexSwap(
    const Polytope& polytope, const VertexSwap& swap,
    const VertexDecomposition& rho) {
  const std::int64_t n = polytope.num_vertices();
  if (static_cast<std::int64_t>(swap.mapping.size()) != n ||
      rho.weights.size() != n) {
    throw Error(ErrorCode::kShapeError, "swap or decomposition does not cover V(P)");
  }
  VertexDecomposition image{Eigen::VectorXd::Zero(n)};
  for (std::int64_t v = 0; v < n; ++v) {
    const int target = swap.mapping[v];
    if (target < 0 || target >= n) {
      throw Error(ErrorCode::kShapeError, "swap maps outside V(P)");
    }
    image.weights(target) += rho.weights(v);
  }
  Point x = image.Recompose(polytope);
  return {std::move(image), std::move(x)};
}

double ContractionSystem::MaxViolation(const Eigen::MatrixXd& matrix) const {
  double worst = 0.0;
  for (const auto& c : constraints) {
    const double lhs = (c.coeffs.array() * matrix.array()).sum();
    switch (c.relation) {
      case lp::Relation::kLessEqual: worst = std::max(worst, lhs - c.rhs); break;
      case lp::Relation::kGreaterEqual: worst = std::max(worst, c.rhs - lhs); break;
      case lp::Relation::kEqual: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

void ContractionSystem::AppendTo(lp::LinearProgram* program,
                                 int first_var) const {
  for (const auto& c : constraints) {
    std::vector<std::pair<int, double>> terms;
    for (int k = 0; k < dim; ++k) {
      for (int l = 0; l < dim; ++l) {
        if (c.coeffs(k, l) != 0.0) {
          terms.emplace_back(first_var + k * dim + l, c.coeffs(k, l));
        }
      }
    }
    program->AddSparseRow(terms, c.relation, c.rhs);
  }
}

ContractionSystem ContractionConstraints(const Polytope& polytope) {
  ContractionSystem system;
  system.dim = polytope.dim();
  for (const auto& v : polytope.vertices()) {
    // a . (M v) = sum_{k,l} a_k v_l M(k, l).
    for (const auto& h : polytope.facets()) {
      system.constraints.push_back(
          {h.normal * v.transpose(), lp::Relation::kLessEqual, h.offset});
    }
    for (const auto& h : polytope.equalities()) {
      system.constraints.push_back(
          {h.normal * v.transpose(), lp::Relation::kEqual, h.offset});
    }
  }
  return system;
}

Eigen::MatrixXd VertexSpanComplement(const Polytope& polytope) {
  const auto& vertices = polytope.vertices();
  const int dim = polytope.dim();
  Eigen::MatrixXd span(dim, static_cast<Eigen::Index>(vertices.size()));
  for (size_t v = 0; v < vertices.size(); ++v) span.col(v) = vertices[v];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(span, Eigen::ComputeFullU);
  svd.setThreshold(1e-10);
  const int rank = static_cast<int>(svd.rank());
  return svd.matrixU().rightCols(dim - rank);
}

}  // namespace polyswap
