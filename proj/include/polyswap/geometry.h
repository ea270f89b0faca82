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

// Learner action polytopes: vertex lists with facet descriptions, vertex
// decompositions of points, vertex swap functions, and the linear
// constraint system describing the matrices that map a polytope into itself.

#ifndef POLYSWAP_GEOMETRY_H_
#define POLYSWAP_GEOMETRY_H_

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polyswap/lp.h"

namespace polyswap {

using Point = Eigen::VectorXd;

// Absolute tolerance for every membership and containment test.
inline constexpr double kGeometryTol = 1e-9;
inline constexpr std::int64_t kDefaultVertexBudget = 1'000'000;

// normal . x <= offset for facets, normal . x == offset for equalities.
struct Halfspace {
  Eigen::VectorXd normal;
  double offset = 0.0;
};

// Delta([N])^C laid out as C consecutive blocks of N coordinates.
struct ProductOfSimplices {
  int num_actions = 0;   // N
  int num_contexts = 0;  // C

  int coordinate(int context, int action) const {
    return context * num_actions + action;
  }
};

class Polytope {
 public:
  // Checks that every vertex satisfies the constraints. Vertices of polytopes
  // without a structure tag are also checked for extremeness.
  Polytope(int dim, std::vector<Point> vertices, std::vector<Halfspace> facets,
           std::vector<Halfspace> equalities,
           std::optional<ProductOfSimplices> structure = std::nullopt);

  // Product of simplices whose vertices are generated on demand.
  static Polytope ImplicitProduct(ProductOfSimplices structure,
                                  std::int64_t vertex_budget);

  int dim() const { return dim_; }
  std::int64_t num_vertices() const { return num_vertices_; }
  bool has_explicit_vertices() const { return !implicit_; }

  // Throws vertex-budget-exceeded for implicit polytopes.
  const std::vector<Point>& vertices() const;
  // Works for implicit products too.
  Point vertex(std::int64_t index) const;

  const std::vector<Halfspace>& facets() const { return facets_; }
  const std::vector<Halfspace>& equalities() const { return equalities_; }
  const std::optional<ProductOfSimplices>& structure() const {
    return structure_;
  }

  double MaxViolation(const Point& x) const;
  bool Contains(const Point& x, double tol = kGeometryTol) const {
    return MaxViolation(x) <= tol;
  }

 private:
  Polytope() = default;

  int dim_ = 0;
  std::int64_t num_vertices_ = 0;
  bool implicit_ = false;
  std::vector<Point> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<Halfspace> equalities_;
  std::optional<ProductOfSimplices> structure_;
};

// Dense weights over the vertex list of a polytope.
struct VertexDecomposition {
  Eigen::VectorXd weights;

  Point Recompose(const Polytope& polytope) const;
  int support_size(double tol = 0.0) const;
};

// A total map on vertex indices.
struct VertexSwap {
  std::vector<int> mapping;

  static VertexSwap Identity(int num_vertices);
};

Polytope Simplex(int num_actions);

// Delta([N])^C. Vertex k picks action (k / N^(C-1-c)) % N in context c, so
// the order is lexicographic with context 0 most significant. Beyond the
// budget the vertex list is left implicit.
Polytope SimplexProduct(int num_actions, int num_contexts,
                        std::int64_t vertex_budget = kDefaultVertexBudget);

// The choice function [C] -> [N] encoded by a simplex-product vertex index.
std::vector<int> ProductVertexChoices(const ProductOfSimplices& structure,
                                      std::int64_t index);
std::int64_t ProductVertexIndex(const ProductOfSimplices& structure,
                                const std::vector<int>& choices);

// Convex hull of affinely independent points, with facets from the
// barycentric coordinate functions.
Polytope SimplexFromVertices(const std::vector<Point>& points);

// A decomposition with at most dim + 1 nonzero weights, found as a basic
// feasible solution of the decomposition LP and re-solved on its support
// until the support is stable.
VertexDecomposition CaratheodoryDecompose(const Polytope& polytope,
                                          const Point& x);

// i-th element of {-1, 1}^N: coordinate j is +1 iff bit (N - 1 - j) of i is
// set, so index 0 is all -1 and the last index is all +1.
Eigen::VectorXd SignPattern(int dim, std::int64_t index);

// Product-form convex weights over {-1, 1}^N, weight of s equal to
// prod_j (1 + s_j r_j) / 2; the weights recompose r.
Eigen::VectorXd HypercubeDecompose(const Eigen::VectorXd& reward);

// pi(rho)_v = sum over v' with pi(v') = v of rho_v', and its recomposition.
std::pair<VertexDecomposition, Point> ApplyVertexSwap(
    const Polytope& polytope, const VertexSwap& swap,
    const VertexDecomposition& rho);

// One linear constraint on a d x d matrix: <coeffs, M> (relation) rhs.
struct MatrixConstraint {
  Eigen::MatrixXd coeffs;
  lp::Relation relation = lp::Relation::kLessEqual;
  double rhs = 0.0;
};

struct ContractionSystem {
  int dim = 0;
  std::vector<MatrixConstraint> constraints;

  double MaxViolation(const Eigen::MatrixXd& matrix) const;
  bool Contains(const Eigen::MatrixXd& matrix, double tol = kGeometryTol) const {
    return MaxViolation(matrix) <= tol;
  }
  // Adds the constraints to `program`, with M(k, l) stored at variable
  // first_var + k * dim + l.
  void AppendTo(lp::LinearProgram* program, int first_var) const;
};

// a . (M v) <= b for each vertex v and facet (a, b), and a . (M v) == b for
// each vertex and equality.
ContractionSystem ContractionConstraints(const Polytope& polytope);

// Orthonormal basis of the complement of the linear span of the vertices.
// Contractions that differ only on this complement act identically on P.
Eigen::MatrixXd VertexSpanComplement(const Polytope& polytope);

}  // namespace polyswap

#endif  // POLYSWAP_GEOMETRY_H_
