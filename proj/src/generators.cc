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

#include <algorithm>
#include <set>
#include <sstream>

#include "polyswap/error.h"

namespace polyswap {
namespace {

constexpr int kMaxLemma1Actions = 10;
constexpr int kMaxLinearGameDim = 12;

void CheckHorizonQuarters(int horizon) {
  if (horizon <= 0 || horizon % 4 != 0) {
    throw Error(ErrorCode::kBadHorizon, "horizon must be a positive multiple of 4");
  }
}

Eigen::VectorXd UniformVector(int size, double lo, double hi, std::mt19937_64* rng) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i) v(i) = dist(*rng);
  return v;
}

Eigen::MatrixXd UniformMatrix(int rows, int cols, std::mt19937_64* rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = dist(*rng);
  }
  return m;
}

}  // namespace

LearningInstance::LearningInstance(Polytope p, std::vector<Eigen::VectorXd> r)
    : polytope(std::move(p)), rewards(std::move(r)) {
  if (rewards.empty()) throw Error(ErrorCode::kBadHorizon, "instance needs T >= 1");
  for (const auto& reward : rewards) {
    if (reward.size() != polytope.dim()) {
      throw Error(ErrorCode::kShapeError, "reward has the wrong dimension");
    }
    if (!reward.allFinite() || reward.cwiseAbs().maxCoeff() > 1.0) {
      throw Error(ErrorCode::kRewardOutOfRange, "reward outside [-1, 1]");
    }
  }
}

Graph::Graph(int num_vertices, const std::vector<std::pair<int, int>>& edges) {
  if (num_vertices <= 0) throw Error(ErrorCode::kBadGraph, "graph needs V >= 1");
  std::vector<std::set<int>> sets(num_vertices);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices) {
      throw Error(ErrorCode::kBadGraph, "edge endpoint out of range");
    }
    if (u == v) throw Error(ErrorCode::kBadGraph, "self-loop");
    sets[u].insert(v);
    sets[v].insert(u);
  }
  for (const auto& s : sets) adjacency_.emplace_back(s.begin(), s.end());
}

Graph Graph::Parse(const std::string& text) {
  std::istringstream in(text);
  int num_vertices = 0;
  if (!(in >> num_vertices)) {
    throw Error(ErrorCode::kParseError, "edge list must start with the vertex count");
  }
  std::vector<std::pair<int, int>> edges;
  int u = 0;
  int v = 0;
  while (in >> u) {
    if (!(in >> v)) throw Error(ErrorCode::kParseError, "edge list has a dangling endpoint");
    edges.emplace_back(u, v);
  }
  if (!in.eof()) throw Error(ErrorCode::kParseError, "edge list has a non-integer token");
  return Graph(num_vertices, edges);
}

std::string Graph::ToEdgeList() const {
  std::ostringstream out;
  out << num_vertices() << "\n";
  for (const auto& [u, v] : edges()) out << u << " " << v << "\n";
  return out.str();
}

int Graph::max_degree() const {
  size_t degree = 0;
  for (const auto& n : adjacency_) degree = std::max(degree, n.size());
  return static_cast<int>(degree);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < num_vertices(); ++u) {
    for (int v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<Graph> SmallGraphs(int num_vertices) {
  switch (num_vertices) {
    case 2:
      return {Graph(2, {}), Graph(2, {{0, 1}})};
    case 3:
      return {Graph(3, {}), Graph(3, {{0, 1}}), Graph(3, {{0, 1}, {1, 2}}),
              Graph(3, {{0, 1}, {1, 2}, {0, 2}})};
    default:
      throw Error(ErrorCode::kBadGraph, "small graph families exist for V = 2, 3");
  }
}

Graph PetersenGraph() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, edges);
}

Lemma1Game MakeLemma1Game(const LearningInstance& instance,
                          const std::vector<int>& swap) {
  const int n = instance.polytope.dim();
  if (n > kMaxLemma1Actions) {
    throw Error(ErrorCode::kVertexBudgetExceeded, "sign-pattern game needs N <= 10");
  }
  if (static_cast<int>(swap.size()) != n) {
    throw Error(ErrorCode::kShapeError, "swap function must cover every action");
  }
  for (int target : swap) {
    if (target < 0 || target >= n) throw Error(ErrorCode::kShapeError, "swap target out of range");
  }
  const int m = 1 << n;
  Eigen::MatrixXd u_o(m, n);
  Eigen::MatrixXd u_l(m, n);
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd s = SignPattern(n, i);
    for (int j = 0; j < n; ++j) {
      u_l(i, j) = s(j);
      u_o(i, j) = (s(swap[j]) - s(j)) / 2.0;
    }
  }
  std::vector<Eigen::VectorXd> schedule;
  schedule.reserve(instance.rewards.size());
  for (const auto& r : instance.rewards) schedule.push_back(HypercubeDecompose(r));
  return {StandardGame(std::move(u_o), std::move(u_l)), std::move(schedule)};
}

LinearSwapGame MakeLemmaLinearGame(const LearningInstance& instance,
                                   const Eigen::MatrixXd& contraction) {
  const int d = instance.polytope.dim();
  if (d > kMaxLinearGameDim) {
    throw Error(ErrorCode::kVertexBudgetExceeded, "hypercube image needs d <= 12");
  }
  if (contraction.rows() != d || contraction.cols() != d) {
    throw Error(ErrorCode::kShapeError, "contraction must be d x d");
  }
  const Eigen::MatrixXd shift =
      (contraction - Eigen::MatrixXd::Identity(d, d)).transpose();
  const double lambda = shift.cwiseAbs().rowwise().sum().maxCoeff();
  std::vector<QVertex> q;
  q.reserve(static_cast<size_t>(1) << d);
  for (std::int64_t i = 0; i < (std::int64_t{1} << d); ++i) {
    const Eigen::VectorXd y = SignPattern(d, i);
    q.push_back({y, shift * y / (lambda + 1.0)});
  }
  std::vector<Eigen::VectorXd> schedule;
  schedule.reserve(instance.rewards.size());
  for (const auto& r : instance.rewards) schedule.push_back(HypercubeDecompose(r));
  return {PolytopeGame(instance.polytope, std::move(q)), std::move(schedule), lambda};
}

SeparationInstance MakeSeparationInstance(int horizon) {
  CheckHorizonQuarters(horizon);
  Polytope square = SimplexProduct(2, 2);
  const std::vector<int> reward_vertex{0, 1, 2, 0};
  const std::vector<int> play_vertex{0, 1, 2, 3};
  std::vector<Eigen::VectorXd> rewards;
  std::vector<Point> trajectory;
  for (int t = 0; t < horizon; ++t) {
    const int quarter = 4 * t / horizon;
    rewards.push_back(square.vertex(reward_vertex[quarter]));
    trajectory.push_back(square.vertex(play_vertex[quarter]));
  }
  return {LearningInstance(std::move(square), std::move(rewards)), std::move(trajectory)};
}

SeparationGame MakeSeparationGame(int horizon) {
  CheckHorizonQuarters(horizon);
  Polytope square = SimplexProduct(2, 2);
  const std::vector<int> reward_vertex{0, 1, 2, 0};
  const double s[4][4] = {{0.00, 0.26, 0.60, 0.21},
                          {0.05, 0.17, 0.45, 0.68},
                          {0.16, 0.25, 0.33, 0.20},
                          {0.16, 0.68, 0.22, 0.44}};
  std::vector<QVertex> q;
  for (int i = 0; i < 4; ++i) {
    q.push_back({square.vertex(reward_vertex[i]), Eigen::Map<const Eigen::VectorXd>(s[i], 4)});
  }
  std::vector<Eigen::VectorXd> schedule;
  std::vector<Point> trajectory;
  for (int t = 0; t < horizon; ++t) {
    const int quarter = 4 * t / horizon;
    schedule.push_back(Eigen::VectorXd::Unit(4, quarter));
    trajectory.push_back(square.vertex(quarter));
  }
  return {PolytopeGame(std::move(square), std::move(q)), std::move(schedule),
          std::move(trajectory)};
}

BayesianGame MakeSellingGame() {
  std::vector<Eigen::MatrixXd> u_o(2, Eigen::MatrixXd::Zero(2, 2));
  std::vector<Eigen::MatrixXd> u_l(2, Eigen::MatrixXd::Zero(2, 2));
  for (int c = 0; c < 2; ++c) {
    const double value = (c + 1) / 4.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        u_l[c](i, j) = (value - i) * j;
        u_o[c](i, j) = static_cast<double>(i * j);
      }
    }
  }
  return BayesianGame(Eigen::Vector2d(0.5, 0.5), std::move(u_o), std::move(u_l));
}

BayesianGame MakeDominatingSetGame(const Graph& graph,
                                   DominatingSetPayoffs payoffs) {
  if (graph.max_degree() > 3) {
    throw Error(ErrorCode::kBadGraph, "hardness game needs max degree <= 3");
  }
  const int v_count = graph.num_vertices();
  const int m = v_count + 1;
  constexpr int kOptOut = 4;
  const double inv_v = 1.0 / v_count;
  const double fee = 1.0 / (2.0 * v_count);
  std::vector<Eigen::MatrixXd> u_o(2 * v_count, Eigen::MatrixXd::Zero(m, 5));
  std::vector<Eigen::MatrixXd> u_l(2 * v_count, Eigen::MatrixXd::Zero(m, 5));
  for (int v = 0; v < v_count; ++v) {
    std::vector<int> nbr{v};
    for (int w : graph.neighbors(v)) nbr.push_back(w);
    nbr.resize(4, -1);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < 4; ++j) {
        const double hit = (nbr[j] >= 0 && i == nbr[j]) ? 1.0 : 0.0;
        u_l[v](i, j) = hit - fee;
        u_o[v](i, j) = (nbr[j] >= 0 ? inv_v : 0.0) - hit;
        u_l[v_count + v](i, j) = -fee;
      }
      const double hit = (i == v) ? 1.0 : 0.0;
      u_l[v_count + v](i, kOptOut) = hit;
      u_o[v_count + v](i, kOptOut) =
          (payoffs == DominatingSetPayoffs::kAsDisplayed ? inv_v : 0.0) - hit;
    }
  }
  Eigen::VectorXd p = Eigen::VectorXd::Constant(2 * v_count, 1.0 / (2 * v_count));
  return BayesianGame(std::move(p), std::move(u_o), std::move(u_l));
}

LearningInstance MakeCyclingInstance(int num_actions, int horizon, int period,
                                     std::uint64_t seed) {
  if (num_actions <= 0) throw Error(ErrorCode::kInvalidDimension, "need N >= 1");
  if (horizon <= 0 || period <= 0) throw Error(ErrorCode::kBadHorizon, "need T, period >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Eigen::VectorXd> rewards;
  rewards.reserve(horizon);
  for (int t = 0; t < horizon; ++t) {
    Eigen::VectorXd r = UniformVector(num_actions, -1.0, 0.0, &rng);
    r((t / period) % num_actions) = 1.0;
    rewards.push_back(std::move(r));
  }
  return LearningInstance(Simplex(num_actions), std::move(rewards));
}

LearningInstance MakeRandomInstance(const Polytope& polytope, int horizon,
                                    std::uint64_t seed) {
  if (horizon <= 0) throw Error(ErrorCode::kBadHorizon, "need T >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Eigen::VectorXd> rewards;
  rewards.reserve(horizon);
  for (int t = 0; t < horizon; ++t) {
    rewards.push_back(UniformVector(polytope.dim(), -1.0, 1.0, &rng));
  }
  return LearningInstance(polytope, std::move(rewards));
}

StandardGame MakeRandomStandardGame(int num_optimizer_actions,
                                    int num_learner_actions,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd u_o = UniformMatrix(num_optimizer_actions, num_learner_actions, &rng);
  Eigen::MatrixXd u_l = UniformMatrix(num_optimizer_actions, num_learner_actions, &rng);
  return StandardGame(std::move(u_o), std::move(u_l));
}

BayesianGame MakeRandomBayesianGame(int num_optimizer_actions,
                                    int num_learner_actions, int num_contexts,
                                    std::uint64_t seed) {
  if (num_contexts <= 0) throw Error(ErrorCode::kInvalidDimension, "need C >= 1");
  std::mt19937_64 rng(seed);
  Eigen::VectorXd p = UniformVector(num_contexts, 0.1, 1.0, &rng);
  p /= p.sum();
  std::vector<Eigen::MatrixXd> u_o;
  std::vector<Eigen::MatrixXd> u_l;
  for (int c = 0; c < num_contexts; ++c) {
    u_o.push_back(UniformMatrix(num_optimizer_actions, num_learner_actions, &rng));
    u_l.push_back(UniformMatrix(num_optimizer_actions, num_learner_actions, &rng));
  }
  return BayesianGame(std::move(p), std::move(u_o), std::move(u_l));
}

PolytopeGame MakeRandomPolytopeGame(int dim, int num_vertices,
                                    int num_q_vertices, std::uint64_t seed) {
  if (dim <= 0 || num_vertices <= 0 || num_vertices > dim + 1 || num_q_vertices <= 0) {
    throw Error(ErrorCode::kInvalidDimension, "need 1 <= |V| <= d + 1 and |Q| >= 1");
  }
  std::mt19937_64 rng(seed);
  std::vector<Point> points;
  for (int v = 0; v < num_vertices; ++v) points.push_back(UniformVector(dim, -1.0, 1.0, &rng));
  std::vector<QVertex> q;
  for (int i = 0; i < num_q_vertices; ++i) {
    Eigen::VectorXd r = UniformVector(dim, -1.0, 1.0, &rng);
    Eigen::VectorXd s = UniformVector(dim, -1.0, 1.0, &rng);
    q.push_back({std::move(r), std::move(s)});
  }
  return PolytopeGame(SimplexFromVertices(points), std::move(q));
}

}  // namespace polyswap
