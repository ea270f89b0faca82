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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

namespace polyswap::oracles {
namespace {

double Baseline(const Sequence& rewards, const Sequence& actions) {
  double total = 0.0;
  for (size_t t = 0; t < rewards.size(); ++t) total += rewards[t].dot(actions[t]);
  return total;
}

}  // namespace

double ExternalRegret(const Sequence& rewards, const Sequence& actions) {
  const int n = static_cast<int>(rewards.front().size());
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double total = 0.0;
    for (const auto& r : rewards) total += r(j);
    best = std::max(best, total);
  }
  return best - Baseline(rewards, actions);
}

double SwapRegret(const Sequence& rewards, const Sequence& actions) {
  const int n = static_cast<int>(rewards.front().size());
  if (n > 4) throw std::invalid_argument("brute-force swap oracle is capped at N = 4");
  std::vector<int> pi(n, 0);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    double total = 0.0;
    for (size_t t = 0; t < rewards.size(); ++t) {
      for (int j = 0; j < n; ++j) total += actions[t](j) * rewards[t](pi[j]);
    }
    best = std::max(best, total);
    int k = 0;
    while (k < n && ++pi[k] == n) pi[k++] = 0;
    if (k == n) break;
  }
  return best - Baseline(rewards, actions);
}

std::vector<Eigen::VectorXd> GridDecompositions(const std::vector<Eigen::VectorXd>& vertices,
                                                const Eigen::VectorXd& x, int resolution) {
  const int k = static_cast<int>(vertices.size());
  std::vector<Eigen::VectorXd> out;
  std::vector<int> counts(k, 0);
  std::function<void(int, int)> fill = [&](int index, int remaining) {
    if (index == k - 1) {
      counts[index] = remaining;
      Eigen::VectorXd rho(k);
      Eigen::VectorXd point = Eigen::VectorXd::Zero(x.size());
      for (int v = 0; v < k; ++v) {
        rho(v) = static_cast<double>(counts[v]) / resolution;
        point += rho(v) * vertices[v];
      }
      if ((point - x).cwiseAbs().maxCoeff() <= 1e-9) out.push_back(rho);
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[index] = c;
      fill(index + 1, remaining - c);
    }
  };
  fill(0, resolution);
  return out;
}

double GridPolytopeSwapRegret(const std::vector<Eigen::VectorXd>& vertices,
                              const Sequence& rewards, const Sequence& actions,
                              int resolution) {
  const int k = static_cast<int>(vertices.size());
  if (k > 4) throw std::invalid_argument("grid oracle is capped at 4 vertices");
  const int horizon = static_cast<int>(rewards.size());
  std::vector<std::vector<Eigen::VectorXd>> options(horizon);
  double combos = 1.0;
  for (int t = 0; t < horizon; ++t) {
    options[t] = GridDecompositions(vertices, actions[t], resolution);
    if (options[t].empty()) throw std::invalid_argument("point has no grid decomposition");
    combos *= static_cast<double>(options[t].size());
  }
  if (combos > 2e6) throw std::invalid_argument("grid oracle product too large");

  // gain[t](v') = <r^t, v'>.
  std::vector<Eigen::VectorXd> gain(horizon, Eigen::VectorXd(k));
  for (int t = 0; t < horizon; ++t) {
    for (int v = 0; v < k; ++v) gain[t](v) = rewards[t].dot(vertices[v]);
  }
  // Every vertex swap function, as a list.
  std::vector<std::vector<int>> swaps;
  std::vector<int> pi(k, 0);
  while (true) {
    swaps.push_back(pi);
    int i = 0;
    while (i < k && ++pi[i] == k) pi[i++] = 0;
    if (i == k) break;
  }

  double best = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd accumulated = Eigen::MatrixXd::Zero(k, k);  // (v, v')
  std::function<void(int)> descend = [&](int t) {
    if (t == horizon) {
      double worst = -std::numeric_limits<double>::infinity();
      for (const auto& s : swaps) {
        double total = 0.0;
        for (int v = 0; v < k; ++v) total += accumulated(v, s[v]);
        worst = std::max(worst, total);
      }
      best = std::min(best, worst);
      return;
    }
    for (const auto& rho : options[t]) {
      const Eigen::MatrixXd step = rho * gain[t].transpose();
      accumulated += step;
      descend(t + 1);
      accumulated -= step;
    }
  };
  descend(0);
  return best - Baseline(rewards, actions);
}

std::vector<Eigen::VectorXd> SquareSelfMapExtremePoints() {
  // f(p) = A p + b with 0 <= f_k(p) <= 1 at the four corners p.
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  for (int p1 = 0; p1 < 2; ++p1) {
    for (int p2 = 0; p2 < 2; ++p2) {
      for (int k = 0; k < 2; ++k) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(6);
        g(2 * k) = p1;
        g(2 * k + 1) = p2;
        g(4 + k) = 1.0;
        rows.push_back(g);
        rhs.push_back(1.0);
        rows.push_back(-g);
        rhs.push_back(0.0);
      }
    }
  }
  const int m = static_cast<int>(rows.size());
  std::vector<Eigen::VectorXd> points;
  std::set<std::vector<long long>> seen;
  std::vector<int> pick(6);
  std::function<void(int, int)> choose = [&](int start, int depth) {
    if (depth == 6) {
      Eigen::MatrixXd a(6, 6);
      Eigen::VectorXd b(6);
      for (int i = 0; i < 6; ++i) {
        a.row(i) = rows[pick[i]].transpose();
        b(i) = rhs[pick[i]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      if (lu.rank() < 6) return;
      const Eigen::VectorXd z = lu.solve(b);
      for (int i = 0; i < m; ++i) {
        if (rows[i].dot(z) > rhs[i] + 1e-9) return;
      }
      std::vector<long long> key(6);
      for (int i = 0; i < 6; ++i) key[i] = std::llround(z(i) * 1e6);
      if (seen.insert(key).second) points.push_back(z);
      return;
    }
    for (int i = start; i < m; ++i) {
      pick[depth] = i;
      choose(i + 1, depth + 1);
    }
  };
  choose(0, 0);
  return points;
}

int DominatingSetSize(int num_vertices, const std::vector<std::pair<int, int>>& edges) {
  std::vector<unsigned> closed(num_vertices);
  for (int v = 0; v < num_vertices; ++v) closed[v] = 1u << v;
  for (const auto& [u, v] : edges) {
    closed[u] |= 1u << v;
    closed[v] |= 1u << u;
  }
  const unsigned all = (1u << num_vertices) - 1u;
  int best = num_vertices;
  for (unsigned subset = 0; subset <= all; ++subset) {
    unsigned covered = 0;
    for (int v = 0; v < num_vertices; ++v) {
      if (subset >> v & 1u) covered |= closed[v];
    }
    if (covered == all) best = std::min(best, __builtin_popcount(subset));
  }
  return best;
}

double GridStackelbergTwoActions(const Eigen::MatrixXd& u_o, const Eigen::MatrixXd& u_l,
                                 int resolution) {
  if (u_o.rows() != 2) throw std::invalid_argument("grid Stackelberg needs two rows");
  double best = -std::numeric_limits<double>::infinity();
  for (int g = 0; g <= resolution; ++g) {
    const double a = static_cast<double>(g) / resolution;
    const Eigen::RowVectorXd learner = (1.0 - a) * u_l.row(0) + a * u_l.row(1);
    const Eigen::RowVectorXd optimizer = (1.0 - a) * u_o.row(0) + a * u_o.row(1);
    const double top = learner.maxCoeff();
    double value = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < learner.size(); ++j) {
      if (learner(j) >= top - 1e-12) value = std::max(value, optimizer(j));
    }
    best = std::max(best, value);
  }
  return best;
}

double CeViolationBySwapRules(const std::vector<Eigen::MatrixXd>& u_l,
                              const std::vector<Eigen::MatrixXd>& distributions) {
  const int contexts = static_cast<int>(u_l.size());
  const int m = static_cast<int>(u_l[0].rows());
  const int n = static_cast<int>(u_l[0].cols());
  if (n > 4) throw std::invalid_argument("swap-rule oracle is capped at N = 4");
  auto expected = [&](int type, int drawn_from, const std::vector<int>* pi) {
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        const int played = pi ? (*pi)[j] : j;
        total += distributions[drawn_from](i, j) * u_l[type](i, played);
      }
    }
    return total;
  };
  double worst = 0.0;
  for (int c = 0; c < contexts; ++c) {
    const double truthful = expected(c, c, nullptr);
    for (int other = 0; other < contexts; ++other) {
      worst = std::max(worst, expected(c, other, nullptr) - truthful);
    }
    std::vector<int> pi(n, 0);
    while (true) {
      worst = std::max(worst, expected(c, c, &pi) - truthful);
      int k = 0;
      while (k < n && ++pi[k] == n) pi[k++] = 0;
      if (k == n) break;
    }
  }
  return worst;
}

double BilinearSum(const Eigen::MatrixXd& u, const Eigen::VectorXd& alpha,
                   const Eigen::VectorXd& beta) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) total += alpha(i) * beta(j) * u(i, j);
  }
  return total;
}

Eigen::VectorXd RandomDistribution(int n, std::mt19937_64& rng) {
  std::exponential_distribution<double> exp(1.0);
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w(i) = exp(rng);
  return w / w.sum();
}

Eigen::VectorXd RandomVector(int n, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(lo, hi);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = unit(rng);
  return v;
}

}  // namespace polyswap::oracles
