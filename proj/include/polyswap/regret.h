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

// Transcript auditors. Each returns the realized regret together with a
// witness that reproduces it when re-evaluated.

#ifndef POLYSWAP_REGRET_H_
#define POLYSWAP_REGRET_H_

#include <Eigen/Dense>

#include <optional>
#include <string_view>
#include <vector>

#include "polyswap/geometry.h"

namespace polyswap {

enum class RegretNotion {
  kExternal,
  kSwap,
  kContextualExternal,
  kLinearSwap,
  kPolytopeSwap,
};

std::string_view RegretNotionName(RegretNotion notion);
RegretNotion ParseRegretNotion(std::string_view name);

// Values below this magnitude are flagged as numerically zero.
inline constexpr double kNumericalZero = 1e-7;

struct RegretReport {
  RegretNotion notion = RegretNotion::kExternal;
  double value = 0.0;
  bool numerically_zero = false;

  // kExternal: best fixed action.
  int best_action = -1;
  // kSwap: action map. kPolytopeSwap: vertex map.
  std::vector<int> swap;
  // kContextualExternal: best context -> action map.
  std::vector<int> response_map;
  // kLinearSwap: optimal contraction.
  Eigen::MatrixXd contraction;
  // kPolytopeSwap: per-round vertex decompositions, and the lower bound
  // certified by the cutting-plane solver (equal to value for the direct LP).
  std::vector<Eigen::VectorXd> decompositions;
  double lower_bound = 0.0;
};

using RewardSequence = std::vector<Eigen::VectorXd>;
using ActionSequence = std::vector<Eigen::VectorXd>;

// max_j sum_t r^t_j - sum_t <beta^t, r^t>.
RegretReport ExternalRegret(const RewardSequence& rewards,
                            const ActionSequence& actions);

// sum_j max_j' sum_t beta^t_j (r^t_j' - r^t_j).
RegretReport SwapRegret(const RewardSequence& rewards,
                        const ActionSequence& actions);

// Rewards and actions in simplex-product layout (coordinate c * N + j);
// context c is weighted by p_c.
RegretReport ContextualExternalRegret(const Eigen::VectorXd& context_weights,
                                      int num_actions,
                                      const RewardSequence& rewards,
                                      const ActionSequence& actions);

// max over the contractions of P of sum_t <r^t, M x^t> - sum_t <r^t, x^t>,
// solved as one LP in the d^2 entries of M. M is pinned to zero on the
// complement of the vertex span so the feasible set is pointed.
RegretReport LinearSwapRegret(const Polytope& polytope,
                              const RewardSequence& rewards,
                              const ActionSequence& actions);

struct PolytopeSwapOptions {
  enum class Method { kAuto, kDirect, kCuttingPlane };
  Method method = Method::kAuto;
  // kAuto uses the direct epigraph LP when it has at most this many rows.
  int direct_row_limit = 600;
  double gap_tolerance = 1e-10;
  int max_cuts = 5000;
};

// min over vertex decompositions rho^t of x^t, max over vertex swaps pi, of
// sum_t <r^t, pi(rho^t)> - sum_t <r^t, x^t>. The max decomposes per vertex,
// leaving the epigraph LP
//   min sum_v z_v  s.t.  z_v >= sum_t rho^t_v <r^t, v'>  for all v, v'.
// Large instances are solved through its dual by a cutting-plane method
// whose final master recovers primal decompositions.
RegretReport PolytopeSwapRegret(const Polytope& polytope,
                                const RewardSequence& rewards,
                                const ActionSequence& actions,
                                const PolytopeSwapOptions& options = {});

// Re-evaluates the report's witness on the transcript. Polytope-dependent
// notions need the polytope; contextual regret needs the context weights.
double EvaluateWitness(const RegretReport& report,
                       const RewardSequence& rewards,
                       const ActionSequence& actions,
                       const Polytope* polytope = nullptr,
                       const Eigen::VectorXd* context_weights = nullptr);

// Vertex-swap gain sum_v max_v' sum_t rho^t_v <r^t, v'> for fixed
// decompositions, with the maximizing swap written to `swap` if non-null.
double VertexSwapValue(const Polytope& polytope, const RewardSequence& rewards,
                       const std::vector<Eigen::VectorXd>& decompositions,
                       std::vector<int>* swap = nullptr);

}  // namespace polyswap

#endif  // POLYSWAP_REGRET_H_
