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

#include "polyswap/error.h"

namespace polyswap {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDimension: return "invalid-dimension";
    case ErrorCode::kVertexBudgetExceeded: return "vertex-budget-exceeded";
    case ErrorCode::kPointNotInPolytope: return "point-not-in-polytope";
    case ErrorCode::kRewardOutOfRange: return "reward-out-of-range";
    case ErrorCode::kShapeError: return "shape-error";
    case ErrorCode::kBadHorizon: return "bad-horizon";
    case ErrorCode::kBadGraph: return "bad-graph";
    case ErrorCode::kTooLargeGraph: return "too-large-graph";
    case ErrorCode::kStationarySolveFailed: return "stationary-solve-failed";
    case ErrorCode::kFixedPointNotConverged: return "fixed-point-not-converged";
    case ErrorCode::kDegenerateGame: return "degenerate-game";
    case ErrorCode::kLpInfeasible: return "lp-infeasible";
    case ErrorCode::kOutOfRangeRound: return "out-of-range-round";
    case ErrorCode::kUnknownName: return "unknown-name";
    case ErrorCode::kUnknownCase: return "unknown-case";
    case ErrorCode::kParseError: return "parse-error";
  }
  return "unknown-error";
}

}  // namespace polyswap
