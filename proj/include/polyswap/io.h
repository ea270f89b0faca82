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

// JSON forms of polytopes, games and solver outputs, and the transcript CSV.

#ifndef POLYSWAP_IO_H_
#define POLYSWAP_IO_H_

#include <Eigen/Dense>

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "polyswap/equilibria.h"
#include "polyswap/games.h"
#include "polyswap/geometry.h"
#include "polyswap/regret.h"

namespace polyswap {

using Json = nlohmann::json;

Json ToJson(const Eigen::VectorXd& v);
Json ToJson(const Eigen::MatrixXd& m);
Eigen::VectorXd VectorFromJson(const Json& j);
Eigen::MatrixXd MatrixFromJson(const Json& j);

// {dim, vertices, facets: [{normal, offset}], equalities, structure}. A
// structure tag rebuilds the simplex product; implicit products are written
// with an empty vertex list.
Json ToJson(const Polytope& polytope);
Polytope PolytopeFromJson(const Json& j);

Json ToJson(const StandardGame& game);
Json ToJson(const BayesianGame& game);
Json ToJson(const PolytopeGame& game);

// A game file. Standard and Bayesian games also carry their polytope form;
// keys other than the game fields (schedule, trajectory, ...) are kept.
struct LoadedGame {
  std::string type;
  std::optional<StandardGame> standard;
  std::optional<BayesianGame> bayesian;
  std::shared_ptr<const PolytopeGame> polytope;
  Json extras = Json::object();
};

LoadedGame GameFromJson(const Json& j);

Json ToJson(const RegretReport& report);
Json ToJson(const StackelbergSolution& solution);
Json ToJson(const CorrelatedSolution& solution);

// Columns t, q_weights, x, u_O, u_L, r; arrays are quoted JSON, numbers %.17g.
void WriteTranscriptCsv(const Transcript& transcript, std::ostream& out);
Transcript ReadTranscriptCsv(std::istream& in);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);
Json ReadJsonFile(const std::string& path);

}  // namespace polyswap

#endif  // POLYSWAP_IO_H_
