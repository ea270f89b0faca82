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

#include "polyswap/io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "polyswap/error.h"

namespace polyswap {
namespace {

std::string FormatNumber(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

std::string FormatArray(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += FormatNumber(v(i));
  }
  return out + "]";
}

// Splits one CSV record; double quotes group fields and "" escapes a quote.
std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else if (ch != '\r') {
      fields.back() += ch;
    }
  }
  if (quoted) throw Error(ErrorCode::kParseError, "unterminated quote in CSV record");
  return fields;
}

double ParseNumber(const std::string& text) {
  size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseError, "not a number: '" + text + "'");
  }
  if (used != text.size()) throw Error(ErrorCode::kParseError, "not a number: '" + text + "'");
  return value;
}

template <typename F>
auto Parsing(const char* what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string(what) + ": " + e.what());
  }
}

std::vector<Eigen::MatrixXd> MatricesFromJson(const Json& j) {
  std::vector<Eigen::MatrixXd> out;
  for (const auto& m : j) out.push_back(MatrixFromJson(m));
  return out;
}

}  // namespace

Json ToJson(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json ToJson(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(ToJson(Eigen::VectorXd(m.row(i))));
  return out;
}

Eigen::VectorXd VectorFromJson(const Json& j) {
  return Parsing("vector", [&] {
    if (!j.is_array()) throw Error(ErrorCode::kParseError, "expected a numeric array");
    Eigen::VectorXd v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v(i) = j[i].get<double>();
    return v;
  });
}

Eigen::MatrixXd MatrixFromJson(const Json& j) {
  return Parsing("matrix", [&] {
    if (!j.is_array() || j.empty()) throw Error(ErrorCode::kParseError, "expected rows");
    const size_t cols = j[0].size();
    Eigen::MatrixXd m(j.size(), cols);
    for (size_t i = 0; i < j.size(); ++i) {
      if (j[i].size() != cols) throw Error(ErrorCode::kShapeError, "ragged matrix");
      m.row(i) = VectorFromJson(j[i]).transpose();
    }
    return m;
  });
}

Json ToJson(const Polytope& polytope) {
  Json out;
  out["dim"] = polytope.dim();
  Json vertices = Json::array();
  if (polytope.has_explicit_vertices()) {
    for (const auto& v : polytope.vertices()) vertices.push_back(ToJson(v));
  }
  out["vertices"] = vertices;
  auto halfspaces = [](const std::vector<Halfspace>& list) {
    Json arr = Json::array();
    for (const auto& h : list) arr.push_back({{"normal", ToJson(h.normal)}, {"offset", h.offset}});
    return arr;
  };
  out["facets"] = halfspaces(polytope.facets());
  out["equalities"] = halfspaces(polytope.equalities());
  if (polytope.structure()) {
    out["structure"] = {{"type", "product_of_simplices"},
                        {"num_actions", polytope.structure()->num_actions},
                        {"num_contexts", polytope.structure()->num_contexts}};
  } else {
    out["structure"] = nullptr;
  }
  return out;
}

Polytope PolytopeFromJson(const Json& j) {
  return Parsing("polytope", [&] {
    if (j.contains("structure") && !j["structure"].is_null()) {
      const Json& s = j["structure"];
      return SimplexProduct(s.at("num_actions").get<int>(), s.at("num_contexts").get<int>());
    }
    const int dim = j.at("dim").get<int>();
    std::vector<Point> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(VectorFromJson(v));
    auto halfspaces = [](const Json& arr) {
      std::vector<Halfspace> out;
      for (const auto& h : arr) {
        out.push_back({VectorFromJson(h.at("normal")), h.at("offset").get<double>()});
      }
      return out;
    };
    return Polytope(dim, std::move(vertices), halfspaces(j.value("facets", Json::array())),
                    halfspaces(j.value("equalities", Json::array())));
  });
}

Json ToJson(const StandardGame& game) {
  return {{"type", "standard"},
          {"u_O", ToJson(game.optimizer_utility())},
          {"u_L", ToJson(game.learner_utility())}};
}

Json ToJson(const BayesianGame& game) {
  Json u_o = Json::array();
  Json u_l = Json::array();
  for (int c = 0; c < game.num_contexts(); ++c) {
    u_o.push_back(ToJson(game.optimizer_utility(c)));
    u_l.push_back(ToJson(game.learner_utility(c)));
  }
  return {{"type", "bayesian"}, {"p", ToJson(game.context_probs())}, {"u_O", u_o}, {"u_L", u_l}};
}

Json ToJson(const PolytopeGame& game) {
  Json q = Json::array();
  for (const auto& v : game.q_vertices()) q.push_back({{"r", ToJson(v.r)}, {"s", ToJson(v.s)}});
  return {{"type", "polytope"}, {"polytope", ToJson(game.polytope())}, {"q_vertices", q}};
}

LoadedGame GameFromJson(const Json& j) {
  return Parsing("game", [&] {
    LoadedGame out;
    out.type = j.at("type").get<std::string>();
    if (out.type == "standard") {
      out.standard.emplace(MatrixFromJson(j.at("u_O")), MatrixFromJson(j.at("u_L")));
      out.polytope = std::make_shared<PolytopeGame>(StandardToPolytope(*out.standard));
    } else if (out.type == "bayesian") {
      out.bayesian.emplace(VectorFromJson(j.at("p")), MatricesFromJson(j.at("u_O")),
                           MatricesFromJson(j.at("u_L")));
      out.polytope = std::make_shared<PolytopeGame>(BayesianToPolytope(*out.bayesian));
    } else if (out.type == "polytope") {
      std::vector<QVertex> q;
      for (const auto& v : j.at("q_vertices")) {
        q.push_back({VectorFromJson(v.at("r")), VectorFromJson(v.at("s"))});
      }
      out.polytope =
          std::make_shared<PolytopeGame>(PolytopeFromJson(j.at("polytope")), std::move(q));
    } else {
      throw Error(ErrorCode::kUnknownName, "unknown game type '" + out.type + "'");
    }
    for (const auto& [key, value] : j.items()) {
      if (key != "type" && key != "u_O" && key != "u_L" && key != "p" && key != "polytope" &&
          key != "q_vertices") {
        out.extras[key] = value;
      }
    }
    return out;
  });
}

Json ToJson(const RegretReport& report) {
  Json out{{"notion", std::string(RegretNotionName(report.notion))},
           {"value", report.value},
           {"numerically_zero", report.numerically_zero}};
  Json witness = Json::object();
  switch (report.notion) {
    case RegretNotion::kExternal:
      witness["best_action"] = report.best_action;
      break;
    case RegretNotion::kSwap:
      witness["swap"] = report.swap;
      break;
    case RegretNotion::kContextualExternal:
      witness["response_map"] = report.response_map;
      break;
    case RegretNotion::kLinearSwap:
      witness["contraction"] = ToJson(report.contraction);
      break;
    case RegretNotion::kPolytopeSwap: {
      witness["swap"] = report.swap;
      Json rho = Json::array();
      for (const auto& r : report.decompositions) rho.push_back(ToJson(r));
      witness["decompositions"] = rho;
      out["lower_bound"] = report.lower_bound;
      break;
    }
  }
  out["witness"] = witness;
  return out;
}

Json ToJson(const StackelbergSolution& solution) {
  Json out{{"value", solution.value},
           {"strategy", ToJson(solution.strategy)},
           {"response_index", solution.response_index},
           {"response", ToJson(solution.response)},
           {"margin", std::isfinite(solution.margin) ? Json(solution.margin) : Json(nullptr)}};
  if (!solution.response_map.empty()) out["response_map"] = solution.response_map;
  return out;
}

Json ToJson(const CorrelatedSolution& solution) {
  Json dists = Json::array();
  for (const auto& f : solution.distributions) dists.push_back(ToJson(f));
  return {{"value", solution.value}, {"distributions", dists}};
}

void WriteTranscriptCsv(const Transcript& transcript, std::ostream& out) {
  out << "t,q_weights,x,u_O,u_L,r\n";
  int t = 1;
  for (const auto& round : transcript.rounds()) {
    out << t++ << ",\"" << FormatArray(round.q_weights) << "\",\"" << FormatArray(round.x)
        << "\"," << FormatNumber(round.optimizer_utility) << ","
        << FormatNumber(round.learner_utility) << ",\"" << FormatArray(round.reward) << "\"\n";
  }
}

Transcript ReadTranscriptCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParseError, "empty transcript CSV");
  const auto header = SplitCsv(line);
  const std::vector<std::string> want{"t", "q_weights", "x", "u_O", "u_L", "r"};
  if (header != want) throw Error(ErrorCode::kParseError, "unexpected transcript header");
  Transcript transcript;
  int expected_t = 1;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = SplitCsv(line);
    if (fields.size() != 6) {
      throw Error(ErrorCode::kParseError, "transcript row must have 6 fields");
    }
    if (static_cast<int>(ParseNumber(fields[0])) != expected_t++) {
      throw Error(ErrorCode::kParseError, "transcript rounds out of order");
    }
    Round round;
    round.q_weights = VectorFromJson(Parsing("q_weights", [&] { return Json::parse(fields[1]); }));
    round.x = VectorFromJson(Parsing("x", [&] { return Json::parse(fields[2]); }));
    round.optimizer_utility = ParseNumber(fields[3]);
    round.learner_utility = ParseNumber(fields[4]);
    round.reward = VectorFromJson(Parsing("r", [&] { return Json::parse(fields[5]); }));
    transcript.Append(std::move(round));
  }
  transcript.Freeze();
  return transcript;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kParseError, "cannot write '" + path + "'");
  out << text;
}

Json ReadJsonFile(const std::string& path) {
  const std::string text = ReadTextFile(path);
  return Parsing(path.c_str(), [&] { return Json::parse(text); });
}

}  // namespace polyswap
