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

// Python bindings for polyswap. Vectors and matrices cross as NumPy arrays;
// reports and transcripts cross as plain dicts built from their JSON form.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <vector>

#include "polyswap/equilibria.h"
#include "polyswap/error.h"
#include "polyswap/games.h"
#include "polyswap/generators.h"
#include "polyswap/geometry.h"
#include "polyswap/harness.h"
#include "polyswap/io.h"
#include "polyswap/regret.h"

namespace py = pybind11;

namespace polyswap {
namespace {

py::object ToPython(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Json FromPython(const py::object& obj) {
  const py::object text = py::module_::import("json").attr("dumps")(obj);
  return Json::parse(text.cast<std::string>());
}

py::dict TranscriptToPython(const Transcript& transcript) {
  std::vector<Eigen::VectorXd> q, x, r;
  std::vector<double> u_o, u_l;
  for (const auto& round : transcript.rounds()) {
    q.push_back(round.q_weights);
    x.push_back(round.x);
    r.push_back(round.reward);
    u_o.push_back(round.optimizer_utility);
    u_l.push_back(round.learner_utility);
  }
  py::dict out;
  out["q_weights"] = q;
  out["x"] = x;
  out["reward"] = r;
  out["u_O"] = u_o;
  out["u_L"] = u_l;
  return out;
}

}  // namespace
}  // namespace polyswap

PYBIND11_MODULE(_polyswap, m) {
  using namespace polyswap;
  m.doc() = "Regret audits, equilibrium benchmarks and match simulation for learning agents";

  // Held as a bare handle so nothing is released after interpreter shutdown.
  static py::handle error = py::exception<Error>(m, "PolyswapError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error(e.what());
      exc.attr("code") = std::string(ErrorCodeName(e.code()));
      py::set_error(error, exc);
    }
  });

  py::class_<Polytope>(m, "Polytope")
      .def_property_readonly("dim", &Polytope::dim)
      .def_property_readonly("num_vertices", &Polytope::num_vertices)
      .def("vertex", &Polytope::vertex)
      .def("vertices", &Polytope::vertices)
      .def("contains", &Polytope::Contains, py::arg("x"), py::arg("tol") = kGeometryTol)
      .def("to_json", [](const Polytope& p) { return ToPython(ToJson(p)); })
      .def_static("from_json",
                  [](const py::object& j) { return PolytopeFromJson(FromPython(j)); });
  m.def("simplex", &Simplex, py::arg("num_actions"));
  m.def("simplex_product", &SimplexProduct, py::arg("num_actions"), py::arg("num_contexts"),
        py::arg("vertex_budget") = kDefaultVertexBudget);
  m.def(
      "caratheodory_decompose",
      [](const Polytope& p, const Eigen::VectorXd& x) {
        return CaratheodoryDecompose(p, x).weights;
      },
      py::arg("polytope"), py::arg("x"));

  py::class_<StandardGame>(m, "StandardGame")
      .def(py::init<Eigen::MatrixXd, Eigen::MatrixXd>(), py::arg("u_O"), py::arg("u_L"))
      .def_property_readonly("u_O", &StandardGame::optimizer_utility)
      .def_property_readonly("u_L", &StandardGame::learner_utility);
  py::class_<BayesianGame>(m, "BayesianGame")
      .def(py::init<Eigen::VectorXd, std::vector<Eigen::MatrixXd>, std::vector<Eigen::MatrixXd>>(),
           py::arg("p"), py::arg("u_O"), py::arg("u_L"))
      .def_property_readonly("p", &BayesianGame::context_probs)
      .def_property_readonly("num_contexts", &BayesianGame::num_contexts)
      .def("context_game", &BayesianGame::ContextGame);
  py::class_<PolytopeGame, std::shared_ptr<PolytopeGame>>(m, "PolytopeGame")
      .def_property_readonly("polytope", &PolytopeGame::polytope)
      .def_property_readonly("num_q_vertices", &PolytopeGame::num_q_vertices)
      .def("to_json", [](const PolytopeGame& g) { return ToPython(ToJson(g)); });
  m.def("standard_to_polytope", &StandardToPolytope);
  m.def("bayesian_to_polytope", &BayesianToPolytope, py::arg("game"),
        py::arg("vertex_budget") = kDefaultVertexBudget);
  m.def("selling_game", &MakeSellingGame);
  m.def("separation_game", [](int horizon) { return MakeSeparationGame(horizon).game; });
  m.def("separation_instance", [](int horizon) {
    SeparationInstance sep = MakeSeparationInstance(horizon);
    return py::make_tuple(sep.instance.polytope, sep.instance.rewards, sep.trajectory);
  });
  m.def(
      "dominating_set_game",
      [](int num_vertices, const std::vector<std::pair<int, int>>& edges) {
        return MakeDominatingSetGame(Graph(num_vertices, edges));
      },
      py::arg("num_vertices"), py::arg("edges"));
  m.def("random_standard_game", &MakeRandomStandardGame, py::arg("num_optimizer_actions"),
        py::arg("num_learner_actions"), py::arg("seed"));
  m.def("random_bayesian_game", &MakeRandomBayesianGame, py::arg("num_optimizer_actions"),
        py::arg("num_learner_actions"), py::arg("num_contexts"), py::arg("seed"));

  using Seq = std::vector<Eigen::VectorXd>;
  m.def("external_regret", [](const Seq& r, const Seq& x) {
    return ToPython(ToJson(ExternalRegret(r, x)));
  });
  m.def("swap_regret", [](const Seq& r, const Seq& x) {
    return ToPython(ToJson(SwapRegret(r, x)));
  });
  m.def(
      "contextual_external_regret",
      [](const Eigen::VectorXd& weights, int num_actions, const Seq& r, const Seq& x) {
        return ToPython(ToJson(ContextualExternalRegret(weights, num_actions, r, x)));
      },
      py::arg("context_weights"), py::arg("num_actions"), py::arg("rewards"),
      py::arg("actions"));
  m.def("linear_swap_regret", [](const Polytope& p, const Seq& r, const Seq& x) {
    return ToPython(ToJson(LinearSwapRegret(p, r, x)));
  });
  m.def(
      "polytope_swap_regret",
      [](const Polytope& p, const Seq& r, const Seq& x, const std::string& method) {
        PolytopeSwapOptions options;
        if (method == "direct") {
          options.method = PolytopeSwapOptions::Method::kDirect;
        } else if (method == "cutting_plane") {
          options.method = PolytopeSwapOptions::Method::kCuttingPlane;
        } else if (method != "auto") {
          throw Error(ErrorCode::kUnknownName, "unknown method '" + method + "'");
        }
        return ToPython(ToJson(PolytopeSwapRegret(p, r, x, options)));
      },
      py::arg("polytope"), py::arg("rewards"), py::arg("actions"), py::arg("method") = "auto");

  m.def("stackelberg_standard",
        [](const StandardGame& g) { return ToPython(ToJson(StackelbergStandard(g))); });
  m.def("stackelberg_bayesian",
        [](const BayesianGame& g) { return ToPython(ToJson(StackelbergBayesian(g))); });
  m.def("stackelberg_polytope",
        [](const PolytopeGame& g) { return ToPython(ToJson(StackelbergPolytope(g))); });
  m.def("per_context_value", &PerContextValue);
  m.def("corr_val", [](const BayesianGame& g) {
    const CorrelatedSolution s = CorrelatedValue(g);
    return py::make_tuple(s.value, s.distributions);
  });
  m.def("ce_violation", &CeViolation);
  m.def(
      "min_dominating_set",
      [](int num_vertices, const std::vector<std::pair<int, int>>& edges) {
        return MinDominatingSet(Graph(num_vertices, edges));
      },
      py::arg("num_vertices"), py::arg("edges"));

  m.def("generator_names", &GeneratorNames);
  m.def(
      "generate",
      [](const std::string& name, const py::object& params, std::uint64_t seed) {
        const LoadedGame game = GenerateGame(name, FromPython(params), seed);
        Json j = game.bayesian   ? ToJson(*game.bayesian)
                 : game.standard ? ToJson(*game.standard)
                                 : ToJson(*game.polytope);
        for (const auto& [key, value] : game.extras.items()) j[key] = value;
        return ToPython(j);
      },
      py::arg("name"), py::arg("params") = py::dict(), py::arg("seed") = 0);
  m.def(
      "run_match",
      [](const py::object& config) {
        const MatchResult result = RunMatch(MatchConfig::FromJson(FromPython(config)));
        py::dict out = TranscriptToPython(result.transcript);
        out["summary"] = ToPython(SummarizeMatch(result));
        out["max_inconsistency"] = result.transcript.MaxInconsistency(*result.game.polytope);
        return out;
      },
      py::arg("config"));
  m.def("case_ids", &CaseIds);
  m.def("reproduce", [](const std::string& id) { return ToPython(Reproduce(id).ToJson()); });
}
