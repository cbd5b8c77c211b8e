// Copyright 2026 The rmsearch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rmsearch/errors.h"
#include "rmsearch/estimators.h"
#include "rmsearch/exploit.h"
#include "rmsearch/grid_conquest.h"
#include "rmsearch/harness.h"
#include "rmsearch/matrix_game.h"
#include "rmsearch/ratings.h"
#include "rmsearch/regret.h"
#include "rmsearch/search.h"

namespace py = pybind11;

namespace rmsearch {
namespace {

py::dict report_dict(const MatchReport& r) {
  py::dict d;
  d["agent_a"] = r.agent_a;
  d["agent_b"] = r.agent_b;
  d["a_seats"] = r.a_seats;
  d["seeds"] = r.seeds;
  d["scores"] = r.scores;
  d["mean_a"] = r.mean_a;
  d["std_error_a"] = r.std_error_a;
  d["mean_b"] = r.mean_b;
  d["std_error_b"] = r.std_error_b;
  return d;
}

AgentSpec agent(const std::string& kind, int iterations, double m, int horizon) {
  nlohmann::json doc = {{"kind", kind}};
  if (kind != "blueprint") {
    doc["iterations"] = iterations;
    doc["M"] = m;
    doc["rollout_horizon"] = horizon;
  }
  return agent_from_json(doc);
}

}  // namespace
}  // namespace rmsearch

PYBIND11_MODULE(_rmsearch, m) {
  using namespace rmsearch;
  m.doc() = "Sampled regret matching, exploitability and one-ply search";
  m.attr("__version__") = RMSEARCH_VERSION;

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<UnsupportedOracleError>(m, "UnsupportedOracleError",
                                                 PyExc_TypeError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_RuntimeError);

  py::class_<MatrixGame>(m, "MatrixGame")
      .def(py::init<std::vector<int>, std::vector<std::vector<double>>>(),
           py::arg("action_counts"), py::arg("payoffs"))
      .def_property_readonly("num_players", &MatrixGame::num_players)
      .def_property_readonly("action_counts", &MatrixGame::action_counts)
      .def("utility",
           [](const MatrixGame& g, const std::vector<int>& joint) { return g.utility(joint); })
      .def("to_json", [](const MatrixGame& g) { return to_json(g).dump(); });

  m.def("random_zero_sum_game", &random_zero_sum_game, py::arg("rows"), py::arg("cols"),
        py::arg("seed"));
  m.def("matching_pennies", &matching_pennies);
  m.def("rock_paper_scissors", &rock_paper_scissors);
  m.def("load_matrix_game", &load_matrix_game, py::arg("path"));
  m.def("sos_scores", [](const std::vector<int>& counts) { return sos_scores(counts); },
        py::arg("counts"));

  py::class_<RmConfig>(m, "RmConfig")
      .def(py::init<>())
      .def_readwrite("iterations", &RmConfig::iterations)
      .def_readwrite("linear", &RmConfig::linear)
      .def_readwrite("optimism", &RmConfig::optimism)
      .def_readwrite("seed", &RmConfig::seed)
      .def_readwrite("trace_every", &RmConfig::trace_every);

  py::class_<EquilibriumResult>(m, "EquilibriumResult")
      .def_readonly("final_policies", &EquilibriumResult::final_policies)
      .def_readonly("average_policies", &EquilibriumResult::average_policies)
      .def_readonly("action_utilities", &EquilibriumResult::action_utilities)
      .def_readonly("iterations", &EquilibriumResult::iterations)
      .def_property_readonly("trace", [](const EquilibriumResult& r) {
        std::vector<std::pair<int, double>> rows;
        for (const auto& t : r.trace) rows.emplace_back(t.iteration, t.exploitability);
        return rows;
      });

  m.def("run_rm",
        [](const MatrixGame& game, const RmConfig& config) {
          return run_rm(matrix_subgame(game), config);
        },
        py::arg("game"), py::arg("config") = RmConfig{});
  m.def("format_policies",
        [](const EquilibriumResult& r, const MatrixGame& game) {
          return format_policies(r, matrix_subgame(game));
        });

  m.def("best_response_value",
        [](const MatrixGame& game, const std::vector<Policy>& policies, int player) {
          const auto br = best_response_value(matrix_subgame(game), policies, player);
          return py::make_tuple(br.value, br.action);
        },
        py::arg("game"), py::arg("policies"), py::arg("player"));
  m.def("exploitability",
        [](const MatrixGame& game, const std::vector<Policy>& policies, bool normalized) {
          return exploitability(matrix_subgame(game), policies, normalized).total;
        },
        py::arg("game"), py::arg("policies"), py::arg("normalized") = false);
  m.def("seed_average_experiment",
        [](int rows, int cols, const RmConfig& rm, int seeds, int games, uint64_t seed) {
          return to_json(seed_average_experiment(rows, cols, rm, seeds, games, seed)).dump();
        },
        py::arg("rows"), py::arg("cols"), py::arg("rm"), py::arg("seeds"), py::arg("games"),
        py::arg("seed") = 0, "Returns the report as a JSON string.");

  py::class_<GameState>(m, "GameState")
      .def_readonly("year", &GameState::year)
      .def_readonly("owner", &GameState::owner)
      .def_readonly("unit", &GameState::unit)
      .def("sc_counts", &GameState::sc_counts)
      .def("is_terminal", &GameState::is_terminal)
      .def("to_json", [](const GameState& s) { return to_json(s).dump(); });
  m.def("initial_state",
        [] { return initial_state(std::make_shared<const Board>(Board::standard())); });

  m.def("play_game",
        [](const std::vector<std::string>& seats, uint64_t seed, int iterations) {
          std::vector<AgentSpec> agents;
          for (const auto& s : seats) agents.push_back(agent(s, iterations, 5.0, 2));
          const GameRecord record = play_game(agents, MatchOptions{}, seed);
          return py::make_tuple(record.scores, to_json(record).dump());
        },
        py::arg("seats"), py::arg("seed") = 0, py::arg("iterations") = 256,
        "Plays one game; returns (scores, record JSON).");
  m.def("evaluate_1v6",
        [](const std::string& a, const std::string& b, int games, uint64_t seed,
           int iterations) {
          return report_dict(evaluate_1v6(agent(a, iterations, 5.0, 2),
                                          agent(b, iterations, 5.0, 2), games, seed,
                                          MatchOptions{}));
        },
        py::arg("agent_a"), py::arg("agent_b"), py::arg("num_games"), py::arg("seed") = 0,
        py::arg("iterations") = 256);

  m.def("rating_loss",
        [](const std::vector<double>& s, const std::vector<std::pair<int, int>>& pairs,
           double lambda, bool squared) {
          OutcomeDataset d{static_cast<int>(s.size()), pairs, {}};
          return rating_loss(s, d, lambda, squared);
        },
        py::arg("s"), py::arg("pairs"), py::arg("lam"), py::arg("squared_norm") = false);
  m.def("fit_ratings",
        [](int num_players, const std::vector<std::pair<int, int>>& pairs, double lambda,
           double lr, int steps, bool squared) {
          OutcomeDataset d{num_players, pairs, {}};
          return fit_ratings(d, RatingConfig{lambda, lr, steps, squared}).s;
        },
        py::arg("num_players"), py::arg("pairs"), py::arg("lam") = 0.1,
        py::arg("learning_rate") = 0.01, py::arg("steps") = 5000,
        py::arg("squared_norm") = false);

  m.def("exact_entropy_grad",
        [](const std::vector<double>& logits) {
          return exact_entropy_grad(CategoricalModel(logits));
        },
        py::arg("logits"));
  m.def("entropy_grad_estimate",
        [](const std::vector<double>& logits, long samples, uint64_t seed) {
          Rng rng(seed);
          const auto est = entropy_grad_estimate(CategoricalModel(logits), samples, rng);
          return py::make_tuple(est.mean, est.std_error);
        },
        py::arg("logits"), py::arg("num_samples"), py::arg("seed") = 0,
        "Returns (mean, standard error) per logit.");
}
