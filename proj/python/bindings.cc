// Copyright 2026 The powergame Authors
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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "powergame/communication.h"
#include "powergame/correlated.h"
#include "powergame/errors.h"
#include "powergame/game_model.h"
#include "powergame/lp.h"
#include "powergame/nash.h"
#include "powergame/regret.h"

namespace py = pybind11;

namespace powergame {
namespace {

PayoffTensor MakeTensor(const GameInstance& game) {
  return BuildPayoffTensor(game);
}

GameInstance MakeGame(const std::vector<std::vector<double>>& channel,
                      const std::vector<std::vector<double>>& levels_db,
                      double alpha, double noise, int packet_len) {
  GameInstance game;
  game.channel = ChannelMatrix(channel);
  for (const auto& levels : levels_db) game.grids.push_back(PowerGridFromDb(levels));
  game.alpha = alpha;
  game.noise = noise;
  game.packet_len = packet_len;
  game.Validate();
  return game;
}

py::dict ReportDict(const EquilibriumReport& r) {
  py::dict d;
  d["probs"] = r.distribution.probs;
  d["per_player_value"] = r.per_player_value;
  d["welfare"] = r.welfare;
  d["max_violation"] = r.max_violation;
  d["iterations"] = r.solver_iterations;
  return d;
}

}  // namespace
}  // namespace powergame

PYBIND11_MODULE(_powergame, m) {
  using namespace powergame;

  m.doc() = "Power-control games: Nash, correlated and communication equilibria.";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception<SolverStall>(m, "SolverStall", PyExc_RuntimeError);

  py::class_<PowerGrid>(m, "PowerGrid")
      .def_readonly("min_db", &PowerGrid::min_db)
      .def_readonly("max_db", &PowerGrid::max_db)
      .def_readonly("values_linear", &PowerGrid::values_linear);
  m.def("power_grid", &BuildPowerGrid, py::arg("min_db"), py::arg("max_db"),
        py::arg("levels"));

  py::class_<GameInstance>(m, "Game")
      .def(py::init(&MakeGame), py::arg("channel"), py::arg("levels_db"),
           py::arg("alpha") = 0.01, py::arg("noise") = 1.0,
           py::arg("packet_len") = 100)
      .def_property_readonly("num_players", &GameInstance::num_players)
      .def_property_readonly(
          "channel", [](const GameInstance& g) { return g.channel.Rows(); })
      .def_readonly("alpha", &GameInstance::alpha)
      .def_readonly("noise", &GameInstance::noise)
      .def_readonly("packet_len", &GameInstance::packet_len)
      .def("utility", [](const GameInstance& g, int player,
                         const std::vector<double>& powers) {
        return Utility(player, powers, g);
      });

  py::class_<PayoffTensor>(m, "PayoffTensor")
      .def(py::init<std::vector<int>, std::vector<double>>(), py::arg("dims"),
           py::arg("values"))
      .def_property_readonly("dims", &PayoffTensor::dims)
      .def_property_readonly("num_players", &PayoffTensor::num_players)
      .def_property_readonly("num_profiles", &PayoffTensor::num_profiles)
      .def_property_readonly("values", &PayoffTensor::values)
      .def("payoff",
           [](const PayoffTensor& t, int player, const std::vector<int>& a) {
             return t.payoff(player, t.Encode(a));
           })
      .def("encode", [](const PayoffTensor& t, const std::vector<int>& a) {
        return t.Encode(a);
      })
      .def("decode", &PayoffTensor::Decode);
  m.def("payoff_tensor", &MakeTensor, py::arg("game"));

  m.def("pure_nash", &EnumeratePureNash, py::arg("tensor"));
  m.def(
      "mixed_nash_2x2",
      [](const PayoffTensor& t) {
        py::list out;
        for (const MixedEquilibrium& e : MixedNash2x2(t)) {
          py::dict d;
          d["strategies"] = e.strategies;
          d["payoffs"] = e.payoffs;
          d["pure"] = e.pure;
          out.append(d);
        }
        return out;
      },
      py::arg("tensor"));

  m.def(
      "welfare_ce",
      [](const PayoffTensor& t) { return ReportDict(SolveWelfareCe(t)); },
      py::arg("tensor"));
  m.def(
      "directional_ce",
      [](const PayoffTensor& t, const std::vector<double>& weights) {
        return ReportDict(SolveDirectionalCe(t, weights));
      },
      py::arg("tensor"), py::arg("weights"));
  m.def(
      "ce_violation",
      [](const PayoffTensor& t, const std::vector<double>& probs) {
        return CeViolation(t, JointDistribution{t.dims(), probs});
      },
      py::arg("tensor"), py::arg("probs"));
  m.def(
      "ce_region",
      [](const PayoffTensor& t, int directions) {
        return CePayoffRegion(t, directions);
      },
      py::arg("tensor"), py::arg("directions") = kDefaultRegionDirections);
  m.def("feasible_hull", &FeasiblePayoffHull, py::arg("tensor"));

  m.def(
      "comm_eq",
      [](int num_players, const std::vector<double>& gain_grid,
         const std::string& mode, const std::vector<double>& levels_db,
         double alpha, double noise, int packet_len,
         const std::string& formulation) {
        if (mode != "diagonal" && mode != "product") {
          throw ConfigError("mode must be 'diagonal' or 'product'");
        }
        const TypeSpace space = BuildTypeSpace(
            num_players, gain_grid,
            mode == "diagonal" ? TypeMode::kDiagonal : TypeMode::kProduct);
        GameInstance base;
        base.channel = space.Channel(0);
        base.grids.assign(num_players, PowerGridFromDb(levels_db));
        base.alpha = alpha;
        base.noise = noise;
        base.packet_len = packet_len;
        const BayesianGame game = BuildPowerControlFamily(space, base);
        const CommEqResult r =
            SolveCommEq(game, ParseFormulation(formulation));
        py::dict d;
        d["welfare"] = r.welfare;
        d["max_violation"] = r.max_violation;
        py::dict device;
        for (std::int64_t t = 0; t < space.num_joint_types(); ++t) {
          device[py::str(space.Key(t))] = r.device.conditionals[t].probs;
        }
        d["device"] = device;
        return d;
      },
      py::arg("num_players"), py::arg("gain_grid"), py::arg("mode"),
      py::arg("levels_db"), py::arg("alpha") = 0.01, py::arg("noise") = 1.0,
      py::arg("packet_len") = 100, py::arg("formulation") = "literal");

  m.def(
      "regret_matching",
      [](const PayoffTensor& t, std::int64_t steps, std::uint64_t seed,
         const std::string& rule, std::optional<double> mu) {
        RegretOptions options;
        options.rule = ParseRegretRule(rule);
        options.mu = mu;
        const RegretRun run = RmRun(t, steps, seed, options);
        py::dict d;
        d["empirical"] = run.empirical.probs;
        d["welfare"] = run.welfare;
        d["ce_gap"] = run.ce_gap;
        d["mu"] = run.mu;
        d["initial_profile"] = run.initial_profile;
        py::list trace;
        for (const TracePoint& p : run.trace) {
          trace.append(py::make_tuple(p.step, p.max_regret, p.ce_gap, p.welfare));
        }
        d["trace"] = trace;
        return d;
      },
      py::arg("tensor"), py::arg("steps"), py::arg("seed") = 1,
      py::arg("rule") = "std", py::arg("mu") = std::nullopt);

  m.def(
      "solve_lp",
      [](const std::vector<double>& objective,
         const std::vector<std::vector<double>>& a_ge,
         const std::vector<double>& b_ge,
         const std::vector<std::vector<double>>& a_eq,
         const std::vector<double>& b_eq) {
        LpProblem lp(static_cast<int>(objective.size()));
        lp.objective = objective;
        if (a_ge.size() != b_ge.size() || a_eq.size() != b_eq.size()) {
          throw std::invalid_argument("row and rhs counts differ");
        }
        for (std::size_t r = 0; r < a_ge.size(); ++r) lp.AddGreaterEqual(a_ge[r], b_ge[r]);
        for (std::size_t r = 0; r < a_eq.size(); ++r) lp.AddEqual(a_eq[r], b_eq[r]);
        const LpSolution s = SolveLp(lp);
        py::dict d;
        d["status"] = ToString(s.status);
        d["x"] = s.x;
        d["objective"] = s.objective_value;
        return d;
      },
      py::arg("objective"), py::arg("a_ge") = std::vector<std::vector<double>>{},
      py::arg("b_ge") = std::vector<double>{},
      py::arg("a_eq") = std::vector<std::vector<double>>{},
      py::arg("b_eq") = std::vector<double>{});
}
