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

#include "powergame/communication.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "powergame/errors.h"
#include "powergame/random.h"

namespace powergame {
namespace {

constexpr double kPriorTol = 1e-12;
constexpr double kAcceptedViolation = 1e-8;

std::int64_t Product(std::span<const int> dims) {
  std::int64_t n = 1;
  for (int d : dims) n *= d;
  return n;
}

std::vector<int> TypeCounts(const TypeSpace& space) {
  std::vector<int> counts(space.num_players());
  for (int i = 0; i < space.num_players(); ++i) counts[i] = space.num_types(i);
  return counts;
}

// Profile index helpers over `dims` with player 0 most significant.
struct Radix {
  explicit Radix(std::span<const int> dims)
      : dims(dims.begin(), dims.end()), strides(dims.size(), 1) {
    for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) {
      strides[i] = strides[i + 1] * dims[i + 1];
    }
  }
  int Digit(std::int64_t index, int i) const {
    return static_cast<int>((index / strides[i]) % dims[i]);
  }
  std::int64_t With(std::int64_t index, int i, int digit) const {
    return index + (digit - Digit(index, i)) * strides[i];
  }
  std::vector<int> dims;
  std::vector<std::int64_t> strides;
};

double UtilityScale(const BayesianGame& game) {
  double scale = 1.0;
  for (const auto& per_player : game.utilities) {
    for (const auto& per_type : per_player) {
      for (double u : per_type) scale = std::max(scale, std::abs(u));
    }
  }
  return scale;
}

}  // namespace

std::int64_t TypeSpace::num_joint_types() const {
  return Product(TypeCounts(*this));
}

std::int64_t TypeSpace::Encode(std::span<const int> joint) const {
  if (static_cast<int>(joint.size()) != num_players()) {
    throw std::invalid_argument("joint type needs one entry per player");
  }
  std::int64_t index = 0;
  for (int i = 0; i < num_players(); ++i) {
    if (joint[i] < 0 || joint[i] >= num_types(i)) {
      throw std::out_of_range("type index out of range");
    }
    index = index * num_types(i) + joint[i];
  }
  return index;
}

std::vector<int> TypeSpace::Decode(std::int64_t joint) const {
  std::vector<int> out(num_players());
  for (int i = num_players() - 1; i >= 0; --i) {
    out[i] = static_cast<int>(joint % num_types(i));
    joint /= num_types(i);
  }
  return out;
}

int TypeSpace::TypeOf(std::int64_t joint, int player) const {
  return Radix(TypeCounts(*this)).Digit(joint, player);
}

std::int64_t TypeSpace::WithType(std::int64_t joint, int player,
                                 int type) const {
  return Radix(TypeCounts(*this)).With(joint, player, type);
}

double TypeSpace::Marginal(int player, int type) const {
  const Radix radix(TypeCounts(*this));
  double total = 0.0;
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(prior.size()); ++t) {
    if (radix.Digit(t, player) == type) total += prior[t];
  }
  return total;
}

ChannelMatrix TypeSpace::Channel(std::int64_t joint) const {
  const int k = num_players();
  const std::vector<int> t = Decode(joint);
  std::vector<std::vector<double>> g(k, std::vector<double>(k, 0.0));
  for (int i = 0; i < k; ++i) {
    const std::vector<double>& gains = types[i][t[i]].gains;
    g[i][i] = gains[0];
    int slot = 1;
    for (int j = 0; j < k; ++j) {
      if (j != i) g[j][i] = gains[slot++];
    }
  }
  return ChannelMatrix(g);
}

std::string TypeSpace::Key(std::int64_t joint) const {
  const std::vector<int> t = Decode(joint);
  std::string key;
  char buf[32];
  for (int i = 0; i < num_players(); ++i) {
    if (i > 0) key += '|';
    key += '(';
    const auto& gains = types[i][t[i]].gains;
    for (std::size_t g = 0; g < gains.size(); ++g) {
      if (g > 0) key += ',';
      std::snprintf(buf, sizeof(buf), "%.6f", gains[g]);
      key += buf;
    }
    key += ')';
  }
  return key;
}

void TypeSpace::Validate() const {
  if (types.empty()) throw std::invalid_argument("type space has no players");
  for (const auto& list : types) {
    if (list.empty()) throw std::invalid_argument("empty type list");
    for (const PlayerType& t : list) {
      if (static_cast<int>(t.gains.size()) != num_players()) {
        throw std::invalid_argument("a type needs one gain per transmitter");
      }
      for (double g : t.gains) {
        if (!std::isfinite(g) || g < 0) {
          throw std::invalid_argument("type gains must be finite and >= 0");
        }
      }
    }
  }
  if (static_cast<std::int64_t>(prior.size()) != num_joint_types()) {
    throw std::invalid_argument("prior needs one entry per joint type");
  }
  double total = 0.0;
  for (double q : prior) {
    if (!std::isfinite(q) || q < 0) {
      throw std::invalid_argument("prior entries must be nonnegative");
    }
    total += q;
  }
  if (std::abs(total - 1.0) > kPriorTol) {
    throw std::invalid_argument("prior must sum to 1");
  }
}

TypeSpace BuildTypeSpace(
    const std::vector<std::vector<std::vector<double>>>& incoming_grids,
    TypeMode mode, std::vector<double> prior_table) {
  const int k = static_cast<int>(incoming_grids.size());
  if (k == 0) throw std::invalid_argument("type space needs >= 1 player");
  TypeSpace space;
  space.mode = mode;
  space.types.resize(k);
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(incoming_grids[i].size()) != k) {
      throw std::invalid_argument("each player needs one grid per link");
    }
    // Link order inside a type: own link, then others ascending.
    std::vector<const std::vector<double>*> links = {&incoming_grids[i][i]};
    for (int j = 0; j < k; ++j) {
      if (j != i) links.push_back(&incoming_grids[i][j]);
    }
    for (const auto* grid : links) {
      if (grid->empty()) throw std::invalid_argument("empty gain grid");
    }
    if (mode == TypeMode::kDiagonal) {
      const std::size_t n = links[0]->size();
      for (const auto* grid : links) {
        if (grid->size() != n) {
          throw std::invalid_argument(
              "diagonal types need equally long incoming grids");
        }
      }
      for (std::size_t level = 0; level < n; ++level) {
        PlayerType t;
        for (const auto* grid : links) t.gains.push_back((*grid)[level]);
        space.types[i].push_back(std::move(t));
      }
    } else {
      std::vector<int> sizes;
      for (const auto* grid : links) {
        sizes.push_back(static_cast<int>(grid->size()));
      }
      const Radix radix(sizes);
      for (std::int64_t idx = 0; idx < Product(sizes); ++idx) {
        PlayerType t;
        for (std::size_t l = 0; l < links.size(); ++l) {
          t.gains.push_back((*links[l])[radix.Digit(idx, static_cast<int>(l))]);
        }
        space.types[i].push_back(std::move(t));
      }
    }
  }
  const std::int64_t joint = space.num_joint_types();
  if (prior_table.empty()) {
    space.prior.assign(joint, 1.0 / static_cast<double>(joint));
  } else {
    space.prior = std::move(prior_table);
  }
  space.Validate();
  return space;
}

TypeSpace BuildTypeSpace(int num_players, std::span<const double> gain_grid,
                         TypeMode mode, std::vector<double> prior_table) {
  const std::vector<double> grid(gain_grid.begin(), gain_grid.end());
  std::vector<std::vector<std::vector<double>>> incoming(
      num_players, std::vector<std::vector<double>>(num_players, grid));
  return BuildTypeSpace(incoming, mode, std::move(prior_table));
}

std::vector<double> ConditionalPrior(const TypeSpace& space, int player,
                                     int type) {
  if (player < 0 || player >= space.num_players() || type < 0 ||
      type >= space.num_types(player)) {
    throw std::out_of_range("player or type out of range");
  }
  const double marginal = space.Marginal(player, type);
  if (!(marginal > 0.0)) {
    throw std::invalid_argument("cannot condition on a zero-probability type");
  }
  std::vector<double> conditional;
  const Radix radix(TypeCounts(space));
  for (std::int64_t t = 0; t < space.num_joint_types(); ++t) {
    if (radix.Digit(t, player) == type) {
      conditional.push_back(space.prior[t] / marginal);
    }
  }
  return conditional;
}

std::int64_t BayesianGame::num_profiles() const { return Product(dims); }

void BayesianGame::Validate() const {
  space.Validate();
  if (static_cast<int>(dims.size()) != space.num_players() ||
      static_cast<int>(utilities.size()) != space.num_players()) {
    throw std::invalid_argument("game and type space disagree on players");
  }
  for (int i = 0; i < space.num_players(); ++i) {
    if (static_cast<int>(utilities[i].size()) != space.num_types(i)) {
      throw std::invalid_argument("need utilities for every player type");
    }
    for (const auto& u : utilities[i]) {
      if (static_cast<std::int64_t>(u.size()) != num_profiles()) {
        throw std::invalid_argument("utility table size mismatch");
      }
    }
  }
}

BayesianGame BuildPowerControlFamily(const TypeSpace& space,
                                     const GameInstance& base) {
  space.Validate();
  if (static_cast<int>(base.grids.size()) != space.num_players()) {
    throw std::invalid_argument("game and type space disagree on players");
  }
  const int k = space.num_players();
  BayesianGame game;
  game.space = space;
  for (const PowerGrid& g : base.grids) game.dims.push_back(g.levels());
  const std::int64_t profiles = game.num_profiles();
  const Radix radix(game.dims);
  game.utilities.resize(k);
  for (int i = 0; i < k; ++i) {
    for (int ti = 0; ti < space.num_types(i); ++ti) {
      // Only column i of the channel matters for player i's utility.
      std::vector<int> joint(k, 0);
      joint[i] = ti;
      GameInstance instance = base;
      instance.channel = space.Channel(space.Encode(joint));
      instance.Validate();
      std::vector<double> u(profiles);
      std::vector<int> actions(k);
      for (std::int64_t p = 0; p < profiles; ++p) {
        for (int j = 0; j < k; ++j) actions[j] = radix.Digit(p, j);
        u[p] = Utility(i, ProfilePowers(instance, actions), instance);
      }
      game.utilities[i].push_back(std::move(u));
    }
  }
  return game;
}

PayoffTensor TensorAtType(const BayesianGame& game, std::int64_t joint) {
  const std::int64_t profiles = game.num_profiles();
  std::vector<double> values;
  values.reserve(profiles * game.dims.size());
  for (int i = 0; i < game.space.num_players(); ++i) {
    const auto& u = game.utilities[i][game.space.TypeOf(joint, i)];
    values.insert(values.end(), u.begin(), u.end());
  }
  return PayoffTensor(game.dims, std::move(values));
}

std::string ToString(Formulation formulation) {
  return formulation == Formulation::kLiteral ? "literal" : "canonical";
}

Formulation ParseFormulation(const std::string& name) {
  if (name == "literal") return Formulation::kLiteral;
  if (name == "canonical") return Formulation::kCanonical;
  throw std::invalid_argument("unknown formulation '" + name +
                              "' (expected literal or canonical)");
}

CommEqLp BuildCommEqLp(const BayesianGame& game, Formulation formulation,
                       std::int64_t max_variables) {
  game.Validate();
  const TypeSpace& space = game.space;
  const int k = space.num_players();
  const std::int64_t profiles = game.num_profiles();
  const std::int64_t joints = space.num_joint_types();
  const Radix actions(game.dims);
  const Radix type_radix(TypeCounts(space));

  std::int64_t aux = 0;
  if (formulation == Formulation::kCanonical) {
    for (int i = 0; i < k; ++i) {
      aux += static_cast<std::int64_t>(space.num_types(i)) *
             space.num_types(i) * game.dims[i];
    }
  }
  const std::int64_t device_vars = joints * profiles;
  if (device_vars + aux > max_variables) {
    throw BudgetError("communication-equilibrium LP needs " +
                      std::to_string(device_vars + aux) +
                      " variables, over the budget of " +
                      std::to_string(max_variables) +
                      "; reduce the action or type counts");
  }
  const int n = static_cast<int>(device_vars + aux);
  CommEqLp out;
  out.num_device_vars = device_vars;
  LpProblem& lp = out.problem;
  lp = LpProblem(n);
  auto var = [&](std::int64_t t, std::int64_t p) {
    return static_cast<std::size_t>(t * profiles + p);
  };

  for (std::int64_t t = 0; t < joints; ++t) {
    for (std::int64_t p = 0; p < profiles; ++p) {
      double welfare = 0.0;
      for (int i = 0; i < k; ++i) {
        welfare += game.utilities[i][type_radix.Digit(t, i)][p];
      }
      lp.objective[var(t, p)] = space.prior[t] * welfare;
    }
  }

  std::int64_t next_aux = device_vars;
  for (int i = 0; i < k; ++i) {
    const int m = game.dims[i];
    for (int ti = 0; ti < space.num_types(i); ++ti) {
      const double marginal = space.Marginal(i, ti);
      if (!(marginal > 0.0)) continue;
      const std::vector<double>& u = game.utilities[i][ti];
      // Joint types consistent with t_i and their conditional weights.
      std::vector<std::pair<std::int64_t, double>> others;
      for (std::int64_t t = 0; t < joints; ++t) {
        if (type_radix.Digit(t, i) == ti) {
          others.emplace_back(t, space.prior[t] / marginal);
        }
      }
      // Truthful expected payoff, shared by the misreport rows.
      std::vector<double> truthful(n, 0.0);
      for (const auto& [t, w] : others) {
        for (std::int64_t p = 0; p < profiles; ++p) {
          truthful[var(t, p)] += w * u[p];
        }
      }

      if (formulation == Formulation::kLiteral) {
        for (int a = 0; a < m; ++a) {
          for (int b = 0; b < m; ++b) {
            if (b == a) continue;
            std::vector<double> row(n, 0.0);
            for (const auto& [t, w] : others) {
              for (std::int64_t p = 0; p < profiles; ++p) {
                if (actions.Digit(p, i) != a) continue;
                row[var(t, p)] += w * (u[p] - u[actions.With(p, i, b)]);
              }
            }
            lp.AddGreaterEqual(std::move(row), 0.0);
            ++out.num_incentive_rows;
          }
        }
        for (int lie = 0; lie < space.num_types(i); ++lie) {
          if (lie == ti) continue;
          for (int b = 0; b < m; ++b) {
            std::vector<double> row = truthful;
            for (const auto& [t, w] : others) {
              const std::int64_t reported = type_radix.With(t, i, lie);
              for (std::int64_t p = 0; p < profiles; ++p) {
                row[var(reported, p)] -= w * u[actions.With(p, i, b)];
              }
            }
            lp.AddGreaterEqual(std::move(row), 0.0);
            ++out.num_incentive_rows;
          }
        }
        continue;
      }

      // Canonical: z(report, a) >= expected payoff of playing b when told a
      // after reporting `report`, and truthful >= sum_a z(report, a).
      for (int report = 0; report < space.num_types(i); ++report) {
        std::vector<double> truth_row = truthful;
        for (int a = 0; a < m; ++a) {
          const auto z = static_cast<std::size_t>(next_aux++);
          lp.SetBounds(static_cast<int>(z), -kInfinity, kInfinity);
          truth_row[z] = -1.0;
          for (int b = 0; b < m; ++b) {
            std::vector<double> row(n, 0.0);
            row[z] = 1.0;
            for (const auto& [t, w] : others) {
              const std::int64_t reported = type_radix.With(t, i, report);
              for (std::int64_t p = 0; p < profiles; ++p) {
                if (actions.Digit(p, i) != a) continue;
                row[var(reported, p)] -= w * u[actions.With(p, i, b)];
              }
            }
            lp.AddGreaterEqual(std::move(row), 0.0);
            ++out.num_incentive_rows;
          }
        }
        lp.AddGreaterEqual(std::move(truth_row), 0.0);
        ++out.num_incentive_rows;
      }
    }
  }

  for (std::int64_t t = 0; t < joints; ++t) {
    std::vector<double> row(n, 0.0);
    for (std::int64_t p = 0; p < profiles; ++p) row[var(t, p)] = 1.0;
    lp.AddEqual(std::move(row), 1.0);
  }
  return out;
}

CommEqResult SolveCommEq(const BayesianGame& game, Formulation formulation,
                         const LpOptions& options,
                         std::int64_t max_variables) {
  const CommEqLp built = BuildCommEqLp(game, formulation, max_variables);
  SimplexSolver solver(options);
  const LpSolution solution = solver.Solve(built.problem);
  if (solution.status != LpStatus::kOptimal) {
    throw InternalError("communication-equilibrium LP reported " +
                        ToString(solution.status));
  }
  CommEqResult result;
  result.device.space = game.space;
  result.device.dims = game.dims;
  const std::int64_t profiles = game.num_profiles();
  for (std::int64_t t = 0; t < game.space.num_joint_types(); ++t) {
    std::vector<double> probs(solution.x.begin() + t * profiles,
                              solution.x.begin() + (t + 1) * profiles);
    result.device.conditionals.push_back(
        CleanDistribution(game.dims, std::move(probs)));
  }
  result.welfare = ExpectedWelfare(result.device, game);
  result.max_violation = CommEqViolation(result.device, game, formulation);
  result.solver_iterations = solution.iterations;
  if (result.max_violation > kAcceptedViolation * UtilityScale(game)) {
    throw InternalError("communication-equilibrium LP solution violates the "
                        "incentive constraints by " +
                        std::to_string(result.max_violation));
  }
  return result;
}

double CommEqViolation(const CommDevice& device, const BayesianGame& game,
                       Formulation formulation) {
  const TypeSpace& space = game.space;
  const std::int64_t joints = space.num_joint_types();
  const std::int64_t profiles = game.num_profiles();
  if (device.dims != game.dims ||
      static_cast<std::int64_t>(device.conditionals.size()) != joints) {
    throw std::invalid_argument("device does not match the game");
  }
  for (const JointDistribution& d : device.conditionals) {
    if (static_cast<std::int64_t>(d.probs.size()) != profiles) {
      throw std::invalid_argument("device conditional has the wrong size");
    }
  }
  const Radix actions(game.dims);
  const Radix types(TypeCounts(space));
  double worst = 0.0;
  for (int i = 0; i < space.num_players(); ++i) {
    const int m = game.dims[i];
    const int n_types = space.num_types(i);
    for (int ti = 0; ti < n_types; ++ti) {
      const double marginal = space.Marginal(i, ti);
      if (!(marginal > 0.0)) continue;
      const std::vector<double>& u = game.utilities[i][ti];
      double truthful = 0.0;
      // play[report][a * m + b]: expected payoff of reporting `report`,
      // being told a and playing b.
      std::vector<std::vector<double>> play(
          n_types, std::vector<double>(static_cast<std::size_t>(m) * m, 0.0));
      // Obedience gains after a truthful report, accumulated like
      // CeViolation so the single-type case agrees exactly.
      std::vector<double> obey_gain(static_cast<std::size_t>(m) * m, 0.0);
      for (std::int64_t t = 0; t < joints; ++t) {
        if (types.Digit(t, i) != ti) continue;
        const double w = space.prior[t] / marginal;
        const auto& own = device.conditionals[t].probs;
        for (std::int64_t p = 0; p < profiles; ++p) {
          const double prob = w * own[p];
          if (prob == 0.0) continue;
          truthful += prob * u[p];
          const int a = actions.Digit(p, i);
          for (int b = 0; b < m; ++b) {
            if (b == a) continue;
            obey_gain[a * m + b] += prob * (u[actions.With(p, i, b)] - u[p]);
          }
        }
        for (int report = 0; report < n_types; ++report) {
          const auto& lied = device.conditionals[types.With(t, i, report)].probs;
          for (std::int64_t p = 0; p < profiles; ++p) {
            const double prob = w * lied[p];
            if (prob == 0.0) continue;
            const int a = actions.Digit(p, i);
            for (int b = 0; b < m; ++b) {
              play[report][a * m + b] += prob * u[actions.With(p, i, b)];
            }
          }
        }
      }
      if (formulation == Formulation::kLiteral) {
        for (double g : obey_gain) worst = std::max(worst, g);
        for (int report = 0; report < n_types; ++report) {
          if (report == ti) continue;
          for (int b = 0; b < m; ++b) {
            double constant = 0.0;
            for (int a = 0; a < m; ++a) constant += play[report][a * m + b];
            worst = std::max(worst, constant - truthful);
          }
        }
      } else {
        for (int report = 0; report < n_types; ++report) {
          double best_map = 0.0;
          for (int a = 0; a < m; ++a) {
            double best = play[report][a * m];
            for (int b = 1; b < m; ++b) {
              best = std::max(best, play[report][a * m + b]);
            }
            best_map += best;
          }
          worst = std::max(worst, best_map - truthful);
        }
      }
    }
  }
  return worst;
}

double ExpectedWelfare(const CommDevice& device, const BayesianGame& game) {
  const Radix types(TypeCounts(game.space));
  double total = 0.0;
  for (std::int64_t t = 0; t < game.space.num_joint_types(); ++t) {
    const double q = game.space.prior[t];
    if (q == 0.0) continue;
    double inner = 0.0;
    for (std::int64_t p = 0; p < game.num_profiles(); ++p) {
      double w = 0.0;
      for (int i = 0; i < game.space.num_players(); ++i) {
        w += game.utilities[i][types.Digit(t, i)][p];
      }
      inner += device.conditionals[t].probs[p] * w;
    }
    total += q * inner;
  }
  return total;
}

std::vector<int> DrawTypes(const TypeSpace& space, std::uint64_t seed) {
  const JointDistribution prior{TypeCounts(space), space.prior};
  MediatorSampler sampler(prior, seed);
  return space.Decode(sampler.NextIndex());
}

PureProfile RunMediatorSession(const CommDevice& device,
                               std::span<const int> reported_types,
                               std::uint64_t seed) {
  const std::int64_t t = device.space.Encode(reported_types);
  if (!(device.space.prior[t] > 0.0)) {
    throw std::invalid_argument("reported joint type has zero probability");
  }
  return MediatorSample(device.conditionals[t], seed);
}

}  // namespace powergame
