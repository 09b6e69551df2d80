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

#ifndef POWERGAME_COMMUNICATION_H_
#define POWERGAME_COMMUNICATION_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "powergame/correlated.h"
#include "powergame/game_model.h"
#include "powergame/lp.h"

namespace powergame {

enum class TypeMode {
  // Type n of player i takes the n-th entry of every incoming-link grid.
  kDiagonal,
  // Types are the Cartesian product of the incoming-link grids.
  kProduct,
};

// A player's private type: the gains of its incoming links, own link first,
// then the other transmitters in increasing index order.
struct PlayerType {
  std::vector<double> gains;
};

// Per-player type lists and a prior over joint types. Joint types are indexed
// in mixed radix with player 0 most significant.
struct TypeSpace {
  std::vector<std::vector<PlayerType>> types;
  std::vector<double> prior;
  TypeMode mode = TypeMode::kDiagonal;

  int num_players() const { return static_cast<int>(types.size()); }
  int num_types(int player) const {
    return static_cast<int>(types[player].size());
  }
  std::int64_t num_joint_types() const;
  std::int64_t Encode(std::span<const int> joint) const;
  std::vector<int> Decode(std::int64_t joint) const;
  int TypeOf(std::int64_t joint, int player) const;
  // Index of the joint type with `player`'s entry replaced.
  std::int64_t WithType(std::int64_t joint, int player, int type) const;
  // Marginal probability of `player` having type `type`.
  double Marginal(int player, int type) const;

  // Channel matrix of a joint type: column i holds player i's incoming gains.
  ChannelMatrix Channel(std::int64_t joint) const;

  // Stable text key of a joint type: per-player gain tuples with six decimals,
  // e.g. "(1.000000,0.010000)|(3.000000,0.010000)".
  std::string Key(std::int64_t joint) const;

  // Throws std::invalid_argument on an empty type list, negative gains, or a
  // prior that is negative or does not sum to 1 within 1e-12.
  void Validate() const;
};

// incoming_grids[i][j] is the grid of gains from transmitter j to receiver i.
// An empty `prior_table` selects the independent uniform prior; otherwise it
// lists q(t) for every joint type. In diagonal mode every incoming grid of a
// player must have the same length.
TypeSpace BuildTypeSpace(
    const std::vector<std::vector<std::vector<double>>>& incoming_grids,
    TypeMode mode, std::vector<double> prior_table = {});

// Same grid on every link.
TypeSpace BuildTypeSpace(int num_players, std::span<const double> gain_grid,
                         TypeMode mode, std::vector<double> prior_table = {});

// q(t_-i | t_i) by Bayes' rule over the other players' joint types (mixed
// radix over the remaining players, in player order). Throws
// std::invalid_argument when t_i has zero marginal probability.
std::vector<double> ConditionalPrior(const TypeSpace& space, int player,
                                     int type);

// Utilities of a game whose payoffs depend on the players' types. Player i's
// utility depends on the joint type only through its own type:
// utilities[i][t_i][profile].
struct BayesianGame {
  TypeSpace space;
  std::vector<int> dims;
  std::vector<std::vector<std::vector<double>>> utilities;

  std::int64_t num_profiles() const;
  void Validate() const;
};

// Power-control family: `base` supplies grids, alpha, noise and L; each type
// supplies the player's incoming gains.
BayesianGame BuildPowerControlFamily(const TypeSpace& space,
                                     const GameInstance& base);

// Complete-information game at one joint type.
PayoffTensor TensorAtType(const BayesianGame& game, std::int64_t joint);

enum class Formulation {
  // Truthful reports: per-recommendation obedience rows. Misreports t'_i:
  // one row per constant replacement action a'_i.
  kLiteral,
  // Every report t'_i paired with an arbitrary deviation map A_i -> A_i,
  // linearized with one auxiliary variable per recommended action.
  kCanonical,
};

std::string ToString(Formulation formulation);
Formulation ParseFormulation(const std::string& name);

inline constexpr std::int64_t kDefaultCommEqVariableBudget = 1'000'000;

// LP over p(a|t) (variable t * num_profiles + a) maximizing expected welfare
// subject to truth-telling and obedience, one simplex equality per joint
// type, and p >= 0. Canonical problems append free auxiliaries.
struct CommEqLp {
  LpProblem problem;
  std::int64_t num_device_vars = 0;
  std::int64_t num_incentive_rows = 0;
};

CommEqLp BuildCommEqLp(
    const BayesianGame& game, Formulation formulation,
    std::int64_t max_variables = kDefaultCommEqVariableBudget);

// Recommendation distributions p(.|t) for every joint type.
struct CommDevice {
  TypeSpace space;
  std::vector<int> dims;
  std::vector<JointDistribution> conditionals;
};

struct CommEqResult {
  CommDevice device;
  double welfare = 0.0;
  double max_violation = 0.0;
  int solver_iterations = 0;
};

CommEqResult SolveCommEq(
    const BayesianGame& game, Formulation formulation,
    const LpOptions& options = {},
    std::int64_t max_variables = kDefaultCommEqVariableBudget);

// Largest expected gain from misreporting and/or disobeying, over the
// deviation class of `formulation`, floored at zero. Computed directly from
// the device, independently of the LP rows.
double CommEqViolation(const CommDevice& device, const BayesianGame& game,
                       Formulation formulation = Formulation::kLiteral);

// Expected welfare sum_t q(t) sum_a p(a|t) sum_i u_i(t_i, a).
double ExpectedWelfare(const CommDevice& device, const BayesianGame& game);

// Nature's seeded draw of a joint type from the prior.
std::vector<int> DrawTypes(const TypeSpace& space, std::uint64_t seed);

// Mediator lottery for reported types. Throws std::invalid_argument when
// the reported joint type has zero prior probability.
PureProfile RunMediatorSession(const CommDevice& device,
                               std::span<const int> reported_types,
                               std::uint64_t seed);

}  // namespace powergame

#endif  // POWERGAME_COMMUNICATION_H_
