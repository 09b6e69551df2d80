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

#ifndef POWERGAME_CORRELATED_H_
#define POWERGAME_CORRELATED_H_

#include <cstdint>
#include <span>
#include <vector>

#include "powergame/game_model.h"
#include "powergame/geometry.h"
#include "powergame/lp.h"
#include "powergame/nash.h"
#include "powergame/random.h"

namespace powergame {

// Probability over joint action profiles, in the PayoffTensor index order.
struct JointDistribution {
  std::vector<int> dims;
  std::vector<double> probs;

  // Throws std::invalid_argument unless entries are >= -1e-12 and sum to 1
  // within 1e-9.
  void Validate() const;
};

JointDistribution PointMass(const PayoffTensor& tensor,
                            std::span<const int> profile);
JointDistribution UniformDistribution(const PayoffTensor& tensor);

// Clamps entries in [-1e-12, 0) to zero and renormalizes. Larger negative
// entries raise InternalError.
JointDistribution CleanDistribution(std::vector<int> dims,
                                    std::vector<double> probs);

// Expected utility of every player under `dist`.
std::vector<double> ExpectedPayoffs(const PayoffTensor& tensor,
                                    const JointDistribution& dist);

struct EquilibriumReport {
  JointDistribution distribution;
  std::vector<double> per_player_value;
  double welfare = 0.0;
  double max_violation = 0.0;
  int solver_iterations = 0;
};

// Incentive rows of the correlated-equilibrium polytope plus the simplex
// equality, with one variable per profile and default bounds x >= 0. For
// each player i and ordered pair of distinct actions (a, b) the row is
//   sum_{others} p(a, others) * (u_i(a, others) - u_i(b, others)) >= 0,
// emitted player by player, a-major, skipping b == a. The objective is zero.
LpProblem BuildCeConstraints(const PayoffTensor& tensor);

// Welfare-maximizing correlated equilibrium.
EquilibriumReport SolveWelfareCe(const PayoffTensor& tensor,
                                 const LpOptions& options = {});

// Maximizes sum_i weights[i] * E[u_i] over the correlated equilibria.
EquilibriumReport SolveDirectionalCe(const PayoffTensor& tensor,
                                     std::span<const double> weights,
                                     const LpOptions& options = {});

// Largest expected gain from disobeying one recommendation,
//   max_{i, a, b} sum_{others} p(a, others) * (u_i(b, others) - u_i(a, others)),
// floored at zero. Zero exactly characterizes correlated equilibria.
double CeViolation(const PayoffTensor& tensor, const JointDistribution& dist);

// Largest probability a correlated equilibrium can put on `player` taking
// `action`. Zero for strictly dominated actions.
double MaxActionMass(const PayoffTensor& tensor, int player, int action,
                     const LpOptions& options = {});

inline constexpr int kDefaultRegionDirections = 64;
inline constexpr double kVertexDedupTol = 1e-7;

// Expected-payoff region of the correlated equilibria of a two-player game,
// traced by `directions` support-function LPs at angles 2*pi*k/directions.
// Returns the distinct optimal payoff points as a CCW convex polygon.
std::vector<Point2> CePayoffRegion(const PayoffTensor& tensor,
                                   int directions = kDefaultRegionDirections,
                                   const LpOptions& options = {});

// Convex hull of the payoff pairs of all pure profiles of a two-player game.
std::vector<Point2> FeasiblePayoffHull(const PayoffTensor& tensor);

// Draws recommended profiles by inverse CDF over the profile index order.
class MediatorSampler {
 public:
  // Throws std::invalid_argument for an all-zero or negative distribution.
  MediatorSampler(const JointDistribution& dist, std::uint64_t seed);

  PureProfile Next();
  std::int64_t NextIndex();

 private:
  std::vector<int> dims_;
  std::vector<double> cumulative_;
  Rng rng_;
};

// Single draw; identical seeds give identical profiles.
PureProfile MediatorSample(const JointDistribution& dist, std::uint64_t seed);

}  // namespace powergame

#endif  // POWERGAME_CORRELATED_H_
