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

#ifndef POWERGAME_NASH_H_
#define POWERGAME_NASH_H_

#include <array>
#include <span>
#include <vector>

#include "powergame/game_model.h"

namespace powergame {

// One action index per player.
using PureProfile = std::vector<int>;

// Actions of `player` that maximize its payoff against the other entries of
// `profile` (the player's own entry is ignored). Ties are compared exactly on
// the stored values, so every maximizer is returned, in increasing order.
std::vector<int> BestResponseSet(const PayoffTensor& tensor, int player,
                                 std::span<const int> profile);

// All pure Nash equilibria, sorted by profile index.
std::vector<PureProfile> EnumeratePureNash(const PayoffTensor& tensor);

// True when no player gains by a unilateral deviation from `profile`.
bool IsPureNash(const PayoffTensor& tensor, std::int64_t profile);

struct MixedEquilibrium {
  // Probability of each player's first action and second action.
  std::array<std::array<double, 2>, 2> strategies;
  std::array<double, 2> payoffs;
  bool pure = false;
};

// Equilibria of a 2x2 game: every pure equilibrium followed by the fully
// mixed one when the indifference conditions give interior probabilities.
// Degenerate games with a continuum of equilibria only report these points.
// Throws std::invalid_argument unless the tensor is 2x2.
std::vector<MixedEquilibrium> MixedNash2x2(const PayoffTensor& tensor);

}  // namespace powergame

#endif  // POWERGAME_NASH_H_
