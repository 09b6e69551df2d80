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

// Small hand-built games shared by the tests.

#ifndef POWERGAME_TESTS_TEST_GAMES_H_
#define POWERGAME_TESTS_TEST_GAMES_H_

#include <random>
#include <vector>

#include "powergame/game_model.h"

namespace powergame::testing {

// Two-player tensor from row-major payoff matrices a (player 0) and b.
inline PayoffTensor Bimatrix(const std::vector<std::vector<double>>& a,
                             const std::vector<std::vector<double>>& b) {
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  std::vector<double> values(2 * rows * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      values[r * cols + c] = a[r][c];
      values[rows * cols + r * cols + c] = b[r][c];
    }
  }
  return PayoffTensor({rows, cols}, std::move(values));
}

inline PayoffTensor MatchingPennies() {
  return Bimatrix({{1, -1}, {-1, 1}}, {{-1, 1}, {1, -1}});
}

// Prisoner's dilemma: action 1 strictly dominates for both players.
inline PayoffTensor PrisonersDilemma() {
  return Bimatrix({{3, 0}, {5, 1}}, {{3, 5}, {0, 1}});
}

inline PayoffTensor Coordination() {
  return Bimatrix({{2, 0}, {0, 2}}, {{2, 0}, {0, 2}});
}

inline PayoffTensor Chicken() {
  return Bimatrix({{6, 2}, {7, 0}}, {{6, 7}, {2, 0}});
}

// Random tensor with payoffs on a coarse integer grid (so ties occur) or
// continuous uniform payoffs.
inline PayoffTensor RandomTensor(std::mt19937_64& gen, std::vector<int> dims,
                                 bool integer_payoffs) {
  std::int64_t profiles = 1;
  for (int d : dims) profiles *= d;
  std::vector<double> values(dims.size() * profiles);
  for (double& v : values) {
    if (integer_payoffs) {
      v = static_cast<double>(static_cast<int>(gen() % 7)) - 3.0;
    } else {
      v = -1.0 + 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
    }
  }
  return PayoffTensor(std::move(dims), std::move(values));
}

// Power-control game in which full power strictly dominates: cheap energy,
// weak cross gains and a low power range.
inline GameInstance FullPowerDominantGame(int levels) {
  GameInstance game;
  game.channel = ChannelMatrix({{1.0, 0.1}, {0.1, 1.0}});
  game.grids.assign(2, BuildPowerGrid(-20.0, 0.0, levels));
  game.alpha = 1e-3;
  game.packet_len = 1;
  return game;
}

}  // namespace powergame::testing

#endif  // POWERGAME_TESTS_TEST_GAMES_H_
