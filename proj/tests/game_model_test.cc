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

#include "powergame/game_model.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "powergame/errors.h"

namespace powergame {
namespace {

// Separately coded SINR and utility, straight from the definitions.
double OracleSinr(int i, const std::vector<double>& a,
                  const std::vector<std::vector<double>>& g, double noise) {
  double denom = noise;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (static_cast<int>(j) != i) denom += a[j] * g[j][i];
  }
  return a[i] * g[i][i] / denom;
}

double OracleUtility(int i, const std::vector<double>& a,
                     const std::vector<std::vector<double>>& g, double noise,
                     double alpha, int len) {
  const double x = OracleSinr(i, a, g, noise);
  double phi = 1.0;
  for (int k = 0; k < len; ++k) phi *= 1.0 - std::exp(-x);
  return phi - alpha * a[i];
}

std::vector<std::vector<double>> RandomGains(std::mt19937_64& gen, int k) {
  std::uniform_real_distribution<double> gain(0.01, 3.0);
  std::vector<std::vector<double>> g(k, std::vector<double>(k));
  for (auto& row : g) {
    for (double& v : row) v = gain(gen);
  }
  return g;
}

GameInstance RandomGame(std::mt19937_64& gen, int k, int m) {
  GameInstance game;
  game.channel = ChannelMatrix(RandomGains(gen, k));
  game.grids.assign(k, BuildPowerGrid(-20.0, 20.0, m));
  return game;
}

TEST(PowerGridTest, ReferenceRange) {
  const PowerGrid grid = BuildPowerGrid(-20.0, 20.0, 25);
  ASSERT_EQ(grid.levels(), 25);
  EXPECT_NEAR(grid.values_linear.front(), 0.01, 1e-16);
  EXPECT_NEAR(grid.values_linear.back(), 100.0, 1e-12);
  // Spacing of 40/24 dB.
  EXPECT_NEAR(10.0 * std::log10(grid.values_linear[1] / grid.values_linear[0]),
              40.0 / 24.0, 1e-12);
  EXPECT_NEAR(grid.values_linear[1], 0.0146779926762206994, 1e-15);
  EXPECT_NEAR(grid.values_linear[12], 1.0, 1e-15);
  for (int k = 1; k < grid.levels(); ++k) {
    EXPECT_GT(grid.values_linear[k], grid.values_linear[k - 1]);
  }
}

TEST(PowerGridTest, SmallGrids) {
  const PowerGrid single = BuildPowerGrid(0.0, 0.0, 1);
  ASSERT_EQ(single.levels(), 1);
  EXPECT_EQ(single.values_linear[0], 1.0);

  const PowerGrid three = BuildPowerGrid(-10.0, 10.0, 3);
  ASSERT_EQ(three.levels(), 3);
  EXPECT_NEAR(three.values_linear[0], 0.1, 1e-16);
  EXPECT_EQ(three.values_linear[1], 1.0);
  EXPECT_NEAR(three.values_linear[2], 10.0, 1e-14);
}

TEST(PowerGridTest, RejectsBadInput) {
  EXPECT_THROW(BuildPowerGrid(-20.0, 20.0, 0), std::invalid_argument);
  EXPECT_THROW(BuildPowerGrid(20.0, -20.0, 5), std::invalid_argument);
  EXPECT_THROW(BuildPowerGrid(-1.0, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(BuildPowerGrid(std::nan(""), 1.0, 2), std::invalid_argument);
  EXPECT_THROW(BuildPowerGrid(0.0, INFINITY, 2), std::invalid_argument);
  const double unsorted[] = {0.0, -3.0};
  EXPECT_THROW(PowerGridFromDb(unsorted), std::invalid_argument);
}

TEST(PowerGridTest, ExplicitLevels) {
  const double db[] = {-20.0, 0.0, 20.0};
  const PowerGrid grid = PowerGridFromDb(db);
  EXPECT_EQ(grid.min_db, -20.0);
  EXPECT_EQ(grid.max_db, 20.0);
  EXPECT_EQ(grid.values_linear[1], 1.0);
}

TEST(SinrTest, HandExamples) {
  const ChannelMatrix identity({{1.0, 0.0}, {0.0, 1.0}});
  const double alone[] = {1.0, 0.0};
  EXPECT_EQ(Sinr(0, alone, identity, 1.0), 1.0);

  const ChannelMatrix coupled({{1.0, 1.0}, {1.0, 1.0}});
  const double both[] = {1.0, 1.0};
  EXPECT_EQ(Sinr(0, both, coupled, 1.0), 0.5);
}

TEST(SinrTest, MatchesOracleOnRandomThreePlayerInstances) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> power(0.0, 100.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = RandomGains(gen, 3);
    const ChannelMatrix channel(g);
    std::vector<double> a = {power(gen), power(gen), power(gen)};
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(Sinr(i, a, channel, 0.7), OracleSinr(i, a, g, 0.7),
                  1e-14 * (1.0 + OracleSinr(i, a, g, 0.7)));
    }
  }
}

TEST(SinrTest, Monotonicity) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 20; ++trial) {
    const ChannelMatrix channel(RandomGains(gen, 3));
    std::vector<double> a = {1.0, 2.0, 3.0};
    double last = Sinr(0, a, channel, 1.0);
    for (double own = 1.5; own < 50.0; own *= 1.5) {
      a[0] = own;
      const double s = Sinr(0, a, channel, 1.0);
      EXPECT_GT(s, last);
      last = s;
    }
    for (double other = 2.5; other < 50.0; other *= 1.5) {
      a[1] = other;
      const double s = Sinr(0, a, channel, 1.0);
      EXPECT_LE(s, last);
      last = s;
    }
  }
}

TEST(SinrTest, RejectsBadArguments) {
  const ChannelMatrix channel({{1.0, 1.0}, {1.0, 1.0}});
  const double a[] = {1.0, 1.0};
  const double short_profile[] = {1.0};
  EXPECT_THROW(Sinr(2, a, channel, 1.0), std::out_of_range);
  EXPECT_THROW(Sinr(0, short_profile, channel, 1.0), std::invalid_argument);
}

TEST(EfficiencyTest, Values) {
  EXPECT_EQ(Efficiency(0.0, 100), 0.0);
  EXPECT_NEAR(Efficiency(std::log(2.0), 1), 0.5, 1e-16);
  // 50-digit evaluation of (1 - e^-1)^100.
  EXPECT_NEAR(Efficiency(1.0, 100), 1.2022410072001341030938e-20,
              1e-13 * 1.2022410072001341e-20);
  EXPECT_THROW(Efficiency(-1e-9, 10), std::invalid_argument);
}

TEST(EfficiencyTest, BoundedAndNondecreasing) {
  for (int len : {1, 2, 10, 100}) {
    double last = 0.0;
    for (int k = 0; k <= 4000; ++k) {
      const double phi = Efficiency(k * 0.01, len);
      EXPECT_GE(phi, 0.0);
      EXPECT_LE(phi, 1.0);
      EXPECT_GE(phi, last);
      last = phi;
    }
    EXPECT_NEAR(Efficiency(1e3, len), 1.0, 1e-15);
  }
}

TEST(UtilityTest, ZeroOwnPower) {
  GameInstance game;
  game.channel = ChannelMatrix({{1.0, 0.5}, {0.5, 1.0}});
  game.grids.assign(2, BuildPowerGrid(0.0, 0.0, 1));
  const double a[] = {0.0, 1.0};
  EXPECT_EQ(Utility(0, a, game), 0.0);
}

TEST(UtilityTest, SinglePlayer) {
  GameInstance game;
  game.channel = ChannelMatrix(std::vector<std::vector<double>>{{1.0}});
  game.grids = {BuildPowerGrid(0.0, 0.0, 1)};
  game.packet_len = 1;
  game.alpha = 0.01;
  const double a[] = {1.0};
  EXPECT_NEAR(Utility(0, a, game), 0.62212055882855767840, 1e-15);
}

TEST(UtilityTest, CompositionAndBounds) {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 20; ++trial) {
    const GameInstance game = RandomGame(gen, 2, 5);
    for (int x = 0; x < 5; ++x) {
      for (int y = 0; y < 5; ++y) {
        const int actions[] = {x, y};
        const auto a = ProfilePowers(game, actions);
        for (int i = 0; i < 2; ++i) {
          const double u = Utility(i, a, game);
          EXPECT_EQ(u, Efficiency(Sinr(i, a, game.channel, game.noise),
                                  game.packet_len) -
                           game.alpha * a[i]);
          EXPECT_GE(u, -game.alpha * game.grids[i].max_linear());
          EXPECT_LE(u, 1.0);
        }
      }
    }
  }
}

TEST(GameInstanceTest, Validation) {
  GameInstance game;
  game.channel = ChannelMatrix({{1.0, 1.0}, {1.0, 1.0}});
  game.grids.assign(2, BuildPowerGrid(-20.0, 20.0, 3));
  EXPECT_NO_THROW(game.Validate());
  GameInstance bad = game;
  bad.alpha = 0.0;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
  bad = game;
  bad.noise = -1.0;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
  bad = game;
  bad.packet_len = 0;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
  bad = game;
  bad.grids.pop_back();
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
  EXPECT_THROW(ChannelMatrix({{1.0, -1.0}, {1.0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(ChannelMatrix({{1.0, 1.0}, {1.0}}), std::invalid_argument);
}

TEST(PayoffTensorTest, SizesAndDirectUtility) {
  std::mt19937_64 gen(14);
  const GameInstance small = RandomGame(gen, 2, 2);
  const PayoffTensor t2 = BuildPayoffTensor(small);
  EXPECT_EQ(t2.values().size(), 8u);
  for (std::int64_t p = 0; p < 4; ++p) {
    const auto actions = t2.Decode(p);
    const auto a = ProfilePowers(small, actions);
    for (int i = 0; i < 2; ++i) EXPECT_EQ(t2.payoff(i, p), Utility(i, a, small));
  }
  const PayoffTensor t25 = BuildPayoffTensor(RandomGame(gen, 2, 25));
  EXPECT_EQ(t25.values().size(), 2u * 625u);
}

TEST(PayoffTensorTest, ThreePlayersMatchOracle) {
  std::mt19937_64 gen(15);
  const auto g = RandomGains(gen, 3);
  GameInstance game;
  game.channel = ChannelMatrix(g);
  game.grids.assign(3, BuildPowerGrid(-20.0, 20.0, 3));
  const PayoffTensor t = BuildPayoffTensor(game);
  ASSERT_EQ(t.values().size(), 3u * 27u);
  const double levels[] = {0.01, 1.0, 100.0};
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      for (int z = 0; z < 3; ++z) {
        const std::vector<double> a = {levels[x], levels[y], levels[z]};
        const std::int64_t p = 9 * x + 3 * y + z;
        for (int i = 0; i < 3; ++i) {
          const double want = OracleUtility(i, a, g, 1.0, 0.01, 100);
          EXPECT_NEAR(t.payoff(i, p), want, 1e-12);
        }
      }
    }
  }
}

TEST(PayoffTensorTest, IndexBijection) {
  const PayoffTensor t({2, 3, 4}, std::vector<double>(3 * 24, 0.0));
  for (std::int64_t p = 0; p < t.num_profiles(); ++p) {
    EXPECT_EQ(t.Encode(t.Decode(p)), p);
  }
  // Player 0 is the most significant digit.
  const int actions[] = {1, 0, 0};
  EXPECT_EQ(t.Encode(actions), 12);
  EXPECT_EQ(t.WithAction(12, 2, 3), 15);
  const int bad[] = {2, 0, 0};
  EXPECT_THROW(t.Encode(bad), std::out_of_range);
}

TEST(PayoffTensorTest, FidelityOnRandomEntries) {
  std::mt19937_64 gen(16);
  const GameInstance game = RandomGame(gen, 2, 25);
  const PayoffTensor t = BuildPayoffTensor(game);
  for (int k = 0; k < 100; ++k) {
    const std::int64_t p = static_cast<std::int64_t>(gen() % t.num_profiles());
    const int i = static_cast<int>(gen() % 2);
    const auto a = ProfilePowers(game, t.Decode(p));
    EXPECT_EQ(t.payoff(i, p), Utility(i, a, game));
  }
  for (int i = 0; i < 2; ++i) {
    for (std::int64_t p = 0; p < t.num_profiles(); ++p) {
      EXPECT_GE(t.payoff(i, p), -game.alpha * 100.0 - 1e-12);
      EXPECT_LE(t.payoff(i, p), 1.0);
    }
  }
}

TEST(PayoffTensorTest, Budget) {
  std::mt19937_64 gen(17);
  EXPECT_THROW(BuildPayoffTensor(RandomGame(gen, 2, 25), 1000), BudgetError);
}

TEST(PayoffTensorTest, RejectsBadShapes) {
  EXPECT_THROW(PayoffTensor({2, 2}, std::vector<double>(7)),
               std::invalid_argument);
  EXPECT_THROW(PayoffTensor({2, 0}, {}), std::invalid_argument);
  EXPECT_THROW(PayoffTensor({1}, {std::nan("")}), std::invalid_argument);
}

}  // namespace
}  // namespace powergame
