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

#include "powergame/nash.h"

#include <gtest/gtest.h>

#include <random>

#include "test_games.h"

namespace powergame {
namespace {

using ::powergame::testing::Bimatrix;

TEST(BestResponseSetTest, SingleAction) {
  const PayoffTensor t({1, 3}, {0, 1, 2, 5, 4, 3});
  const int profile[] = {0, 2};
  EXPECT_EQ(BestResponseSet(t, 0, profile), std::vector<int>{0});
  EXPECT_EQ(BestResponseSet(t, 1, profile), std::vector<int>{0});
}

TEST(BestResponseSetTest, DominantFullPower) {
  const PayoffTensor t =
      BuildPayoffTensor(testing::FullPowerDominantGame(6));
  for (int other = 0; other < 6; ++other) {
    // Brute-force argmax over the stored tensor.
    int argmax = 0;
    for (int a = 1; a < 6; ++a) {
      if (t.payoff(0, a * 6 + other) > t.payoff(0, argmax * 6 + other)) {
        argmax = a;
      }
    }
    ASSERT_EQ(argmax, 5);
    const int profile[] = {0, other};
    EXPECT_EQ(BestResponseSet(t, 0, profile), std::vector<int>{5});
  }
}

TEST(BestResponseSetTest, TiesAreAllReturned) {
  const PayoffTensor t = Bimatrix({{1, 0}, {1, 0}}, {{0, 0}, {0, 0}});
  const int profile[] = {1, 0};
  EXPECT_EQ(BestResponseSet(t, 0, profile), (std::vector<int>{0, 1}));
  EXPECT_EQ(BestResponseSet(t, 1, profile), (std::vector<int>{0, 1}));
  EXPECT_THROW(BestResponseSet(t, 2, profile), std::out_of_range);
}

TEST(EnumeratePureNashTest, KnownGames) {
  EXPECT_TRUE(EnumeratePureNash(testing::MatchingPennies()).empty());
  EXPECT_EQ(EnumeratePureNash(testing::PrisonersDilemma()),
            (std::vector<PureProfile>{{1, 1}}));
  EXPECT_EQ(EnumeratePureNash(testing::Coordination()),
            (std::vector<PureProfile>{{0, 0}, {1, 1}}));
}

TEST(EnumeratePureNashTest, DominantPowerGame) {
  const PayoffTensor t =
      BuildPayoffTensor(testing::FullPowerDominantGame(8));
  EXPECT_EQ(EnumeratePureNash(t), (std::vector<PureProfile>{{7, 7}}));
}

TEST(EnumeratePureNashTest, MatchesBruteForceOnSmallGames) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<int> dims;
    const int players = 2 + trial % 2;
    for (int i = 0; i < players; ++i) dims.push_back(1 + gen() % 4);
    const PayoffTensor t = testing::RandomTensor(gen, dims, trial % 3 != 0);

    std::vector<PureProfile> oracle;
    for (std::int64_t p = 0; p < t.num_profiles(); ++p) {
      const auto a = t.Decode(p);
      bool stable = true;
      for (int i = 0; i < players && stable; ++i) {
        for (int dev = 0; dev < dims[i]; ++dev) {
          auto b = a;
          b[i] = dev;
          if (t.payoff(i, t.Encode(b)) > t.payoff(i, p)) stable = false;
        }
      }
      if (stable) oracle.push_back(a);
    }
    EXPECT_EQ(EnumeratePureNash(t), oracle) << "trial " << trial;
  }
}

TEST(MixedNash2x2Test, MatchingPennies) {
  const auto eqs = MixedNash2x2(testing::MatchingPennies());
  ASSERT_EQ(eqs.size(), 1u);
  EXPECT_FALSE(eqs[0].pure);
  EXPECT_DOUBLE_EQ(eqs[0].strategies[0][0], 0.5);
  EXPECT_DOUBLE_EQ(eqs[0].strategies[1][0], 0.5);
  EXPECT_DOUBLE_EQ(eqs[0].payoffs[0], 0.0);
}

TEST(MixedNash2x2Test, DominantStrategy) {
  const auto eqs = MixedNash2x2(testing::PrisonersDilemma());
  ASSERT_EQ(eqs.size(), 1u);
  EXPECT_TRUE(eqs[0].pure);
  EXPECT_EQ(eqs[0].strategies[0][1], 1.0);
  EXPECT_EQ(eqs[0].strategies[1][1], 1.0);
  EXPECT_EQ(eqs[0].payoffs[0], 1.0);
}

TEST(MixedNash2x2Test, ChickenHasTwoPureAndOneMixed) {
  const PayoffTensor t = testing::Chicken();
  const auto eqs = MixedNash2x2(t);
  ASSERT_EQ(eqs.size(), 3u);
  EXPECT_TRUE(eqs[0].pure);
  EXPECT_TRUE(eqs[1].pure);
  const MixedEquilibrium& mixed = eqs[2];
  EXPECT_FALSE(mixed.pure);
  EXPECT_NEAR(mixed.strategies[0][0], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(mixed.strategies[1][0], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(mixed.payoffs[0], 14.0 / 3.0, 1e-12);

  // Best-response verification: each pure action earns the same against the
  // opponent's mix, and that common value is the reported payoff.
  const double q = mixed.strategies[1][0];
  const double row0 = q * t.payoff(0, 0) + (1 - q) * t.payoff(0, 1);
  const double row1 = q * t.payoff(0, 2) + (1 - q) * t.payoff(0, 3);
  EXPECT_NEAR(row0, row1, 1e-12);
  EXPECT_NEAR(row0, mixed.payoffs[0], 1e-12);
  const double p = mixed.strategies[0][0];
  const double col0 = p * t.payoff(1, 0) + (1 - p) * t.payoff(1, 2);
  const double col1 = p * t.payoff(1, 1) + (1 - p) * t.payoff(1, 3);
  EXPECT_NEAR(col0, col1, 1e-12);
  EXPECT_NEAR(col0, mixed.payoffs[1], 1e-12);
}

TEST(MixedNash2x2Test, ProbabilitiesInUnitInterval) {
  std::mt19937_64 gen(22);
  for (int trial = 0; trial < 200; ++trial) {
    for (const auto& eq :
         MixedNash2x2(testing::RandomTensor(gen, {2, 2}, false))) {
      for (const auto& s : eq.strategies) {
        EXPECT_GE(s[0], -1e-12);
        EXPECT_LE(s[0], 1.0 + 1e-12);
        EXPECT_NEAR(s[0] + s[1], 1.0, 1e-12);
      }
    }
  }
}

TEST(MixedNash2x2Test, RejectsOtherShapes) {
  EXPECT_THROW(MixedNash2x2(PayoffTensor({2, 3}, std::vector<double>(12))),
               std::invalid_argument);
}

}  // namespace
}  // namespace powergame
