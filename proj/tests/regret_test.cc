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

#include "powergame/regret.h"

#include <gtest/gtest.h>

#include <iostream>
#include <random>
#include <sstream>

#include "powergame/errors.h"
#include "powergame/lp.h"
#include "test_games.h"

namespace powergame {
namespace {

// Both players earn their own action index; switching 0 -> 1 gains exactly
// the payoff spread, so with mu = spread the switch is certain.
PayoffTensor OwnActionGame() {
  return testing::Bimatrix({{0, 0}, {1, 1}}, {{0, 1}, {0, 1}});
}

// Best welfare over distributions whose CE rows are relaxed by eps.
double EpsilonCeWelfare(const PayoffTensor& game, double eps) {
  LpProblem lp = BuildCeConstraints(game);
  for (LpRow& row : lp.ineq_rows) row.rhs = -eps;
  for (std::int64_t p = 0; p < game.num_profiles(); ++p) {
    double w = 0.0;
    for (int i = 0; i < game.num_players(); ++i) w += game.payoff(i, p);
    lp.objective[p] = w;
  }
  const LpSolution solution = SolveLp(lp);
  EXPECT_EQ(solution.status, LpStatus::kOptimal);
  return solution.objective_value;
}

TEST(RegretRuleTest, ParseAndPrint) {
  EXPECT_EQ(ParseRegretRule("std"), RegretRule::kStandard);
  EXPECT_EQ(ParseRegretRule("paper-literal"), RegretRule::kPaperLiteral);
  EXPECT_EQ(ToString(RegretRule::kPaperLiteral), "paper-literal");
  EXPECT_THROW(ParseRegretRule("standard"), std::invalid_argument);
}

TEST(RegretMuTest, DefaultAndValidation) {
  const PayoffTensor pd = testing::PrisonersDilemma();
  EXPECT_DOUBLE_EQ(DefaultMu(pd), 2.0 * 2 * 5);
  EXPECT_NO_THROW(CheckMu(pd, 5.0));
  EXPECT_THROW(CheckMu(pd, 4.999), ConfigError);
  EXPECT_THROW(CheckMu(pd, 0.0), ConfigError);
  const PayoffTensor flat = testing::Bimatrix({{1, 1}, {1, 1}}, {{1, 1}, {1, 1}});
  EXPECT_DOUBLE_EQ(DefaultMu(flat), 1.0);
  EXPECT_THROW(RmRun(pd, 10, 1, {RegretRule::kStandard, 1.0}), ConfigError);
}

TEST(RegretStepTest, ZeroRegretRepeatsLastAction) {
  const PayoffTensor game = testing::Coordination();
  RegretState state = InitialRegretStateAt(game, {0, 0}, 3);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(SwitchProbabilities(state, game, i, DefaultMu(game)),
              (std::vector<double>{1.0, 0.0}));
  }
  for (int s = 0; s < 20; ++s) {
    EXPECT_EQ(RmStep(state, game, DefaultMu(game)), (PureProfile{0, 0}));
  }
  EXPECT_EQ(state.t, 21);
}

TEST(RegretStepTest, TwoStepHandTraceStandardRule) {
  const PayoffTensor game = OwnActionGame();
  RegretState state = InitialRegretStateAt(game, {0, 0}, 7);
  // Period 1 at (0,0): D_i(0,1) = 1 - 0.
  EXPECT_EQ(state.diffs[0], (std::vector<double>{0, 1, 0, 0}));
  EXPECT_EQ(state.diffs[1], (std::vector<double>{0, 1, 0, 0}));
  EXPECT_EQ(SwitchProbabilities(state, game, 0, 1.0),
            (std::vector<double>{0.0, 1.0}));
  // Period 2 switches to (1,1): D_i(1,0) = 0 - 1.
  EXPECT_EQ(RmStep(state, game, 1.0), (PureProfile{1, 1}));
  EXPECT_EQ(state.diffs[0], (std::vector<double>{0, 1, -1, 0}));
  EXPECT_EQ(state.diffs[1], (std::vector<double>{0, 1, -1, 0}));
  EXPECT_DOUBLE_EQ(state.Regret(0, 0, 1), 0.5);
  EXPECT_DOUBLE_EQ(state.Regret(0, 1, 0), 0.0);
  EXPECT_EQ(state.history_counts, (std::vector<std::int64_t>{1, 0, 0, 1}));
  // No positive regret from action 1, so the profile stays.
  EXPECT_EQ(RmStep(state, game, 1.0), (PureProfile{1, 1}));
}

TEST(RegretStepTest, TwoStepHandTracePaperLiteralRule) {
  const PayoffTensor game = OwnActionGame();
  RegretState state =
      InitialRegretStateAt(game, {0, 0}, 7, RegretRule::kPaperLiteral);
  EXPECT_EQ(state.diffs[0], (std::vector<double>{0, 1, 0, 1}));
  EXPECT_EQ(RmStep(state, game, 1.0, RegretRule::kPaperLiteral),
            (PureProfile{1, 1}));
  // Every row sums the unconditioned differences: column 0 gets -1 from
  // period 2, column 1 gets +1 from period 1.
  EXPECT_EQ(state.diffs[0], (std::vector<double>{-1, 1, -1, 1}));
  EXPECT_DOUBLE_EQ(state.Regret(1, 1, 1), 0.5);
  EXPECT_DOUBLE_EQ(state.Regret(1, 1, 0), 0.0);
}

TEST(RegretStepTest, ProbabilitiesAreValidEveryStep) {
  std::mt19937_64 gen(41);
  const PayoffTensor game = testing::RandomTensor(gen, {3, 4}, false);
  const double mu = DefaultMu(game);
  RegretState state = InitialRegretState(game, 5);
  for (int s = 0; s < 2000; ++s) {
    for (int i = 0; i < 2; ++i) {
      double total = 0.0;
      for (double p : SwitchProbabilities(state, game, i, mu)) {
        EXPECT_GE(p, 0.0);
        total += p;
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
    RmStep(state, game, mu);
  }
}

TEST(EmpiricalDistributionTest, CountsOverSteps) {
  const PayoffTensor game = testing::MatchingPennies();
  RegretState state = InitialRegretState(game, 13);
  for (int s = 0; s < 4; ++s) RmStep(state, game, DefaultMu(game));
  const JointDistribution dist = EmpiricalDistribution(state, game);
  std::int64_t total = 0;
  for (std::size_t p = 0; p < dist.probs.size(); ++p) {
    EXPECT_EQ(dist.probs[p], state.history_counts[p] / 5.0);
    total += state.history_counts[p];
  }
  EXPECT_EQ(total, 5);
  RegretState empty;
  EXPECT_THROW(EmpiricalDistribution(empty, game), std::invalid_argument);
}

TEST(LogScheduleTest, Shape) {
  EXPECT_EQ(LogSchedule(1), (std::vector<std::int64_t>{1}));
  EXPECT_EQ(LogSchedule(25),
            (std::vector<std::int64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 25}));
  EXPECT_EQ(LogSchedule(100).back(), 100);
  EXPECT_EQ(LogSchedule(100).size(), 19u);
}

TEST(RegretRunTest, SingleStepIsPointMassOnInitialProfile) {
  const PayoffTensor game = testing::Chicken();
  const RegretRun run = RmRun(game, 1, 77);
  const JointDistribution expected = PointMass(game, run.initial_profile);
  EXPECT_EQ(run.empirical.probs, expected.probs);
  ASSERT_EQ(run.trace.size(), 1u);
  EXPECT_EQ(run.trace[0].step, 1);
}

TEST(RegretRunTest, DominantProfileAttractsPlay) {
  const PayoffTensor game = testing::PrisonersDilemma();
  const RegretRun run = RmRun(game, 10000, 2024);
  EXPECT_GE(run.empirical.probs[game.Encode(PureProfile{1, 1})], 0.95);
}

TEST(RegretRunTest, DominantPowerGame) {
  const PayoffTensor game = BuildPayoffTensor(testing::FullPowerDominantGame(2));
  const RegretRun run = RmRun(game, 10000, 9);
  EXPECT_GE(run.empirical.probs.back(), 0.95);
}

TEST(RegretRunTest, MatchingPenniesApproachesUniform) {
  const PayoffTensor game = testing::MatchingPennies();
  const RegretRun run = RmRun(game, 100000, 31337);
  EXPECT_LE(run.ce_gap, 0.05);
  EXPECT_EQ(run.ce_gap, CeViolation(game, run.empirical));
}

TEST(RegretRunTest, Deterministic) {
  std::mt19937_64 gen(3);
  const PayoffTensor game = testing::RandomTensor(gen, {3, 3}, false);
  for (RegretRule rule : {RegretRule::kStandard, RegretRule::kPaperLiteral}) {
    const RegretRun a = RmRun(game, 5000, 8, {rule, std::nullopt});
    const RegretRun b = RmRun(game, 5000, 8, {rule, std::nullopt});
    EXPECT_EQ(a.empirical.probs, b.empirical.probs);
    std::ostringstream ta, tb;
    WriteTraceCsv(a.trace, ta);
    WriteTraceCsv(b.trace, tb);
    EXPECT_EQ(ta.str(), tb.str());
  }
  EXPECT_NE(RmRun(game, 5000, 8).empirical.probs,
            RmRun(game, 5000, 9).empirical.probs);
}

TEST(RegretRunTest, ConvergesOnRandomGames) {
  std::mt19937_64 gen(101);
  int above_exact = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const int m0 = 2 + static_cast<int>(gen() % 3);
    const int m1 = 2 + static_cast<int>(gen() % 3);
    const PayoffTensor game = testing::RandomTensor(gen, {m0, m1}, false);
    const RegretRun run = RmRun(game, 100000, 500 + trial);
    const double spread = game.MaxPayoff() - game.MinPayoff();
    EXPECT_LE(run.ce_gap, 0.05 * spread) << "trial " << trial;
    // The empirical play is an approximate CE, so its welfare is bounded by
    // the best welfare among CE relaxed by the measured gap.
    EXPECT_LE(run.welfare, EpsilonCeWelfare(game, run.ce_gap) + 1e-9);
    if (run.welfare > SolveWelfareCe(game).welfare + 1e-6) ++above_exact;
  }
  RecordProperty("runs_above_exact_ce_welfare", above_exact);
  std::cout << "runs above exact CE welfare: " << above_exact << "/10\n";
}

TEST(RegretRunTest, TraceCsvLayout) {
  const std::vector<TracePoint> trace = {{1, 0.5, 0.25, 2.0}, {2, 0.1, 0, -1}};
  std::ostringstream out;
  WriteTraceCsv(trace, out);
  EXPECT_EQ(out.str(),
            "step,max_regret,ce_gap,welfare\n1,0.5,0.25,2\n2,0.1,0,-1\n");
}

}  // namespace
}  // namespace powergame
