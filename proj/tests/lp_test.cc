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

#include "powergame/lp.h"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.h"
#include "powergame/errors.h"

namespace powergame {
namespace {

TEST(SolveLpTest, SimplexFaceOptimum) {
  LpProblem lp(2);
  lp.objective = {1.0, 1.0};
  lp.AddLessEqual({1.0, 1.0}, 1.0);
  const LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, 1.0, 1e-12);
  EXPECT_LE(MaxScaledViolation(lp, s.x), 1e-9);
}

TEST(SolveLpTest, EmptyFeasibleSetIsInfeasible) {
  LpProblem lp(1);
  lp.objective = {1.0};
  lp.AddGreaterEqual({1.0}, 2.0);
  lp.AddLessEqual({1.0}, 1.0);
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kInfeasible);
}

TEST(SolveLpTest, InconsistentEqualitiesAreInfeasible) {
  LpProblem lp(2);
  lp.AddEqual({1.0, 1.0}, 1.0);
  lp.AddEqual({2.0, 2.0}, 3.0);
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kInfeasible);
}

TEST(SolveLpTest, RedundantEqualitiesAreFine) {
  LpProblem lp(2);
  lp.objective = {1.0, 2.0};
  lp.AddEqual({1.0, 1.0}, 1.0);
  lp.AddEqual({2.0, 2.0}, 2.0);
  const LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, 2.0, 1e-12);
}

TEST(SolveLpTest, DetectsUnbounded) {
  LpProblem lp(2);
  lp.objective = {1.0, 0.0};
  lp.AddGreaterEqual({1.0, -1.0}, 0.0);
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kUnbounded);
}

TEST(SolveLpTest, FreeAndNegativeVariables) {
  // max -|x - 3| style: x free, y <= -1.
  LpProblem lp(2);
  lp.objective = {-1.0, 1.0};
  lp.SetBounds(0, -kInfinity, kInfinity);
  lp.SetBounds(1, -kInfinity, -1.0);
  lp.AddGreaterEqual({1.0, 0.0}, -4.0);
  const LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[0], -4.0, 1e-12);
  EXPECT_NEAR(s.x[1], -1.0, 1e-12);
  EXPECT_NEAR(s.objective_value, 3.0, 1e-12);
}

TEST(SolveLpTest, FixedVariable) {
  LpProblem lp(2);
  lp.objective = {1.0, 1.0};
  lp.SetBounds(0, 2.5, 2.5);
  lp.AddLessEqual({1.0, 1.0}, 4.0);
  const LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[0], 2.5, 1e-12);
  EXPECT_NEAR(s.objective_value, 4.0, 1e-12);
}

// Beale's example cycles under the textbook Dantzig rule without
// anti-cycling safeguards.
LpProblem BealeProblem() {
  LpProblem lp(4);
  lp.objective = {0.75, -20.0, 0.5, -6.0};
  lp.AddLessEqual({0.25, -8.0, -1.0, 9.0}, 0.0);
  lp.AddLessEqual({0.5, -12.0, -0.5, 3.0}, 0.0);
  lp.AddLessEqual({0.0, 0.0, 1.0, 0.0}, 1.0);
  return lp;
}

TEST(SolveLpTest, BealeTerminates) {
  const LpSolution s = SolveLp(BealeProblem());
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, 1.25, 1e-12);
}

TEST(SolveLpTest, BealeTerminatesWithBlandOnly) {
  LpOptions options;
  options.perturbation = 0.0;
  options.stall_threshold = 1;
  const LpSolution s = SolveLp(BealeProblem(), options);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, 1.25, 1e-12);
}

TEST(SolveLpTest, IterationCapRaisesStall) {
  LpOptions options;
  options.max_iterations = 1;
  LpProblem lp(3);
  lp.objective = {1.0, 2.0, 3.0};
  lp.AddLessEqual({1.0, 1.0, 1.0}, 1.0);
  lp.AddLessEqual({1.0, 2.0, 0.0}, 1.5);
  lp.AddGreaterEqual({1.0, 1.0, 0.0}, 0.5);
  EXPECT_THROW(SolveLp(lp, options), SolverStall);
}

TEST(SolveLpTest, RejectsMalformedProblems) {
  LpProblem lp(2);
  lp.AddGreaterEqual({1.0}, 0.0);
  EXPECT_THROW(SolveLp(lp), std::invalid_argument);

  LpProblem nan_lp(1);
  nan_lp.objective = {std::nan("")};
  EXPECT_THROW(SolveLp(nan_lp), std::invalid_argument);

  LpProblem bad_bounds(1);
  bad_bounds.SetBounds(0, 2.0, 1.0);
  EXPECT_THROW(SolveLp(bad_bounds), std::invalid_argument);
}

TEST(SolveLpTest, TableauBudget) {
  LpOptions options;
  options.max_tableau_cells = 10;
  EXPECT_THROW(SolveLp(BealeProblem(), options), BudgetError);
}

TEST(SolveLpTest, MatchesVertexEnumeration) {
  std::mt19937_64 gen(20260101);
  int optimal = 0;
  int infeasible = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const LpProblem lp = testing::RandomBoundedLp(gen, 6, 8, trial % 4 == 0);
    const auto oracle = testing::VertexEnumerationMax(lp);
    const LpSolution s = SolveLp(lp);
    if (!oracle.feasible) {
      EXPECT_EQ(s.status, LpStatus::kInfeasible) << "trial " << trial;
      ++infeasible;
      continue;
    }
    ASSERT_EQ(s.status, LpStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(s.objective_value, oracle.best, 1e-8) << "trial " << trial;
    EXPECT_LE(MaxScaledViolation(lp, s.x), 1e-9) << "trial " << trial;
    ++optimal;
  }
  EXPECT_GT(optimal, 50);
  EXPECT_GT(infeasible, 0);
}

TEST(SolveLpTest, Deterministic) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    const LpProblem lp = testing::RandomBoundedLp(gen, 6, 10, false);
    const LpSolution a = SolveLp(lp);
    const LpSolution b = SolveLp(lp);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.iterations, b.iterations);
  }
}

TEST(SolveLpTest, SolverInstanceIsReusable) {
  SimplexSolver solver;
  const LpSolution first = solver.Solve(BealeProblem());
  LpProblem small(1);
  small.objective = {1.0};
  small.AddLessEqual({1.0}, 3.0);
  EXPECT_NEAR(solver.Solve(small).objective_value, 3.0, 1e-12);
  EXPECT_EQ(solver.Solve(BealeProblem()).x, first.x);
}

TEST(MaxScaledViolationTest, ScalesRows) {
  LpProblem lp(1);
  lp.AddGreaterEqual({100.0}, 100.0);
  const double x[] = {0.5};
  EXPECT_DOUBLE_EQ(MaxScaledViolation(lp, x), 0.5);
}

TEST(LpDumpTest, FixedColumnLayout) {
  LpProblem lp(2);
  lp.objective = {1.0, 0.0};
  lp.AddGreaterEqual({1.0, -2.5}, 0.0);
  lp.AddEqual({1.0, 1.0}, 1.0);
  lp.SetBounds(1, -kInfinity, 4.0);
  std::ostringstream out;
  WriteLpDump(lp, "demo", out);
  EXPECT_EQ(out.str(),
            "NAME          demo\n"
            "OBJSENSE\n"
            "    MAX\n"
            "ROWS\n"
            " N  OBJ\n"
            " G  G0000001\n"
            " E  E0000001\n"
            "COLUMNS\n"
            "    X0000001  OBJ       1\n"
            "    X0000001  G0000001  1\n"
            "    X0000001  E0000001  1\n"
            "    X0000002  G0000001  -2.5\n"
            "    X0000002  E0000001  1\n"
            "RHS\n"
            "    RHS       E0000001  1\n"
            "BOUNDS\n"
            " MI BND       X0000002\n"
            " UP BND       X0000002  4\n"
            "ENDATA\n");
}

}  // namespace
}  // namespace powergame
