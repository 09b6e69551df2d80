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

#ifndef POWERGAME_REGRET_H_
#define POWERGAME_REGRET_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "powergame/correlated.h"
#include "powergame/game_model.h"
#include "powergame/nash.h"
#include "powergame/random.h"

namespace powergame {

enum class RegretRule {
  // Differences accumulate only over periods in which the player actually
  // played the row action.
  kStandard,
  // Differences accumulate over every period, so all rows coincide.
  kPaperLiteral,
};

std::string ToString(RegretRule rule);
// Accepts "std" and "paper-literal".
RegretRule ParseRegretRule(const std::string& name);

// 2 * max_i M_i * (max payoff - min payoff), or 1 for a constant tensor.
double DefaultMu(const PayoffTensor& tensor);

// Throws ConfigError when mu < (M_i - 1) * spread for some player.
void CheckMu(const PayoffTensor& tensor, double mu);

struct RegretState {
  std::int64_t t = 0;
  std::vector<int> num_actions;
  // diffs[i][a * M_i + b]: cumulative u_i(b, a_-i) - u_i(a) over the
  // periods counted by the rule.
  std::vector<std::vector<double>> diffs;
  std::vector<std::int64_t> history_counts;
  PureProfile last_actions;
  Rng rng{0};

  // max(diffs / t, 0); zero before the first period.
  double Regret(int player, int from, int to) const;
  double MaxRegret() const;
};

// Records the first period: each player's action is drawn uniformly.
RegretState InitialRegretState(const PayoffTensor& tensor, std::uint64_t seed,
                               RegretRule rule = RegretRule::kStandard);
// Same, with the first-period profile given explicitly.
RegretState InitialRegretStateAt(const PayoffTensor& tensor,
                                 const PureProfile& first,
                                 std::uint64_t seed,
                                 RegretRule rule = RegretRule::kStandard);

// Next-period action distribution of `player`.
std::vector<double> SwitchProbabilities(const RegretState& state,
                                        const PayoffTensor& tensor,
                                        int player, double mu);

// Draws and records one period; returns the profile played.
const PureProfile& RmStep(RegretState& state, const PayoffTensor& tensor,
                          double mu, RegretRule rule = RegretRule::kStandard);

JointDistribution EmpiricalDistribution(const RegretState& state,
                                        const PayoffTensor& tensor);

struct TracePoint {
  std::int64_t step = 0;
  double max_regret = 0.0;
  double ce_gap = 0.0;
  double welfare = 0.0;
};

// 1..9, 10..90, 100..900, ... up to `steps`, always ending at `steps`.
std::vector<std::int64_t> LogSchedule(std::int64_t steps);

struct RegretOptions {
  RegretRule rule = RegretRule::kStandard;
  std::optional<double> mu;
};

struct RegretRun {
  JointDistribution empirical;
  std::vector<TracePoint> trace;
  PureProfile initial_profile;
  double mu = 0.0;
  double welfare = 0.0;
  double ce_gap = 0.0;
};

RegretRun RmRun(const PayoffTensor& tensor, std::int64_t steps,
                std::uint64_t seed, const RegretOptions& options = {});

// Header `step,max_regret,ce_gap,welfare`, one line per trace point.
void WriteTraceCsv(const std::vector<TracePoint>& trace, std::ostream& out);

}  // namespace powergame

#endif  // POWERGAME_REGRET_H_
