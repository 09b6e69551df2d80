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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "powergame/errors.h"
#include "powergame/format.h"

namespace powergame {
namespace {

double Spread(const PayoffTensor& tensor) {
  return tensor.MaxPayoff() - tensor.MinPayoff();
}

void Record(RegretState& state, const PayoffTensor& tensor,
            const PureProfile& profile, RegretRule rule) {
  const std::int64_t p = tensor.Encode(profile);
  for (int i = 0; i < tensor.num_players(); ++i) {
    const int m = tensor.dims()[i];
    const double played = tensor.payoff(i, p);
    std::vector<double>& d = state.diffs[i];
    for (int b = 0; b < m; ++b) {
      const double delta =
          tensor.payoff(i, tensor.WithAction(p, i, b)) - played;
      if (rule == RegretRule::kStandard) {
        d[profile[i] * m + b] += delta;
      } else {
        for (int a = 0; a < m; ++a) d[a * m + b] += delta;
      }
    }
  }
  ++state.history_counts[p];
  ++state.t;
  state.last_actions = profile;
}

double Welfare(const PayoffTensor& tensor, const JointDistribution& dist) {
  double w = 0.0;
  for (double v : ExpectedPayoffs(tensor, dist)) w += v;
  return w;
}

}  // namespace

std::string ToString(RegretRule rule) {
  return rule == RegretRule::kStandard ? "std" : "paper-literal";
}

RegretRule ParseRegretRule(const std::string& name) {
  if (name == "std") return RegretRule::kStandard;
  if (name == "paper-literal") return RegretRule::kPaperLiteral;
  throw std::invalid_argument("unknown regret rule '" + name +
                              "' (expected std or paper-literal)");
}

double DefaultMu(const PayoffTensor& tensor) {
  const double spread = Spread(tensor);
  if (spread == 0.0) return 1.0;
  const int max_m = *std::max_element(tensor.dims().begin(), tensor.dims().end());
  return 2.0 * max_m * spread;
}

void CheckMu(const PayoffTensor& tensor, double mu) {
  if (!std::isfinite(mu) || mu <= 0.0) {
    throw ConfigError("mu must be a positive finite number");
  }
  const double spread = Spread(tensor);
  for (int i = 0; i < tensor.num_players(); ++i) {
    const double needed = (tensor.dims()[i] - 1) * spread;
    if (mu < needed) {
      throw ConfigError("mu = " + FormatNumber(mu) + " is below " +
                        FormatNumber(needed) + " = (M_" + std::to_string(i) +
                        " - 1) * payoff spread; switch probabilities could "
                        "exceed 1");
    }
  }
}

double RegretState::Regret(int player, int from, int to) const {
  if (t == 0) return 0.0;
  const int m = num_actions[player];
  return std::max(diffs[player][from * m + to] / static_cast<double>(t), 0.0);
}

double RegretState::MaxRegret() const {
  if (t == 0) return 0.0;
  double worst = 0.0;
  for (const auto& d : diffs) {
    for (double v : d) worst = std::max(worst, v);
  }
  return worst / static_cast<double>(t);
}

RegretState InitialRegretStateAt(const PayoffTensor& tensor,
                                 const PureProfile& first, std::uint64_t seed,
                                 RegretRule rule) {
  RegretState state;
  state.rng = Rng(seed);
  state.num_actions = tensor.dims();
  state.diffs.resize(tensor.num_players());
  for (int i = 0; i < tensor.num_players(); ++i) {
    const std::size_t m = tensor.dims()[i];
    state.diffs[i].assign(m * m, 0.0);
  }
  state.history_counts.assign(tensor.num_profiles(), 0);
  tensor.Encode(first);  // validates the profile
  Record(state, tensor, first, rule);
  return state;
}

RegretState InitialRegretState(const PayoffTensor& tensor, std::uint64_t seed,
                               RegretRule rule) {
  Rng rng(seed);
  PureProfile first(tensor.num_players());
  for (int i = 0; i < tensor.num_players(); ++i) {
    first[i] = static_cast<int>(rng.Below(tensor.dims()[i]));
  }
  RegretState state = InitialRegretStateAt(tensor, first, seed, rule);
  state.rng = rng;
  return state;
}

std::vector<double> SwitchProbabilities(const RegretState& state,
                                        const PayoffTensor& tensor,
                                        int player, double mu) {
  const int m = tensor.dims()[player];
  const int current = state.last_actions[player];
  std::vector<double> probs(m, 0.0);
  double moved = 0.0;
  for (int b = 0; b < m; ++b) {
    if (b == current) continue;
    probs[b] = state.Regret(player, current, b) / mu;
    moved += probs[b];
  }
  if (moved > 1.0 + 1e-12) {
    throw InternalError("switch probabilities exceed 1; mu is too small");
  }
  probs[current] = std::max(0.0, 1.0 - moved);
  return probs;
}

const PureProfile& RmStep(RegretState& state, const PayoffTensor& tensor,
                          double mu, RegretRule rule) {
  PureProfile next(tensor.num_players());
  for (int i = 0; i < tensor.num_players(); ++i) {
    const std::vector<double> probs = SwitchProbabilities(state, tensor, i, mu);
    const double u = state.rng.Uniform();
    double cumulative = 0.0;
    int chosen = state.last_actions[i];
    for (int b = 0; b < static_cast<int>(probs.size()); ++b) {
      if (b == state.last_actions[i]) continue;
      cumulative += probs[b];
      if (u < cumulative) {
        chosen = b;
        break;
      }
    }
    next[i] = chosen;
  }
  Record(state, tensor, next, rule);
  return state.last_actions;
}

JointDistribution EmpiricalDistribution(const RegretState& state,
                                        const PayoffTensor& tensor) {
  if (state.t < 1) {
    throw std::invalid_argument("empirical distribution needs t >= 1");
  }
  JointDistribution dist{tensor.dims(), {}};
  dist.probs.reserve(state.history_counts.size());
  const double t = static_cast<double>(state.t);
  for (std::int64_t c : state.history_counts) {
    dist.probs.push_back(static_cast<double>(c) / t);
  }
  return dist;
}

std::vector<std::int64_t> LogSchedule(std::int64_t steps) {
  std::vector<std::int64_t> schedule;
  for (std::int64_t scale = 1; scale <= steps; scale *= 10) {
    for (std::int64_t k = 1; k <= 9 && k * scale <= steps; ++k) {
      schedule.push_back(k * scale);
    }
    if (scale > steps / 10) break;
  }
  if (schedule.empty() || schedule.back() != steps) schedule.push_back(steps);
  return schedule;
}

RegretRun RmRun(const PayoffTensor& tensor, std::int64_t steps,
                std::uint64_t seed, const RegretOptions& options) {
  if (steps < 1) throw ConfigError("regret matching needs at least 1 step");
  RegretRun run;
  run.mu = options.mu.value_or(DefaultMu(tensor));
  CheckMu(tensor, run.mu);
  RegretState state = InitialRegretState(tensor, seed, options.rule);
  run.initial_profile = state.last_actions;
  const std::vector<std::int64_t> schedule = LogSchedule(steps);
  std::size_t next_sample = 0;
  while (true) {
    if (next_sample < schedule.size() && state.t == schedule[next_sample]) {
      const JointDistribution dist = EmpiricalDistribution(state, tensor);
      run.trace.push_back({state.t, state.MaxRegret(),
                           CeViolation(tensor, dist), Welfare(tensor, dist)});
      ++next_sample;
    }
    if (state.t >= steps) break;
    RmStep(state, tensor, run.mu, options.rule);
  }
  run.empirical = EmpiricalDistribution(state, tensor);
  run.ce_gap = run.trace.back().ce_gap;
  run.welfare = run.trace.back().welfare;
  return run;
}

void WriteTraceCsv(const std::vector<TracePoint>& trace, std::ostream& out) {
  out << "step,max_regret,ce_gap,welfare\n";
  for (const TracePoint& p : trace) {
    out << p.step << ',' << FormatNumber(p.max_regret) << ','
        << FormatNumber(p.ce_gap) << ',' << FormatNumber(p.welfare) << '\n';
  }
}

}  // namespace powergame
