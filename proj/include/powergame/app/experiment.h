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

#ifndef POWERGAME_APP_EXPERIMENT_H_
#define POWERGAME_APP_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "powergame/app/config.h"
#include "powergame/communication.h"
#include "powergame/game_model.h"
#include "powergame/geometry.h"
#include "powergame/nash.h"

namespace powergame::app {

// The configured game with the channel of `state`.
GameInstance GameAt(const ExperimentConfig& config,
                    const ChannelMatrix& channel);

// Channel states of the sweep in sweep order: the fixed matrix, every grid
// combination (link (j, i) in row-major order, first link most significant),
// or `samples` seeded draws from the grid.
std::vector<ChannelMatrix> ChannelStates(const ExperimentConfig& config);

// State used by single-game commands; `state` overrides channel.state.
ChannelMatrix SelectedChannel(const ExperimentConfig& config,
                              std::optional<std::int64_t> state = {});

struct StateResult {
  std::int64_t index = 0;
  std::vector<std::vector<double>> gains;
  std::vector<PureProfile> nash;
  std::vector<std::vector<double>> nash_payoffs;
  std::optional<double> best_ne_welfare;
  double ce_welfare = 0.0;
  double ce_violation = 0.0;
  std::optional<double> regret_welfare;
  std::optional<double> regret_ce_gap;
};

StateResult SolveState(const ExperimentConfig& config,
                       const ChannelMatrix& channel, std::int64_t index,
                       bool with_regret);

struct Summary {
  std::int64_t count = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

Summary Summarize(const std::vector<double>& values);

struct ActionSweepRow {
  int actions = 0;
  std::vector<double> levels_db;
  double ce_per_state = 0.0;
  double ce_average_game = 0.0;
  double commeq_literal = 0.0;
  double commeq_canonical = 0.0;
  double literal_violation = 0.0;
  double canonical_violation = 0.0;
};

// Bayesian power-control game over the configured type space. Every player
// uses `levels_db` when given, otherwise the configured power grids.
BayesianGame BayesianGameFor(
    const ExperimentConfig& config,
    const std::optional<std::vector<double>>& levels_db = std::nullopt);

ActionSweepRow SolveActionGrid(const ExperimentConfig& config,
                               const std::vector<double>& levels_db);

struct SweepReport {
  std::vector<StateResult> states;
  Summary ne_welfare;
  Summary ce_welfare;
  std::optional<Summary> regret_welfare;
  std::int64_t states_without_ne = 0;
  std::vector<ActionSweepRow> action_rows;
  bool nested_grids = false;
  bool literal_nondecreasing = true;
  bool canonical_nondecreasing = true;
};

// `workers` <= 0 uses config.sweep.workers, and 0 there means the hardware
// concurrency.
SweepReport RunEquilibriumSweep(const ExperimentConfig& config,
                                int workers = 0);

// Writes sweep.json, and sweep_states.csv / action_sweep.csv when those
// parts ran. Returns the written paths.
std::vector<std::filesystem::path> WriteSweep(const SweepReport& report,
                                              const ExperimentConfig& config,
                                              const std::filesystem::path& dir);

struct Regions {
  std::vector<Point2> feasible_hull;
  std::vector<Point2> ce_region;
  std::vector<Point2> ne_points;
  // Fully mixed equilibria; only filled for 2x2 games.
  std::vector<Point2> mixed_ne_points;
};

Regions ComputeRegions(const PayoffTensor& tensor, int directions);

// feasible_hull.csv, ce_region.csv, ne_points.csv, region_manifest.json and,
// for 2x2 games, mixed_ne_points.csv.
std::vector<std::filesystem::path> ExportRegions(
    const Regions& regions, const ExperimentConfig& config,
    const nlohmann::json& parameters, const std::filesystem::path& dir);

}  // namespace powergame::app

#endif  // POWERGAME_APP_EXPERIMENT_H_
