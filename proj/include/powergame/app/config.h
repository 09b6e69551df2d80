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

#ifndef POWERGAME_APP_CONFIG_H_
#define POWERGAME_APP_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "powergame/communication.h"
#include "powergame/game_model.h"
#include "powergame/lp.h"
#include "powergame/regret.h"

namespace powergame::app {

// Either a uniform dB range or an explicit list of dB levels.
struct PowerSpec {
  double min_db = -20.0;
  double max_db = 20.0;
  int levels = 25;
  std::vector<double> levels_db;

  PowerGrid Build() const;
};

// Evenly spaced gains with both endpoints included.
struct GainGridSpec {
  double min = 0.01;
  double max = 3.0;
  int points = 10;

  std::vector<double> Values() const;
};

enum class SweepMode { kSample, kEnumerate };

struct ChannelSpec {
  // When non-empty, a single fixed state; matrix[j][i] is the gain from
  // transmitter j to receiver i.
  std::vector<std::vector<double>> matrix;
  GainGridSpec grid;
  SweepMode mode = SweepMode::kSample;
  int samples = 200;
  std::uint64_t seed = 1;
  // State used by single-game commands when the channel is a grid.
  std::int64_t state = 0;

  bool is_fixed() const { return !matrix.empty(); }
};

struct TypeSpec {
  TypeMode mode = TypeMode::kDiagonal;
  // Empty means independent uniform.
  std::vector<double> prior;
  GainGridSpec grid;
};

struct SolverSpec {
  Formulation formulation = Formulation::kLiteral;
  int directions = 64;
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  std::int64_t max_variables = kDefaultCommEqVariableBudget;
  // 0 selects the solver's size-based cap.
  std::int64_t max_iterations = 0;

  LpOptions ToLpOptions() const;
};

struct LearningSpec {
  std::int64_t steps = 100000;
  std::uint64_t seed = 1;
  std::optional<double> mu;
  RegretRule rule = RegretRule::kStandard;
};

struct SweepSpec {
  bool states = true;
  bool regret = false;
  // Power grids (in dB) for the action-count sweep over the type space.
  std::vector<std::vector<double>> action_levels_db;
  int workers = 0;
};

struct ExperimentConfig {
  std::string name = "experiment";
  int players = 2;
  std::vector<PowerSpec> power;  // one per player
  ChannelSpec channel;
  double alpha = 0.01;
  double noise = 1.0;
  int packet_len = 100;
  std::optional<TypeSpec> types;
  SolverSpec solver;
  LearningSpec learning;
  SweepSpec sweep;
  std::string output_dir = "out";

  std::vector<std::string> warnings;

  // Fully defaulted form, as recorded in result metadata.
  nlohmann::json ToJson() const;
  // SHA-256 of the compact dump of ToJson().
  std::string Hash() const;
};

// Throws ConfigError with a line/column for syntax errors and the dotted
// field path for schema violations. `source` names the input in messages.
ExperimentConfig ParseConfig(std::string_view text,
                             std::string_view source = "<config>");
ExperimentConfig LoadConfig(const std::filesystem::path& path);

}  // namespace powergame::app

#endif  // POWERGAME_APP_CONFIG_H_
