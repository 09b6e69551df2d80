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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "powergame/errors.h"

namespace powergame {

PowerGrid BuildPowerGrid(double min_db, double max_db, int levels) {
  if (!std::isfinite(min_db) || !std::isfinite(max_db)) {
    throw std::invalid_argument("power grid bounds must be finite");
  }
  if (levels < 1) throw std::invalid_argument("power grid needs >= 1 level");
  if (min_db > max_db) {
    throw std::invalid_argument("power grid min_db exceeds max_db");
  }
  if (levels == 1 && min_db != max_db) {
    throw std::invalid_argument(
        "a single-level power grid needs min_db == max_db");
  }
  if (levels > 1 && min_db == max_db) {
    throw std::invalid_argument(
        "power grid with several levels needs min_db < max_db");
  }
  PowerGrid grid;
  grid.min_db = min_db;
  grid.max_db = max_db;
  grid.values_linear.resize(levels);
  for (int k = 0; k < levels; ++k) {
    // Endpoints are hit exactly.
    const double db =
        k == levels - 1
            ? max_db
            : min_db + (max_db - min_db) * k / std::max(levels - 1, 1);
    grid.values_linear[k] = DbToLinear(db);
  }
  return grid;
}

PowerGrid PowerGridFromDb(std::span<const double> levels_db) {
  if (levels_db.empty()) {
    throw std::invalid_argument("power grid needs >= 1 level");
  }
  PowerGrid grid;
  for (std::size_t k = 0; k < levels_db.size(); ++k) {
    if (!std::isfinite(levels_db[k])) {
      throw std::invalid_argument("power levels must be finite");
    }
    if (k > 0 && !(levels_db[k] > levels_db[k - 1])) {
      throw std::invalid_argument("power levels must be strictly increasing");
    }
    grid.values_linear.push_back(DbToLinear(levels_db[k]));
  }
  grid.min_db = levels_db.front();
  grid.max_db = levels_db.back();
  return grid;
}

ChannelMatrix::ChannelMatrix(const std::vector<std::vector<double>>& rows)
    : num_players_(static_cast<int>(rows.size())) {
  if (rows.empty()) throw std::invalid_argument("channel needs >= 1 player");
  gains_.reserve(rows.size() * rows.size());
  for (const auto& row : rows) {
    if (row.size() != rows.size()) {
      throw std::invalid_argument("channel matrix must be square");
    }
    for (double g : row) {
      if (!std::isfinite(g) || g < 0) {
        throw std::invalid_argument(
            "channel gains must be finite and nonnegative");
      }
      gains_.push_back(g);
    }
  }
}

std::vector<std::vector<double>> ChannelMatrix::Rows() const {
  std::vector<std::vector<double>> rows(num_players_);
  for (int j = 0; j < num_players_; ++j) {
    rows[j].assign(gains_.begin() + j * num_players_,
                   gains_.begin() + (j + 1) * num_players_);
  }
  return rows;
}

void GameInstance::Validate() const {
  const int k = num_players();
  if (k < 1) throw std::invalid_argument("game needs >= 1 player");
  if (static_cast<int>(grids.size()) != k) {
    throw std::invalid_argument("game needs one power grid per player");
  }
  for (const PowerGrid& grid : grids) {
    if (grid.values_linear.empty()) {
      throw std::invalid_argument("empty power grid");
    }
    for (std::size_t m = 0; m < grid.values_linear.size(); ++m) {
      const double v = grid.values_linear[m];
      if (!std::isfinite(v) || v < 0 ||
          (m > 0 && !(v > grid.values_linear[m - 1]))) {
        throw std::invalid_argument(
            "power levels must be finite, nonnegative and increasing");
      }
    }
  }
  if (!(alpha > 0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be positive");
  }
  if (!(noise > 0) || !std::isfinite(noise)) {
    throw std::invalid_argument("noise must be positive");
  }
  if (packet_len < 1) throw std::invalid_argument("packet_len must be >= 1");
}

double Sinr(int player, std::span<const double> powers,
            const ChannelMatrix& channel, double noise) {
  const int k = channel.num_players();
  if (player < 0 || player >= k) {
    throw std::out_of_range("player index out of range");
  }
  if (static_cast<int>(powers.size()) != k) {
    throw std::invalid_argument("profile length must equal player count");
  }
  double interference = noise;
  for (int j = 0; j < k; ++j) {
    if (j != player) interference += powers[j] * channel.gain(j, player);
  }
  return powers[player] * channel.gain(player, player) / interference;
}

double Efficiency(double x, int packet_len) {
  if (!(x >= 0)) throw std::invalid_argument("efficiency needs x >= 0");
  if (packet_len < 1) throw std::invalid_argument("packet_len must be >= 1");
  return std::pow(-std::expm1(-x), packet_len);
}

double Utility(int player, std::span<const double> powers,
               const GameInstance& game) {
  return Efficiency(Sinr(player, powers, game.channel, game.noise),
                    game.packet_len) -
         game.alpha * powers[player];
}

PayoffTensor::PayoffTensor(std::vector<int> dims, std::vector<double> values)
    : dims_(std::move(dims)), values_(std::move(values)) {
  if (dims_.empty()) throw std::invalid_argument("tensor needs >= 1 player");
  strides_.assign(dims_.size(), 1);
  num_profiles_ = 1;
  for (int i = static_cast<int>(dims_.size()) - 1; i >= 0; --i) {
    if (dims_[i] < 1) throw std::invalid_argument("action sets must be nonempty");
    strides_[i] = num_profiles_;
    num_profiles_ *= dims_[i];
  }
  if (static_cast<std::int64_t>(values_.size()) !=
      num_profiles_ * static_cast<std::int64_t>(dims_.size())) {
    throw std::invalid_argument("tensor value count must be K * prod(dims)");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("payoffs must be finite");
  }
}

std::int64_t PayoffTensor::Encode(std::span<const int> actions) const {
  if (actions.size() != dims_.size()) {
    throw std::invalid_argument("profile length must equal player count");
  }
  std::int64_t index = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (actions[i] < 0 || actions[i] >= dims_[i]) {
      throw std::out_of_range("action index out of range");
    }
    index += actions[i] * strides_[i];
  }
  return index;
}

std::vector<int> PayoffTensor::Decode(std::int64_t profile) const {
  if (profile < 0 || profile >= num_profiles_) {
    throw std::out_of_range("profile index out of range");
  }
  std::vector<int> actions(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    actions[i] = ActionOf(profile, static_cast<int>(i));
  }
  return actions;
}

double PayoffTensor::MinPayoff() const {
  return *std::min_element(values_.begin(), values_.end());
}

double PayoffTensor::MaxPayoff() const {
  return *std::max_element(values_.begin(), values_.end());
}

std::vector<double> ProfilePowers(const GameInstance& game,
                                  std::span<const int> actions) {
  std::vector<double> powers(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    powers[i] = game.grids.at(i).values_linear.at(actions[i]);
  }
  return powers;
}

PayoffTensor BuildPayoffTensor(const GameInstance& game,
                               std::int64_t max_entries) {
  game.Validate();
  const int k = game.num_players();
  std::vector<int> dims(k);
  double entries = k;
  for (int i = 0; i < k; ++i) {
    dims[i] = game.grids[i].levels();
    entries *= dims[i];
  }
  if (entries > static_cast<double>(max_entries)) {
    throw BudgetError("payoff tensor would hold " +
                      std::to_string(static_cast<long long>(entries)) +
                      " entries, over the budget of " +
                      std::to_string(max_entries));
  }
  const auto profiles = static_cast<std::int64_t>(entries) / k;
  std::vector<double> values(static_cast<std::size_t>(entries));
  std::vector<int> actions(k, 0);
  std::vector<double> powers(k);
  for (std::int64_t p = 0; p < profiles; ++p) {
    for (int i = 0; i < k; ++i) {
      powers[i] = game.grids[i].values_linear[actions[i]];
    }
    for (int i = 0; i < k; ++i) {
      values[static_cast<std::size_t>(i * profiles + p)] =
          Utility(i, powers, game);
    }
    // Odometer increment, last player fastest.
    for (int i = k - 1; i >= 0; --i) {
      if (++actions[i] < dims[i]) break;
      actions[i] = 0;
    }
  }
  return PayoffTensor(std::move(dims), std::move(values));
}

}  // namespace powergame
