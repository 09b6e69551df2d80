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

#ifndef POWERGAME_GAME_MODEL_H_
#define POWERGAME_GAME_MODEL_H_

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace powergame {

// Discrete transmit-power levels of one player. Levels are uniform in dB
// between min_db and max_db (or given explicitly) and stored as linear powers.
struct PowerGrid {
  double min_db = 0.0;
  double max_db = 0.0;
  std::vector<double> values_linear;

  int levels() const { return static_cast<int>(values_linear.size()); }
  double max_linear() const { return values_linear.back(); }
};

// Uniform dB grid with `levels` points. Throws std::invalid_argument on
// non-finite bounds, levels < 1, min_db > max_db, or levels == 1 with
// min_db != max_db.
PowerGrid BuildPowerGrid(double min_db, double max_db, int levels);

// Grid from an explicit, strictly increasing list of dB levels.
PowerGrid PowerGridFromDb(std::span<const double> levels_db);

inline double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }

// Channel gains. gain(j, i) is the gain from transmitter j to receiver i.
class ChannelMatrix {
 public:
  ChannelMatrix() = default;
  // `rows` is K rows of K gains, rows[j][i] = gain from j to i.
  explicit ChannelMatrix(const std::vector<std::vector<double>>& rows);

  int num_players() const { return num_players_; }
  double gain(int from, int to) const {
    return gains_[static_cast<std::size_t>(from) * num_players_ + to];
  }
  std::vector<std::vector<double>> Rows() const;

 private:
  int num_players_ = 0;
  std::vector<double> gains_;
};

struct GameInstance {
  ChannelMatrix channel;
  std::vector<PowerGrid> grids;  // one per player
  double alpha = 0.01;           // cost per linear power unit
  double noise = 1.0;            // sigma^2, linear units
  int packet_len = 100;          // L

  int num_players() const { return channel.num_players(); }
  // Throws std::invalid_argument when any field invariant is broken.
  void Validate() const;
};

// SINR at receiver `player` for a profile of linear powers.
double Sinr(int player, std::span<const double> powers,
            const ChannelMatrix& channel, double noise);

// Packet success rate (1 - exp(-x))^L. Rejects negative x.
double Efficiency(double x, int packet_len);

// Efficiency of the player's SINR minus alpha times its own power.
double Utility(int player, std::span<const double> powers,
               const GameInstance& game);

// Dense per-player utilities over all joint action profiles.
//
// Profiles are indexed in mixed radix with player 0 as the most significant
// digit. Values are stored player-major: the utility of player i at profile
// index p is values()[i * num_profiles() + p].
class PayoffTensor {
 public:
  PayoffTensor() = default;
  PayoffTensor(std::vector<int> dims, std::vector<double> values);

  int num_players() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  std::int64_t num_profiles() const { return num_profiles_; }
  const std::vector<double>& values() const { return values_; }

  // Stride of player i's digit in the profile index.
  std::int64_t stride(int player) const { return strides_[player]; }

  double payoff(int player, std::int64_t profile) const {
    return values_[static_cast<std::size_t>(player * num_profiles_ + profile)];
  }

  std::int64_t Encode(std::span<const int> actions) const;
  std::vector<int> Decode(std::int64_t profile) const;

  // Action of `player` at a profile index.
  int ActionOf(std::int64_t profile, int player) const {
    return static_cast<int>((profile / strides_[player]) % dims_[player]);
  }
  // Index of the profile with `player`'s action replaced.
  std::int64_t WithAction(std::int64_t profile, int player, int action) const {
    return profile +
           (action - ActionOf(profile, player)) * strides_[player];
  }

  double MinPayoff() const;
  double MaxPayoff() const;

 private:
  std::vector<int> dims_;
  std::vector<std::int64_t> strides_;
  std::int64_t num_profiles_ = 0;
  std::vector<double> values_;
};

inline constexpr std::int64_t kDefaultTensorBudget = 100'000'000;

// Materializes every player's utility at every profile. Throws BudgetError
// when K * prod(dims) exceeds `max_entries`.
PayoffTensor BuildPayoffTensor(const GameInstance& game,
                               std::int64_t max_entries = kDefaultTensorBudget);

// Linear powers of a profile given by action indices.
std::vector<double> ProfilePowers(const GameInstance& game,
                                  std::span<const int> actions);

}  // namespace powergame

#endif  // POWERGAME_GAME_MODEL_H_
