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

#include <stdexcept>

namespace powergame {

std::vector<int> BestResponseSet(const PayoffTensor& tensor, int player,
                                 std::span<const int> profile) {
  if (player < 0 || player >= tensor.num_players()) {
    throw std::out_of_range("player index out of range");
  }
  std::vector<int> actions(profile.begin(), profile.end());
  actions.at(player) = 0;
  const std::int64_t base = tensor.Encode(actions);
  const std::int64_t stride = tensor.stride(player);
  std::vector<int> best;
  double best_value = 0.0;
  for (int a = 0; a < tensor.dims()[player]; ++a) {
    const double v = tensor.payoff(player, base + a * stride);
    if (best.empty() || v > best_value) {
      best.assign(1, a);
      best_value = v;
    } else if (v == best_value) {
      best.push_back(a);
    }
  }
  return best;
}

bool IsPureNash(const PayoffTensor& tensor, std::int64_t profile) {
  for (int i = 0; i < tensor.num_players(); ++i) {
    const double current = tensor.payoff(i, profile);
    const std::int64_t base = tensor.WithAction(profile, i, 0);
    for (int a = 0; a < tensor.dims()[i]; ++a) {
      if (tensor.payoff(i, base + a * tensor.stride(i)) > current) {
        return false;
      }
    }
  }
  return true;
}

std::vector<PureProfile> EnumeratePureNash(const PayoffTensor& tensor) {
  std::vector<PureProfile> equilibria;
  for (std::int64_t p = 0; p < tensor.num_profiles(); ++p) {
    if (IsPureNash(tensor, p)) equilibria.push_back(tensor.Decode(p));
  }
  return equilibria;
}

std::vector<MixedEquilibrium> MixedNash2x2(const PayoffTensor& tensor) {
  if (tensor.num_players() != 2 || tensor.dims()[0] != 2 ||
      tensor.dims()[1] != 2) {
    throw std::invalid_argument("MixedNash2x2 needs a 2x2 game");
  }
  // Index p = 2 * row + col.
  auto a = [&](int r, int c) { return tensor.payoff(0, 2 * r + c); };
  auto b = [&](int r, int c) { return tensor.payoff(1, 2 * r + c); };

  std::vector<MixedEquilibrium> result;
  for (const PureProfile& ne : EnumeratePureNash(tensor)) {
    MixedEquilibrium eq;
    eq.pure = true;
    eq.strategies[0] = {ne[0] == 0 ? 1.0 : 0.0, ne[0] == 1 ? 1.0 : 0.0};
    eq.strategies[1] = {ne[1] == 0 ? 1.0 : 0.0, ne[1] == 1 ? 1.0 : 0.0};
    eq.payoffs = {a(ne[0], ne[1]), b(ne[0], ne[1])};
    result.push_back(eq);
  }

  // Row player's mix p on row 0 makes the column player indifferent, and
  // the column player's mix q on column 0 makes the row player indifferent.
  const double den_p = b(0, 0) - b(1, 0) - b(0, 1) + b(1, 1);
  const double den_q = a(0, 0) - a(0, 1) - a(1, 0) + a(1, 1);
  if (den_p == 0.0 || den_q == 0.0) return result;
  const double p = (b(1, 1) - b(1, 0)) / den_p;
  const double q = (a(1, 1) - a(0, 1)) / den_q;
  if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) return result;

  MixedEquilibrium eq;
  eq.strategies[0] = {p, 1.0 - p};
  eq.strategies[1] = {q, 1.0 - q};
  eq.payoffs = {q * a(0, 0) + (1.0 - q) * a(0, 1),
                p * b(0, 0) + (1.0 - p) * b(1, 0)};
  result.push_back(eq);
  return result;
}

}  // namespace powergame
