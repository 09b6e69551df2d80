# Copyright 2026 The powergame Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the powergame C++ library."""

from powergame._powergame import (
    BudgetError,
    ConfigError,
    Game,
    PayoffTensor,
    PowerGrid,
    SolverStall,
    ce_region,
    ce_violation,
    comm_eq,
    directional_ce,
    feasible_hull,
    mixed_nash_2x2,
    payoff_tensor,
    power_grid,
    pure_nash,
    regret_matching,
    solve_lp,
    welfare_ce,
)

__all__ = [
    "BudgetError",
    "ConfigError",
    "Game",
    "PayoffTensor",
    "PowerGrid",
    "SolverStall",
    "ce_region",
    "ce_violation",
    "comm_eq",
    "directional_ce",
    "feasible_hull",
    "mixed_nash_2x2",
    "payoff_tensor",
    "power_grid",
    "pure_nash",
    "regret_matching",
    "solve_lp",
    "welfare_ce",
]
