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

#include "powergame/correlated.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "powergame/errors.h"

namespace powergame {
namespace {

constexpr double kNegativeDust = 1e-12;
constexpr double kAcceptedViolation = 1e-8;

std::int64_t ProfileCount(std::span<const int> dims) {
  std::int64_t n = 1;
  for (int d : dims) n *= d;
  return n;
}

void CheckDims(const PayoffTensor& tensor, const JointDistribution& dist) {
  if (dist.dims != tensor.dims() ||
      static_cast<std::int64_t>(dist.probs.size()) != tensor.num_profiles()) {
    throw std::invalid_argument("distribution does not match tensor shape");
  }
}

double PayoffScale(const PayoffTensor& tensor) {
  return std::max({1.0, std::abs(tensor.MinPayoff()),
                   std::abs(tensor.MaxPayoff())});
}

EquilibriumReport SolveCeObjective(const PayoffTensor& tensor,
                                   std::span<const double> weights,
                                   const LpOptions& options) {
  LpProblem problem = BuildCeConstraints(tensor);
  const std::int64_t n = tensor.num_profiles();
  for (std::int64_t p = 0; p < n; ++p) {
    double c = 0.0;
    for (int i = 0; i < tensor.num_players(); ++i) {
      c += weights[i] * tensor.payoff(i, p);
    }
    problem.objective[p] = c;
  }
  SimplexSolver solver(options);
  const LpSolution solution = solver.Solve(problem);
  if (solution.status != LpStatus::kOptimal) {
    throw InternalError("correlated-equilibrium LP reported " +
                        ToString(solution.status));
  }
  EquilibriumReport report;
  report.distribution = CleanDistribution(tensor.dims(), solution.x);
  report.per_player_value = ExpectedPayoffs(tensor, report.distribution);
  report.welfare = std::accumulate(report.per_player_value.begin(),
                                   report.per_player_value.end(), 0.0);
  report.max_violation = CeViolation(tensor, report.distribution);
  report.solver_iterations = solution.iterations;
  if (report.max_violation > kAcceptedViolation * PayoffScale(tensor)) {
    throw InternalError("correlated-equilibrium LP solution violates the "
                        "incentive constraints by " +
                        std::to_string(report.max_violation));
  }
  return report;
}

}  // namespace

void JointDistribution::Validate() const {
  if (static_cast<std::int64_t>(probs.size()) != ProfileCount(dims)) {
    throw std::invalid_argument("distribution size does not match dims");
  }
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < -kNegativeDust) {
      throw std::invalid_argument("distribution has a negative entry");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("distribution does not sum to 1");
  }
}

JointDistribution PointMass(const PayoffTensor& tensor,
                            std::span<const int> profile) {
  JointDistribution dist{tensor.dims(),
                         std::vector<double>(tensor.num_profiles(), 0.0)};
  dist.probs[tensor.Encode(profile)] = 1.0;
  return dist;
}

JointDistribution UniformDistribution(const PayoffTensor& tensor) {
  const auto n = tensor.num_profiles();
  return {tensor.dims(), std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

JointDistribution CleanDistribution(std::vector<int> dims,
                                    std::vector<double> probs) {
  double total = 0.0;
  for (double& p : probs) {
    if (p < -kNegativeDust) {
      throw InternalError("solver returned probability " + std::to_string(p));
    }
    p = std::max(p, 0.0);
    total += p;
  }
  if (!(total > 0.0)) throw InternalError("solver returned a zero distribution");
  for (double& p : probs) p /= total;
  return {std::move(dims), std::move(probs)};
}

std::vector<double> ExpectedPayoffs(const PayoffTensor& tensor,
                                    const JointDistribution& dist) {
  CheckDims(tensor, dist);
  std::vector<double> values(tensor.num_players(), 0.0);
  for (int i = 0; i < tensor.num_players(); ++i) {
    for (std::int64_t p = 0; p < tensor.num_profiles(); ++p) {
      values[i] += dist.probs[p] * tensor.payoff(i, p);
    }
  }
  return values;
}

LpProblem BuildCeConstraints(const PayoffTensor& tensor) {
  const std::int64_t n = tensor.num_profiles();
  LpProblem problem(static_cast<int>(n));
  for (int i = 0; i < tensor.num_players(); ++i) {
    const int m = tensor.dims()[i];
    const std::int64_t stride = tensor.stride(i);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        if (b == a) continue;
        std::vector<double> row(n, 0.0);
        for (std::int64_t p = 0; p < n; ++p) {
          if (tensor.ActionOf(p, i) != a) continue;
          row[p] = tensor.payoff(i, p) - tensor.payoff(i, p + (b - a) * stride);
        }
        problem.AddGreaterEqual(std::move(row), 0.0);
      }
    }
  }
  problem.AddEqual(std::vector<double>(n, 1.0), 1.0);
  return problem;
}

EquilibriumReport SolveWelfareCe(const PayoffTensor& tensor,
                                 const LpOptions& options) {
  const std::vector<double> ones(tensor.num_players(), 1.0);
  return SolveCeObjective(tensor, ones, options);
}

EquilibriumReport SolveDirectionalCe(const PayoffTensor& tensor,
                                     std::span<const double> weights,
                                     const LpOptions& options) {
  if (static_cast<int>(weights.size()) != tensor.num_players()) {
    throw std::invalid_argument("need one weight per player");
  }
  bool nonzero = false;
  for (double w : weights) {
    if (!std::isfinite(w)) throw std::invalid_argument("non-finite weight");
    nonzero = nonzero || w != 0.0;
  }
  if (!nonzero) throw std::invalid_argument("weight vector is zero");
  return SolveCeObjective(tensor, weights, options);
}

double CeViolation(const PayoffTensor& tensor, const JointDistribution& dist) {
  CheckDims(tensor, dist);
  double worst = 0.0;
  const std::int64_t n = tensor.num_profiles();
  for (int i = 0; i < tensor.num_players(); ++i) {
    const int m = tensor.dims()[i];
    const std::int64_t stride = tensor.stride(i);
    // gain[a * m + b] accumulates the expected gain of playing b when told a.
    std::vector<double> gain(static_cast<std::size_t>(m) * m, 0.0);
    for (std::int64_t p = 0; p < n; ++p) {
      const double prob = dist.probs[p];
      if (prob == 0.0) continue;
      const int a = tensor.ActionOf(p, i);
      const double obey = tensor.payoff(i, p);
      for (int b = 0; b < m; ++b) {
        if (b == a) continue;
        gain[a * m + b] +=
            prob * (tensor.payoff(i, p + (b - a) * stride) - obey);
      }
    }
    for (double g : gain) worst = std::max(worst, g);
  }
  return worst;
}

double MaxActionMass(const PayoffTensor& tensor, int player, int action,
                     const LpOptions& options) {
  if (player < 0 || player >= tensor.num_players() || action < 0 ||
      action >= tensor.dims()[player]) {
    throw std::out_of_range("player or action out of range");
  }
  LpProblem problem = BuildCeConstraints(tensor);
  for (std::int64_t p = 0; p < tensor.num_profiles(); ++p) {
    problem.objective[p] = tensor.ActionOf(p, player) == action ? 1.0 : 0.0;
  }
  const LpSolution solution = SolveLp(problem, options);
  if (solution.status != LpStatus::kOptimal) {
    throw InternalError("dominated-mass LP reported " +
                        ToString(solution.status));
  }
  return solution.objective_value;
}

std::vector<Point2> CePayoffRegion(const PayoffTensor& tensor, int directions,
                                   const LpOptions& options) {
  if (tensor.num_players() != 2) {
    throw std::invalid_argument("payoff regions need a two-player game");
  }
  if (directions < 4) throw std::invalid_argument("need >= 4 directions");
  std::vector<Point2> points;
  points.reserve(directions);
  for (int k = 0; k < directions; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / directions;
    const double w[2] = {std::cos(theta), std::sin(theta)};
    const EquilibriumReport report = SolveDirectionalCe(tensor, w, options);
    points.push_back({report.per_player_value[0], report.per_player_value[1]});
  }
  const std::vector<Point2> distinct =
      DeduplicatePoints(points, kVertexDedupTol);
  return DeduplicatePoints(ConvexHull(distinct), kVertexDedupTol);
}

std::vector<Point2> FeasiblePayoffHull(const PayoffTensor& tensor) {
  if (tensor.num_players() != 2) {
    throw std::invalid_argument("payoff regions need a two-player game");
  }
  std::vector<Point2> points(tensor.num_profiles());
  for (std::int64_t p = 0; p < tensor.num_profiles(); ++p) {
    points[p] = {tensor.payoff(0, p), tensor.payoff(1, p)};
  }
  return ConvexHull(points);
}

MediatorSampler::MediatorSampler(const JointDistribution& dist,
                                 std::uint64_t seed)
    : dims_(dist.dims), rng_(seed) {
  if (static_cast<std::int64_t>(dist.probs.size()) != ProfileCount(dims_)) {
    throw std::invalid_argument("distribution size does not match dims");
  }
  cumulative_.resize(dist.probs.size());
  double total = 0.0;
  for (std::size_t p = 0; p < dist.probs.size(); ++p) {
    if (!(dist.probs[p] >= 0.0)) {
      throw std::invalid_argument("distribution has a negative entry");
    }
    total += dist.probs[p];
    cumulative_[p] = total;
  }
  if (!(total > 0.0)) {
    throw std::invalid_argument("cannot sample an all-zero distribution");
  }
}

std::int64_t MediatorSampler::NextIndex() {
  const double u = rng_.Uniform() * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  auto index = static_cast<std::int64_t>(it - cumulative_.begin());
  // u < total always, so `it` is in range; guard against rounding anyway.
  return std::min<std::int64_t>(index, cumulative_.size() - 1);
}

PureProfile MediatorSampler::Next() {
  std::int64_t index = NextIndex();
  PureProfile profile(dims_.size());
  for (int i = static_cast<int>(dims_.size()) - 1; i >= 0; --i) {
    profile[i] = static_cast<int>(index % dims_[i]);
    index /= dims_[i];
  }
  return profile;
}

PureProfile MediatorSample(const JointDistribution& dist, std::uint64_t seed) {
  MediatorSampler sampler(dist, seed);
  return sampler.Next();
}

}  // namespace powergame
