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

// Independent reference computations used only by the tests. Nothing here
// calls into the library code it is used to check.

#ifndef POWERGAME_TESTS_ORACLES_H_
#define POWERGAME_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "powergame/lp.h"

namespace powergame::testing {

// Solves the square system `a x = b` by Gaussian elimination with partial
// pivoting. Returns nullopt for (numerically) singular systems.
inline std::optional<std::vector<double>> SolveSquare(
    std::vector<std::vector<double>> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-10) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

struct VertexOracleResult {
  bool feasible = false;
  double best = -std::numeric_limits<double>::infinity();
};

// Maximum of the objective over every basic feasible point: all equality
// rows active plus every choice of (n - #eq) tight inequalities or finite
// bounds. Valid for problems whose feasible set is bounded.
inline VertexOracleResult VertexEnumerationMax(const LpProblem& lp,
                                               double tol = 1e-9) {
  const int n = lp.num_vars;
  struct Plane {
    std::vector<double> a;
    double b;
  };
  std::vector<Plane> equalities;
  for (const LpRow& r : lp.eq_rows) equalities.push_back({r.coeffs, r.rhs});
  std::vector<Plane> candidates;
  for (const LpRow& r : lp.ineq_rows) candidates.push_back({r.coeffs, r.rhs});
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    if (std::isfinite(lp.lower_bound(j))) {
      candidates.push_back({e, lp.lower_bound(j)});
    }
    if (std::isfinite(lp.upper_bound(j))) {
      candidates.push_back({e, lp.upper_bound(j)});
    }
  }
  VertexOracleResult result;
  const int need = n - static_cast<int>(equalities.size());
  if (need < 0 || need > static_cast<int>(candidates.size())) return result;

  auto feasible = [&](const std::vector<double>& x) {
    for (const LpRow& r : lp.ineq_rows) {
      double v = 0.0;
      for (int j = 0; j < n; ++j) v += r.coeffs[j] * x[j];
      if (v < r.rhs - tol) return false;
    }
    for (const LpRow& r : lp.eq_rows) {
      double v = 0.0;
      for (int j = 0; j < n; ++j) v += r.coeffs[j] * x[j];
      if (std::abs(v - r.rhs) > tol) return false;
    }
    for (int j = 0; j < n; ++j) {
      if (x[j] < lp.lower_bound(j) - tol || x[j] > lp.upper_bound(j) + tol) {
        return false;
      }
    }
    return true;
  };

  std::vector<int> pick(need);
  for (int i = 0; i < need; ++i) pick[i] = i;
  const int total = static_cast<int>(candidates.size());
  while (true) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (const Plane& p : equalities) {
      a.push_back(p.a);
      b.push_back(p.b);
    }
    for (int idx : pick) {
      a.push_back(candidates[idx].a);
      b.push_back(candidates[idx].b);
    }
    if (auto x = SolveSquare(a, b); x && feasible(*x)) {
      double v = 0.0;
      for (int j = 0; j < n; ++j) v += lp.objective[j] * (*x)[j];
      result.feasible = true;
      result.best = std::max(result.best, v);
    }
    // Next combination.
    int i = need - 1;
    while (i >= 0 && pick[i] == total - need + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int k = i + 1; k < need; ++k) pick[k] = pick[k - 1] + 1;
  }
  return result;
}

// Random LP with box bounds 0 <= x <= U. Most rows are built around an
// interior point so the instance is feasible; with `allow_infeasible` some
// right-hand sides are drawn blindly.
inline LpProblem RandomBoundedLp(std::mt19937_64& gen, int max_vars,
                                 int max_rows, bool allow_infeasible) {
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
  };
  const int n = 1 + static_cast<int>(gen() % max_vars);
  const int m = 1 + static_cast<int>(gen() % max_rows);
  LpProblem lp(n);
  std::vector<double> x0(n);
  for (int j = 0; j < n; ++j) {
    const double hi = uniform(1.0, 5.0);
    lp.SetBounds(j, 0.0, hi);
    x0[j] = uniform(0.0, hi);
    lp.objective[j] = uniform(-1.0, 1.0);
  }
  int equalities = 0;
  for (int r = 0; r < m; ++r) {
    std::vector<double> a(n);
    double ax = 0.0;
    for (int j = 0; j < n; ++j) {
      a[j] = uniform(-1.0, 1.0);
      ax += a[j] * x0[j];
    }
    const int kind = static_cast<int>(gen() % 8);
    if (kind == 0 && equalities + 1 < n) {
      ++equalities;
      lp.AddEqual(a, ax);
    } else if (allow_infeasible && kind == 1) {
      lp.AddGreaterEqual(a, uniform(-1.0, 3.0));
    } else if (kind < 5) {
      lp.AddGreaterEqual(a, ax - uniform(0.0, 1.0));
    } else {
      lp.AddLessEqual(a, ax + uniform(0.0, 1.0));
    }
  }
  return lp;
}

}  // namespace powergame::testing

#endif  // POWERGAME_TESTS_ORACLES_H_
