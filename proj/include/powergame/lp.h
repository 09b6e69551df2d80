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

#ifndef POWERGAME_LP_H_
#define POWERGAME_LP_H_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace powergame {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct LpRow {
  std::vector<double> coeffs;
  double rhs = 0.0;
};

// maximize objective . x
// subject to  ineq_rows: coeffs . x >= rhs
//             eq_rows:   coeffs . x == rhs
//             lower <= x <= upper
// Empty `lower`/`upper` mean the defaults 0 and +infinity.
struct LpProblem {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<LpRow> ineq_rows;
  std::vector<LpRow> eq_rows;
  std::vector<double> lower;
  std::vector<double> upper;

  explicit LpProblem(int n = 0) : num_vars(n), objective(n, 0.0) {}

  double lower_bound(int j) const { return lower.empty() ? 0.0 : lower[j]; }
  double upper_bound(int j) const {
    return upper.empty() ? kInfinity : upper[j];
  }
  void SetBounds(int j, double lo, double hi);
  void AddGreaterEqual(std::vector<double> coeffs, double rhs) {
    ineq_rows.push_back({std::move(coeffs), rhs});
  }
  void AddLessEqual(std::vector<double> coeffs, double rhs);
  void AddEqual(std::vector<double> coeffs, double rhs) {
    eq_rows.push_back({std::move(coeffs), rhs});
  }

  // Throws std::invalid_argument on dimension mismatch, non-finite
  // coefficients, or lower > upper.
  void Validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;         // set iff optimal
  double objective_value = 0.0;  // set iff optimal
  int iterations = 0;
};

struct LpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  // 0 selects 50 * (variables + rows).
  std::int64_t max_iterations = 0;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int stall_threshold = 50;
  // Magnitude of the relaxing rhs perturbation applied to inequality rows
  // whose slack starts in the basis; removed before the solution is read.
  double perturbation = 1e-7;
  // Upper bound on dense tableau cells; larger problems raise BudgetError.
  std::int64_t max_tableau_cells = 150'000'000;
};

// Dense two-phase primal simplex on the standard-form reformulation.
//
// Each constraint row is scaled by its largest coefficient magnitude, slack
// and artificial columns give the starting basis, and pricing uses Dantzig's
// most-negative reduced cost until `stall_threshold` consecutive degenerate
// pivots occur, after which Bland's smallest-index rule takes over for the
// rest of the phase. The pivot sequence depends only on the input, so
// identical problems give identical solutions and iteration counts.
//
// A solver owns its tableau scratch space: use one instance per thread.
class SimplexSolver {
 public:
  explicit SimplexSolver(LpOptions options = {}) : options_(options) {}

  // Throws SolverStall when the iteration cap is reached and BudgetError when
  // the tableau would exceed `max_tableau_cells`.
  LpSolution Solve(const LpProblem& problem);

  const LpOptions& options() const { return options_; }

 private:
  enum class Phase { kOne, kTwo };

  bool RunPhase(Phase phase, std::int64_t& iterations,
                std::int64_t max_iterations);
  bool Restore(std::int64_t& iterations, std::int64_t max_iterations);
  void Pivot(int row, int col);

  LpOptions options_;
  int rows_ = 0;
  int cols_ = 0;   // structural + slack + artificial columns
  int first_artificial_ = 0;
  // (rows_ + 1) x (cols_ + 2); column cols_ is the perturbed working rhs and
  // column cols_ + 1 the true rhs. The last row holds reduced costs.
  std::vector<double> tableau_;
  std::vector<double> objective_row_;
  std::vector<int> basis_;
  std::vector<int> pivot_nonzeros_;

  double& at(int r, int c) {
    return tableau_[static_cast<std::size_t>(r) * (cols_ + 2) + c];
  }
};

LpSolution SolveLp(const LpProblem& problem, const LpOptions& options = {});

// Largest constraint or bound violation of x, with each row divided by its
// largest coefficient magnitude.
double MaxScaledViolation(const LpProblem& problem, std::span<const double> x);

// Writes the fixed-column plain-text dump described in docs/lp_dump_format.md.
void WriteLpDump(const LpProblem& problem, const std::string& name,
                 std::ostream& out);

}  // namespace powergame

#endif  // POWERGAME_LP_H_
