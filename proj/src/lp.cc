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

#include "powergame/lp.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "powergame/errors.h"
#include "powergame/random.h"

namespace powergame {
namespace {

enum class RowKind { kGreater, kLess, kEqual };

struct StandardRow {
  std::vector<double> coeffs;  // over structural columns
  double rhs;
  RowKind kind;
};

// x_j = offset + sign * y[col] - (neg_col >= 0 ? y[neg_col] : 0)
struct VarMap {
  int col = -1;
  double sign = 1.0;
  double offset = 0.0;
  int neg_col = -1;
};

double MaxAbs(std::span<const double> v) {
  double m = 0.0;
  for (double a : v) m = std::max(m, std::abs(a));
  return m;
}

}  // namespace

std::string ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

void LpProblem::SetBounds(int j, double lo, double hi) {
  if (lower.empty()) lower.assign(num_vars, 0.0);
  if (upper.empty()) upper.assign(num_vars, kInfinity);
  lower.at(j) = lo;
  upper.at(j) = hi;
}

void LpProblem::AddLessEqual(std::vector<double> coeffs, double rhs) {
  for (double& c : coeffs) c = -c;
  ineq_rows.push_back({std::move(coeffs), -rhs});
}

void LpProblem::Validate() const {
  if (num_vars < 0) throw std::invalid_argument("negative variable count");
  if (static_cast<int>(objective.size()) != num_vars) {
    throw std::invalid_argument("objective length must equal variable count");
  }
  for (double c : objective) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite objective");
  }
  auto check_rows = [&](const std::vector<LpRow>& rows) {
    for (const LpRow& row : rows) {
      if (static_cast<int>(row.coeffs.size()) != num_vars) {
        throw std::invalid_argument("row length must equal variable count");
      }
      if (!std::isfinite(row.rhs)) {
        throw std::invalid_argument("non-finite right-hand side");
      }
      for (double c : row.coeffs) {
        if (!std::isfinite(c)) {
          throw std::invalid_argument("non-finite row coefficient");
        }
      }
    }
  };
  check_rows(ineq_rows);
  check_rows(eq_rows);
  if ((!lower.empty() && static_cast<int>(lower.size()) != num_vars) ||
      (!upper.empty() && static_cast<int>(upper.size()) != num_vars)) {
    throw std::invalid_argument("bound vectors must match variable count");
  }
  for (int j = 0; j < num_vars; ++j) {
    const double lo = lower_bound(j);
    const double hi = upper_bound(j);
    if (std::isnan(lo) || std::isnan(hi) || lo == kInfinity ||
        hi == -kInfinity || lo > hi) {
      throw std::invalid_argument("invalid bounds on variable " +
                                  std::to_string(j));
    }
  }
}

void SimplexSolver::Pivot(int row, int col) {
  const int width = cols_ + 2;
  double* prow = &at(row, 0);
  const double inv = 1.0 / prow[col];
  pivot_nonzeros_.clear();
  for (int c = 0; c < width; ++c) {
    if (prow[c] != 0.0) {
      prow[c] *= inv;
      pivot_nonzeros_.push_back(c);
    }
  }
  prow[col] = 1.0;
  for (int r = 0; r <= rows_; ++r) {
    if (r == row) continue;
    double* trow = &at(r, 0);
    const double f = trow[col];
    if (f == 0.0) continue;
    for (int c : pivot_nonzeros_) trow[c] -= f * prow[c];
    trow[col] = 0.0;
    if (r < rows_ && trow[cols_] < 0.0 &&
        trow[cols_] > -options_.feasibility_tol) {
      trow[cols_] = 0.0;
    }
  }
  basis_[row] = col;
}

bool SimplexSolver::RunPhase(Phase phase, std::int64_t& iterations,
                             std::int64_t max_iterations) {
  const int allowed_cols = phase == Phase::kOne ? cols_ : first_artificial_;
  bool bland = false;
  int degenerate_run = 0;
  while (true) {
    const double* zrow = &at(rows_, 0);
    int enter = -1;
    double best = -options_.optimality_tol;
    for (int c = 0; c < allowed_cols; ++c) {
      if (zrow[c] < best) {
        enter = c;
        if (bland) break;
        best = zrow[c];
      }
    }
    if (enter < 0) return true;

    int leave = -1;
    double best_ratio = kInfinity;
    double best_pivot = 0.0;
    for (int r = 0; r < rows_; ++r) {
      const double a = at(r, enter);
      if (a <= options_.pivot_tol) continue;
      const double ratio = std::max(at(r, cols_), 0.0) / a;
      const double tie = 1e-12 * std::max(1.0, best_ratio);
      bool take = false;
      if (leave < 0 || ratio < best_ratio - tie) {
        take = true;
      } else if (ratio <= best_ratio + tie) {
        take = bland ? basis_[r] < basis_[leave]
                     : (a > best_pivot ||
                        (a == best_pivot && basis_[r] < basis_[leave]));
      }
      if (take) {
        leave = r;
        best_ratio = std::min(ratio, best_ratio);
        best_pivot = a;
      }
    }
    if (leave < 0) return false;

    if (++iterations > max_iterations) {
      throw SolverStall("simplex iteration limit of " +
                        std::to_string(max_iterations) + " reached");
    }
    if (best_ratio <= options_.feasibility_tol) {
      if (++degenerate_run >= options_.stall_threshold) bland = true;
    } else {
      degenerate_run = 0;
    }
    Pivot(leave, enter);
  }
}

bool SimplexSolver::Restore(std::int64_t& iterations,
                            std::int64_t max_iterations) {
  const int rhs = cols_ + 1;
  const double tol = options_.feasibility_tol;
  for (int r = 0; r < rows_; ++r) {
    if (basis_[r] >= first_artificial_ && std::abs(at(r, rhs)) > tol) {
      return false;  // inconsistent redundant row
    }
  }
  // Dual simplex on the true rhs. The basis stays dual feasible because
  // reduced costs do not depend on the rhs.
  while (true) {
    int leave = -1;
    double most_negative = -tol;
    for (int r = 0; r < rows_; ++r) {
      if (at(r, rhs) < most_negative) {
        most_negative = at(r, rhs);
        leave = r;
      }
    }
    if (leave < 0) return true;
    const double* zrow = &at(rows_, 0);
    int enter = -1;
    double best_ratio = kInfinity;
    double best_pivot = 0.0;
    for (int c = 0; c < first_artificial_; ++c) {
      const double a = at(leave, c);
      if (a >= -options_.pivot_tol) continue;
      const double ratio = std::max(zrow[c], 0.0) / -a;
      const double tie = 1e-12 * std::max(1.0, best_ratio);
      if (enter < 0 || ratio < best_ratio - tie ||
          (ratio <= best_ratio + tie && -a > best_pivot)) {
        enter = c;
        best_ratio = std::min(ratio, best_ratio);
        best_pivot = -a;
      }
    }
    if (enter < 0) return false;
    if (++iterations > max_iterations) {
      throw SolverStall("simplex iteration limit of " +
                        std::to_string(max_iterations) + " reached");
    }
    Pivot(leave, enter);
  }
}

LpSolution SimplexSolver::Solve(const LpProblem& problem) {
  problem.Validate();
  const int n = problem.num_vars;

  // Variable substitution to y >= 0.
  std::vector<VarMap> vars(n);
  std::vector<StandardRow> rows;
  int structural = 0;
  for (int j = 0; j < n; ++j) {
    const double lo = problem.lower_bound(j);
    const double hi = problem.upper_bound(j);
    VarMap& v = vars[j];
    v.col = structural++;
    if (std::isfinite(lo)) {
      v.offset = lo;
    } else if (std::isfinite(hi)) {
      v.offset = hi;
      v.sign = -1.0;
    } else {
      v.neg_col = structural++;
    }
  }
  auto substitute = [&](const LpRow& row, RowKind kind) {
    StandardRow out{std::vector<double>(structural, 0.0), row.rhs, kind};
    for (int j = 0; j < n; ++j) {
      const double a = row.coeffs[j];
      if (a == 0.0) continue;
      out.coeffs[vars[j].col] += a * vars[j].sign;
      if (vars[j].neg_col >= 0) out.coeffs[vars[j].neg_col] -= a;
      out.rhs -= a * vars[j].offset;
    }
    return out;
  };
  for (const LpRow& row : problem.ineq_rows) {
    rows.push_back(substitute(row, RowKind::kGreater));
  }
  for (const LpRow& row : problem.eq_rows) {
    rows.push_back(substitute(row, RowKind::kEqual));
  }
  for (int j = 0; j < n; ++j) {
    const double lo = problem.lower_bound(j);
    const double hi = problem.upper_bound(j);
    if (std::isfinite(lo) && std::isfinite(hi)) {
      StandardRow r{std::vector<double>(structural, 0.0), hi - lo,
                    RowKind::kLess};
      r.coeffs[vars[j].col] = 1.0;
      rows.push_back(std::move(r));
    }
  }

  LpSolution solution;
  // Row scaling; all-zero rows are decided here and dropped.
  std::vector<StandardRow> kept;
  kept.reserve(rows.size());
  for (StandardRow& r : rows) {
    const double scale = MaxAbs(r.coeffs);
    if (scale == 0.0) {
      const double tol = options_.feasibility_tol;
      const bool ok = r.kind == RowKind::kGreater ? r.rhs <= tol
                      : r.kind == RowKind::kLess  ? r.rhs >= -tol
                                                  : std::abs(r.rhs) <= tol;
      if (!ok) return solution;  // infeasible
      continue;
    }
    for (double& c : r.coeffs) c /= scale;
    r.rhs /= scale;
    kept.push_back(std::move(r));
  }
  rows = std::move(kept);

  // Column layout: [structural | one slack per inequality | artificials].
  rows_ = static_cast<int>(rows.size());
  int slacks = 0;
  for (const StandardRow& r : rows) slacks += r.kind != RowKind::kEqual;
  std::vector<int> slack_col(rows_, -1);
  std::vector<double> slack_sign(rows_, 0.0);
  std::vector<bool> needs_artificial(rows_, false);
  std::vector<bool> flip(rows_, false);
  int next_slack = structural;
  int artificials = 0;
  for (int r = 0; r < rows_; ++r) {
    StandardRow& row = rows[r];
    if (row.kind != RowKind::kEqual) {
      slack_col[r] = next_slack++;
      slack_sign[r] = row.kind == RowKind::kGreater ? -1.0 : 1.0;
    }
    // Flip so rhs >= 0; a zero-rhs ">=" row is flipped so its slack can start
    // in the basis.
    flip[r] = row.rhs < 0.0 || (row.rhs == 0.0 && row.kind == RowKind::kGreater);
    const double sign_after = flip[r] ? -slack_sign[r] : slack_sign[r];
    needs_artificial[r] = !(sign_after > 0.0);
    artificials += needs_artificial[r];
  }
  first_artificial_ = structural + slacks;
  cols_ = first_artificial_ + artificials;

  const double cells = static_cast<double>(rows_ + 1) * (cols_ + 2);
  if (cells > static_cast<double>(options_.max_tableau_cells)) {
    throw BudgetError("simplex tableau would need " +
                      std::to_string(static_cast<long long>(cells)) +
                      " cells, over the budget of " +
                      std::to_string(options_.max_tableau_cells));
  }
  tableau_.assign(static_cast<std::size_t>(cells), 0.0);
  Rng perturb(0x5eed);
  basis_.assign(rows_, -1);
  int next_artificial = first_artificial_;
  for (int r = 0; r < rows_; ++r) {
    const double s = flip[r] ? -1.0 : 1.0;
    double* trow = &at(r, 0);
    for (int c = 0; c < structural; ++c) trow[c] = s * rows[r].coeffs[c];
    trow[cols_ + 1] = s * rows[r].rhs;
    trow[cols_] = trow[cols_ + 1];
    if (slack_col[r] >= 0) trow[slack_col[r]] = s * slack_sign[r];
    if (needs_artificial[r]) {
      trow[next_artificial] = 1.0;
      basis_[r] = next_artificial++;
    } else {
      basis_[r] = slack_col[r];
      // Relaxing perturbation of the working rhs breaks the ties that make
      // zero-rhs incentive rows stall; the true rhs rides along in the last
      // column and is restored by Restore().
      trow[cols_] += options_.perturbation * (1.0 + perturb.Uniform());
    }
  }

  std::int64_t max_iterations = options_.max_iterations;
  if (max_iterations <= 0) {
    max_iterations = 50LL * (n + static_cast<std::int64_t>(
                                     problem.ineq_rows.size() +
                                     problem.eq_rows.size()));
    max_iterations = std::max<std::int64_t>(max_iterations, 1000);
  }
  std::int64_t iterations = 0;

  // Phase one: maximize -sum(artificials).
  if (artificials > 0) {
    double* zrow = &at(rows_, 0);
    for (int c = first_artificial_; c < cols_; ++c) zrow[c] = 1.0;
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < first_artificial_) continue;
      const double* trow = &at(r, 0);
      for (int c = 0; c <= cols_ + 1; ++c) zrow[c] -= trow[c];
    }
    RunPhase(Phase::kOne, iterations, max_iterations);
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] >= first_artificial_ &&
          at(r, cols_) > options_.feasibility_tol) {
        solution.iterations = static_cast<int>(iterations);
        return solution;  // infeasible
      }
    }
    // Drive zero-level artificials out of the basis where possible; rows
    // with no usable pivot are redundant and keep their artificial at 0.
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < first_artificial_) continue;
      int best_col = -1;
      double best = options_.pivot_tol;
      for (int c = 0; c < first_artificial_; ++c) {
        if (std::abs(at(r, c)) > best) {
          best = std::abs(at(r, c));
          best_col = c;
        }
      }
      if (best_col >= 0) Pivot(r, best_col);
    }
  }

  // Phase two objective, scaled to unit max magnitude.
  {
    std::vector<double> cost(structural, 0.0);
    for (int j = 0; j < n; ++j) {
      const double c = problem.objective[j];
      cost[vars[j].col] += c * vars[j].sign;
      if (vars[j].neg_col >= 0) cost[vars[j].neg_col] -= c;
    }
    const double scale = MaxAbs(cost);
    double* zrow = &at(rows_, 0);
    std::fill(zrow, zrow + cols_ + 2, 0.0);
    for (int c = 0; c < structural; ++c) {
      zrow[c] = scale > 0.0 ? -cost[c] / scale : 0.0;
    }
    for (int r = 0; r < rows_; ++r) {
      const double f = zrow[basis_[r]];
      if (f == 0.0) continue;
      const double* trow = &at(r, 0);
      for (int c = 0; c <= cols_ + 1; ++c) zrow[c] -= f * trow[c];
      zrow[basis_[r]] = 0.0;
    }
  }
  const bool bounded = RunPhase(Phase::kTwo, iterations, max_iterations);
  solution.iterations = static_cast<int>(iterations);
  if (!bounded) {
    solution.status = LpStatus::kUnbounded;
    return solution;
  }

  if (!Restore(iterations, max_iterations)) {
    solution.iterations = static_cast<int>(iterations);
    return solution;  // infeasible
  }
  solution.iterations = static_cast<int>(iterations);

  std::vector<double> y(cols_, 0.0);
  for (int r = 0; r < rows_; ++r) {
    y[basis_[r]] = std::max(at(r, cols_ + 1), 0.0);
  }
  solution.status = LpStatus::kOptimal;
  solution.x.resize(n);
  double value = 0.0;
  for (int j = 0; j < n; ++j) {
    const VarMap& v = vars[j];
    double x = v.offset + v.sign * y[v.col];
    if (v.neg_col >= 0) x -= y[v.neg_col];
    solution.x[j] = x;
    value += problem.objective[j] * x;
  }
  solution.objective_value = value;
  return solution;
}

LpSolution SolveLp(const LpProblem& problem, const LpOptions& options) {
  SimplexSolver solver(options);
  return solver.Solve(problem);
}

double MaxScaledViolation(const LpProblem& problem,
                          std::span<const double> x) {
  double worst = 0.0;
  auto row_value = [&](const LpRow& row) {
    double v = 0.0;
    for (int j = 0; j < problem.num_vars; ++j) v += row.coeffs[j] * x[j];
    return v;
  };
  for (const LpRow& row : problem.ineq_rows) {
    const double scale = std::max(MaxAbs(row.coeffs), 1e-300);
    worst = std::max(worst, (row.rhs - row_value(row)) / scale);
  }
  for (const LpRow& row : problem.eq_rows) {
    const double scale = std::max(MaxAbs(row.coeffs), 1e-300);
    worst = std::max(worst, std::abs(row.rhs - row_value(row)) / scale);
  }
  for (int j = 0; j < problem.num_vars; ++j) {
    worst = std::max(worst, problem.lower_bound(j) - x[j]);
    worst = std::max(worst, x[j] - problem.upper_bound(j));
  }
  return worst;
}

namespace {

std::string Field(const char* prefix, std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%s%07zu", prefix, index + 1);
  return buf;
}

std::string Number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// One data line: field 1 in columns 2-3, field 2 in 5-12, field 3 in 15-22,
// field 4 from column 25. Trailing blanks are dropped.
void DataLine(std::ostream& out, const std::string& f1, const std::string& f2,
              const std::string& f3, const std::string& f4) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), " %-2s %-8s  %-8s  %s", f1.c_str(),
                f2.c_str(), f3.c_str(), f4.c_str());
  std::string line(buf);
  line.erase(line.find_last_not_of(' ') + 1);
  out << line << '\n';
}

}  // namespace

void WriteLpDump(const LpProblem& problem, const std::string& name,
                 std::ostream& out) {
  problem.Validate();
  out << "NAME          " << name << "\n";
  out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n";
  DataLine(out, "N", "OBJ", "", "");
  for (std::size_t r = 0; r < problem.ineq_rows.size(); ++r) {
    DataLine(out, "G", Field("G", r), "", "");
  }
  for (std::size_t r = 0; r < problem.eq_rows.size(); ++r) {
    DataLine(out, "E", Field("E", r), "", "");
  }
  out << "COLUMNS\n";
  for (int j = 0; j < problem.num_vars; ++j) {
    const std::string col = Field("X", j);
    if (problem.objective[j] != 0.0) {
      DataLine(out, "", col, "OBJ", Number(problem.objective[j]));
    }
    for (std::size_t r = 0; r < problem.ineq_rows.size(); ++r) {
      const double a = problem.ineq_rows[r].coeffs[j];
      if (a != 0.0) DataLine(out, "", col, Field("G", r), Number(a));
    }
    for (std::size_t r = 0; r < problem.eq_rows.size(); ++r) {
      const double a = problem.eq_rows[r].coeffs[j];
      if (a != 0.0) DataLine(out, "", col, Field("E", r), Number(a));
    }
  }
  out << "RHS\n";
  for (std::size_t r = 0; r < problem.ineq_rows.size(); ++r) {
    const double b = problem.ineq_rows[r].rhs;
    if (b != 0.0) DataLine(out, "", "RHS", Field("G", r), Number(b));
  }
  for (std::size_t r = 0; r < problem.eq_rows.size(); ++r) {
    const double b = problem.eq_rows[r].rhs;
    if (b != 0.0) DataLine(out, "", "RHS", Field("E", r), Number(b));
  }
  out << "BOUNDS\n";
  for (int j = 0; j < problem.num_vars; ++j) {
    const double lo = problem.lower_bound(j);
    const double hi = problem.upper_bound(j);
    const std::string col = Field("X", j);
    if (lo == -kInfinity && hi == kInfinity) {
      DataLine(out, "FR", "BND", col, "");
      continue;
    }
    if (lo == -kInfinity) {
      DataLine(out, "MI", "BND", col, "");
    } else if (lo != 0.0) {
      DataLine(out, "LO", "BND", col, Number(lo));
    }
    if (hi != kInfinity) DataLine(out, "UP", "BND", col, Number(hi));
  }
  out << "ENDATA\n";
}

}  // namespace powergame
