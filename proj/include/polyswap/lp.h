// Copyright 2026 The polyswap Authors
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

// Dense two-phase primal simplex for the small linear programs that appear in
// the benchmark solvers and regret auditors. Problems have at most a few
// thousand rows and columns; everything is kept in one dense tableau.

#ifndef POLYSWAP_LP_H_
#define POLYSWAP_LP_H_

#include <span>
#include <utility>
#include <vector>

namespace polyswap::lp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* StatusName(Status status);

struct Options {
  // Phase-one residual above which the problem is declared infeasible.
  double feasibility_tol = 1e-9;
  // Reduced costs above -optimality_tol are treated as nonnegative.
  double optimality_tol = 1e-11;
  // Smallest tableau entry accepted as a pivot.
  double pivot_tol = 1e-10;
  int max_iterations = 500000;
  // Re-solve the final basis against the original matrix with an LU
  // factorization; removes error accumulated over pivots.
  bool refine = true;
};

// A linear program over variables that are nonnegative unless marked free.
class LinearProgram {
 public:
  explicit LinearProgram(int num_vars);

  int num_vars() const { return num_vars_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  void set_maximize(bool maximize) { maximize_ = maximize; }
  bool maximize() const { return maximize_; }

  void set_objective(int var, double coeff);
  void set_objective(std::span<const double> coeffs);
  const std::vector<double>& objective() const { return objective_; }

  void set_free(int var);
  bool is_free(int var) const { return free_[var]; }

  // Dense row; coeffs.size() must equal num_vars().
  void AddRow(std::span<const double> coeffs, Relation relation, double rhs);
  void AddSparseRow(const std::vector<std::pair<int, double>>& terms,
                    Relation relation, double rhs);

  struct Row {
    std::vector<std::pair<int, double>> terms;
    Relation relation;
    double rhs;
  };
  const std::vector<Row>& rows() const { return rows_; }

 private:
  int num_vars_;
  bool maximize_ = true;
  std::vector<double> objective_;
  std::vector<bool> free_;
  std::vector<Row> rows_;
};

struct Solution {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> values;
  int iterations = 0;

  bool optimal() const { return status == Status::kOptimal; }
};

Solution Solve(const LinearProgram& program, const Options& options = {});

// Largest violation of any row or sign constraint at `values`.
double MaxViolation(const LinearProgram& program,
                    std::span<const double> values);

}  // namespace polyswap::lp

#endif  // POLYSWAP_LP_H_
