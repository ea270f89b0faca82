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

#include "polyswap/lp.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <random>

#include "polyswap/error.h"

namespace polyswap::lp {

const char* StatusName(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

LinearProgram::LinearProgram(int num_vars)
    : num_vars_(num_vars), objective_(num_vars, 0.0), free_(num_vars, false) {
  if (num_vars <= 0) {
    throw Error(ErrorCode::kInvalidDimension, "LP needs at least one variable");
  }
}

void LinearProgram::set_objective(int var, double coeff) {
  objective_.at(var) = coeff;
}

void LinearProgram::set_objective(std::span<const double> coeffs) {
  if (static_cast<int>(coeffs.size()) != num_vars_) {
    throw Error(ErrorCode::kShapeError, "objective length mismatch");
  }
  objective_.assign(coeffs.begin(), coeffs.end());
}

void LinearProgram::set_free(int var) { free_.at(var) = true; }

void LinearProgram::AddRow(std::span<const double> coeffs, Relation relation,
                           double rhs) {
  if (static_cast<int>(coeffs.size()) != num_vars_) {
    throw Error(ErrorCode::kShapeError, "row length mismatch");
  }
  Row row{{}, relation, rhs};
  for (int i = 0; i < num_vars_; ++i) {
    if (coeffs[i] != 0.0) row.terms.emplace_back(i, coeffs[i]);
  }
  rows_.push_back(std::move(row));
}

void LinearProgram::AddSparseRow(
    const std::vector<std::pair<int, double>>& terms, Relation relation,
    double rhs) {
  Row row{{}, relation, rhs};
  for (auto [var, coeff] : terms) {
    if (var < 0 || var >= num_vars_) {
      throw Error(ErrorCode::kShapeError, "row references unknown variable");
    }
    if (coeff != 0.0) row.terms.emplace_back(var, coeff);
  }
  rows_.push_back(std::move(row));
}

double MaxViolation(const LinearProgram& program,
                    std::span<const double> values) {
  double worst = 0.0;
  for (int i = 0; i < program.num_vars(); ++i) {
    if (!program.is_free(i)) worst = std::max(worst, -values[i]);
  }
  for (const auto& row : program.rows()) {
    double lhs = 0.0;
    for (auto [var, coeff] : row.terms) lhs += coeff * values[var];
    switch (row.relation) {
      case Relation::kLessEqual: worst = std::max(worst, lhs - row.rhs); break;
      case Relation::kGreaterEqual: worst = std::max(worst, row.rhs - lhs); break;
      case Relation::kEqual: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
    }
  }
  return worst;
}

namespace {

// Reduced costs above -kNoiseReducedCost on columns without a pivot entry
// above pivot_tol are treated as rounding error.
constexpr double kNoiseReducedCost = 1e-9;

// Primal infeasibility tolerated by the first pass of the ratio test.
constexpr double kHarrisSlack = 1e-11;

// Consecutive degenerate pivots before pricing is randomized.
constexpr int kStallLimit = 200;

// Standard form: minimize cost . x subject to A x = b, x >= 0, b >= 0, with
// the tableau holding B^{-1} [A | b].
class Tableau {
 public:
  Tableau(const LinearProgram& program, const Options& options)
      : options_(options) {
    const int n = program.num_vars();
    // Structural columns: one per variable, plus a negative part for free ones.
    for (int i = 0; i < n; ++i) {
      positive_col_.push_back(num_cols_++);
      negative_col_.push_back(program.is_free(i) ? num_cols_++ : -1);
    }
    num_structural_ = num_cols_;

    const auto& rows = program.rows();
    num_rows_ = static_cast<int>(rows.size());
    std::vector<double> sign(num_rows_, 1.0);
    std::vector<Relation> relation(num_rows_);
    for (int r = 0; r < num_rows_; ++r) {
      relation[r] = rows[r].relation;
      if (rows[r].rhs < 0.0) {
        sign[r] = -1.0;
        if (relation[r] == Relation::kLessEqual) {
          relation[r] = Relation::kGreaterEqual;
        } else if (relation[r] == Relation::kGreaterEqual) {
          relation[r] = Relation::kLessEqual;
        }
      }
    }
    // Slack / surplus columns.
    std::vector<int> slack_col(num_rows_, -1);
    for (int r = 0; r < num_rows_; ++r) {
      if (relation[r] != Relation::kEqual) slack_col[r] = num_cols_++;
    }
    first_artificial_ = num_cols_;
    std::vector<int> artificial_col(num_rows_, -1);
    for (int r = 0; r < num_rows_; ++r) {
      if (relation[r] != Relation::kLessEqual) artificial_col[r] = num_cols_++;
    }

    stride_ = num_cols_ + 1;
    data_.assign(static_cast<size_t>(num_rows_) * stride_, 0.0);
    basis_.assign(num_rows_, -1);
    for (int r = 0; r < num_rows_; ++r) {
      double* row = Row(r);
      for (auto [var, coeff] : rows[r].terms) {
        row[positive_col_[var]] += sign[r] * coeff;
        if (negative_col_[var] >= 0) row[negative_col_[var]] -= sign[r] * coeff;
      }
      row[num_cols_] = sign[r] * rows[r].rhs;
      if (relation[r] == Relation::kLessEqual) {
        row[slack_col[r]] = 1.0;
        basis_[r] = slack_col[r];
      } else {
        if (relation[r] == Relation::kGreaterEqual) row[slack_col[r]] = -1.0;
        row[artificial_col[r]] = 1.0;
        basis_[r] = artificial_col[r];
      }
    }
    original_ = data_;
    active_row_.assign(num_rows_, true);

    cost_.assign(num_cols_, 0.0);
    const double direction = program.maximize() ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) {
      const double c = direction * program.objective()[i];
      cost_[positive_col_[i]] = c;
      if (negative_col_[i] >= 0) cost_[negative_col_[i]] = -c;
    }
  }

  Status Run(int* iterations) {
    // Phase one: minimize the sum of artificial variables.
    if (first_artificial_ < num_cols_) {
      std::vector<double> phase_one(num_cols_, 0.0);
      for (int j = first_artificial_; j < num_cols_; ++j) phase_one[j] = 1.0;
      allow_artificial_ = true;
      Status status = Optimize(phase_one, iterations);
      if (status == Status::kIterationLimit) return status;
      double infeasibility = 0.0;
      for (int r = 0; r < num_rows_; ++r) {
        if (active_row_[r] && basis_[r] >= first_artificial_) {
          infeasibility += Row(r)[num_cols_];
        }
      }
      if (infeasibility > options_.feasibility_tol) return Status::kInfeasible;
      DriveOutArtificials();
    }
    allow_artificial_ = false;
    return Optimize(cost_, iterations);
  }

  // Values of the standard-form columns at the current basis.
  std::vector<double> ColumnValues() const {
    std::vector<double> x(num_cols_, 0.0);
    for (int r = 0; r < num_rows_; ++r) {
      if (active_row_[r]) x[basis_[r]] = std::max(0.0, Row(r)[num_cols_]);
    }
    return x;
  }

  // Recomputes the basic solution from the original constraint matrix.
  bool Refine(std::vector<double>* x) const {
    std::vector<int> rows;
    for (int r = 0; r < num_rows_; ++r) {
      if (active_row_[r]) rows.push_back(r);
    }
    const int m = static_cast<int>(rows.size());
    if (m == 0) return true;
    Eigen::MatrixXd basis_matrix(m, m);
    Eigen::VectorXd rhs(m);
    for (int a = 0; a < m; ++a) {
      const double* row = &original_[static_cast<size_t>(rows[a]) * stride_];
      rhs(a) = row[num_cols_];
      for (int b = 0; b < m; ++b) basis_matrix(a, b) = row[basis_[rows[b]]];
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
    Eigen::VectorXd solved = lu.solve(rhs);
    if (!solved.allFinite()) return false;
    if ((basis_matrix * solved - rhs).cwiseAbs().maxCoeff() > 1e-9) return false;
    for (int b = 0; b < m; ++b) {
      if (solved(b) < -options_.feasibility_tol) return false;
    }
    std::vector<double> refined(num_cols_, 0.0);
    for (int b = 0; b < m; ++b) refined[basis_[rows[b]]] = std::max(0.0, solved(b));
    *x = std::move(refined);
    return true;
  }

  int positive_col(int var) const { return positive_col_[var]; }
  int negative_col(int var) const { return negative_col_[var]; }

 private:
  double* Row(int r) { return &data_[static_cast<size_t>(r) * stride_]; }
  const double* Row(int r) const {
    return &data_[static_cast<size_t>(r) * stride_];
  }

  Status Optimize(const std::vector<double>& cost, int* iterations) {
    // Reduced costs d_j = c_j - c_B^T B^{-1} A_j, objective in d[num_cols_].
    std::vector<double> reduced(num_cols_ + 1, 0.0);
    for (int j = 0; j < num_cols_; ++j) reduced[j] = cost[j];
    for (int r = 0; r < num_rows_; ++r) {
      if (!active_row_[r]) continue;
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = Row(r);
      for (int j = 0; j <= num_cols_; ++j) reduced[j] -= cb * row[j];
    }
    std::vector<bool> in_basis(num_cols_, false);
    for (int r = 0; r < num_rows_; ++r) {
      if (active_row_[r]) in_basis[basis_[r]] = true;
    }

    // Columns with no usable pivot whose reduced cost is rounding noise; they
    // are not evidence of unboundedness. Cleared after every pivot.
    std::vector<bool> skipped(num_cols_, false);
    int degenerate_streak = 0;
    // Long degenerate stalls switch pricing to a seeded random improving
    // column, which breaks cycles while the ratio test keeps large pivots.
    std::mt19937_64 rng(0x5eed);
    while (true) {
      if (*iterations >= options_.max_iterations) return Status::kIterationLimit;
      const bool randomize = degenerate_streak > kStallLimit;
      // Pricing: Dantzig's rule, or a uniform pick by reservoir sampling.
      int entering = -1;
      double best = -options_.optimality_tol;
      int seen = 0;
      for (int j = 0; j < num_cols_; ++j) {
        if (in_basis[j] || skipped[j]) continue;
        if (!allow_artificial_ && j >= first_artificial_) continue;
        if (randomize) {
          if (reduced[j] < -options_.optimality_tol &&
              std::uniform_int_distribution<int>(0, seen++)(rng) == 0) {
            entering = j;
          }
        } else if (reduced[j] < best) {
          entering = j;
          best = reduced[j];
        }
      }
      if (entering < 0) return Status::kOptimal;

      // Harris ratio test: bound the step with the rows relaxed by
      // kHarrisSlack, then take the largest pivot among rows within the bound.
      double bound = std::numeric_limits<double>::infinity();
      for (int r = 0; r < num_rows_; ++r) {
        if (!active_row_[r]) continue;
        const double a = Row(r)[entering];
        if (a <= options_.pivot_tol) continue;
        bound = std::min(bound, (std::max(0.0, Row(r)[num_cols_]) + kHarrisSlack) / a);
      }
      int leaving = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_pivot = 0.0;
      for (int r = 0; r < num_rows_; ++r) {
        if (!active_row_[r]) continue;
        const double a = Row(r)[entering];
        if (a <= options_.pivot_tol) continue;
        const double ratio = std::max(0.0, Row(r)[num_cols_]) / a;
        if (ratio <= bound && a > best_pivot) {
          leaving = r;
          best_pivot = a;
          best_ratio = ratio;
        }
      }
      if (leaving < 0) {
        // The phase-one objective is bounded below, so there it is always noise.
        if (allow_artificial_ || reduced[entering] > -kNoiseReducedCost) {
          skipped[entering] = true;
          continue;
        }
        return Status::kUnbounded;
      }

      if (best_ratio <= 1e-14) {
        ++degenerate_streak;
      } else {
        degenerate_streak = 0;
      }
      std::fill(skipped.begin(), skipped.end(), false);
      in_basis[basis_[leaving]] = false;
      in_basis[entering] = true;
      Pivot(leaving, entering, &reduced);
      ++*iterations;
    }
  }

  void Pivot(int pivot_row, int pivot_col, std::vector<double>* reduced) {
    double* prow = Row(pivot_row);
    const double inv = 1.0 / prow[pivot_col];
    for (int j = 0; j <= num_cols_; ++j) prow[j] *= inv;
    prow[pivot_col] = 1.0;
    for (int r = 0; r < num_rows_; ++r) {
      if (r == pivot_row || !active_row_[r]) continue;
      double* row = Row(r);
      const double factor = row[pivot_col];
      if (factor == 0.0) continue;
      for (int j = 0; j <= num_cols_; ++j) row[j] -= factor * prow[j];
      row[pivot_col] = 0.0;
      if (row[num_cols_] < 0.0 && row[num_cols_] > -1e-13) row[num_cols_] = 0.0;
    }
    if (reduced != nullptr) {
      const double factor = (*reduced)[pivot_col];
      if (factor != 0.0) {
        for (int j = 0; j <= num_cols_; ++j) (*reduced)[j] -= factor * prow[j];
        (*reduced)[pivot_col] = 0.0;
      }
    }
    basis_[pivot_row] = pivot_col;
  }

  void DriveOutArtificials() {
    for (int r = 0; r < num_rows_; ++r) {
      if (!active_row_[r] || basis_[r] < first_artificial_) continue;
      const double* row = Row(r);
      int col = -1;
      double biggest = 1e-9;
      for (int j = 0; j < first_artificial_; ++j) {
        if (std::abs(row[j]) > biggest) {
          bool basic = false;
          for (int q = 0; q < num_rows_; ++q) {
            if (active_row_[q] && basis_[q] == j) basic = true;
          }
          if (basic) continue;
          biggest = std::abs(row[j]);
          col = j;
        }
      }
      if (col >= 0) {
        Pivot(r, col, nullptr);
      } else {
        active_row_[r] = false;  // redundant equality
      }
    }
  }

  const Options& options_;
  int num_cols_ = 0;
  int num_structural_ = 0;
  int num_rows_ = 0;
  int first_artificial_ = 0;
  int stride_ = 0;
  bool allow_artificial_ = true;
  std::vector<int> positive_col_;
  std::vector<int> negative_col_;
  std::vector<double> data_;
  std::vector<double> original_;
  std::vector<int> basis_;
  std::vector<bool> active_row_;
  std::vector<double> cost_;
};

}  // namespace

Solution Solve(const LinearProgram& program, const Options& options) {
  Solution solution;
  Tableau tableau(program, options);
  solution.status = tableau.Run(&solution.iterations);
  if (solution.status != Status::kOptimal) return solution;

  std::vector<double> columns = tableau.ColumnValues();
  if (options.refine) {
    std::vector<double> refined;
    if (tableau.Refine(&refined)) columns = std::move(refined);
  }
  const int n = program.num_vars();
  solution.values.assign(n, 0.0);
  double objective = 0.0;
  for (int i = 0; i < n; ++i) {
    double v = columns[tableau.positive_col(i)];
    if (tableau.negative_col(i) >= 0) v -= columns[tableau.negative_col(i)];
    solution.values[i] = v;
    objective += program.objective()[i] * v;
  }
  solution.objective = objective;
  return solution;
}

}  // namespace polyswap::lp
