#include "crp/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace crp {
namespace {

// Dense tableau over [structural | slack | artificial] columns.
class Tableau {
 public:
  Tableau(const LpProblem& problem, const SimplexOptions& options)
      : options_(options),
        num_structural_(problem.num_variables()),
        num_rows_(problem.num_constraints()) {
    size_t num_artificial = 0;
    for (double b : problem.rhs) {
      if (b < 0.0) ++num_artificial;
    }
    num_columns_ = num_structural_ + num_rows_ + num_artificial;
    first_artificial_ = num_structural_ + num_rows_;
    cells_.assign(num_rows_ * num_columns_, 0.0);
    rhs_.resize(num_rows_);
    basis_.resize(num_rows_);

    size_t next_artificial = first_artificial_;
    for (size_t i = 0; i < num_rows_; ++i) {
      const double sign = problem.rhs[i] < 0.0 ? -1.0 : 1.0;
      for (size_t j = 0; j < num_structural_; ++j) {
        at(i, j) = sign * problem.constraint_matrix[i][j];
      }
      at(i, num_structural_ + i) = sign;
      rhs_[i] = sign * problem.rhs[i];
      if (sign < 0.0) {
        at(i, next_artificial) = 1.0;
        basis_[i] = next_artificial++;
      } else {
        basis_[i] = num_structural_ + i;
      }
    }
  }

  bool has_artificials() const { return first_artificial_ < num_columns_; }

  enum class Outcome { kOptimal, kUnbounded, kIterationLimit };

  // Maximizes cost.x over the current basis. Columns at or beyond
  // `column_limit` never enter.
  Outcome Optimize(const std::vector<double>& cost, size_t column_limit) {
    std::vector<double> reduced(num_columns_);
    while (true) {
      if (iterations_ >= options_.max_iterations) {
        return Outcome::kIterationLimit;
      }
      // Bland: the smallest-index column with a positive reduced cost.
      size_t entering = num_columns_;
      for (size_t j = 0; j < column_limit; ++j) {
        double d = cost[j];
        for (size_t i = 0; i < num_rows_; ++i) d -= cost[basis_[i]] * at(i, j);
        if (d > options_.optimality_tolerance) {
          entering = j;
          break;
        }
      }
      if (entering == num_columns_) return Outcome::kOptimal;

      // Ratio test; ties go to the smallest basic-variable index.
      size_t leaving = num_rows_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < num_rows_; ++i) {
        const double coef = at(i, entering);
        if (coef <= options_.pivot_tolerance) continue;
        const double ratio = rhs_[i] / coef;
        const double slack = options_.feasibility_tolerance *
                             std::max(1.0, std::abs(best_ratio));
        if (leaving == num_rows_ || ratio < best_ratio - slack) {
          leaving = i;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + slack &&
                   basis_[i] < basis_[leaving]) {
          leaving = i;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
      if (leaving == num_rows_) return Outcome::kUnbounded;
      Pivot(leaving, entering);
      ++iterations_;
    }
  }

  // Value of the phase-1 objective: total artificial mass still basic.
  double ArtificialMass() const {
    double mass = 0.0;
    for (size_t i = 0; i < num_rows_; ++i) {
      if (basis_[i] >= first_artificial_) mass += rhs_[i];
    }
    return mass;
  }

  // Pivots zero-valued artificials out of the basis wherever a real column
  // can replace them. Rows with no such column are redundant and keep their
  // artificial at zero.
  void DriveOutArtificials() {
    for (size_t i = 0; i < num_rows_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (size_t j = 0; j < first_artificial_; ++j) {
        if (std::abs(at(i, j)) > options_.pivot_tolerance) {
          Pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<double> PhaseOneCost() const {
    std::vector<double> cost(num_columns_, 0.0);
    for (size_t j = first_artificial_; j < num_columns_; ++j) cost[j] = -1.0;
    return cost;
  }

  std::vector<double> PhaseTwoCost(const std::vector<double>& objective) const {
    std::vector<double> cost(num_columns_, 0.0);
    std::copy(objective.begin(), objective.end(), cost.begin());
    return cost;
  }

  std::vector<double> Primal() const {
    std::vector<double> x(num_structural_, 0.0);
    for (size_t i = 0; i < num_rows_; ++i) {
      if (basis_[i] < num_structural_) x[basis_[i]] = std::max(0.0, rhs_[i]);
    }
    return x;
  }

  size_t first_artificial() const { return first_artificial_; }
  size_t num_columns() const { return num_columns_; }
  int iterations() const { return iterations_; }

 private:
  double& at(size_t i, size_t j) { return cells_[i * num_columns_ + j]; }
  double at(size_t i, size_t j) const { return cells_[i * num_columns_ + j]; }

  void Pivot(size_t row, size_t column) {
    const double inv = 1.0 / at(row, column);
    for (size_t j = 0; j < num_columns_; ++j) at(row, j) *= inv;
    rhs_[row] *= inv;
    at(row, column) = 1.0;
    for (size_t i = 0; i < num_rows_; ++i) {
      if (i == row) continue;
      const double factor = at(i, column);
      if (factor == 0.0) continue;
      for (size_t j = 0; j < num_columns_; ++j) {
        at(i, j) -= factor * at(row, j);
      }
      at(i, column) = 0.0;
      rhs_[i] -= factor * rhs_[row];
      if (std::abs(rhs_[i]) < options_.pivot_tolerance) rhs_[i] = 0.0;
    }
    basis_[row] = column;
  }

  SimplexOptions options_;
  size_t num_structural_;
  size_t num_rows_;
  size_t num_columns_ = 0;
  size_t first_artificial_ = 0;
  std::vector<double> cells_;
  std::vector<double> rhs_;
  std::vector<size_t> basis_;
  int iterations_ = 0;
};

}  // namespace

const char* LpStatusName(LpStatus status) {
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

absl::Status CheckProblem(const LpProblem& problem) {
  const size_t n = problem.num_variables();
  if (problem.constraint_matrix.size() != problem.rhs.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("constraint matrix has ", problem.constraint_matrix.size(),
                     " rows but rhs has ", problem.rhs.size(), " entries"));
  }
  for (size_t i = 0; i < problem.constraint_matrix.size(); ++i) {
    const auto& row = problem.constraint_matrix[i];
    if (row.size() != n) {
      return absl::InvalidArgumentError(absl::StrCat(
          "row ", i, " has ", row.size(), " coefficients, expected ", n));
    }
    for (double a : row) {
      if (!std::isfinite(a)) {
        return absl::InvalidArgumentError(
            absl::StrCat("row ", i, " has a non-finite coefficient"));
      }
    }
    if (!std::isfinite(problem.rhs[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("rhs ", i, " is not finite"));
    }
  }
  for (double c : problem.objective) {
    if (!std::isfinite(c)) {
      return absl::InvalidArgumentError("objective has a non-finite entry");
    }
  }
  if (!problem.variable_labels.empty() && problem.variable_labels.size() != n) {
    return absl::InvalidArgumentError("variable label count mismatch");
  }
  if (!problem.constraint_labels.empty() &&
      problem.constraint_labels.size() != problem.rhs.size()) {
    return absl::InvalidArgumentError("constraint label count mismatch");
  }
  return absl::OkStatus();
}

absl::StatusOr<LpSolution> Solve(const LpProblem& problem,
                                 const SimplexOptions& options) {
  if (absl::Status status = CheckProblem(problem); !status.ok()) return status;

  std::vector<double> objective = problem.objective;
  if (problem.sense == Sense::kMinimize) {
    for (double& c : objective) c = -c;
  }

  Tableau tableau(problem, options);
  LpSolution solution;
  auto limit_error = [&] {
    return absl::ResourceExhaustedError(absl::StrCat(
        "simplex iteration limit ", options.max_iterations, " reached"));
  };

  if (tableau.has_artificials()) {
    auto outcome =
        tableau.Optimize(tableau.PhaseOneCost(), tableau.num_columns());
    if (outcome == Tableau::Outcome::kIterationLimit) return limit_error();
    if (tableau.ArtificialMass() > options.feasibility_tolerance) {
      solution.status = LpStatus::kInfeasible;
      solution.iterations = tableau.iterations();
      return solution;
    }
    tableau.DriveOutArtificials();
  }

  auto outcome = tableau.Optimize(tableau.PhaseTwoCost(objective),
                                  tableau.first_artificial());
  solution.iterations = tableau.iterations();
  if (outcome == Tableau::Outcome::kIterationLimit) return limit_error();
  if (outcome == Tableau::Outcome::kUnbounded) {
    solution.status = LpStatus::kUnbounded;
    return solution;
  }

  solution.status = LpStatus::kOptimal;
  solution.x = tableau.Primal();
  for (size_t j = 0; j < solution.x.size(); ++j) {
    solution.z += problem.objective[j] * solution.x[j];
  }
  for (size_t i = 0; i < problem.num_constraints(); ++i) {
    double lhs = 0.0;
    for (size_t j = 0; j < solution.x.size(); ++j) {
      lhs += problem.constraint_matrix[i][j] * solution.x[j];
    }
    const double tol =
        options.feasibility_tolerance * std::max(1.0, std::abs(problem.rhs[i]));
    if (lhs >= problem.rhs[i] - tol) solution.active_constraints.push_back(i);
  }
  return solution;
}

}  // namespace crp
