#ifndef CRP_SIMPLEX_H_
#define CRP_SIMPLEX_H_

// Dense two-phase primal simplex for
//
//   maximize (or minimize)  c.x
//   subject to              A x <= b,  x >= 0.
//
// Pivoting follows Bland's rule (smallest eligible index for both the
// entering and the leaving variable), which makes the solver deterministic
// and guarantees termination on degenerate problems. Rows with b < 0 are
// handled by a phase-1 problem over artificial variables.

#include <cstddef>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace crp {

enum class Sense { kMaximize, kMinimize };

struct LpProblem {
  Sense sense = Sense::kMaximize;
  std::vector<double> objective;                    // c_j
  std::vector<std::vector<double>> constraint_matrix;  // a_ij, one row per i
  std::vector<double> rhs;                          // b_i
  std::vector<std::string> variable_labels;
  std::vector<std::string> constraint_labels;

  size_t num_variables() const { return objective.size(); }
  size_t num_constraints() const { return rhs.size(); }

  friend bool operator==(const LpProblem&, const LpProblem&) = default;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double z = 0.0;
  std::vector<size_t> active_constraints;  // rows with A_i x = b_i
  int iterations = 0;

  friend bool operator==(const LpSolution&, const LpSolution&) = default;
};

struct SimplexOptions {
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  double pivot_tolerance = 1e-10;
  int max_iterations = 100000;
};

// Checks shape and finiteness; Solve() calls this first.
absl::Status CheckProblem(const LpProblem& problem);

// Solves `problem`. Infeasible and unbounded problems are reported through
// LpSolution::status; only malformed input (dimension mismatch, NaN/inf) or
// an exhausted iteration budget produce an error status.
absl::StatusOr<LpSolution> Solve(const LpProblem& problem,
                                 const SimplexOptions& options = {});

const char* LpStatusName(LpStatus status);

}  // namespace crp

#endif  // CRP_SIMPLEX_H_
