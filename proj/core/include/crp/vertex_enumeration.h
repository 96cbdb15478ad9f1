#ifndef CRP_VERTEX_ENUMERATION_H_
#define CRP_VERTEX_ENUMERATION_H_

// Brute-force enumeration of the basic solutions of an LpProblem. This is an
// exponential reference oracle for the simplex solver and shares no code
// with it.

#include <cstddef>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "crp/simplex.h"

namespace crp {

inline constexpr size_t kMaxEnumerationSize = 12;

struct BasicSolution {
  std::vector<double> x;  // structural variables only
  double z = 0.0;
  bool feasible = false;
};

// Returns every basic solution of [A | I] (x, s) = b: one per choice of m
// linearly independent columns out of the n + m structural and slack
// columns. Requires n + m <= kMaxEnumerationSize.
absl::StatusOr<std::vector<BasicSolution>> EnumerateVertices(
    const LpProblem& problem, double tolerance = 1e-9);

// The best feasible basic solution under the problem's sense, or nullopt
// when no basic solution is feasible.
std::optional<BasicSolution> BestFeasible(
    const LpProblem& problem, const std::vector<BasicSolution>& vertices);

}  // namespace crp

#endif  // CRP_VERTEX_ENUMERATION_H_
