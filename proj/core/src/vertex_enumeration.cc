#include "crp/vertex_enumeration.h"

#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace crp {
namespace {

// Solves the square system `m` * y = `b` by Gaussian elimination with
// partial pivoting. Returns nullopt when the system is singular.
std::optional<std::vector<double>> SolveSquare(
    std::vector<std::vector<double>> m, std::vector<double> b) {
  const size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    for (size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) < 1e-12) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(b[pivot], b[col]);
    for (size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> y(n);
  for (size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (size_t c = i + 1; c < n; ++c) acc -= m[i][c] * y[c];
    y[i] = acc / m[i][i];
  }
  return y;
}

// Advances `combo` to the next k-combination of {0..n-1} in lexicographic
// order. Returns false after the last one.
bool NextCombination(std::vector<size_t>& combo, size_t n) {
  const size_t k = combo.size();
  for (size_t i = k; i-- > 0;) {
    if (combo[i] < n - k + i) {
      ++combo[i];
      for (size_t j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

absl::StatusOr<std::vector<BasicSolution>> EnumerateVertices(
    const LpProblem& problem, double tolerance) {
  if (absl::Status status = CheckProblem(problem); !status.ok()) return status;
  const size_t n = problem.num_variables();
  const size_t m = problem.num_constraints();
  if (n + m > kMaxEnumerationSize) {
    return absl::OutOfRangeError(
        absl::StrCat("vertex enumeration limited to ", kMaxEnumerationSize,
                     " variables+constraints, got ", n + m));
  }

  // Column j of the augmented matrix [A | I].
  auto column = [&](size_t j, size_t row) {
    if (j < n) return problem.constraint_matrix[row][j];
    return j - n == row ? 1.0 : 0.0;
  };

  std::vector<BasicSolution> out;
  std::vector<size_t> combo(m);
  for (size_t i = 0; i < m; ++i) combo[i] = i;
  do {
    std::vector<std::vector<double>> basis(m, std::vector<double>(m));
    for (size_t r = 0; r < m; ++r) {
      for (size_t c = 0; c < m; ++c) basis[r][c] = column(combo[c], r);
    }
    auto values = SolveSquare(std::move(basis), problem.rhs);
    if (!values) continue;

    std::vector<double> full(n + m, 0.0);
    for (size_t c = 0; c < m; ++c) full[combo[c]] = (*values)[c];
    BasicSolution sol;
    sol.x.assign(full.begin(), full.begin() + n);
    sol.feasible = true;
    for (double v : full) {
      if (v < -tolerance) sol.feasible = false;
    }
    for (size_t j = 0; j < n; ++j) sol.z += problem.objective[j] * sol.x[j];
    out.push_back(std::move(sol));
  } while (m > 0 && NextCombination(combo, n + m));
  return out;
}

std::optional<BasicSolution> BestFeasible(
    const LpProblem& problem, const std::vector<BasicSolution>& vertices) {
  std::optional<BasicSolution> best;
  for (const BasicSolution& v : vertices) {
    if (!v.feasible) continue;
    const bool better = !best || (problem.sense == Sense::kMaximize
                                      ? v.z > best->z
                                      : v.z < best->z);
    if (better) best = v;
  }
  return best;
}

}  // namespace crp
