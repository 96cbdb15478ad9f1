#include "crp/vertex_enumeration.h"

#include "gtest/gtest.h"

namespace crp {
namespace {

LpProblem TwoByTwo() {
  LpProblem p;
  p.objective = {3, 5};
  p.constraint_matrix = {{1, 1}, {1, 3}};
  p.rhs = {4, 6};
  return p;
}

TEST(EnumerateVerticesTest, VisitsEveryBasis) {
  auto vertices = EnumerateVertices(TwoByTwo());
  ASSERT_TRUE(vertices.ok());
  ASSERT_EQ(vertices->size(), 6u);
  // First basis in lexicographic order is {x1, x2}.
  EXPECT_NEAR((*vertices)[0].x[0], 3.0, 1e-12);
  EXPECT_NEAR((*vertices)[0].x[1], 1.0, 1e-12);
  EXPECT_TRUE((*vertices)[0].feasible);
  // Last basis is the slack basis: the origin.
  EXPECT_EQ(vertices->back().x, (std::vector<double>{0.0, 0.0}));
  int feasible = 0;
  for (const BasicSolution& v : *vertices) feasible += v.feasible;
  EXPECT_EQ(feasible, 4);

  auto best = BestFeasible(TwoByTwo(), *vertices);
  ASSERT_TRUE(best.has_value());
  EXPECT_NEAR(best->z, 14.0, 1e-12);
}

TEST(EnumerateVerticesTest, MinimizeChoosesSmallest) {
  LpProblem p = TwoByTwo();
  p.sense = Sense::kMinimize;
  p.objective = {-1, 1};
  auto vertices = EnumerateVertices(p);
  ASSERT_TRUE(vertices.ok());
  auto best = BestFeasible(p, *vertices);
  ASSERT_TRUE(best.has_value());
  EXPECT_NEAR(best->z, -4.0, 1e-12);
}

TEST(EnumerateVerticesTest, InfeasibleHasNoFeasibleBasis) {
  LpProblem p;
  p.objective = {1};
  p.constraint_matrix = {{1}, {-1}};
  p.rhs = {1, -2};
  auto vertices = EnumerateVertices(p);
  ASSERT_TRUE(vertices.ok());
  EXPECT_FALSE(BestFeasible(p, *vertices).has_value());
}

TEST(EnumerateVerticesTest, ZeroVariables) {
  LpProblem p;
  p.constraint_matrix = {{}, {}};
  p.rhs = {1, 2};
  auto vertices = EnumerateVertices(p);
  ASSERT_TRUE(vertices.ok());
  ASSERT_EQ(vertices->size(), 1u);
  EXPECT_TRUE((*vertices)[0].x.empty());
  EXPECT_TRUE((*vertices)[0].feasible);
}

TEST(EnumerateVerticesTest, SkipsSingularBases) {
  LpProblem p;
  p.objective = {1, 1};
  p.constraint_matrix = {{1, 1}};
  p.rhs = {2};
  p.constraint_matrix.push_back({2, 2});
  p.rhs.push_back(4);
  auto vertices = EnumerateVertices(p);
  ASSERT_TRUE(vertices.ok());
  EXPECT_EQ(vertices->size(), 5u);
}

TEST(EnumerateVerticesTest, RefusesLargeProblems) {
  LpProblem p;
  p.objective.assign(7, 1.0);
  p.constraint_matrix.assign(6, std::vector<double>(7, 1.0));
  p.rhs.assign(6, 1.0);
  EXPECT_EQ(EnumerateVertices(p).status().code(),
            absl::StatusCode::kOutOfRange);
}

}  // namespace
}  // namespace crp
