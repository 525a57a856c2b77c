#include <gtest/gtest.h>

#include <cmath>

#include "mecsched/errors.hpp"
#include "mecsched/generate.hpp"
#include "mecsched/lp.hpp"
#include "random_lp.hpp"

namespace mecsched::lp {
namespace {

TEST(Solve, SingleBoxMaximum) {
  Problem p(1);
  p.objective = {-1.0};
  p.set_bound(0, 0.0, 1.0);
  const Solution s = solve(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_DOUBLE_EQ(s.x[0], 1.0);
  EXPECT_DOUBLE_EQ(s.objective_value, -1.0);
}

TEST(Solve, OptimalFace) {
  Problem p(2);
  p.objective = {-1.0, -1.0};
  p.add({1.0, 1.0}, Relation::kLessEqual, 1.0);
  const Solution s = solve(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.objective_value, -1.0, 1e-12);
  EXPECT_EQ(enumerate_vertices(p).status, Status::kOptimal);
  EXPECT_NEAR(enumerate_vertices(p).objective_value, -1.0, 1e-12);
}

TEST(Solve, InfeasibleBox) {
  Problem p(1);
  p.add({1.0}, Relation::kGreaterEqual, 2.0);
  p.add({1.0}, Relation::kLessEqual, 1.0);
  EXPECT_EQ(solve(p).status, Status::kInfeasible);
  EXPECT_EQ(enumerate_vertices(p).status, Status::kInfeasible);
}

TEST(Solve, UnboundedRay) {
  Problem p(1);
  p.objective = {-1.0};
  EXPECT_EQ(solve(p).status, Status::kUnbounded);
  EXPECT_EQ(enumerate_vertices(p).status, Status::kUnbounded);
}

TEST(Solve, EqualityAndFreeVariables) {
  // min x + 2y s.t. x + y = 3, x - y >= -1, y free, x in [0, 10]
  Problem p(2);
  p.objective = {1.0, 2.0};
  p.set_bound(0, 0.0, 10.0);
  p.set_bound(1, -kInfinity, kInfinity);
  p.add({1.0, 1.0}, Relation::kEqual, 3.0);
  p.add({1.0, -1.0}, Relation::kGreaterEqual, -1.0);
  const Solution s = solve(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.x[0], 10.0, 1e-9);
  EXPECT_NEAR(s.x[1], -7.0, 1e-9);
  EXPECT_NEAR(s.objective_value, -4.0, 1e-9);
}

TEST(Solve, BadlyScaledRows) {
  // Coefficients across 1e-8 .. 1e6, as in the offloading LPs.
  Problem p(2);
  p.objective = {-1e-7, 0.0};
  p.set_bound(0, 0.0, 8e5);
  p.add({1e-8, 1.0}, Relation::kLessEqual, 0.035);
  p.add({1.0, -1.5e7}, Relation::kLessEqual, 0.0);
  const Solution s = solve(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  // l <= 1.5e7 t_e and 1e-8 l + t_e <= 0.035 -> l = 0.035 / (1e-8 + 1/1.5e7)
  EXPECT_NEAR(s.x[0], 0.035 / (1e-8 + 1.0 / 1.5e7), 1e-6);
  EXPECT_LE(max_scaled_violation(p, s.x), kFeasibilityTolerance);
}

TEST(CheckProblem, StructuralErrors) {
  Problem p(2);
  p.constraints.push_back({{1.0}, Relation::kLessEqual, 1.0});
  EXPECT_THROW(solve(p), StructuralError);
  Problem q(1);
  q.bounds = {Bound{2.0, 1.0}};
  EXPECT_THROW(solve(q), StructuralError);
  Problem r(1);
  r.bounds = {Bound{}, Bound{}};
  EXPECT_THROW(check_problem(r), StructuralError);
}

TEST(EnumerateVertices, RefusesLargeProblems) {
  Problem p(kMaxEnumerationVariables + 1);
  EXPECT_THROW(enumerate_vertices(p), BudgetExceeded);
}

TEST(Problem, TextDump) {
  Problem p(2);
  p.objective = {1.0, -2.0};
  p.add({1.0, 1.0}, Relation::kLessEqual, 4.0);
  p.set_bound(1, 0.0, 3.0);
  const std::string text = p.to_text();
  EXPECT_NE(text.find("min: 1 -2"), std::string::npos) << text;
  EXPECT_NE(text.find("row 0: 1 1 <= 4"), std::string::npos) << text;
  EXPECT_NE(text.find("bound 1: [0, 3]"), std::string::npos) << text;
}

using testing::random_problem;

TEST(Solve, AgreesWithVertexEnumerationOnRandomProblems) {
  Rng rng(2024);
  int optimal = 0, infeasible = 0, unbounded = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Problem p = random_problem(rng, 2 + trial % 3, 2 + trial % 4);
    const Solution a = solve(p);
    const Solution b = enumerate_vertices(p);
    ASSERT_EQ(a.status, b.status) << "trial " << trial << "\n" << p.to_text();
    if (a.status == Status::kOptimal) {
      ++optimal;
      EXPECT_NEAR(a.objective_value, b.objective_value, 1e-8 * (1 + std::abs(b.objective_value))) << p.to_text();
      EXPECT_LE(max_scaled_violation(p, a.x), kFeasibilityTolerance) << p.to_text();
    } else if (a.status == Status::kInfeasible) {
      ++infeasible;
    } else {
      ++unbounded;
    }
  }
  EXPECT_GT(optimal, 0);
  EXPECT_GT(infeasible, 0);
  EXPECT_GT(unbounded, 0);
}

TEST(Solve, Deterministic) {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const Problem p = random_problem(rng, 4, 5);
    const Solution a = solve(p);
    const Solution b = solve(p);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.objective_value, b.objective_value);
  }
}

TEST(Status, Names) {
  EXPECT_EQ(to_string(Status::kOptimal), "optimal");
  EXPECT_EQ(to_string(Status::kInfeasible), "infeasible");
  EXPECT_EQ(to_string(Status::kUnbounded), "unbounded");
}

}  // namespace
}  // namespace mecsched::lp
