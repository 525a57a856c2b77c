#pragma once

// Small dense linear programs: minimize c.x subject to linear rows and
// per-variable bounds. `solve` is a two-phase simplex with Bland's rule;
// `enumerate_vertices` is an exhaustive reference used to test it.

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace mecsched::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kPivotTolerance = 1e-10;
inline constexpr double kFeasibilityTolerance = 1e-9;

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Constraint {
  std::vector<double> coeffs;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

struct Bound {
  double lower = 0.0;
  double upper = kInfinity;
};

struct Problem {
  std::vector<double> objective;  // minimized
  std::vector<Constraint> constraints;
  std::vector<Bound> bounds;  // empty means every variable in [0, +inf)

  explicit Problem(std::size_t num_variables = 0) : objective(num_variables, 0.0) {}

  std::size_t num_variables() const noexcept { return objective.size(); }
  Bound bound(std::size_t j) const { return bounds.empty() ? Bound{} : bounds[j]; }
  void set_bound(std::size_t j, double lower, double upper);
  void add(std::vector<double> coeffs, Relation relation, double rhs);

  // One line per row: "min: c0 c1 ...", "row k: a0 a1 ... <= b", "bound j: [l, u]".
  std::string to_text() const;
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

std::string to_string(Status status);

struct Solution {
  Status status = Status::kInfeasible;
  std::vector<double> x;  // set when optimal
  double objective_value = 0.0;
};

// Throws StructuralError on dimension mismatch or lower > upper.
void check_problem(const Problem& problem);

// Deterministic: identical problems give bit-identical solutions.
Solution solve(const Problem& problem);

// Largest scaled violation of any row or bound at x; 0 when x is feasible.
// Row k contributes violation_k / (1 + |rhs_k|), bounds contribute
// violation_j / (1 + |bound_j|).
double max_scaled_violation(const Problem& problem, const std::vector<double>& x);

inline constexpr std::size_t kMaxEnumerationVariables = 12;

// Enumerates every basic solution (n linearly independent active rows or
// bounds), keeps the feasible ones and returns the cheapest. Unboundedness is
// detected by bounding free directions with a large box at two sizes and
// checking whether the optimum moves. Throws BudgetExceeded past
// kMaxEnumerationVariables variables or a combinatorial cap.
Solution enumerate_vertices(const Problem& problem);

}  // namespace mecsched::lp
