#include "mecsched/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mecsched/errors.hpp"
#include "mecsched/format.hpp"

namespace mecsched::lp {

void Problem::set_bound(std::size_t j, double lower, double upper) {
  if (bounds.empty()) bounds.assign(num_variables(), Bound{});
  bounds.at(j) = Bound{lower, upper};
}

void Problem::add(std::vector<double> coeffs, Relation relation, double rhs) {
  constraints.push_back(Constraint{std::move(coeffs), relation, rhs});
}

namespace {

const char* relation_text(Relation r) {
  switch (r) {
    case Relation::kLessEqual: return "<=";
    case Relation::kEqual: return "=";
    case Relation::kGreaterEqual: return ">=";
  }
  return "?";
}

}  // namespace

std::string Problem::to_text() const {
  std::ostringstream os;
  os << "min:";
  for (double c : objective) os << ' ' << format_double(c);
  os << '\n';
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    os << "row " << k << ':';
    for (double a : constraints[k].coeffs) os << ' ' << format_double(a);
    os << ' ' << relation_text(constraints[k].relation) << ' ' << format_double(constraints[k].rhs) << '\n';
  }
  for (std::size_t j = 0; j < num_variables(); ++j) {
    const Bound b = bound(j);
    os << "bound " << j << ": [" << format_double(b.lower) << ", " << format_double(b.upper) << "]\n";
  }
  return os.str();
}

std::string to_string(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
  }
  return "?";
}

void check_problem(const Problem& problem) {
  const std::size_t n = problem.num_variables();
  for (std::size_t k = 0; k < problem.constraints.size(); ++k) {
    if (problem.constraints[k].coeffs.size() != n) {
      throw StructuralError("row " + std::to_string(k) + " has " +
                            std::to_string(problem.constraints[k].coeffs.size()) +
                            " coefficients, objective has " + std::to_string(n));
    }
  }
  if (!problem.bounds.empty() && problem.bounds.size() != n) {
    throw StructuralError("bounds has " + std::to_string(problem.bounds.size()) + " entries, expected " +
                          std::to_string(n));
  }
  for (std::size_t j = 0; j < problem.bounds.size(); ++j) {
    const Bound& b = problem.bounds[j];
    if (std::isnan(b.lower) || std::isnan(b.upper) || b.lower > b.upper || b.lower == kInfinity ||
        b.upper == -kInfinity) {
      throw StructuralError("variable " + std::to_string(j) + " has invalid bounds [" +
                            format_double(b.lower) + ", " + format_double(b.upper) + "]");
    }
  }
}

double max_scaled_violation(const Problem& problem, const std::vector<double>& x) {
  double worst = 0.0;
  for (const Constraint& row : problem.constraints) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += row.coeffs[j] * x[j];
    double v = 0.0;
    switch (row.relation) {
      case Relation::kLessEqual: v = lhs - row.rhs; break;
      case Relation::kGreaterEqual: v = row.rhs - lhs; break;
      case Relation::kEqual: v = std::abs(lhs - row.rhs); break;
    }
    worst = std::max(worst, v / (1.0 + std::abs(row.rhs)));
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    const Bound b = problem.bound(j);
    if (std::isfinite(b.lower)) worst = std::max(worst, (b.lower - x[j]) / (1.0 + std::abs(b.lower)));
    if (std::isfinite(b.upper)) worst = std::max(worst, (x[j] - b.upper) / (1.0 + std::abs(b.upper)));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Two-phase simplex on a dense tableau.

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);
constexpr std::size_t kIterationLimit = 100000;
constexpr double kOptimalityTolerance = 1e-10;

// (rows + 1) x (cols + 1); the last row holds reduced costs, the last
// column right-hand sides. The objective cell stores minus the objective.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, kNone) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& cost(std::size_t c) { return at(rows_, c); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double factor = at(r, pc);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= factor * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  // Reduced costs for `costs` given the current basis.
  void price(const std::vector<double>& costs) {
    for (std::size_t c = 0; c <= cols_; ++c) cost(c) = c < cols_ ? costs[c] : 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = costs[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) cost(c) -= cb * at(r, c);
    }
  }

  // Bland's rule over columns [0, enterable). Returns false when unbounded.
  bool optimize(std::size_t enterable) {
    for (std::size_t iter = 0; iter < kIterationLimit; ++iter) {
      std::size_t entering = kNone;
      for (std::size_t c = 0; c < enterable; ++c) {
        if (cost(c) < -kOptimalityTolerance) {
          entering = c;
          break;
        }
      }
      if (entering == kNone) return true;

      std::size_t leaving = kNone;
      double best = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = at(r, entering);
        if (a <= kPivotTolerance) continue;
        const double ratio = std::max(rhs(r), 0.0) / a;
        if (leaving == kNone) {
          leaving = r;
          best = ratio;
          continue;
        }
        const double tie = 1e-12 * std::max(1.0, best);
        if (ratio < best - tie || (ratio <= best + tie && basis_[r] < basis_[leaving])) {
          leaving = r;
          best = std::min(best, ratio);
        }
      }
      if (leaving == kNone) return false;
      pivot(leaving, entering);
    }
    throw std::runtime_error("simplex iteration limit reached");
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

// How an original variable is rebuilt from nonnegative tableau columns.
struct VariableMap {
  double offset = 0.0;
  std::size_t column = kNone;
  double sign = 1.0;
  std::size_t negative_column = kNone;  // free variables: x = z+ - z-
};

struct Row {
  std::vector<double> coeffs;  // over tableau structural columns
  Relation relation;
  double rhs;
};

}  // namespace

Solution solve(const Problem& problem) {
  check_problem(problem);
  const std::size_t n = problem.num_variables();
  const std::size_t m = problem.constraints.size();

  // Row then column max-abs equilibration. x_j = col_scale[j] * y_j.
  std::vector<double> row_scale(m, 1.0);
  for (std::size_t k = 0; k < m; ++k) {
    double peak = 0.0;
    for (double a : problem.constraints[k].coeffs) peak = std::max(peak, std::abs(a));
    if (peak > 0.0) row_scale[k] = 1.0 / peak;
  }
  std::vector<double> col_scale(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    double peak = 0.0;
    for (std::size_t k = 0; k < m; ++k) peak = std::max(peak, std::abs(problem.constraints[k].coeffs[j] * row_scale[k]));
    if (peak > 0.0) col_scale[j] = 1.0 / peak;
  }
  double cost_peak = 0.0;
  for (std::size_t j = 0; j < n; ++j) cost_peak = std::max(cost_peak, std::abs(problem.objective[j] * col_scale[j]));
  const double cost_scale = cost_peak > 0.0 ? 1.0 / cost_peak : 1.0;

  // Map each scaled variable onto nonnegative columns.
  std::vector<VariableMap> maps(n);
  std::vector<Row> rows;
  std::size_t structural = 0;
  std::vector<std::pair<std::size_t, double>> upper_rows;  // column, bound
  for (std::size_t j = 0; j < n; ++j) {
    const Bound b = problem.bound(j);
    const double lo = b.lower / col_scale[j];
    const double up = b.upper / col_scale[j];
    VariableMap& vm = maps[j];
    if (std::isfinite(lo)) {
      vm.offset = lo;
      vm.column = structural++;
      if (std::isfinite(up)) upper_rows.emplace_back(vm.column, up - lo);
    } else if (std::isfinite(up)) {
      vm.offset = up;
      vm.column = structural++;
      vm.sign = -1.0;
    } else {
      vm.column = structural++;
      vm.negative_column = structural++;
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    const Constraint& c = problem.constraints[k];
    Row row{std::vector<double>(structural, 0.0), c.relation, c.rhs * row_scale[k]};
    for (std::size_t j = 0; j < n; ++j) {
      const double a = c.coeffs[j] * row_scale[k] * col_scale[j];
      if (a == 0.0) continue;
      row.rhs -= a * maps[j].offset;
      row.coeffs[maps[j].column] += a * maps[j].sign;
      if (maps[j].negative_column != kNone) row.coeffs[maps[j].negative_column] -= a;
    }
    rows.push_back(std::move(row));
  }
  for (const auto& [column, width] : upper_rows) {
    Row row{std::vector<double>(structural, 0.0), Relation::kLessEqual, width};
    row.coeffs[column] = 1.0;
    rows.push_back(std::move(row));
  }
  for (Row& row : rows) {
    if (row.rhs < 0.0) {
      for (double& a : row.coeffs) a = -a;
      row.rhs = -row.rhs;
      if (row.relation == Relation::kLessEqual) {
        row.relation = Relation::kGreaterEqual;
      } else if (row.relation == Relation::kGreaterEqual) {
        row.relation = Relation::kLessEqual;
      }
    }
  }

  std::size_t slack_count = 0;
  std::size_t artificial_count = 0;
  for (const Row& row : rows) {
    if (row.relation != Relation::kEqual) ++slack_count;
    if (row.relation != Relation::kLessEqual) ++artificial_count;
  }
  const std::size_t slack_start = structural;
  const std::size_t artificial_start = slack_start + slack_count;
  const std::size_t total_cols = artificial_start + artificial_count;

  Tableau t(rows.size(), total_cols);
  std::size_t next_slack = slack_start;
  std::size_t next_artificial = artificial_start;
  double rhs_peak = 0.0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Row& row = rows[r];
    for (std::size_t c = 0; c < structural; ++c) t.at(r, c) = row.coeffs[c];
    t.rhs(r) = row.rhs;
    rhs_peak = std::max(rhs_peak, row.rhs);
    switch (row.relation) {
      case Relation::kLessEqual:
        t.at(r, next_slack) = 1.0;
        t.basis()[r] = next_slack++;
        break;
      case Relation::kGreaterEqual:
        t.at(r, next_slack++) = -1.0;
        t.at(r, next_artificial) = 1.0;
        t.basis()[r] = next_artificial++;
        break;
      case Relation::kEqual:
        t.at(r, next_artificial) = 1.0;
        t.basis()[r] = next_artificial++;
        break;
    }
  }

  if (artificial_count > 0) {
    std::vector<double> phase1(total_cols, 0.0);
    for (std::size_t c = artificial_start; c < total_cols; ++c) phase1[c] = 1.0;
    t.price(phase1);
    t.optimize(total_cols);
    const double infeasibility = -t.cost(total_cols);
    if (infeasibility > kFeasibilityTolerance * (1.0 + rhs_peak)) return Solution{Status::kInfeasible, {}, 0.0};
    // Pivot zero-valued artificials out where possible; rows that cannot be
    // pivoted are redundant and their artificial stays at zero.
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (t.basis()[r] < artificial_start) continue;
      for (std::size_t c = 0; c < artificial_start; ++c) {
        if (std::abs(t.at(r, c)) > kPivotTolerance) {
          t.pivot(r, c);
          break;
        }
      }
    }
  }

  std::vector<double> phase2(total_cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double c = problem.objective[j] * col_scale[j] * cost_scale;
    phase2[maps[j].column] += c * maps[j].sign;
    if (maps[j].negative_column != kNone) phase2[maps[j].negative_column] -= c;
  }
  t.price(phase2);
  if (!t.optimize(artificial_start)) return Solution{Status::kUnbounded, {}, 0.0};

  std::vector<double> z(total_cols, 0.0);
  for (std::size_t r = 0; r < t.rows(); ++r) z[t.basis()[r]] = std::max(t.rhs(r), 0.0);

  Solution out{Status::kOptimal, std::vector<double>(n, 0.0), 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    const VariableMap& vm = maps[j];
    double y = vm.offset + vm.sign * z[vm.column];
    if (vm.negative_column != kNone) y -= z[vm.negative_column];
    double x = y * col_scale[j];
    const Bound b = problem.bound(j);
    x = std::clamp(x, b.lower, b.upper);
    out.x[j] = x;
    out.objective_value += problem.objective[j] * x;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Vertex enumeration.

namespace {

constexpr double kBoxSize = 1e7;
constexpr double kMaxCombinations = 4e6;

struct Plane {
  std::vector<double> a;
  double b;
};

double binomial(std::size_t p, std::size_t k) {
  double out = 1.0;
  for (std::size_t i = 0; i < k; ++i) out = out * static_cast<double>(p - i) / static_cast<double>(i + 1);
  return out;
}

// Solves the square system by partial pivoting on row-normalized copies.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t r = 0; r < n; ++r) {
    double peak = 0.0;
    for (double v : a[r]) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return false;
    for (double& v : a[r]) v /= peak;
    b[r] /= peak;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < kPivotTolerance) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return true;
}

Solution enumerate_in_box(const Problem& problem, double box) {
  const std::size_t n = problem.num_variables();
  Problem boxed = problem;
  boxed.bounds.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    Bound b = problem.bound(j);
    if (!std::isfinite(b.lower)) b.lower = -box;
    if (!std::isfinite(b.upper)) b.upper = box;
    boxed.bounds[j] = b;
  }

  std::vector<Plane> equalities;
  std::vector<Plane> inequalities;
  for (const Constraint& c : problem.constraints) {
    (c.relation == Relation::kEqual ? equalities : inequalities).push_back(Plane{c.coeffs, c.rhs});
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> unit(n, 0.0);
    unit[j] = 1.0;
    inequalities.push_back(Plane{unit, boxed.bounds[j].lower});
    if (boxed.bounds[j].upper != boxed.bounds[j].lower) inequalities.push_back(Plane{unit, boxed.bounds[j].upper});
  }

  // Every basic solution has all equalities active when there are at most n of them.
  const std::vector<Plane>* pool = &inequalities;
  std::vector<Plane> fixed = equalities;
  std::size_t choose = n - std::min(n, equalities.size());
  if (equalities.size() > n) {
    pool = &equalities;
    fixed.clear();
    choose = n;
  }
  if (choose > pool->size()) return Solution{Status::kInfeasible, {}, 0.0};
  if (binomial(pool->size(), choose) > kMaxCombinations) {
    throw BudgetExceeded("vertex enumeration would visit more than " + format_double(kMaxCombinations) +
                         " bases");
  }

  Solution best{Status::kInfeasible, {}, 0.0};
  std::vector<std::size_t> pick(choose);
  for (std::size_t i = 0; i < choose; ++i) pick[i] = i;
  std::vector<double> x;
  while (true) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (const Plane& p : fixed) {
      a.push_back(p.a);
      b.push_back(p.b);
    }
    for (std::size_t idx : pick) {
      a.push_back((*pool)[idx].a);
      b.push_back((*pool)[idx].b);
    }
    if (n == 0 || solve_square(std::move(a), std::move(b), x)) {
      if (max_scaled_violation(boxed, x) <= kFeasibilityTolerance) {
        double value = 0.0;
        for (std::size_t j = 0; j < n; ++j) value += problem.objective[j] * x[j];
        const bool better = best.status != Status::kOptimal ||
                            value < best.objective_value - 1e-12 * (1.0 + std::abs(best.objective_value));
        if (better) best = Solution{Status::kOptimal, x, value};
      }
    }
    // next combination in lexicographic order
    std::size_t i = choose;
    while (i > 0 && pick[i - 1] == pool->size() - choose + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < choose; ++k) pick[k] = pick[k - 1] + 1;
  }
  return best;
}

}  // namespace

Solution enumerate_vertices(const Problem& problem) {
  check_problem(problem);
  if (problem.num_variables() > kMaxEnumerationVariables) {
    throw BudgetExceeded("vertex enumeration refuses " + std::to_string(problem.num_variables()) +
                         " variables (limit " + std::to_string(kMaxEnumerationVariables) + ")");
  }
  const Solution small = enumerate_in_box(problem, kBoxSize);
  if (small.status != Status::kOptimal) return small;
  const Solution large = enumerate_in_box(problem, 2.0 * kBoxSize);
  if (std::abs(large.objective_value - small.objective_value) >
      1e-9 * (1.0 + std::abs(small.objective_value))) {
    return Solution{Status::kUnbounded, {}, 0.0};
  }
  return small;
}

}  // namespace mecsched::lp
