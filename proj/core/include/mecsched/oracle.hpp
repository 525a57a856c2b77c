#pragma once

// Exhaustive reference solvers for small instances.

#include <chrono>
#include <cstddef>

#include "mecsched/model.hpp"

namespace mecsched::oracle {

struct OracleBudget {
  std::size_t max_users_rate = 12;
  std::size_t max_n1_energy = 12;
  std::chrono::milliseconds time_guard{60000};
};

// Throws ConfigError unless every limit is positive.
void check_budget(const OracleBudget& budget);

struct RateOracleResult {
  RateSchedule schedule;
  std::size_t subsets_evaluated = 0;
  // The winner satisfies R(S) <= min_{i in S} w_i / t_i. A false value is an
  // internal-consistency failure, reported rather than thrown.
  bool winner_satisfies_necessary_condition = false;
};

// Maximizes R(S) over every nonempty S (Gray-code order); exact ties within
// 1e-12 (1 + R) go to the lexicographically smallest set. Throws
// BudgetExceeded when K > max_users_rate or the time guard trips.
RateOracleResult brute_force_rate_max(const Instance& instance, const OracleBudget& budget = {});

struct EnergyOracleResult {
  EnergySchedule schedule;
  UserSet best_s1;
  std::size_t subsets_evaluated = 0;
  std::size_t subsets_feasible = 0;
};

// For every S1 subset of N1, solves the LP with M0 at L^min, M1 in
// [L^min, L] and S1 in [0, L], and keeps the cheapest. Infeasible iff every
// LP is. Throws BudgetExceeded when |N1| > max_n1_energy or the time guard trips.
EnergyOracleResult brute_force_energy(const Instance& instance, const OracleBudget& budget = {});

}  // namespace mecsched::oracle
