#include "mecsched/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "mecsched/energy.hpp"
#include "mecsched/errors.hpp"
#include "mecsched/rate.hpp"

namespace mecsched::oracle {

namespace {

using Clock = std::chrono::steady_clock;

class Guard {
 public:
  Guard(std::chrono::milliseconds limit, const char* who) : deadline_(Clock::now() + limit), who_(who) {}
  void check() const {
    if (Clock::now() > deadline_) throw BudgetExceeded(std::string(who_) + ": time guard exceeded");
  }

 private:
  Clock::time_point deadline_;
  const char* who_;
};

UserSet from_mask(std::uint64_t mask, const UserSet& universe) {
  UserSet out;
  for (std::size_t k = 0; k < universe.size(); ++k) {
    if (mask >> k & 1U) out.push_back(universe[k]);
  }
  return out;
}

bool is_tie(double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::max(std::abs(a), std::abs(b))); }

}  // namespace

void check_budget(const OracleBudget& budget) {
  if (budget.max_users_rate == 0 || budget.max_n1_energy == 0 || budget.time_guard.count() <= 0) {
    throw ConfigError("oracle budget limits must be positive");
  }
  if (budget.max_users_rate > 30 || budget.max_n1_energy > 30) {
    throw ConfigError("oracle budget limits above 30 users are not supported");
  }
}

RateOracleResult brute_force_rate_max(const Instance& instance, const OracleBudget& budget) {
  check_budget(budget);
  const std::size_t K = instance.size();
  if (K == 0) throw DomainError("brute_force_rate_max: instance has no users");
  if (K > budget.max_users_rate) {
    throw BudgetExceeded("brute_force_rate_max: K = " + std::to_string(K) + " exceeds limit " +
                         std::to_string(budget.max_users_rate));
  }
  const Guard guard(budget.time_guard, "brute_force_rate_max");
  std::vector<double> served(K), load(K);
  for (UserId i = 0; i < K; ++i) {
    const UserProfile& u = instance.users[i];
    served[i] = u.weight * u.service_rate;
    load[i] = u.transfer_time_per_bit() * u.service_rate;
  }
  UserSet universe(K);
  for (UserId i = 0; i < K; ++i) universe[i] = i;

  RateOracleResult out;
  double num = 0.0;
  double den = 0.0;
  std::size_t count = 0;
  std::uint64_t mask = 0;
  double best = -1.0;
  UserSet best_set;
  const std::uint64_t total = std::uint64_t{1} << K;
  for (std::uint64_t step = 1; step < total; ++step) {
    const unsigned bit = static_cast<unsigned>(std::countr_zero(step));
    mask ^= std::uint64_t{1} << bit;
    const double sign = (mask >> bit & 1U) ? 1.0 : -1.0;
    num += sign * served[bit];
    den += sign * load[bit];
    count = static_cast<std::size_t>(std::popcount(mask));
    ++out.subsets_evaluated;
    if ((step & 0xff) == 0) guard.check();
    const double value = num / (vm_slowdown(instance.degradation, count) + den);
    if (value > best && !is_tie(value, best)) {
      best = value;
      best_set = from_mask(mask, universe);
    } else if (is_tie(value, best)) {
      UserSet candidate = from_mask(mask, universe);
      if (std::lexicographical_compare(candidate.begin(), candidate.end(), best_set.begin(), best_set.end())) {
        best = std::max(best, value);
        best_set = std::move(candidate);
      }
    }
  }
  const rate::ConditionalSolution winner = rate::conditional_solution(instance, best_set);
  out.schedule = winner.to_schedule(instance);
  out.winner_satisfies_necessary_condition = winner.satisfies_necessary_condition;
  return out;
}

EnergyOracleResult brute_force_energy(const Instance& instance, const OracleBudget& budget) {
  check_budget(budget);
  if (instance.size() == 0) throw DomainError("brute_force_energy: instance has no users");
  const energy::Partition p = energy::partition_users(instance);
  if (p.n1.size() > budget.max_n1_energy) {
    throw BudgetExceeded("brute_force_energy: |N1| = " + std::to_string(p.n1.size()) + " exceeds limit " +
                         std::to_string(budget.max_n1_energy));
  }
  const Guard guard(budget.time_guard, "brute_force_energy");
  std::vector<double> lower(instance.size(), 0.0);
  for (UserId i : p.m1) lower[i] = min_offload_bits(instance.users[i], instance.deadline);

  EnergyOracleResult out;
  bool found = false;
  energy::FixedSetResult best;
  UserSet best_s1;
  const std::uint64_t total = std::uint64_t{1} << p.n1.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    guard.check();
    const UserSet s1 = from_mask(mask, p.n1);
    UserSet free_users;
    std::set_union(p.m1.begin(), p.m1.end(), s1.begin(), s1.end(), std::back_inserter(free_users));
    energy::FixedSetResult r = energy::solve_fixed_set(instance, free_users, lower, p.m0, p.forced() + s1.size());
    ++out.subsets_evaluated;
    if (r.status != lp::Status::kOptimal) continue;
    ++out.subsets_feasible;
    const bool better = !found || (r.objective < best.objective && !is_tie(r.objective, best.objective));
    const bool tied_smaller = found && is_tie(r.objective, best.objective) &&
                              std::lexicographical_compare(s1.begin(), s1.end(), best_s1.begin(), best_s1.end());
    if (better || tied_smaller) {
      found = true;
      best = std::move(r);
      best_s1 = s1;
    }
  }
  if (!found) {
    out.schedule = energy::infeasible_energy_schedule(instance, energy::feasibility_tmin(instance).t_min);
    return out;
  }
  UserSet scheduled;
  const UserSet forced = [&] {
    UserSet f;
    std::set_union(p.m0.begin(), p.m0.end(), p.m1.begin(), p.m1.end(), std::back_inserter(f));
    return f;
  }();
  std::set_union(forced.begin(), forced.end(), best_s1.begin(), best_s1.end(), std::back_inserter(scheduled));
  out.best_s1 = best_s1;
  out.schedule = energy::make_energy_schedule(instance, std::move(scheduled), std::move(best.offload_bits),
                                              best.compute_time, EnergyStatus::kLpPath);
  return out;
}

}  // namespace mecsched::oracle
