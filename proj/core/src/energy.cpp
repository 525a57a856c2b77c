#include "mecsched/energy.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "mecsched/errors.hpp"

namespace mecsched::energy {

namespace {

UserSet set_union(const UserSet& a, const UserSet& b) {
  UserSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

double max_ratio(const Instance& instance, const UserSet& set, bool use_min_bits) {
  double out = 0.0;
  for (UserId i : set) {
    const UserProfile& u = instance.users[i];
    const double bits = use_min_bits ? min_offload_bits(u, instance.deadline) : u.task_bits;
    out = std::max(out, bits / u.service_rate);
  }
  return out;
}

}  // namespace

Partition partition_users(const Instance& instance) {
  Partition p;
  for (const UserProfile& u : instance.users) {
    const bool forced = min_offload_bits(u, instance.deadline) > 0.0;
    const bool saving = energy_theta(u) < 0.0;
    if (forced) {
      (saving ? p.m1 : p.m0).push_back(u.id);
    } else {
      (saving ? p.n1 : p.n0).push_back(u.id);
    }
  }
  return p;
}

std::size_t forced_count(const Instance& instance, double deadline) {
  std::size_t n = 0;
  for (const UserProfile& u : instance.users) n += min_offload_bits(u, deadline) > 0.0 ? 1 : 0;
  return n;
}

double feasibility_residual(const Instance& instance, double deadline) {
  double air = 0.0;
  double compute = 0.0;
  std::size_t n = 0;
  for (const UserProfile& u : instance.users) {
    const double lmin = min_offload_bits(u, deadline);
    if (lmin <= 0.0) continue;
    ++n;
    air += u.transfer_time_per_bit() * lmin;
    compute = std::max(compute, lmin / u.service_rate);
  }
  if (n == 0) return -deadline;
  return air + compute * vm_slowdown(instance.degradation, n) - deadline;
}

FeasibilityResult feasibility_tmin(const Instance& instance) {
  if (instance.size() == 0) throw DomainError("feasibility_tmin: instance has no users");
  double lo = 0.0;
  double hi = 0.0;
  for (const UserProfile& u : instance.users) hi = std::max(hi, u.task_bits / u.local_rate());

  FeasibilityResult out;
  if (feasibility_residual(instance, 0.0) > 0.0) {
    for (; out.iterations < kBisectionIterationCap; ++out.iterations) {
      if (hi - lo <= 1e-13 * hi) break;
      const double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) break;
      if (feasibility_residual(instance, mid) <= 0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  } else {
    hi = 0.0;
  }
  out.t_min = hi;
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.residual = feasibility_residual(instance, hi);
  out.forced = forced_count(instance, hi);
  for (const UserProfile& u : instance.users) out.min_offload_bits.push_back(min_offload_bits(u, hi));
  return out;
}

double min_compute_time(const Instance& instance, const Partition& partition, const UserSet& s1) {
  const UserSet chosen = normalize(s1);
  if (!std::includes(partition.n1.begin(), partition.n1.end(), chosen.begin(), chosen.end())) {
    throw DomainError("total_delay: S1 = {" + format_set(chosen, ',') + "} is not a subset of N1");
  }
  const std::size_t vms = partition.forced() + chosen.size();
  if (vms == 0) return 0.0;
  const double full = std::max(max_ratio(instance, chosen, false), max_ratio(instance, partition.m1, false));
  const double forced = max_ratio(instance, partition.m0, true);
  return std::max(full, forced) * vm_slowdown(instance.degradation, vms);
}

double total_delay(const Instance& instance, const Partition& partition, const UserSet& s1) {
  const double t_e = min_compute_time(instance, partition, s1);
  double air = 0.0;
  for (UserId i : set_union(normalize(s1), partition.m1)) {
    air += instance.users[i].task_bits * instance.users[i].transfer_time_per_bit();
  }
  for (UserId i : partition.m0) {
    const UserProfile& u = instance.users[i];
    air += min_offload_bits(u, instance.deadline) * u.transfer_time_per_bit();
  }
  return air + t_e;
}

EnergySchedule make_energy_schedule(const Instance& instance, UserSet scheduled, std::vector<double> offload_bits,
                                    double compute_time, EnergyStatus status) {
  EnergySchedule s;
  s.scheduled = std::move(scheduled);
  s.offload_bits = std::move(offload_bits);
  s.compute_time = compute_time;
  s.status = status;
  for (UserId i = 0; i < instance.size(); ++i) s.objective += energy_theta(instance.users[i]) * s.offload_bits[i];
  s.total_energy = s.objective + local_energy_baseline(instance);
  return s;
}

EnergySchedule infeasible_energy_schedule(const Instance& instance, std::optional<double> tmin) {
  EnergySchedule s;
  s.offload_bits.assign(instance.size(), 0.0);
  s.status = EnergyStatus::kInfeasible;
  s.total_energy = local_energy_baseline(instance);
  s.tmin = tmin;
  return s;
}

FixedSetResult solve_fixed_set(const Instance& instance, const UserSet& free_users,
                               const std::vector<double>& lower, const UserSet& pinned,
                               std::size_t vm_count) {
  FixedSetResult out;
  out.offload_bits.assign(instance.size(), 0.0);
  const double T = instance.deadline;
  const double slowdown = vm_slowdown(instance.degradation, std::max<std::size_t>(vm_count, 1));

  double budget = T;
  double te_floor = 0.0;
  for (UserId i : pinned) {
    const UserProfile& u = instance.users[i];
    const double bits = min_offload_bits(u, T);
    out.offload_bits[i] = bits;
    out.objective += energy_theta(u) * bits;
    budget -= u.transfer_time_per_bit() * bits;
    te_floor = std::max(te_floor, bits * slowdown / u.service_rate);
  }
  if (free_users.empty() && pinned.empty()) {
    out.status = lp::Status::kOptimal;
    return out;
  }

  // Variables y_i = l_i / L_i and tau = t_e / T keep every coefficient O(1).
  const std::size_t n = free_users.size();
  lp::Problem problem(n + 1);
  std::vector<double> budget_row(n + 1, 0.0);
  budget_row[n] = 1.0;
  std::vector<double> scale(n);
  for (std::size_t k = 0; k < n; ++k) {
    const UserProfile& u = instance.users[free_users[k]];
    scale[k] = u.task_bits > 0.0 ? u.task_bits : 1.0;
    problem.objective[k] = energy_theta(u) * scale[k];
    problem.set_bound(k, lower[u.id] / scale[k], u.task_bits / scale[k]);
    budget_row[k] = u.transfer_time_per_bit() * scale[k] / T;
    std::vector<double> coupling(n + 1, 0.0);
    coupling[k] = 1.0;
    coupling[n] = -T * u.service_rate / (slowdown * scale[k]);
    problem.add(std::move(coupling), lp::Relation::kLessEqual, 0.0);
  }
  problem.set_bound(n, te_floor / T, lp::kInfinity);
  problem.add(std::move(budget_row), lp::Relation::kLessEqual, budget / T);

  const lp::Solution solution = lp::solve(problem);
  out.status = solution.status;
  if (solution.status != lp::Status::kOptimal) {
    out.objective = 0.0;
    return out;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const UserProfile& u = instance.users[free_users[k]];
    const double bits = std::clamp(solution.x[k] * scale[k], lower[u.id], u.task_bits);
    out.offload_bits[u.id] = bits;
    out.objective += energy_theta(u) * bits;
  }
  out.compute_time = solution.x[n] * T;
  return out;
}

M1Allocation solve_lp_m1(const Instance& instance, const Partition& partition) {
  std::vector<double> lower(instance.size(), 0.0);
  for (UserId i : partition.m1) lower[i] = min_offload_bits(instance.users[i], instance.deadline);
  const FixedSetResult r = solve_fixed_set(instance, partition.m1, lower, partition.m0, partition.forced());
  M1Allocation out;
  out.status = r.status;
  out.offload_bits.assign(instance.size(), 0.0);
  if (r.status != lp::Status::kOptimal) return out;
  for (UserId i : partition.m1) out.offload_bits[i] = r.offload_bits[i];
  out.compute_time = r.compute_time;
  return out;
}

EnergySchedule solve_energy_suboptimal(const Instance& instance) {
  if (instance.size() == 0) throw DomainError("solve_energy_suboptimal: instance has no users");
  if (feasibility_residual(instance, instance.deadline) > 0.0) {
    return infeasible_energy_schedule(instance, feasibility_tmin(instance).t_min);
  }
  const double T = instance.deadline;
  const Partition p = partition_users(instance);
  const UserSet forced = set_union(p.m0, p.m1);

  const auto binary_schedule = [&](const UserSet& s1, EnergyStatus status) {
    std::vector<double> bits(instance.size(), 0.0);
    for (UserId i : p.m0) bits[i] = min_offload_bits(instance.users[i], T);
    for (UserId i : set_union(p.m1, s1)) bits[i] = instance.users[i].task_bits;
    return make_energy_schedule(instance, set_union(forced, s1), std::move(bits),
                                min_compute_time(instance, p, s1), status);
  };

  if (T >= total_delay(instance, p, p.n1)) return binary_schedule(p.n1, EnergyStatus::kOptimalPath);

  if (T >= total_delay(instance, p, {})) {
    UserSet s1 = p.n1;
    while (total_delay(instance, p, s1) > T) {
      // Drop the user with the least energy saved per second of air time.
      auto worst = s1.begin();
      double worst_key = 0.0;
      for (auto it = s1.begin(); it != s1.end(); ++it) {
        const UserProfile& u = instance.users[*it];
        const double key = -energy_theta(u) / u.transfer_time_per_bit();
        if (it == s1.begin() || key < worst_key) {
          worst = it;
          worst_key = key;
        }
      }
      s1.erase(worst);
    }
    return binary_schedule(s1, EnergyStatus::kGreedyPath);
  }

  const M1Allocation m1 = solve_lp_m1(instance, p);
  if (m1.status != lp::Status::kOptimal) return infeasible_energy_schedule(instance, feasibility_tmin(instance).t_min);
  std::vector<double> bits = m1.offload_bits;
  for (UserId i : p.m0) bits[i] = min_offload_bits(instance.users[i], T);
  return make_energy_schedule(instance, forced, std::move(bits), m1.compute_time, EnergyStatus::kLpPath);
}

EnergySchedule benchmark_energy_all_offloading(const Instance& instance) {
  if (instance.size() == 0) throw DomainError("benchmark_energy_all_offloading: instance has no users");
  UserSet everyone(instance.size());
  std::vector<double> lower(instance.size());
  for (UserId i = 0; i < instance.size(); ++i) {
    everyone[i] = i;
    lower[i] = min_offload_bits(instance.users[i], instance.deadline);
  }
  const FixedSetResult r = solve_fixed_set(instance, everyone, lower, {}, instance.size());
  if (r.status != lp::Status::kOptimal) return infeasible_energy_schedule(instance, std::nullopt);
  return make_energy_schedule(instance, std::move(everyone), r.offload_bits, r.compute_time, EnergyStatus::kLpPath);
}

}  // namespace mecsched::energy
