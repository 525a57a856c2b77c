#include "mecsched/rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mecsched/errors.hpp"
#include "mecsched/lp.hpp"

namespace mecsched::rate {

namespace {

void require_users(const Instance& instance, const char* who) {
  if (instance.size() == 0) throw DomainError(std::string(who) + ": instance has no users");
}

void require_unit_weights(const Instance& instance, const char* who) {
  for (const UserProfile& u : instance.users) {
    if (std::abs(u.weight - 1.0) > 1e-12) {
      throw DomainError(std::string(who) + ": requires unit weights (user " + std::to_string(u.id) + ")");
    }
  }
}

UserSet all_users(const Instance& instance) {
  UserSet out(instance.size());
  std::iota(out.begin(), out.end(), UserId{0});
  return out;
}

struct Sums {
  double numerator = 0.0;  // sum w r
  double load = 0.0;       // sum t r
};

Sums sums_over(const Instance& instance, const UserSet& set) {
  Sums s;
  for (UserId i : set) {
    const UserProfile& u = instance.users[i];
    s.numerator += u.weight * u.service_rate;
    s.load += u.transfer_time_per_bit() * u.service_rate;
  }
  return s;
}

// Ids sorted by key descending; equal keys keep ascending id order.
std::vector<UserId> order_descending(const std::vector<double>& key) {
  std::vector<UserId> ids(key.size());
  std::iota(ids.begin(), ids.end(), UserId{0});
  std::stable_sort(ids.begin(), ids.end(), [&](UserId x, UserId y) { return key[x] > key[y]; });
  return ids;
}

bool is_tie(double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::max(std::abs(a), std::abs(b))); }

}  // namespace

RateSchedule ConditionalSolution::to_schedule(const Instance& instance) const {
  RateSchedule s;
  s.scheduled = subset;
  s.offload_bits = offload_bits;
  s.compute_time = compute_time;
  double weighted = 0.0;
  for (UserId i : subset) weighted += instance.users[i].weight * offload_bits[i];
  s.sum_rate = weighted / instance.deadline;
  return s;
}

double subset_rate(const Instance& instance, const UserSet& subset) {
  if (subset.empty()) return 0.0;
  const Sums s = sums_over(instance, subset);
  return s.numerator / (vm_slowdown(instance.degradation, subset.size()) + s.load);
}

double min_tx_rate(const Instance& instance, const UserSet& subset) {
  double out = std::numeric_limits<double>::infinity();
  for (UserId i : subset) {
    const UserProfile& u = instance.users[i];
    out = std::min(out, u.weight / u.transfer_time_per_bit());
  }
  return out;
}

ConditionalSolution conditional_solution(const Instance& instance, const UserSet& subset) {
  if (subset.empty()) throw DomainError("conditional_solution: subset must be nonempty");
  ConditionalSolution out;
  out.subset = normalize(subset);
  for (UserId i : out.subset) instance.user(i);
  const double slowdown = vm_slowdown(instance.degradation, out.subset.size());
  const Sums s = sums_over(instance, out.subset);
  const double denominator = slowdown + s.load;
  out.compute_time = instance.deadline * slowdown / denominator;
  out.offload_bits.assign(instance.size(), 0.0);
  for (UserId i : out.subset) out.offload_bits[i] = out.compute_time * instance.users[i].service_rate / slowdown;
  out.rate = s.numerator / denominator;
  out.satisfies_necessary_condition = out.rate <= min_tx_rate(instance, out.subset) * (1.0 + 1e-12);
  return out;
}

double dinkelbach_tolerance(double numerator) { return 1e-9 * (1.0 + std::abs(numerator)); }

UserSet top_m(const std::vector<double>& scores, std::size_t m) {
  std::vector<UserId> ids = order_descending(scores);
  ids.resize(std::min(m, ids.size()));
  std::sort(ids.begin(), ids.end());
  return ids;
}

SlaveResult dinkelbach_slave(const Instance& instance, std::size_t m) {
  const std::size_t K = instance.size();
  if (m < 1 || m > K) {
    throw DomainError("dinkelbach_slave: m = " + std::to_string(m) + " outside [1, " + std::to_string(K) + "]");
  }
  const double slowdown = vm_slowdown(instance.degradation, m);
  std::vector<double> scores(K);
  SlaveResult out;
  double current = 0.0;
  for (std::size_t iter = 0; iter < kDinkelbachIterationCap; ++iter) {
    for (UserId i = 0; i < K; ++i) {
      const UserProfile& u = instance.users[i];
      scores[i] = u.service_rate * (u.weight - current * u.transfer_time_per_bit());
    }
    UserSet selected = top_m(scores, m);
    const Sums s = sums_over(instance, selected);
    const double denominator = slowdown + s.load;
    const double g = s.numerator - denominator * current;
    out.trace.steps.push_back(DinkelbachStep{current, selected, g});
    out.selected = std::move(selected);
    out.rate = s.numerator / denominator;
    if (std::abs(g) <= dinkelbach_tolerance(s.numerator)) {
      out.converged = true;
      break;
    }
    current = out.rate;
  }
  return out;
}

RateResult solve_rate_max(const Instance& instance) {
  require_users(instance, "solve_rate_max");
  RateResult out;
  double best = -1.0;
  UserSet best_set;
  for (std::size_t m = 1; m <= instance.size(); ++m) {
    SlaveResult slave = dinkelbach_slave(instance, m);
    out.per_m.push_back(MasterRow{m, slave.rate, slave.trace.iterations(), slave.selected});
    if (slave.rate > best && !is_tie(slave.rate, best)) {
      best = slave.rate;
      best_set = slave.selected;
      out.best_m = m;
    }
  }
  out.schedule = conditional_solution(instance, best_set).to_schedule(instance);
  return out;
}

std::pair<std::size_t, std::size_t> homogeneous_m_candidates(double degradation, std::size_t K) {
  if (!(degradation > 0.0)) throw DomainError("homogeneous_m_star: requires d > 0");
  if (K == 0) throw DomainError("homogeneous_m_star: requires K >= 1");
  const double stationary = 1.0 / std::log1p(degradation);
  const auto clamp = [K](double x) {
    return static_cast<std::size_t>(std::clamp(x, 1.0, static_cast<double>(K)));
  };
  return {clamp(std::floor(stationary)), clamp(std::ceil(stationary))};
}

double homogeneous_rate(double degradation, std::size_t m, double service_rate, double transfer_time_per_bit) {
  const double total = static_cast<double>(m) * service_rate;
  return total / (vm_slowdown(degradation, m) + total * transfer_time_per_bit);
}

std::size_t homogeneous_m_star(double degradation, std::size_t K, double service_rate,
                               double transfer_time_per_bit) {
  const auto [lo, hi] = homogeneous_m_candidates(degradation, K);
  const double r_lo = homogeneous_rate(degradation, lo, service_rate, transfer_time_per_bit);
  const double r_hi = homogeneous_rate(degradation, hi, service_rate, transfer_time_per_bit);
  return (r_hi > r_lo && !is_tie(r_hi, r_lo)) ? hi : lo;
}

RateSchedule homogeneous_txrate_schedule(const Instance& instance) {
  require_users(instance, "homogeneous_txrate_schedule");
  require_unit_weights(instance, "homogeneous_txrate_schedule");
  const double t0 = instance.users.front().transfer_time_per_bit();
  for (const UserProfile& u : instance.users) {
    if (std::abs(u.transfer_time_per_bit() - t0) > 1e-9 * t0) {
      throw DomainError("homogeneous_txrate_schedule: transmission rates differ (user " + std::to_string(u.id) + ")");
    }
  }
  std::vector<double> service(instance.size());
  for (const UserProfile& u : instance.users) service[u.id] = u.service_rate;
  UserSet chosen;
  double prefix = 0.0;
  for (UserId i : order_descending(service)) {
    if (service[i] < instance.degradation * prefix) break;
    chosen.push_back(i);
    prefix += service[i];
  }
  return conditional_solution(instance, chosen).to_schedule(instance);
}

RateSchedule no_interference_schedule(const Instance& instance) {
  require_users(instance, "no_interference_schedule");
  if (instance.degradation != 0.0) throw DomainError("no_interference_schedule: requires d == 0");
  require_unit_weights(instance, "no_interference_schedule");
  std::vector<double> tx(instance.size());
  for (const UserProfile& u : instance.users) tx[u.id] = 1.0 / u.transfer_time_per_bit();
  const std::vector<UserId> order = order_descending(tx);
  double served = 0.0;
  double load = 0.0;
  std::size_t threshold = 1;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const UserProfile& u = instance.users[order[k]];
    served += u.service_rate;
    load += u.transfer_time_per_bit() * u.service_rate;
    if (tx[order[k]] >= served / (1.0 + load)) threshold = k + 1;
  }
  return conditional_solution(instance, UserSet(order.begin(), order.begin() + threshold)).to_schedule(instance);
}

RateSchedule benchmark_all_offloading(const Instance& instance) {
  require_users(instance, "benchmark_all_offloading");
  return conditional_solution(instance, all_users(instance)).to_schedule(instance);
}

RateSchedule benchmark_greedy(const Instance& instance) {
  require_users(instance, "benchmark_greedy");
  std::vector<double> tx(instance.size());
  for (const UserProfile& u : instance.users) tx[u.id] = u.weight / u.transfer_time_per_bit();
  UserSet chosen;
  for (UserId i : order_descending(tx)) {
    UserSet candidate = chosen;
    candidate.push_back(i);
    candidate = normalize(std::move(candidate));
    if (subset_rate(instance, candidate) > min_tx_rate(instance, candidate) * (1.0 + 1e-12)) break;
    chosen = std::move(candidate);
  }
  return conditional_solution(instance, chosen).to_schedule(instance);
}

LrResult benchmark_lr(const Instance& instance, const LrOptions& options) {
  require_users(instance, "benchmark_lr");
  const std::size_t K = instance.size();
  LrResult out;
  double best = -1.0;
  UserSet best_set;
  std::vector<double> scores(K);
  for (std::size_t m = 1; m <= K; ++m) {
    const double slowdown = vm_slowdown(instance.degradation, m);
    double current = 0.0;
    UserSet selected;
    double achieved = 0.0;
    std::size_t iterations = 0;
    for (; iterations < options.max_iterations;) {
      ++iterations;
      for (UserId i = 0; i < K; ++i) {
        const UserProfile& u = instance.users[i];
        scores[i] = u.service_rate * (u.weight - current * u.transfer_time_per_bit());
      }
      lp::Problem relaxed(K);
      for (UserId i = 0; i < K; ++i) {
        relaxed.objective[i] = -scores[i];
        relaxed.set_bound(i, 0.0, 1.0);
      }
      relaxed.add(std::vector<double>(K, 1.0), lp::Relation::kEqual, static_cast<double>(m));
      const lp::Solution relaxed_opt = lp::solve(relaxed);
      UserSet rounded = relaxed_opt.status == lp::Status::kOptimal ? top_m(relaxed_opt.x, m) : top_m(scores, m);
      const Sums s = sums_over(instance, rounded);
      const double denominator = slowdown + s.load;
      const double ratio = s.numerator / denominator;
      const double g = s.numerator - denominator * current;
      if (ratio > achieved || selected.empty()) {
        achieved = ratio;
        selected = rounded;
      }
      if (std::abs(g) <= dinkelbach_tolerance(s.numerator) || ratio <= current) break;
      current = ratio;
    }
    out.per_m.push_back(MasterRow{m, achieved, iterations, selected});
    if (achieved > best && !is_tie(achieved, best)) {
      best = achieved;
      best_set = selected;
    }
  }
  out.schedule = conditional_solution(instance, best_set).to_schedule(instance);
  return out;
}

}  // namespace mecsched::rate
