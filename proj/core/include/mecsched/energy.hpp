#pragma once

// Sum-mobile-energy minimization.
//
// Users split into four classes by whether the deadline forces them to
// offload (L_i^min > 0) and whether offloading saves energy (theta_i < 0):
//   M0: forced, costly      -> offload exactly L_i^min
//   M1: forced, saving      -> offload as much as the budget allows
//   N0: optional, costly    -> compute locally
//   N1: optional, saving    -> offload all of L_i or nothing
// theta_i = 0 is treated as costly. The scheduler picks which N1 users get a
// VM (S1) by the three-branch rule on the total delay D(S1).

#include <cstddef>
#include <optional>
#include <vector>

#include "mecsched/lp.hpp"
#include "mecsched/model.hpp"

namespace mecsched::energy {

struct Partition {
  UserSet m0, m1, n0, n1;

  // |M0| + |M1|, the VMs every schedule occupies.
  std::size_t forced() const noexcept { return m0.size() + m1.size(); }
  bool operator==(const Partition&) const = default;
};

Partition partition_users(const Instance& instance);

// N(T): users with L_i^min(T) > 0.
std::size_t forced_count(const Instance& instance, double deadline);

// phi(T) = sum t_i L_i^min(T) + max_i L_i^min(T) (1+d)^(N(T)-1) / r_i - T.
// Decreasing in T; the problem is feasible at T iff phi(T) <= 0.
double feasibility_residual(const Instance& instance, double deadline);

struct FeasibilityResult {
  double t_min = 0.0;
  double residual = 0.0;  // phi(t_min), <= 0
  std::size_t forced = 0;  // N(t_min)
  std::vector<double> min_offload_bits;  // L_i^min(t_min)
  double bracket_lo = 0.0;  // phi(bracket_lo) > 0 unless t_min == 0
  double bracket_hi = 0.0;  // == t_min
  std::size_t iterations = 0;
};

inline constexpr std::size_t kBisectionIterationCap = 200;

// Bisects phi on [0, max_i c_i L_i / f_i]. Throws DomainError when K == 0.
FeasibilityResult feasibility_tmin(const Instance& instance);

// t_e(S1): smallest compute time that fits M1 and S1 at full L_i and M0 at
// L_i^min. Throws DomainError unless s1 is a subset of partition.n1.
double min_compute_time(const Instance& instance, const Partition& partition, const UserSet& s1);
// D(S1): air time of M0 (at L^min), M1 and S1 (at L) plus t_e(S1).
double total_delay(const Instance& instance, const Partition& partition, const UserSet& s1);

// Binary-offloading heuristic. Status tells which branch produced the schedule:
// optimal-path (T >= D(N1)), greedy-path (removals from N1), lp-path (M1 LP).
// Below t_min the status is infeasible and tmin is attached.
EnergySchedule solve_energy_suboptimal(const Instance& instance);

struct M1Allocation {
  lp::Status status = lp::Status::kInfeasible;
  std::vector<double> offload_bits;  // indexed by user id; M1 entries set
  double compute_time = 0.0;
};

// LP over {l_i}_{M1} and t_e with S1 empty and M0 pinned at L^min.
M1Allocation solve_lp_m1(const Instance& instance, const Partition& partition);

// Every user gets a VM; LP over all l_i in [L_i^min, L_i] and t_e.
EnergySchedule benchmark_energy_all_offloading(const Instance& instance);

// Building block shared with the oracle: with `vm_count` VMs active, users in
// `free_users` offload l_i in [lower_i, L_i] (lower indexed by user id) and
// users in `pinned` offload exactly L_i^min. Minimizes sum theta_i l_i over
// the free users.
struct FixedSetResult {
  lp::Status status = lp::Status::kInfeasible;
  std::vector<double> offload_bits;  // indexed by user id
  double compute_time = 0.0;
  double objective = 0.0;  // over free and pinned users
};

FixedSetResult solve_fixed_set(const Instance& instance, const UserSet& free_users,
                               const std::vector<double>& lower, const UserSet& pinned,
                               std::size_t vm_count);

// Fills objective and total energy from offload_bits.
EnergySchedule make_energy_schedule(const Instance& instance, UserSet scheduled, std::vector<double> offload_bits,
                                    double compute_time, EnergyStatus status);
EnergySchedule infeasible_energy_schedule(const Instance& instance, std::optional<double> tmin);

}  // namespace mecsched::energy
