#pragma once

// Sum-offloading-rate maximization.
//
// For a fixed offloading set S every scheduled user offloads at its VM cap
// and the compute phase takes
//     t_e = T s / (s + sum_{i in S} t_i r_i),   s = (1+d)^{|S|-1},
// giving the rate
//     R(S) = sum_{i in S} w_i r_i / (s + sum_{i in S} t_i r_i)
// with t_i = a_i + b_i gamma_i. The optimal set is found by a master search
// over |S| = m and, for each m, a Dinkelbach iteration whose inner problem
// is a top-m selection.

#include <cstddef>
#include <vector>

#include "mecsched/model.hpp"

namespace mecsched::rate {

struct ConditionalSolution {
  UserSet subset;
  double compute_time = 0.0;
  std::vector<double> offload_bits;  // indexed by user id
  double rate = 0.0;
  // R(S) <= min_{i in S} w_i / t_i
  bool satisfies_necessary_condition = false;

  RateSchedule to_schedule(const Instance& instance) const;
};

// Throws DomainError on an empty subset or unknown ids.
ConditionalSolution conditional_solution(const Instance& instance, const UserSet& subset);

// R(S) from the closed form, without materializing a schedule. 0 for S empty.
double subset_rate(const Instance& instance, const UserSet& subset);
// min_{i in S} w_i / t_i; +inf for S empty.
double min_tx_rate(const Instance& instance, const UserSet& subset);

struct DinkelbachStep {
  double rate = 0.0;  // R_m used to score users in this iteration
  UserSet selected;   // top-m users at that rate
  double g = 0.0;     // N(x) - D(x) R_m for the selection
};

struct DinkelbachTrace {
  std::vector<DinkelbachStep> steps;
  std::size_t iterations() const noexcept { return steps.size(); }
};

struct SlaveResult {
  UserSet selected;
  double rate = 0.0;  // N(x*) / D(x*) of the returned selection
  DinkelbachTrace trace;
  bool converged = false;
};

inline constexpr std::size_t kDinkelbachIterationCap = 100;

// Tolerance |g| <= 1e-9 (1 + |N(x*)|).
double dinkelbach_tolerance(double numerator);

// Users with the m largest scores; ties go to the lower id. Result sorted.
UserSet top_m(const std::vector<double>& scores, std::size_t m);

// Throws DomainError unless 1 <= m <= K.
SlaveResult dinkelbach_slave(const Instance& instance, std::size_t m);

struct MasterRow {
  std::size_t m = 0;
  double rate = 0.0;
  std::size_t iterations = 0;
  UserSet selected;
};

struct RateResult {
  RateSchedule schedule;
  std::vector<MasterRow> per_m;
  std::size_t best_m = 0;
};

// Runs the slave for every m in 1..K and keeps the best (ties to smaller m).
// Throws DomainError on an empty instance.
RateResult solve_rate_max(const Instance& instance);

// Candidate pair {floor, ceil} of 1/ln(1+d), each clamped to [1, K].
std::pair<std::size_t, std::size_t> homogeneous_m_candidates(double degradation, std::size_t K);
// Homogeneous-user rate m r / ((1+d)^(m-1) + m r t).
double homogeneous_rate(double degradation, std::size_t m, double service_rate, double transfer_time_per_bit);
// Better of the two candidates for users sharing (r, t); ties go to the smaller m.
// Throws DomainError when d <= 0 or K == 0.
std::size_t homogeneous_m_star(double degradation, std::size_t K, double service_rate,
                               double transfer_time_per_bit);

// Users share a + b gamma and have unit weight: schedule the longest prefix of
// users sorted by r descending with r_n >= d * (r_1 + ... + r_{n-1}).
RateSchedule homogeneous_txrate_schedule(const Instance& instance);

// d == 0 and unit weights: longest prefix by transmission rate satisfying the
// threshold 1/t_m >= sum r / (1 + sum t r).
RateSchedule no_interference_schedule(const Instance& instance);

// Benchmarks ----------------------------------------------------------------

RateSchedule benchmark_all_offloading(const Instance& instance);

// Adds users by descending w_i / t_i while the grown set keeps
// R(S) <= min tx rate; stops at the first violation.
RateSchedule benchmark_greedy(const Instance& instance);

struct LrOptions {
  std::size_t max_iterations = kDinkelbachIterationCap;
};

struct LrResult {
  RateSchedule schedule;
  std::vector<MasterRow> per_m;
};

// Dinkelbach with the selection step replaced by the LP relaxation
// max sum s_i x_i s.t. sum x_i = m, 0 <= x_i <= 1, solved by lp::solve and
// rounded by keeping the m largest components.
LrResult benchmark_lr(const Instance& instance, const LrOptions& options = {});

}  // namespace mecsched::rate
