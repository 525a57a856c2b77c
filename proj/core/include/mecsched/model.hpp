#pragma once

// Domain types for multiuser edge-computing offloading with VM I/O
// interference, derived per-user quantities and the schedule checkers that
// every solver output is run through.
//
// Units are SI throughout: bits, seconds, joules, watts. Conversions (Mbps,
// KB, ms) happen only in the generator and at the CLI boundary.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mecsched {

using UserId = std::size_t;
using UserSet = std::vector<UserId>;  // sorted ascending, no duplicates

// Absolute tolerance on time constraints (seconds).
inline constexpr double kTimeTolerance = 1e-9;
// Relative tolerance on bit bounds.
inline constexpr double kBitsRelTolerance = 1e-9;

struct UserProfile {
  UserId id = 0;
  double weight = 1.0;                 // omega_i, priority
  double uplink_time_per_bit = 0.0;    // a_i [s/bit]
  double downlink_time_per_bit = 0.0;  // b_i [s/bit]
  double output_ratio = 0.0;           // gamma_i, result bits per input bit
  double service_rate = 0.0;           // r_i [bit/s], VM running alone
  double task_bits = 0.0;              // L_i [bit]
  double cycles_per_bit = 0.0;         // c_i
  double cpu_freq = 0.0;               // f_i [cycle/s]
  double energy_coeff = 0.0;           // kappa_i
  double tx_power = 0.0;               // p_i [W]

  // Round-trip air time of one offloaded input bit and its results.
  double transfer_time_per_bit() const noexcept {
    return uplink_time_per_bit + downlink_time_per_bit * output_ratio;
  }
  // Bits per second the device can finish locally.
  double local_rate() const noexcept { return cpu_freq / cycles_per_bit; }

  bool operator==(const UserProfile&) const = default;
};

struct Instance {
  double deadline = 0.0;     // T [s]
  double degradation = 0.0;  // d, per-extra-VM slowdown
  std::vector<UserProfile> users;

  std::size_t size() const noexcept { return users.size(); }
  const UserProfile& user(UserId id) const;

  // Copy with a different deadline; everything else untouched.
  Instance with_deadline(double deadline_s) const;
  Instance with_degradation(double d) const;

  bool operator==(const Instance&) const = default;
};

// Throws ValidationError when any UserProfile/Instance invariant fails.
void check_instance(const Instance& instance);

// (1+d)^(n-1): how much slower each of n co-hosted VMs runs.
inline double vm_slowdown(double degradation, std::size_t vm_count) {
  return std::pow(1.0 + degradation, static_cast<double>(vm_count) - 1.0);
}

struct DerivedUser {
  double theta = 0.0;             // J/bit; negative means offloading saves energy
  double min_offload_bits = 0.0;  // L_i^min at the instance deadline
  double tx_rate = 0.0;           // omega_i / (a_i + b_i gamma_i)
  double tx_rate_unweighted = 0.0;
};

DerivedUser derive_user(const Instance& instance, UserId id);

// [L - T f / c]^+ as a function of the deadline.
double min_offload_bits(const UserProfile& user, double deadline);
double energy_theta(const UserProfile& user);
// e0 = sum_i omega_i kappa_i c_i L_i f_i^2, the all-local energy.
double local_energy_baseline(const Instance& instance);

struct RateSchedule {
  UserSet scheduled;
  std::vector<double> offload_bits;  // indexed by user id, zero if unscheduled
  double compute_time = 0.0;
  double sum_rate = 0.0;  // (1/T) sum omega_i l_i
};

enum class EnergyStatus { kOptimalPath, kGreedyPath, kLpPath, kInfeasible };

std::string to_string(EnergyStatus status);
EnergyStatus energy_status_from_string(const std::string& text);

struct EnergySchedule {
  UserSet scheduled;
  std::vector<double> offload_bits;
  double compute_time = 0.0;
  double objective = 0.0;     // sum_i theta_i l_i
  double total_energy = 0.0;  // objective + e0
  EnergyStatus status = EnergyStatus::kInfeasible;
  std::optional<double> tmin;  // attached when infeasible
};

struct ConstraintCheck {
  std::string name;
  double residual = 0.0;  // amount of violation, 0 when satisfied
  bool passed = true;
};

struct ValidationReport {
  std::vector<ConstraintCheck> checks;
  double recomputed_value = 0.0;  // sum rate or objective, from offload_bits

  bool valid() const noexcept;
  std::vector<ConstraintCheck> failures() const;
  std::string to_text() const;
  std::string to_json() const;
  std::string to_csv() const;
};

ValidationReport validate_rate_schedule(const Instance& instance, const RateSchedule& schedule);
ValidationReport validate_energy_schedule(const Instance& instance, const EnergySchedule& schedule);

// For positive x1, y1, x2, y2 the mediant (x1+x2)/(y1+y2)
// lies between x1/y1 and x2/y2.
inline double mediant(double x1, double y1, double x2, double y2) { return (x1 + x2) / (y1 + y2); }
bool mediant_within_bounds(double x1, double y1, double x2, double y2);

// Sorted, de-duplicated copy.
UserSet normalize(UserSet set);
std::string format_set(const UserSet& set, char separator = ' ');

}  // namespace mecsched
