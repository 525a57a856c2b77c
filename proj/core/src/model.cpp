#include "mecsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "mecsched/errors.hpp"
#include "mecsched/format.hpp"

namespace mecsched {

const UserProfile& Instance::user(UserId id) const {
  if (id >= users.size()) {
    throw LookupError("user id " + std::to_string(id) + " not in instance of " +
                      std::to_string(users.size()) + " users");
  }
  return users[id];
}

Instance Instance::with_deadline(double deadline_s) const {
  Instance copy = *this;
  copy.deadline = deadline_s;
  return copy;
}

Instance Instance::with_degradation(double d) const {
  Instance copy = *this;
  copy.degradation = d;
  return copy;
}

namespace {

void require_positive(double value, const std::string& field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(field + " must be finite and > 0 (got " + format_double(value) + ")");
  }
}

}  // namespace

void check_instance(const Instance& instance) {
  require_positive(instance.deadline, "deadline_s");
  if (!(instance.degradation >= 0.0) || !std::isfinite(instance.degradation)) {
    throw ValidationError("degradation must be finite and >= 0 (got " +
                          format_double(instance.degradation) + ")");
  }
  for (std::size_t i = 0; i < instance.users.size(); ++i) {
    const UserProfile& u = instance.users[i];
    const std::string prefix = "users[" + std::to_string(i) + "].";
    if (u.id != i) {
      throw ValidationError(prefix + "id must equal its position " + std::to_string(i) +
                            " (got " + std::to_string(u.id) + ")");
    }
    require_positive(u.weight, prefix + "weight");
    require_positive(u.uplink_time_per_bit, prefix + "uplink_time_per_bit");
    require_positive(u.downlink_time_per_bit, prefix + "downlink_time_per_bit");
    require_positive(u.output_ratio, prefix + "output_ratio");
    require_positive(u.service_rate, prefix + "service_rate");
    require_positive(u.cycles_per_bit, prefix + "cycles_per_bit");
    require_positive(u.cpu_freq, prefix + "cpu_freq");
    require_positive(u.energy_coeff, prefix + "energy_coeff");
    require_positive(u.tx_power, prefix + "tx_power");
    if (!(u.task_bits >= 0.0) || !std::isfinite(u.task_bits)) {
      throw ValidationError(prefix + "task_bits must be finite and >= 0 (got " +
                            format_double(u.task_bits) + ")");
    }
    require_positive(1.0 / u.transfer_time_per_bit(), prefix + "transmission rate");
  }
}

double min_offload_bits(const UserProfile& user, double deadline) {
  return std::max(user.task_bits - deadline * user.cpu_freq / user.cycles_per_bit, 0.0);
}

double energy_theta(const UserProfile& u) {
  return u.weight * (u.uplink_time_per_bit * u.tx_power -
                     u.energy_coeff * u.cycles_per_bit * u.cpu_freq * u.cpu_freq);
}

double local_energy_baseline(const Instance& instance) {
  double e0 = 0.0;
  for (const UserProfile& u : instance.users) {
    e0 += u.weight * u.energy_coeff * u.cycles_per_bit * u.task_bits * u.cpu_freq * u.cpu_freq;
  }
  return e0;
}

DerivedUser derive_user(const Instance& instance, UserId id) {
  const UserProfile& u = instance.user(id);
  DerivedUser out;
  out.theta = energy_theta(u);
  out.min_offload_bits = min_offload_bits(u, instance.deadline);
  out.tx_rate_unweighted = 1.0 / u.transfer_time_per_bit();
  out.tx_rate = u.weight * out.tx_rate_unweighted;
  return out;
}

std::string to_string(EnergyStatus status) {
  switch (status) {
    case EnergyStatus::kOptimalPath: return "optimal-path";
    case EnergyStatus::kGreedyPath: return "greedy-path";
    case EnergyStatus::kLpPath: return "lp-path";
    case EnergyStatus::kInfeasible: return "infeasible";
  }
  return "infeasible";
}

EnergyStatus energy_status_from_string(const std::string& text) {
  for (EnergyStatus s : {EnergyStatus::kOptimalPath, EnergyStatus::kGreedyPath,
                         EnergyStatus::kLpPath, EnergyStatus::kInfeasible}) {
    if (to_string(s) == text) return s;
  }
  throw ParseError("unknown energy status '" + text + "'");
}

UserSet normalize(UserSet set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

std::string format_set(const UserSet& set, char separator) {
  std::string out;
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (k) out += separator;
    out += std::to_string(set[k]);
  }
  return out;
}

bool mediant_within_bounds(double x1, double y1, double x2, double y2) {
  const double a = x1 / y1;
  const double b = x2 / y2;
  const double m = mediant(x1, y1, x2, y2);
  const double slack = 4 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
  return std::min(a, b) - slack <= m && m <= std::max(a, b) + slack;
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::valid() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const ConstraintCheck& c) { return c.passed; });
}

std::vector<ConstraintCheck> ValidationReport::failures() const {
  std::vector<ConstraintCheck> out;
  std::copy_if(checks.begin(), checks.end(), std::back_inserter(out),
               [](const ConstraintCheck& c) { return !c.passed; });
  return out;
}

std::string ValidationReport::to_text() const {
  std::ostringstream os;
  os << (valid() ? "VALID" : "INVALID") << " (recomputed " << format_double(recomputed_value)
     << ")\n";
  for (const ConstraintCheck& c : checks) {
    os << "  " << (c.passed ? "pass" : "FAIL") << "  " << c.name
       << "  residual=" << format_double(c.residual) << '\n';
  }
  return os.str();
}

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["valid"] = valid();
  doc["recomputed"] = recomputed_value;
  doc["checks"] = nlohmann::ordered_json::array();
  for (const ConstraintCheck& c : checks) {
    doc["checks"].push_back({{"constraint", c.name}, {"residual", c.residual}, {"passed", c.passed}});
  }
  return doc.dump(2);
}

std::string ValidationReport::to_csv() const {
  std::ostringstream os;
  os << "constraint,residual,passed\n";
  for (const ConstraintCheck& c : checks) {
    os << c.name << ',' << format_double(c.residual) << ',' << (c.passed ? "true" : "false") << '\n';
  }
  return os.str();
}

namespace {

// Shared by both checkers: size, id and membership bookkeeping.
struct ScheduleView {
  std::vector<bool> in_set;
  std::size_t scheduled_count = 0;
};

ScheduleView check_structure(const Instance& instance, const UserSet& scheduled,
                             const std::vector<double>& offload_bits, ValidationReport& report) {
  const std::size_t K = instance.size();
  ScheduleView view{std::vector<bool>(K, false), 0};
  report.checks.push_back({"offload_bits_size",
                           std::abs(static_cast<double>(offload_bits.size()) - static_cast<double>(K)),
                           offload_bits.size() == K});
  for (UserId id : scheduled) {
    if (id >= K) {
      report.checks.push_back({"unknown_user[" + std::to_string(id) + "]", 1.0, false});
      continue;
    }
    if (view.in_set[id]) {
      report.checks.push_back({"duplicate_user[" + std::to_string(id) + "]", 1.0, false});
      continue;
    }
    view.in_set[id] = true;
    ++view.scheduled_count;
  }
  return view;
}

double bits_at(const std::vector<double>& offload_bits, UserId id) {
  return id < offload_bits.size() ? offload_bits[id] : 0.0;
}

bool within_bits(double residual, double scale) {
  return residual <= kBitsRelTolerance * std::max(scale, 1.0);
}

}  // namespace

ValidationReport validate_rate_schedule(const Instance& instance, const RateSchedule& schedule) {
  ValidationReport report;
  const ScheduleView view = check_structure(instance, schedule.scheduled, schedule.offload_bits, report);
  const double t_e = schedule.compute_time;
  report.checks.push_back({"compute_time_nonnegative", std::max(0.0, -t_e), t_e >= 0.0});

  const double slowdown = vm_slowdown(instance.degradation, std::max<std::size_t>(view.scheduled_count, 1));
  double latency = t_e;
  double weighted_bits = 0.0;
  for (UserId i = 0; i < instance.size(); ++i) {
    const UserProfile& u = instance.users[i];
    const double bits = bits_at(schedule.offload_bits, i);
    weighted_bits += u.weight * bits;
    const std::string tag = "[" + std::to_string(i) + "]";
    if (view.in_set[i]) {
      latency += bits * u.transfer_time_per_bit();
      const double upper = t_e * u.service_rate / slowdown;
      const double over = std::max(0.0, bits - upper);
      report.checks.push_back({"offload_upper" + tag, over, within_bits(over, std::max(upper, bits))});
      const double under = std::max(0.0, -bits);
      report.checks.push_back({"offload_nonnegative" + tag, under, within_bits(under, upper)});
    } else {
      const double stray = std::abs(bits);
      report.checks.push_back({"unscheduled_zero" + tag, stray, stray <= kBitsRelTolerance});
    }
  }
  const double over_time = std::max(0.0, latency - instance.deadline);
  report.checks.push_back({"latency", over_time, over_time <= kTimeTolerance});

  report.recomputed_value = weighted_bits / instance.deadline;
  const double mismatch = std::abs(schedule.sum_rate - report.recomputed_value);
  const double scale = std::max(std::abs(schedule.sum_rate), std::abs(report.recomputed_value));
  report.checks.push_back({"sum_rate", mismatch, mismatch <= 1e-9 * scale});
  return report;
}

ValidationReport validate_energy_schedule(const Instance& instance, const EnergySchedule& schedule) {
  ValidationReport report;
  if (schedule.status == EnergyStatus::kInfeasible) {
    report.checks.push_back({"status", 0.0, false});
    return report;
  }
  const ScheduleView view = check_structure(instance, schedule.scheduled, schedule.offload_bits, report);
  const double t_e = schedule.compute_time;
  report.checks.push_back({"compute_time_nonnegative", std::max(0.0, -t_e), t_e >= 0.0});

  const double slowdown = vm_slowdown(instance.degradation, std::max<std::size_t>(view.scheduled_count, 1));
  double latency = t_e;
  double objective = 0.0;
  for (UserId i = 0; i < instance.size(); ++i) {
    const UserProfile& u = instance.users[i];
    const double bits = bits_at(schedule.offload_bits, i);
    const double lower = min_offload_bits(u, instance.deadline);
    objective += energy_theta(u) * bits;
    const std::string tag = "[" + std::to_string(i) + "]";
    if (view.in_set[i]) {
      latency += bits * u.transfer_time_per_bit();
      const double under = std::max(0.0, lower - bits);
      report.checks.push_back({"offload_lower" + tag, under, within_bits(under, u.task_bits)});
      const double over_task = std::max(0.0, bits - u.task_bits);
      report.checks.push_back({"offload_task" + tag, over_task, within_bits(over_task, u.task_bits)});
      const double vm_cap = t_e * u.service_rate / slowdown;
      const double over_vm = std::max(0.0, bits - vm_cap);
      report.checks.push_back({"offload_vm" + tag, over_vm, within_bits(over_vm, std::max(vm_cap, bits))});
    } else {
      const double stray = std::abs(bits) + lower;
      report.checks.push_back({"unscheduled_local" + tag, stray, stray <= kBitsRelTolerance});
    }
  }
  const double over_time = std::max(0.0, latency - instance.deadline);
  report.checks.push_back({"latency", over_time, over_time <= kTimeTolerance});

  report.recomputed_value = objective;
  const auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)) + 1e-18;
  };
  report.checks.push_back(
      {"objective", std::abs(schedule.objective - objective), close(schedule.objective, objective)});
  const double e0 = local_energy_baseline(instance);
  const double expected_total = schedule.objective + e0;
  report.checks.push_back({"total_energy", std::abs(schedule.total_energy - expected_total),
                           close(schedule.total_energy, expected_total)});
  return report;
}

}  // namespace mecsched
