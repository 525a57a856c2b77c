#include "mecsched/generate.hpp"

#include <cmath>

#include "mecsched/errors.hpp"
#include "mecsched/format.hpp"

namespace mecsched {

namespace {

void check_range(const Range& r, const char* name, bool allow_zero) {
  const std::string field(name);
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi)) {
    throw ConfigError(field + ": bounds must be finite");
  }
  if (r.lo > r.hi) {
    throw ConfigError(field + ": min " + format_double(r.lo) + " exceeds max " + format_double(r.hi));
  }
  if (allow_zero ? r.lo < 0.0 : r.lo <= 0.0) {
    throw ConfigError(field + ": min must be " + (allow_zero ? ">= 0" : "> 0"));
  }
}

}  // namespace

void check_generation_spec(const GenerationSpec& spec) {
  if (!(spec.deadline_s > 0.0) || !std::isfinite(spec.deadline_s)) {
    throw ConfigError("deadline_s must be finite and > 0");
  }
  if (!(spec.degradation >= 0.0) || !std::isfinite(spec.degradation)) {
    throw ConfigError("degradation must be finite and >= 0");
  }
  check_range(spec.uplink_mbps, "uplink_mbps", false);
  check_range(spec.downlink_mbps, "downlink_mbps", false);
  check_range(spec.service_rate_bps, "service_rate_bps", false);
  // gamma = 10^-x is positive for any finite x
  if (!std::isfinite(spec.output_ratio_exponent.lo) || !std::isfinite(spec.output_ratio_exponent.hi) ||
      spec.output_ratio_exponent.lo > spec.output_ratio_exponent.hi) {
    throw ConfigError("output_ratio_exponent: invalid range");
  }
  check_range(spec.task_kb, "task_kb", true);
  check_range(spec.cycles_per_bit, "cycles_per_bit", false);
  check_range(spec.cpu_freq_hz, "cpu_freq_hz", false);
  check_range(spec.energy_coeff, "energy_coeff", false);
  check_range(spec.tx_power_w, "tx_power_w", false);
  check_range(spec.weight, "weight", false);
}

std::uint64_t Rng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return engine_();
  // rejection sampling keeps the draw unbiased
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + x % span;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t realization_seed(std::uint64_t base, std::uint64_t grid_index, std::uint64_t realization) {
  return mix64(base ^ mix64(grid_index ^ mix64(realization + 1)));
}

Instance generate_instance(const GenerationSpec& spec, std::uint64_t seed) {
  check_generation_spec(spec);
  Rng rng(seed);
  Instance instance;
  instance.deadline = spec.deadline_s;
  instance.degradation = spec.degradation;
  instance.users.reserve(spec.users);
  for (std::size_t i = 0; i < spec.users; ++i) {
    UserProfile u;
    u.id = i;
    u.uplink_time_per_bit = 1.0 / (rng.uniform(spec.uplink_mbps) * kBitsPerMegabit);
    u.downlink_time_per_bit = 1.0 / (rng.uniform(spec.downlink_mbps) * kBitsPerMegabit);
    u.service_rate = rng.uniform(spec.service_rate_bps);
    u.output_ratio = std::pow(10.0, -rng.uniform(spec.output_ratio_exponent));
    u.task_bits = rng.uniform(spec.task_kb) * kBitsPerKilobyte;
    u.cycles_per_bit = rng.uniform(spec.cycles_per_bit);
    u.cpu_freq = rng.uniform(spec.cpu_freq_hz);
    u.energy_coeff = rng.uniform(spec.energy_coeff);
    u.tx_power = rng.uniform(spec.tx_power_w);
    u.weight = rng.uniform(spec.weight);
    instance.users.push_back(u);
  }
  return instance;
}

}  // namespace mecsched
