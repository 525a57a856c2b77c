#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "mecsched/model.hpp"

namespace mecsched {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const Range&) const = default;
};

// Parameter distributions for random instances. Every range is drawn
// uniformly; defaults reproduce the reference simulation setup.
struct GenerationSpec {
  std::size_t users = 10;
  double deadline_s = 0.035;
  double degradation = 0.1;
  Range uplink_mbps{100.0, 150.0};
  Range downlink_mbps{150.0, 200.0};
  Range service_rate_bps{1e7, 2e7};
  Range output_ratio_exponent{0.5, 1.5};  // gamma = 10^-x
  Range task_kb{50.0, 100.0};             // 1 KB = 8000 bits
  Range cycles_per_bit{500.0, 1000.0};
  Range cpu_freq_hz{2e8, 6e8};
  Range energy_coeff{1e-28, 1e-28};
  Range tx_power_w{0.1, 0.1};
  Range weight{1.0, 1.0};

  bool operator==(const GenerationSpec&) const = default;
};

// Throws ConfigError on lo > hi, non-finite or non-positive bounds.
void check_generation_spec(const GenerationSpec& spec);

inline constexpr double kBitsPerKilobyte = 8000.0;
inline constexpr double kBitsPerMegabit = 1e6;

// Deterministic source of uniforms. The engine is std::mt19937_64, whose
// output sequence is fixed by the C++ standard; each draw takes the top 53
// bits of one engine output, so the stream is identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  double uniform(const Range& r) { return uniform(r.lo, r.hi); }
  std::uint64_t next_u64() { return engine_(); }
  // Uniform integer in [lo, hi].
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);
// Seed for one (grid point, realization) cell of a sweep:
// mix64(base ^ mix64(grid_index ^ mix64(realization + 1))).
std::uint64_t realization_seed(std::uint64_t base, std::uint64_t grid_index, std::uint64_t realization);

// Per-user draw order: uplink, downlink, service rate, output-ratio exponent,
// task size, cycles per bit, CPU frequency, energy coefficient, tx power,
// weight. One uniform is consumed per field even for degenerate ranges.
Instance generate_instance(const GenerationSpec& spec, std::uint64_t seed);

}  // namespace mecsched
