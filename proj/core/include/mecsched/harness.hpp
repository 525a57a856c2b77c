#pragma once

// Monte Carlo sweeps over random instances: one CSV row per
// (grid point, algorithm) with the mean and standard error of the metric.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mecsched/generate.hpp"

namespace mecsched::harness {

enum class Experiment { kRateVsK, kRateVsD, kEnergyVsT, kEnergyVsD };

std::string to_string(Experiment e);
// Throws ConfigError listing the valid names.
Experiment experiment_from_string(const std::string& text);

// How energy experiments set T. kAbsolute uses the grid value (energy-vs-T)
// or the generation deadline (energy-vs-d). kTminMultiple scales each
// instance's own t_min by the grid value (energy-vs-T) or by
// `deadline_multiple` (energy-vs-d).
enum class DeadlineMode { kAbsolute, kTminMultiple };

std::string to_string(DeadlineMode mode);
DeadlineMode deadline_mode_from_string(const std::string& text);

struct SweepSpec {
  Experiment experiment = Experiment::kRateVsK;
  std::vector<double> grid;
  std::size_t realizations = 500;
  std::uint64_t seed = 1;
  std::vector<std::string> algorithms;  // empty means every algorithm of the experiment
  std::string output;                   // CSV path; empty means stdout at the CLI
  GenerationSpec generation;            // fixed axes (K, d, T) come from here
  DeadlineMode deadline_mode = DeadlineMode::kAbsolute;
  double deadline_multiple = 1.5;
  // Reuse the same instances at every grid point (seed ignores the grid index).
  bool paired = false;
  bool certify = false;
  std::size_t threads = 0;  // 0: hardware concurrency
};

// Grid defaults: K 4..12 (d 0.1); d 0..0.3 step 0.05 (K 10); T 25..50 ms
// step 5 (K 10, d 0.2); d 0..0.3 step 0.05 (K 10, d 0.2 elsewhere).
SweepSpec default_sweep(Experiment e);

std::vector<std::string> valid_algorithms(Experiment e);
bool is_rate_experiment(Experiment e);

// Throws ConfigError: empty grid, zero realizations, unknown algorithm,
// non-integer K, negative d or non-positive T.
void check_sweep_spec(const SweepSpec& spec);

// JSON fields: experiment (required), grid, realizations, seed, algorithms,
// output, generation, deadline_mode, deadline_multiple, paired, certify,
// threads. Missing fields take the experiment defaults.
SweepSpec sweep_spec_from_json(const std::string& text);
std::string sweep_spec_to_json(const SweepSpec& spec);

struct SweepRow {
  double grid_value = 0.0;
  std::string algorithm;
  std::size_t realizations = 0;
  std::size_t feasible = 0;  // realizations where this algorithm found a schedule
  std::size_t compared = 0;  // realizations where every algorithm did; mean/stderr use these
  double mean = 0.0;
  double std_error = 0.0;
  std::optional<std::size_t> certified;  // realizations checked against the oracle
  std::optional<double> cert_metric;     // rate: max rel err; energy: mean rel gap
};

struct SweepTable {
  Experiment experiment = Experiment::kRateVsK;
  DeadlineMode deadline_mode = DeadlineMode::kAbsolute;
  std::vector<SweepRow> rows;

  const SweepRow& row(double grid_value, const std::string& algorithm) const;
  std::string csv_header() const;
  std::string to_csv() const;
};

SweepTable run_sweep(const SweepSpec& spec);

// The instance a sweep evaluates at one cell, deadline already applied.
Instance sweep_instance(const SweepSpec& spec, std::size_t grid_index, std::size_t realization);

}  // namespace mecsched::harness
