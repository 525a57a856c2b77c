#include "mecsched/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "mecsched/energy.hpp"
#include "mecsched/errors.hpp"
#include "mecsched/format.hpp"
#include "mecsched/instance_io.hpp"
#include "mecsched/oracle.hpp"
#include "mecsched/rate.hpp"

namespace mecsched::harness {

using json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kRateAlgorithms = {"optimal", "greedy", "lr", "all-offload"};
const std::vector<std::string> kEnergyAlgorithms = {"suboptimal", "all-offload"};

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const std::string& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

// Metric of one algorithm on one instance; nullopt when it has no schedule.
std::optional<double> evaluate(const std::string& algorithm, const Instance& instance, bool rate_side) {
  if (rate_side) {
    if (algorithm == "optimal") return rate::solve_rate_max(instance).schedule.sum_rate;
    if (algorithm == "greedy") return rate::benchmark_greedy(instance).sum_rate;
    if (algorithm == "lr") return rate::benchmark_lr(instance).schedule.sum_rate;
    return rate::benchmark_all_offloading(instance).sum_rate;
  }
  const EnergySchedule s = algorithm == "suboptimal" ? energy::solve_energy_suboptimal(instance)
                                                     : energy::benchmark_energy_all_offloading(instance);
  if (s.status == EnergyStatus::kInfeasible) return std::nullopt;
  return s.total_energy;
}

// Oracle comparison for the row of the exact/suboptimal solver.
std::optional<double> certify(const Instance& instance, bool rate_side) {
  const oracle::OracleBudget budget;
  if (rate_side) {
    if (instance.size() > budget.max_users_rate) return std::nullopt;
    const double solver = rate::solve_rate_max(instance).schedule.sum_rate;
    const double truth = oracle::brute_force_rate_max(instance, budget).schedule.sum_rate;
    return std::abs(solver - truth) / truth;
  }
  if (energy::partition_users(instance).n1.size() > budget.max_n1_energy) return std::nullopt;
  const EnergySchedule solver = energy::solve_energy_suboptimal(instance);
  const EnergySchedule truth = oracle::brute_force_energy(instance, budget).schedule;
  if (solver.status == EnergyStatus::kInfeasible || truth.status == EnergyStatus::kInfeasible) return std::nullopt;
  return (solver.total_energy - truth.total_energy) / truth.total_energy;
}

struct Cell {
  std::vector<std::optional<double>> values;  // per algorithm
  std::optional<double> cert;
};

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> grid_of(std::initializer_list<double> values) { return values; }

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::kRateVsK: return "rate-vs-K";
    case Experiment::kRateVsD: return "rate-vs-d";
    case Experiment::kEnergyVsT: return "energy-vs-T";
    case Experiment::kEnergyVsD: return "energy-vs-d";
  }
  return "?";
}

Experiment experiment_from_string(const std::string& text) {
  for (Experiment e : {Experiment::kRateVsK, Experiment::kRateVsD, Experiment::kEnergyVsT, Experiment::kEnergyVsD}) {
    if (to_string(e) == text) return e;
  }
  throw ConfigError("unknown experiment \"" + text + "\"; valid: rate-vs-K, rate-vs-d, energy-vs-T, energy-vs-d");
}

std::string to_string(DeadlineMode mode) { return mode == DeadlineMode::kAbsolute ? "absolute" : "tmin-multiple"; }

DeadlineMode deadline_mode_from_string(const std::string& text) {
  if (text == "absolute") return DeadlineMode::kAbsolute;
  if (text == "tmin-multiple") return DeadlineMode::kTminMultiple;
  throw ConfigError("unknown deadline mode \"" + text + "\"; valid: absolute, tmin-multiple");
}

bool is_rate_experiment(Experiment e) { return e == Experiment::kRateVsK || e == Experiment::kRateVsD; }

std::vector<std::string> valid_algorithms(Experiment e) {
  return is_rate_experiment(e) ? kRateAlgorithms : kEnergyAlgorithms;
}

SweepSpec default_sweep(Experiment e) {
  SweepSpec s;
  s.experiment = e;
  s.generation.users = 10;
  switch (e) {
    case Experiment::kRateVsK:
      s.grid = grid_of({4, 5, 6, 7, 8, 9, 10, 11, 12});
      s.generation.degradation = 0.1;
      break;
    case Experiment::kRateVsD:
      s.grid = grid_of({0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3});
      break;
    case Experiment::kEnergyVsT:
      s.grid = grid_of({0.025, 0.030, 0.035, 0.040, 0.045, 0.050});
      s.generation.degradation = 0.2;
      break;
    case Experiment::kEnergyVsD:
      s.grid = grid_of({0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3});
      s.generation.degradation = 0.2;
      break;
  }
  return s;
}

void check_sweep_spec(const SweepSpec& spec) {
  if (spec.grid.empty()) throw ConfigError("sweep grid is empty");
  if (spec.realizations == 0) throw ConfigError("realizations must be at least 1");
  check_generation_spec(spec.generation);
  const std::vector<std::string> valid = valid_algorithms(spec.experiment);
  for (const std::string& a : spec.algorithms) {
    if (std::find(valid.begin(), valid.end(), a) == valid.end()) {
      throw ConfigError("unknown algorithm \"" + a + "\" for " + to_string(spec.experiment) + "; valid: " +
                        join(valid));
    }
  }
  if (!(spec.deadline_multiple > 0.0)) throw ConfigError("deadline_multiple must be positive");
  for (double g : spec.grid) {
    if (!std::isfinite(g)) throw ConfigError("grid values must be finite");
    switch (spec.experiment) {
      case Experiment::kRateVsK:
        if (g < 1.0 || g != std::floor(g)) throw ConfigError("rate-vs-K grid values must be positive integers");
        break;
      case Experiment::kRateVsD:
      case Experiment::kEnergyVsD:
        if (g < 0.0) throw ConfigError("degradation grid values must be nonnegative");
        break;
      case Experiment::kEnergyVsT:
        if (g <= 0.0) throw ConfigError("deadline grid values must be positive");
        break;
    }
  }
}

SweepSpec sweep_spec_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) throw ParseError("<root>: expected an object");
  static const std::vector<std::string> known = {"experiment", "grid",      "realizations", "seed",
                                                 "algorithms", "output",    "generation",   "deadline_mode",
                                                 "deadline_multiple", "paired", "certify",  "threads"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) throw ParseError(it.key() + ": unknown field");
  }
  if (!doc.contains("experiment") || !doc["experiment"].is_string()) {
    throw ParseError("experiment: missing required field");
  }
  SweepSpec s = default_sweep(experiment_from_string(doc["experiment"].get<std::string>()));
  const auto need = [&](const char* key, bool ok, const char* what) {
    if (!ok) throw ParseError(std::string(key) + ": expected " + what);
  };
  if (doc.contains("generation")) {
    need("generation", doc["generation"].is_object(), "an object");
    s.generation = generation_spec_from_json(doc["generation"].dump());
  }
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    need("grid", g.is_array(), "an array of numbers");
    s.grid.clear();
    for (const json& v : g) {
      need("grid", v.is_number(), "an array of numbers");
      s.grid.push_back(v.get<double>());
    }
  }
  if (doc.contains("realizations")) {
    need("realizations", doc["realizations"].is_number_unsigned(), "a non-negative integer");
    s.realizations = doc["realizations"].get<std::size_t>();
  }
  if (doc.contains("seed")) {
    need("seed", doc["seed"].is_number_unsigned(), "a non-negative integer");
    s.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("algorithms")) {
    const json& a = doc["algorithms"];
    need("algorithms", a.is_array(), "an array of strings");
    s.algorithms.clear();
    for (const json& v : a) {
      need("algorithms", v.is_string(), "an array of strings");
      s.algorithms.push_back(v.get<std::string>());
    }
  }
  if (doc.contains("output")) {
    need("output", doc["output"].is_string(), "a string");
    s.output = doc["output"].get<std::string>();
  }
  if (doc.contains("deadline_mode")) {
    need("deadline_mode", doc["deadline_mode"].is_string(), "a string");
    s.deadline_mode = deadline_mode_from_string(doc["deadline_mode"].get<std::string>());
  }
  if (doc.contains("deadline_multiple")) {
    need("deadline_multiple", doc["deadline_multiple"].is_number(), "a number");
    s.deadline_multiple = doc["deadline_multiple"].get<double>();
  }
  if (doc.contains("paired")) {
    need("paired", doc["paired"].is_boolean(), "a boolean");
    s.paired = doc["paired"].get<bool>();
  }
  if (doc.contains("certify")) {
    need("certify", doc["certify"].is_boolean(), "a boolean");
    s.certify = doc["certify"].get<bool>();
  }
  if (doc.contains("threads")) {
    need("threads", doc["threads"].is_number_unsigned(), "a non-negative integer");
    s.threads = doc["threads"].get<std::size_t>();
  }
  check_sweep_spec(s);
  return s;
}

std::string sweep_spec_to_json(const SweepSpec& s) {
  json doc;
  doc["experiment"] = to_string(s.experiment);
  doc["grid"] = s.grid;
  doc["realizations"] = s.realizations;
  doc["seed"] = s.seed;
  doc["algorithms"] = s.algorithms;
  doc["output"] = s.output;
  doc["generation"] = json::parse(generation_spec_to_json(s.generation));
  doc["deadline_mode"] = to_string(s.deadline_mode);
  doc["deadline_multiple"] = s.deadline_multiple;
  doc["paired"] = s.paired;
  doc["certify"] = s.certify;
  doc["threads"] = s.threads;
  return doc.dump(2) + "\n";
}

Instance sweep_instance(const SweepSpec& spec, std::size_t grid_index, std::size_t realization) {
  const double g = spec.grid.at(grid_index);
  GenerationSpec gen = spec.generation;
  switch (spec.experiment) {
    case Experiment::kRateVsK: gen.users = static_cast<std::size_t>(g); break;
    case Experiment::kRateVsD:
    case Experiment::kEnergyVsD: gen.degradation = g; break;
    case Experiment::kEnergyVsT:
      if (spec.deadline_mode == DeadlineMode::kAbsolute) gen.deadline_s = g;
      break;
  }
  const std::uint64_t seed = realization_seed(spec.seed, spec.paired ? 0 : grid_index, realization);
  Instance instance = generate_instance(gen, seed);
  if (!is_rate_experiment(spec.experiment) && spec.deadline_mode == DeadlineMode::kTminMultiple) {
    const double t_min = energy::feasibility_tmin(instance).t_min;
    const double multiple = spec.experiment == Experiment::kEnergyVsT ? g : spec.deadline_multiple;
    if (t_min > 0.0) instance = instance.with_deadline(multiple * t_min);
  }
  return instance;
}

SweepTable run_sweep(const SweepSpec& spec) {
  check_sweep_spec(spec);
  const bool rate_side = is_rate_experiment(spec.experiment);
  const std::vector<std::string> algorithms = spec.algorithms.empty() ? valid_algorithms(spec.experiment)
                                                                      : spec.algorithms;
  const std::string certified_algorithm = rate_side ? "optimal" : "suboptimal";

  SweepTable table;
  table.experiment = spec.experiment;
  table.deadline_mode = spec.deadline_mode;
  for (std::size_t g = 0; g < spec.grid.size(); ++g) {
    std::vector<Cell> cells(spec.realizations);
    parallel_for(spec.realizations, spec.threads, [&](std::size_t r) {
      const Instance instance = sweep_instance(spec, g, r);
      Cell& cell = cells[r];
      for (const std::string& a : algorithms) cell.values.push_back(evaluate(a, instance, rate_side));
      if (spec.certify) cell.cert = certify(instance, rate_side);
    });

    // Sequential reduction in realization order keeps the output bit-stable.
    for (std::size_t k = 0; k < algorithms.size(); ++k) {
      SweepRow row;
      row.grid_value = spec.grid[g];
      row.algorithm = algorithms[k];
      row.realizations = spec.realizations;
      double sum = 0.0;
      double sum_sq = 0.0;
      for (const Cell& cell : cells) {
        if (cell.values[k]) ++row.feasible;
        const bool all = std::all_of(cell.values.begin(), cell.values.end(), [](const auto& v) { return v.has_value(); });
        if (!all) continue;
        ++row.compared;
        sum += *cell.values[k];
      }
      row.mean = row.compared ? sum / static_cast<double>(row.compared) : std::nan("");
      for (const Cell& cell : cells) {
        const bool all = std::all_of(cell.values.begin(), cell.values.end(), [](const auto& v) { return v.has_value(); });
        if (all) sum_sq += (*cell.values[k] - row.mean) * (*cell.values[k] - row.mean);
      }
      row.std_error = row.compared > 1
                          ? std::sqrt(sum_sq / static_cast<double>(row.compared - 1) / static_cast<double>(row.compared))
                          : 0.0;
      if (spec.certify && row.algorithm == certified_algorithm) {
        std::size_t n = 0;
        double metric = 0.0;
        for (const Cell& cell : cells) {
          if (!cell.cert) continue;
          ++n;
          metric = rate_side ? std::max(metric, *cell.cert) : metric + *cell.cert;
        }
        row.certified = n;
        row.cert_metric = rate_side || n == 0 ? metric : metric / static_cast<double>(n);
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

const SweepRow& SweepTable::row(double grid_value, const std::string& algorithm) const {
  for (const SweepRow& r : rows) {
    if (r.grid_value == grid_value && r.algorithm == algorithm) return r;
  }
  throw LookupError("no sweep row for " + algorithm + " at " + format_double(grid_value));
}

std::string SweepTable::csv_header() const {
  std::string grid;
  switch (experiment) {
    case Experiment::kRateVsK: grid = "K"; break;
    case Experiment::kRateVsD:
    case Experiment::kEnergyVsD: grid = "d"; break;
    case Experiment::kEnergyVsT: grid = deadline_mode == DeadlineMode::kAbsolute ? "T_s" : "T_over_tmin"; break;
  }
  if (is_rate_experiment(experiment)) {
    return grid + ",algorithm,realizations,feasible,compared,mean_rate_bps,stderr_rate_bps,cert_count,cert_max_rel_err";
  }
  return grid + ",algorithm,realizations,feasible,compared,mean_energy_j,stderr_energy_j,cert_count,cert_mean_gap";
}

std::string SweepTable::to_csv() const {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (const SweepRow& r : rows) {
    out << format_double(r.grid_value) << ',' << r.algorithm << ',' << r.realizations << ',' << r.feasible << ','
        << r.compared << ',' << format_double(r.mean) << ',' << format_double(r.std_error) << ','
        << (r.certified ? std::to_string(*r.certified) : "") << ','
        << (r.cert_metric ? format_double(*r.cert_metric) : "") << '\n';
  }
  return out.str();
}

}  // namespace mecsched::harness
