#include "mecsched/cli.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mecsched/energy.hpp"
#include "mecsched/errors.hpp"
#include "mecsched/format.hpp"
#include "mecsched/generate.hpp"
#include "mecsched/harness.hpp"
#include "mecsched/instance_io.hpp"
#include "mecsched/oracle.hpp"
#include "mecsched/rate.hpp"

namespace mecsched {

namespace {

struct Options {
  // generate
  std::string spec_path;
  std::uint64_t seed = 1;
  std::optional<std::size_t> users;
  // shared
  std::string instance_path;
  std::string schedule_path;
  std::string out_path;
  std::string format = "text";
  std::string algorithm = "suboptimal";
  // sweep
  std::optional<std::uint64_t> sweep_seed;
  std::optional<std::size_t> realizations;
  std::vector<std::string> algorithms;
  std::vector<double> grid;
  bool certify = false;
  std::optional<std::size_t> threads;
};

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::string rate_text(const Instance& instance, const rate::RateResult& result) {
  std::ostringstream s;
  s << "m,rate_bps,iterations,selected\n";
  for (const rate::MasterRow& row : result.per_m) {
    s << row.m << ',' << format_double(row.rate) << ',' << row.iterations << ',' << format_set(row.selected) << '\n';
  }
  s << "best m: " << result.best_m << '\n';
  s << "sum rate: " << format_double(result.schedule.sum_rate) << " bit/s\n";
  s << "compute time: " << format_double(result.schedule.compute_time) << " s\n";
  s << "user,offload_bits\n";
  for (UserId i : result.schedule.scheduled) s << i << ',' << format_double(result.schedule.offload_bits[i]) << '\n';
  (void)instance;
  return s.str();
}

std::string energy_text(const EnergySchedule& schedule) {
  std::ostringstream s;
  s << "status: " << to_string(schedule.status) << '\n';
  if (schedule.status == EnergyStatus::kInfeasible) {
    if (schedule.tmin) s << "t_min: " << format_general(*schedule.tmin, 8) << " s\n";
    return s.str();
  }
  s << "objective: " << format_double(schedule.objective) << " J\n";
  s << "total energy: " << format_double(schedule.total_energy) << " J\n";
  s << "compute time: " << format_double(schedule.compute_time) << " s\n";
  s << "user,offload_bits\n";
  for (UserId i : schedule.scheduled) s << i << ',' << format_double(schedule.offload_bits[i]) << '\n';
  return s.str();
}

int run_generate(const Options& o, std::ostream& out) {
  GenerationSpec spec = o.spec_path.empty() ? GenerationSpec{} : generation_spec_from_json(read_text_file(o.spec_path));
  if (o.users) spec.users = *o.users;
  check_generation_spec(spec);
  emit(out, o.out_path, instance_to_json(generate_instance(spec, o.seed)));
  return kExitOk;
}

int run_solve_rate(const Options& o, std::ostream& out) {
  const Instance instance = read_instance(o.instance_path);
  const rate::RateResult result = rate::solve_rate_max(instance);
  const std::string doc = rate_schedule_to_json(result.schedule);
  if (!o.out_path.empty()) write_text_file(o.out_path, doc);
  out << (o.format == "json" ? doc : rate_text(instance, result));
  return kExitOk;
}

int run_solve_energy(const Options& o, std::ostream& out) {
  const Instance instance = read_instance(o.instance_path);
  EnergySchedule schedule;
  if (o.algorithm == "suboptimal") {
    schedule = energy::solve_energy_suboptimal(instance);
  } else if (o.algorithm == "all-offload") {
    schedule = energy::benchmark_energy_all_offloading(instance);
  } else {
    schedule = oracle::brute_force_energy(instance).schedule;
  }
  const std::string doc = energy_schedule_to_json(schedule);
  if (!o.out_path.empty()) write_text_file(o.out_path, doc);
  out << (o.format == "json" ? doc : energy_text(schedule));
  return kExitOk;
}

int run_tmin(const Options& o, std::ostream& out) {
  const energy::FeasibilityResult r = energy::feasibility_tmin(read_instance(o.instance_path));
  if (o.format == "json") {
    out << "{\"t_min_s\": " << format_double(r.t_min) << ", \"residual_s\": " << format_double(r.residual)
        << ", \"forced_users\": " << r.forced << ", \"iterations\": " << r.iterations << "}\n";
  } else {
    out << format_general(r.t_min, 8) << " s\n";
  }
  return kExitOk;
}

int run_validate(const Options& o, std::ostream& out) {
  const Instance instance = read_instance(o.instance_path);
  const AnySchedule schedule = read_schedule(o.schedule_path);
  const ValidationReport report = std::holds_alternative<RateSchedule>(schedule)
                                      ? validate_rate_schedule(instance, std::get<RateSchedule>(schedule))
                                      : validate_energy_schedule(instance, std::get<EnergySchedule>(schedule));
  if (o.format == "json") {
    out << report.to_json();
  } else if (o.format == "csv") {
    out << report.to_csv();
  } else {
    out << report.to_text();
  }
  return report.valid() ? kExitOk : kExitCheckFailed;
}

int run_sweep(const Options& o, std::ostream& out) {
  harness::SweepSpec spec = harness::sweep_spec_from_json(read_text_file(o.spec_path));
  if (o.sweep_seed) spec.seed = *o.sweep_seed;
  if (o.realizations) spec.realizations = *o.realizations;
  if (!o.algorithms.empty()) spec.algorithms = o.algorithms;
  if (!o.grid.empty()) spec.grid = o.grid;
  if (o.certify) spec.certify = true;
  if (o.threads) spec.threads = *o.threads;
  if (!o.out_path.empty()) spec.output = o.out_path;
  const harness::SweepTable table = harness::run_sweep(spec);
  emit(out, spec.output, table.to_csv());
  return kExitOk;
}

int run_certify(const Options& o, std::ostream& out) {
  const Instance instance = read_instance(o.instance_path);
  int code = kExitOk;
  try {
    const double solver = rate::solve_rate_max(instance).schedule.sum_rate;
    const double truth = oracle::brute_force_rate_max(instance).schedule.sum_rate;
    const double rel = std::abs(solver - truth) / truth;
    if (rel < 1e-9) {
      out << "rate: MATCH (rel err < 1e-9)";
    } else {
      out << "rate: MISMATCH (rel err " << format_general(rel, 3) << ")";
      code = kExitCheckFailed;
    }
  } catch (const BudgetExceeded& e) {
    out << "rate: SKIPPED (" << e.what() << ")";
  }
  out << "; ";
  try {
    const EnergySchedule solver = energy::solve_energy_suboptimal(instance);
    const EnergySchedule truth = oracle::brute_force_energy(instance).schedule;
    if (solver.status == EnergyStatus::kInfeasible || truth.status == EnergyStatus::kInfeasible) {
      const bool agree = solver.status == truth.status;
      out << "energy: INFEASIBLE";
      if (solver.tmin) out << " (t_min " << format_general(*solver.tmin, 8) << " s)";
      if (!agree) {
        out << " MISMATCH";
        code = kExitCheckFailed;
      }
    } else {
      const double gap = (solver.total_energy - truth.total_energy) / truth.total_energy;
      out << "energy gap: " << format_general(100.0 * gap, 4) << "%";
      if (solver.objective < truth.objective - 1e-9 * std::abs(truth.objective)) {
        out << " BELOW ORACLE";
        code = kExitCheckFailed;
      }
    }
  } catch (const BudgetExceeded& e) {
    out << "energy: SKIPPED (" << e.what() << ")";
  }
  out << '\n';
  return code;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Offloading schedulers for multiuser edge computing with VM interference", "mecsched"};
  app.require_subcommand(1);
  Options o;

  CLI::App* generate = app.add_subcommand("generate", "Draw a random instance");
  generate->add_option("--spec", o.spec_path, "Generation spec file (JSON)")->check(CLI::ExistingFile);
  generate->add_option("--seed", o.seed, "Random seed");
  generate->add_option("--users", o.users, "Override the number of users");
  generate->add_option("--out", o.out_path, "Output instance file (default stdout)");

  const std::vector<std::string> formats = {"text", "json"};
  CLI::App* solve_rate = app.add_subcommand("solve-rate", "Maximize the weighted sum offloading rate");
  solve_rate->add_option("instance", o.instance_path, "Instance file")->required();
  solve_rate->add_option("--out", o.out_path, "Write the schedule (JSON) here");
  solve_rate->add_option("--format", o.format, "Stdout format")->check(CLI::IsMember(formats));

  CLI::App* solve_energy = app.add_subcommand("solve-energy", "Minimize the weighted sum mobile energy");
  solve_energy->add_option("instance", o.instance_path, "Instance file")->required();
  solve_energy->add_option("--algorithm", o.algorithm, "suboptimal, all-offload or oracle")
      ->check(CLI::IsMember({"suboptimal", "all-offload", "oracle"}));
  solve_energy->add_option("--out", o.out_path, "Write the schedule (JSON) here");
  solve_energy->add_option("--format", o.format, "Stdout format")->check(CLI::IsMember(formats));

  CLI::App* tmin = app.add_subcommand("tmin", "Smallest feasible deadline of the energy problem");
  tmin->add_option("instance", o.instance_path, "Instance file")->required();
  tmin->add_option("--format", o.format, "Stdout format")->check(CLI::IsMember(formats));

  CLI::App* validate = app.add_subcommand("validate", "Check a schedule against an instance");
  validate->add_option("instance", o.instance_path, "Instance file")->required();
  validate->add_option("schedule", o.schedule_path, "Schedule file")->required();
  validate->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json", "csv"}));

  CLI::App* sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep and write CSV");
  sweep->add_option("spec", o.spec_path, "Sweep spec file (JSON)")->required();
  sweep->add_option("--seed", o.sweep_seed, "Base seed");
  sweep->add_option("--realizations", o.realizations, "Realizations per grid point");
  sweep->add_option("--out", o.out_path, "Output CSV (default: spec output or stdout)");
  sweep->add_option("--algorithms", o.algorithms, "Comma-separated algorithm names")->delimiter(',');
  sweep->add_option("--grid", o.grid, "Comma-separated grid values")->delimiter(',');
  sweep->add_flag("--certify", o.certify, "Attach oracle certification columns");
  sweep->add_option("--threads", o.threads, "Worker threads (0: all cores)");

  CLI::App* certify = app.add_subcommand("certify", "Compare both solvers with the brute-force oracles");
  certify->add_option("instance", o.instance_path, "Instance file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: usage: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (generate->parsed()) return run_generate(o, out);
    if (solve_rate->parsed()) return run_solve_rate(o, out);
    if (solve_energy->parsed()) return run_solve_energy(o, out);
    if (tmin->parsed()) return run_tmin(o, out);
    if (validate->parsed()) return run_validate(o, out);
    if (sweep->parsed()) return run_sweep(o, out);
    if (certify->parsed()) return run_certify(o, out);
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mecsched
