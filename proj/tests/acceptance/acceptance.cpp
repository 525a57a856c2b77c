// Acceptance run: one PASS/FAIL line per criterion, INFO lines for context.
// Usage: mecsched_acceptance [--criterion ID]... [--workdir DIR]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "builders.hpp"
#include "mecsched/cli.hpp"
#include "mecsched/energy.hpp"
#include "mecsched/errors.hpp"
#include "mecsched/format.hpp"
#include "mecsched/generate.hpp"
#include "mecsched/harness.hpp"
#include "mecsched/instance_io.hpp"
#include "mecsched/lp.hpp"
#include "mecsched/oracle.hpp"
#include "mecsched/rate.hpp"
#include "random_lp.hpp"

namespace fs = std::filesystem;
using namespace mecsched;

namespace {

std::string g(double v, int digits = 4) { return format_general(v, digits); }

void info(const std::string& text) { std::cout << "INFO  " << text << '\n'; }

bool verdict(const std::string& id, bool ok, const std::string& text) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << text << '\n';
  return ok;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

const std::vector<double> kRateDs = {0.0, 0.05, 0.1, 0.2, 0.3};

// Default distributions, K in 4..12 and d from kRateDs, one instance per index.
Instance rate_instance(std::size_t i) {
  GenerationSpec s;
  s.users = 4 + i % 9;
  s.degradation = kRateDs[(i / 9) % kRateDs.size()];
  return generate_instance(s, 1000 + i);
}

// Slow links and spread parameters; here the transmission-rate condition binds.
Instance stress_rate_instance(std::size_t i) {
  return generate_instance(testing::stress_spec(4 + i % 9, kRateDs[(i / 9) % kRateDs.size()]), 5000 + i);
}

bool criterion_1() {
  double worst = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    const Instance x = rate_instance(i);
    worst = std::max(worst, rel_err(rate::solve_rate_max(x).schedule.sum_rate,
                                     oracle::brute_force_rate_max(x).schedule.sum_rate));
    ++n;
  }
  double stress_worst = 0.0;
  for (std::size_t i = 0; i < 500; ++i) {
    const Instance x = stress_rate_instance(i);
    stress_worst = std::max(stress_worst, rel_err(rate::solve_rate_max(x).schedule.sum_rate,
                                                  oracle::brute_force_rate_max(x).schedule.sum_rate));
  }
  info("criterion 1: stress distributions, 500 instances, max rel err " + g(stress_worst, 3));
  return verdict("1", worst <= 1e-9 && stress_worst <= 1e-9,
                 "rate optimum matches brute force on " + std::to_string(n) + " instances (max rel err " +
                     g(worst, 3) + ", limit 1e-9)");
}

bool criterion_2() {
  double worst_slack = 0.0;
  std::size_t invalid = 0, n = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const Instance x = i < 500 ? rate_instance(i) : stress_rate_instance(i - 500);
    const RateSchedule s = rate::solve_rate_max(x).schedule;
    const double slowdown = vm_slowdown(x.degradation, s.scheduled.size());
    for (UserId u : s.scheduled) {
      const double upper = s.compute_time * x.users[u].service_rate / slowdown;
      worst_slack = std::max(worst_slack, (upper - s.offload_bits[u]) / upper);
    }
    if (!validate_rate_schedule(x, s).valid()) ++invalid;
    ++n;
  }
  return verdict("2", worst_slack <= 1e-9 && invalid == 0,
                 "scheduled offloads sit at the VM capacity bound on " + std::to_string(n) +
                     " optimal schedules (max rel slack " + g(worst_slack, 3) + ", invalid " +
                     std::to_string(invalid) + ")");
}

bool criterion_3() {
  std::size_t winners = 0, winner_violations = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    for (const Instance& x : {rate_instance(i), stress_rate_instance(i)}) {
      if (!oracle::brute_force_rate_max(x).winner_satisfies_necessary_condition) ++winner_violations;
      ++winners;
    }
  }
  std::size_t trials = 0, failures = 0, attempts = 0;
  Rng rng(77);
  while (trials < 1000 && attempts < 200000) {
    ++attempts;
    const Instance x = stress_rate_instance(attempts % 4000);
    std::vector<UserId> order(x.size());
    for (UserId i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t k = order.size(); k > 1; --k) {
      std::swap(order[k - 1], order[static_cast<std::size_t>(rng.uniform01() * static_cast<double>(k))]);
    }
    UserSet grown;
    for (UserId u : order) {
      grown.push_back(u);
      const UserSet set = normalize(grown);
      const rate::ConditionalSolution c = rate::conditional_solution(x, set);
      if (c.satisfies_necessary_condition) continue;
      // Drop the user with the smallest transmission rate.
      UserId worst = set.front();
      for (UserId v : set) {
        if (derive_user(x, v).tx_rate < derive_user(x, worst).tx_rate) worst = v;
      }
      UserSet reduced;
      for (UserId v : set) {
        if (v != worst) reduced.push_back(v);
      }
      if (!(rate::subset_rate(x, reduced) > c.rate)) ++failures;
      ++trials;
      break;
    }
  }
  return verdict("3", winner_violations == 0 && failures == 0 && trials >= 1000,
                 "brute-force winners satisfy the rate condition (" + std::to_string(winners - winner_violations) +
                     "/" + std::to_string(winners) + "); removing the slowest user improves R in " +
                     std::to_string(trials - failures) + "/" + std::to_string(trials) + " violating sets");
}

bool criterion_4() {
  // (a) identical users
  std::size_t a_total = 0, a_ok = 0;
  for (double d : {0.05, 0.1, 0.2}) {
    for (std::size_t K = 1; K <= 20; ++K) {
      GenerationSpec s;
      s.users = 1;
      s.degradation = d;
      const UserProfile proto = generate_instance(s, 31 + K).users[0];
      Instance x;
      x.deadline = s.deadline_s;
      x.degradation = d;
      for (UserId i = 0; i < K; ++i) {
        UserProfile u = proto;
        u.id = i;
        x.users.push_back(u);
      }
      const std::size_t m = rate::solve_rate_max(x).schedule.scheduled.size();
      const auto [lo, hi] = rate::homogeneous_m_candidates(d, K);
      if (m == lo || m == hi) ++a_ok;
      ++a_total;
      if (d == 0.1 && K == 12) info("criterion 4a: d=0.1 K=12 gives |S*| = " + std::to_string(m));
    }
  }
  // (b) equal transmission rates
  std::size_t b_ok = 0;
  double b_worst = 0.0;
  for (std::size_t i = 0; i < 200; ++i) {
    Instance x = stress_rate_instance(i);
    for (UserProfile& u : x.users) {
      u.uplink_time_per_bit = x.users[0].uplink_time_per_bit;
      u.downlink_time_per_bit = x.users[0].downlink_time_per_bit;
      u.output_ratio = x.users[0].output_ratio;
    }
    const double e = rel_err(rate::homogeneous_txrate_schedule(x).sum_rate,
                             oracle::brute_force_rate_max(x).schedule.sum_rate);
    b_worst = std::max(b_worst, e);
    if (e <= 1e-9) ++b_ok;
  }
  // (c) no interference
  std::size_t c_ok = 0;
  double c_worst = 0.0;
  for (std::size_t i = 0; i < 200; ++i) {
    const Instance x = stress_rate_instance(i).with_degradation(0.0);
    const double e = rel_err(rate::no_interference_schedule(x).sum_rate,
                             oracle::brute_force_rate_max(x).schedule.sum_rate);
    c_worst = std::max(c_worst, e);
    if (e <= 1e-9) ++c_ok;
  }
  return verdict("4", a_ok == a_total && b_ok == 200 && c_ok == 200,
                 "identical users " + std::to_string(a_ok) + "/" + std::to_string(a_total) +
                     " in the floor/ceil neighborhood; equal tx rates " + std::to_string(b_ok) +
                     "/200 (max rel err " + g(b_worst, 3) + "); d=0 threshold " + std::to_string(c_ok) +
                     "/200 (max rel err " + g(c_worst, 3) + ")");
}

bool criterion_5() {
  std::size_t slaves = 0, bad = 0, max_iter = 0;
  for (harness::Experiment e : {harness::Experiment::kRateVsK, harness::Experiment::kRateVsD}) {
    const harness::SweepSpec spec = harness::default_sweep(e);
    for (std::size_t gi = 0; gi < spec.grid.size(); ++gi) {
      for (std::size_t r = 0; r < spec.realizations; ++r) {
        const Instance x = harness::sweep_instance(spec, gi, r);
        for (std::size_t m = 1; m <= x.size(); ++m) {
          const rate::SlaveResult s = rate::dinkelbach_slave(x, m);
          const auto& steps = s.trace.steps;
          bool ok = s.converged && steps.size() <= 30;
          for (std::size_t k = 1; k < steps.size(); ++k) ok = ok && steps[k].rate > steps[k - 1].rate;
          double numerator = 0.0;
          for (UserId u : steps.back().selected) numerator += x.users[u].weight * x.users[u].service_rate;
          ok = ok && std::abs(steps.back().g) <= rate::dinkelbach_tolerance(numerator);
          if (!ok) ++bad;
          max_iter = std::max(max_iter, steps.size());
          ++slaves;
        }
      }
    }
  }
  return verdict("5", bad == 0,
                 "Dinkelbach converges with strictly increasing R on " + std::to_string(slaves - bad) + "/" +
                     std::to_string(slaves) + " sweep subproblems (max iterations " + std::to_string(max_iter) +
                     ", cap 30)");
}

bool criterion_6() {
  std::size_t residual_ok = 0, oracle_checked = 0, oracle_ok = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    const Instance x = i % 2 == 0 ? generate_instance(testing::stress_spec(2 + i % 9, 0.05 * (i % 7)), 9000 + i)
                                  : [&] {
                                      GenerationSpec s;
                                      s.users = 2 + i % 9;
                                      s.degradation = 0.05 * (i % 7);
                                      return generate_instance(s, 9000 + i);
                                    }();
    const energy::FeasibilityResult f = energy::feasibility_tmin(x);
    const double scale = std::max(f.t_min, 1e-12);
    const bool root = std::abs(f.residual) <= 1e-6 * scale;
    // phi jumps where a user becomes forced; then the bracket itself certifies the crossing.
    const bool bracket = energy::feasibility_residual(x, f.bracket_lo) > 0.0 && f.bracket_hi - f.bracket_lo <= 1e-6 * scale;
    if (f.residual <= 0.0 && (root || bracket || f.t_min == 0.0)) ++residual_ok;
    if (f.t_min > 1e-3 && x.size() <= 10) {
      ++oracle_checked;
      const bool above = oracle::brute_force_energy(x.with_deadline(f.t_min + 1e-6)).schedule.status !=
                         EnergyStatus::kInfeasible;
      const bool below = oracle::brute_force_energy(x.with_deadline(f.t_min - 1e-3)).schedule.status ==
                         EnergyStatus::kInfeasible;
      if (above && below) ++oracle_ok;
    }
  }
  const Instance one = testing::make_instance(1.0, 0.0, {testing::make_user(0, 0.1, 1.0, 10.0, 1.0)});
  const double t1 = energy::feasibility_tmin(one).t_min;
  const bool single = std::abs(t1 - 5.2380952) <= 1e-6;
  return verdict("6", residual_ok == 200 && oracle_ok == oracle_checked && single,
                 "t_min residual within 1e-6 scale on " + std::to_string(residual_ok) +
                     "/200; oracle flips at t_min on " + std::to_string(oracle_ok) + "/" +
                     std::to_string(oracle_checked) + "; single user " + format_general(t1, 8) + " s");
}

struct GapStats {
  std::size_t n = 0, below = 0;
  double sum = 0.0, max = 0.0;
  std::map<EnergyStatus, std::size_t> paths;

  double mean() const { return n > 0 ? sum / static_cast<double>(n) : 0.0; }
  std::string path_text() const {
    std::string out;
    for (const auto& [status, count] : paths) out += " " + to_string(status) + "=" + std::to_string(count);
    return out;
  }
};

GapStats energy_gaps(bool stress, std::uint64_t seed_base) {
  GapStats st;
  Rng rng(seed_base);
  for (std::size_t i = 0; i < 400; ++i) {
    GenerationSpec s = stress ? testing::stress_spec(2 + i % 9, 0.05 * (i % 7)) : GenerationSpec{};
    s.users = 2 + i % 9;
    s.degradation = 0.05 * (i % 7);
    const Instance base = generate_instance(s, seed_base + i);
    const double t_min = energy::feasibility_tmin(base).t_min;
    const Instance x = base.with_deadline(t_min * (1.0 + rng.uniform01()));
    const EnergySchedule heuristic = energy::solve_energy_suboptimal(x);
    const EnergySchedule truth = oracle::brute_force_energy(x).schedule;
    if (heuristic.status == EnergyStatus::kInfeasible || truth.status == EnergyStatus::kInfeasible) continue;
    if (heuristic.objective < truth.objective - 1e-9 * std::abs(truth.objective)) ++st.below;
    const double gap = (heuristic.total_energy - truth.total_energy) / truth.total_energy;
    st.sum += gap;
    st.max = std::max(st.max, gap);
    ++st.paths[heuristic.status];
    ++st.n;
  }
  return st;
}

bool criterion_7() {
  const GapStats st = energy_gaps(false, 20000);
  const GapStats wide = energy_gaps(true, 30000);
  info("criterion 7: default distributions, branches:" + st.path_text() + "; max gap " + g(100 * st.max) + "%");
  info("criterion 7: stress distributions (" + std::to_string(wide.n) + " instances), branches:" + wide.path_text() +
       "; mean gap " + g(100 * wide.mean()) + "%, max " + g(100 * wide.max) + "%, below oracle " +
       std::to_string(wide.below));
  return verdict("7", st.n >= 300 && st.below == 0 && wide.below == 0 && st.mean() <= 0.10,
                 std::to_string(st.n) + " instances, objective never below the oracle (" + std::to_string(st.below) +
                     " violations), mean total-energy gap " + g(100 * st.mean()) + "% (guard 10%)");
}

bool within(double value, double target, double band) { return std::abs(value - target) <= band; }

bool criterion_8a() {
  harness::SweepSpec spec = harness::default_sweep(harness::Experiment::kRateVsK);
  spec.grid = {12};
  const harness::SweepTable t = harness::run_sweep(spec);
  const double opt = t.row(12, "optimal").mean;
  auto gain = [&](const char* alg) { return 100.0 * (opt - t.row(12, alg).mean) / t.row(12, alg).mean; };
  const double lr = gain("lr"), greedy = gain("greedy"), all = gain("all-offload");
  info("criterion 8a: optimal mean " + g(opt, 6) + " bit/s; lr " + g(t.row(12, "lr").mean, 6) + ", greedy " +
       g(t.row(12, "greedy").mean, 6) + ", all-offload " + g(t.row(12, "all-offload").mean, 6));
  const bool ok = within(lr, 3, 5) && within(greedy, 6, 5) && within(all, 20, 5);
  return verdict("8a", ok,
                 "K=12 d=0.1 optimal gain over lr/greedy/all-offload = " + g(lr, 3) + "%/" + g(greedy, 3) + "%/" +
                     g(all, 3) + "% (targets 3/6/20 +-5 pp)");
}

bool criterion_8b() {
  const harness::SweepSpec spec = harness::default_sweep(harness::Experiment::kRateVsD);
  const harness::SweepTable t = harness::run_sweep(spec);
  bool monotone = true;
  for (std::size_t i = 1; i < spec.grid.size(); ++i) {
    monotone = monotone && t.row(spec.grid[i], "optimal").mean <= t.row(spec.grid[i - 1], "optimal").mean;
  }
  const double d0 = spec.grid.front(), d1 = spec.grid.back();
  auto decline = [&](const std::string& alg) {
    return (t.row(d0, alg).mean - t.row(d1, alg).mean) / t.row(d0, alg).mean;
  };
  const double opt = decline("optimal");
  bool smallest = true;
  std::string text;
  for (const std::string& alg : harness::valid_algorithms(spec.experiment)) {
    const double v = decline(alg);
    text += " " + alg + "=" + g(100 * v, 3) + "%";
    smallest = smallest && opt <= v + 1e-12;
  }
  return verdict("8b", monotone && smallest,
                 std::string("optimal mean R ") + (monotone ? "nonincreasing" : "NOT monotone") +
                     " in d; decline d=0 to d=0.3:" + text);
}

// Trend of one energy algorithm along the grid; `compared` counts enter the text.
std::string energy_column(const harness::SweepTable& t, const std::vector<double>& grid, const std::string& alg) {
  std::string out;
  for (double v : grid) {
    const harness::SweepRow& row = t.row(v, alg);
    out += " " + g(v, 3) + ":" + (row.compared > 0 ? g(row.mean, 5) : std::string("n/a"));
  }
  return out;
}

struct EnergyTrend {
  bool all_compared = true;
  bool nonincreasing = true;
  bool saturates = true;
};

EnergyTrend energy_vs_t_trend(const harness::SweepTable& t, const std::vector<double>& grid) {
  EnergyTrend trend;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (t.row(grid[i], "suboptimal").compared == 0) trend.all_compared = false;
  }
  if (!trend.all_compared) return trend;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double prev = t.row(grid[i - 1], "suboptimal").mean, cur = t.row(grid[i], "suboptimal").mean;
    trend.nonincreasing = trend.nonincreasing && cur <= prev * (1 + 1e-12);
  }
  // The last step changes less than the first one.
  const std::size_t n = grid.size();
  const double first = t.row(grid[0], "suboptimal").mean - t.row(grid[1], "suboptimal").mean;
  const double last = t.row(grid[n - 2], "suboptimal").mean - t.row(grid[n - 1], "suboptimal").mean;
  trend.saturates = last <= first;
  return trend;
}

bool criterion_8c() {
  const harness::SweepSpec spec = harness::default_sweep(harness::Experiment::kEnergyVsT);
  const harness::SweepTable t = harness::run_sweep(spec);
  const EnergyTrend trend = energy_vs_t_trend(t, spec.grid);
  double saving = 0.0;
  const harness::SweepRow& sub = t.row(0.03, "suboptimal");
  const harness::SweepRow& all = t.row(0.03, "all-offload");
  if (sub.compared > 0) saving = 100.0 * (all.mean - sub.mean) / all.mean;
  info("criterion 8c: feasible realizations at T=30 ms: suboptimal " + std::to_string(sub.feasible) + "/" +
       std::to_string(sub.realizations));
  // Same experiment with T set to multiples of each instance's t_min.
  harness::SweepSpec rel = spec;
  rel.deadline_mode = harness::DeadlineMode::kTminMultiple;
  rel.grid = {1.0, 1.2, 1.4, 1.6, 1.8, 2.0, 3.0, 5.0};
  rel.paired = true;
  const harness::SweepTable rt = harness::run_sweep(rel);
  const EnergyTrend rtrend = energy_vs_t_trend(rt, rel.grid);
  info("criterion 8c: T/t_min sweep, suboptimal J:" + energy_column(rt, rel.grid, "suboptimal"));
  info("criterion 8c: T/t_min sweep, all-offload J:" + energy_column(rt, rel.grid, "all-offload"));
  info(std::string("criterion 8c: T/t_min sweep nonincreasing=") + (rtrend.nonincreasing ? "yes" : "no") +
       " saturating=" + (rtrend.saturates ? "yes" : "no") + "; saving vs all-offload at 1.2 t_min " +
       g(100.0 * (rt.row(1.2, "all-offload").mean - rt.row(1.2, "suboptimal").mean) / rt.row(1.2, "all-offload").mean,
         3) +
       "%");
  // Wider parameter spread, where some users gain nothing from offloading.
  harness::SweepSpec mixed = rel;
  mixed.generation = testing::stress_spec(10, 0.2);
  const harness::SweepTable mt = harness::run_sweep(mixed);
  info("criterion 8c: T/t_min sweep, stress distributions, saving vs all-offload:" + [&] {
    std::string out;
    for (double v : mixed.grid) {
      const double a = mt.row(v, "all-offload").mean, b = mt.row(v, "suboptimal").mean;
      out += " " + g(v, 3) + ":" + (mt.row(v, "suboptimal").compared > 0 ? g(100 * (a - b) / a, 3) + "%" : "n/a");
    }
    return out;
  }());
  const bool ok = trend.all_compared && trend.nonincreasing && trend.saturates && within(saving, 14, 5);
  return verdict("8c", ok,
                 trend.all_compared
                     ? "energy vs T nonincreasing=" + std::string(trend.nonincreasing ? "yes" : "no") +
                           " saturating=" + (trend.saturates ? "yes" : "no") + ", saving at 30 ms " + g(saving, 3) +
                           "% (target 14 +-5 pp)"
                     : "no feasible realization at some T in 25..50 ms (K=10, d=0.2); energy trend undefined");
}

bool criterion_8d() {
  const harness::SweepSpec spec = harness::default_sweep(harness::Experiment::kEnergyVsD);
  const harness::SweepTable t = harness::run_sweep(spec);
  auto growth_smaller = [](const harness::SweepTable& table, const std::vector<double>& grid, std::string& text) {
    bool ok = true;
    const double d0 = grid.front();
    for (double d : grid) {
      if (table.row(d, "suboptimal").compared == 0 || table.row(d0, "suboptimal").compared == 0) return false;
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double sub = table.row(grid[i], "suboptimal").mean - table.row(d0, "suboptimal").mean;
      const double all = table.row(grid[i], "all-offload").mean - table.row(d0, "all-offload").mean;
      text += " " + g(grid[i], 3) + ":" + g(sub, 4) + "<" + g(all, 4);
      ok = ok && sub < all;
    }
    return ok;
  };
  std::string text;
  const bool ok = growth_smaller(t, spec.grid, text);
  harness::SweepSpec rel = spec;
  rel.deadline_mode = harness::DeadlineMode::kTminMultiple;
  rel.paired = true;
  const harness::SweepTable rt = harness::run_sweep(rel);
  std::string rel_text;
  const bool rel_ok = growth_smaller(rt, rel.grid, rel_text);
  info("criterion 8d: T = 1.5 t_min sweep, growth suboptimal<all-offload:" + rel_text + " -> " +
       (rel_ok ? "holds" : "fails"));
  harness::SweepSpec mixed = rel;
  mixed.generation = testing::stress_spec(10, 0.2);
  std::string mixed_text;
  const bool mixed_ok = growth_smaller(harness::run_sweep(mixed), mixed.grid, mixed_text);
  info("criterion 8d: same, stress distributions:" + mixed_text + " -> " + (mixed_ok ? "holds" : "fails"));
  return verdict("8d", ok,
                 ok || !text.empty() ? "energy growth from d=0, suboptimal vs all-offload:" + text
                                     : "no feasible realization at T=35 ms (K=10) for some d; growth undefined");
}

bool criterion_9() {
  Rng rng(9);
  std::size_t agree = 0, optimal = 0, deterministic = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const lp::Problem p = testing::random_problem(rng, 2 + trial % 4, 2 + trial % 5);
    const lp::Solution a = lp::solve(p);
    const lp::Solution b = lp::enumerate_vertices(p);
    const lp::Solution again = lp::solve(p);
    if (again.status == a.status && again.x == a.x && again.objective_value == a.objective_value) ++deterministic;
    if (a.status != b.status) continue;
    if (a.status == lp::Status::kOptimal) {
      ++optimal;
      const double e = std::abs(a.objective_value - b.objective_value) / (1.0 + std::abs(b.objective_value));
      worst = std::max(worst, e);
      if (e > 1e-8) continue;
    }
    ++agree;
  }
  return verdict("9", agree == 1000 && deterministic == 1000,
                 "simplex agrees with vertex enumeration on " + std::to_string(agree) + "/1000 LPs (" +
                     std::to_string(optimal) + " optimal, max rel objective err " + g(worst, 3) +
                     "); deterministic on " + std::to_string(deterministic) + "/1000");
}

bool criterion_10(const fs::path& workdir) {
  const fs::path a = workdir / "acceptance_sweep_a.csv", b = workdir / "acceptance_sweep_b.csv";
  const fs::path spec = workdir / "acceptance_sweep.json";
  write_text_file(spec, R"({"experiment": "rate-vs-K"})");
  std::ostringstream out, err;
  const int ca = cli_main({"sweep", spec.string(), "--seed", "7", "--out", a.string()}, out, err);
  const int cb = cli_main({"sweep", spec.string(), "--seed", "7", "--out", b.string()}, out, err);
  const bool ok = ca == 0 && cb == 0 && read_text_file(a) == read_text_file(b);
  const std::size_t bytes = ca == 0 ? read_text_file(a).size() : 0;
  return verdict("10", ok,
                 "two sweep runs with seed 7 produce " + std::string(ok ? "byte-identical" : "DIFFERENT") +
                     " CSV (" + std::to_string(bytes) + " bytes)" + (err.str().empty() ? "" : "; " + err.str()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<std::string> selected;
  std::string workdir = fs::temp_directory_path().string();
  app.add_option("--criterion", selected, "Criterion id (repeatable); default all");
  app.add_option("--workdir", workdir, "Directory for scratch files");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<bool()>>> all = {
      {"1", criterion_1},   {"2", criterion_2},   {"3", criterion_3},   {"4", criterion_4},
      {"5", criterion_5},   {"6", criterion_6},   {"7", criterion_7},   {"8a", criterion_8a},
      {"8b", criterion_8b}, {"8c", criterion_8c}, {"8d", criterion_8d}, {"9", criterion_9},
      {"10", [&] { return criterion_10(workdir); }}};
  bool ok = true;
  std::size_t ran = 0;
  for (const auto& [id, run] : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), id) == selected.end()) continue;
    ++ran;
    try {
      ok = run() && ok;
    } catch (const std::exception& e) {
      ok = verdict(id, false, std::string("threw: ") + e.what()) && ok;
    }
  }
  if (ran == 0) {
    std::cerr << "no such criterion\n";
    return 2;
  }
  return ok ? 0 : 1;
}
