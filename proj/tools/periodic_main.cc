// Copyright 2026 The periodic Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// periodic: generate star instances, solve them, simulate statistical
// multiplexing, validate assignments and run the experiment harness.
//
// Exit codes: 0 success, 1 no assignment / invalid assignment /
// disagreement, 2 usage or I/O error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "periodic/experiments.h"
#include "periodic/instances.h"
#include "periodic/io.h"
#include "periodic/oracle.h"
#include "periodic/pall.h"
#include "periodic/pazl.h"
#include "periodic/statmux.h"

namespace fs = std::filesystem;
using namespace periodic;

namespace {

constexpr int kOk = 0;
constexpr int kNotFound = 1;
constexpr int kError = 2;

struct GenArgs {
  std::size_t n = 8;
  Slot tau = 2500;
  std::string load = "0.95";
  std::string weights = "uniform:0:20000";
  Slot margin = 0;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  bool tail_only = false;
  std::string out = ".";
};

int run_gen(const GenArgs& args) {
  GenSpec spec;
  spec.n = args.n;
  spec.tau = args.tau;
  spec.load = Rational::parse(args.load);
  spec.weights = WeightModel::parse(args.weights);
  spec.margin = args.margin;
  spec.tail_only = args.tail_only;
  spec.check();
  fs::create_directories(args.out);
  for (std::size_t k = 0; k < args.count; ++k) {
    spec.seed = instance_seed(args.seed, k);
    char name[32];
    std::snprintf(name, sizeof name, "instance-%05zu.json", k);
    write_json(fs::path(args.out) / name, to_json(generate(spec)));
  }
  std::cout << "wrote " << args.count << " instance(s) to " << args.out << "\n";
  return kOk;
}

struct SolveArgs {
  std::string instance;
  std::string algo = "pmls";
  std::string policy = "ro";
  std::size_t orders = 1000;
  std::uint64_t seed = 0;
  std::string out;
};

void print_report(const RawStarInstance& raw, const CanonicalStarInstance& inst,
                  const Assignment& canonical) {
  const Assignment asg = to_raw(inst, canonical);
  std::cout << to_json(asg).dump() << "\n";
  const auto pt = raw_process_times(raw, asg);
  std::cout << "route,offset,wait,process_time,deadline\n";
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::cout << i << "," << asg.offsets[i] << "," << asg.waits[i] << ","
              << pt[i] << "," << raw.deadlines[i] << "\n";
  }
}

bool report_violations(const CanonicalStarInstance& inst,
                       const RawStarInstance& raw, const Assignment& raw_asg) {
  const auto canonical = to_canonical(inst, raw_asg);
  const auto violations = validate_pall(inst, canonical);
  const auto raw_violations = validate_raw(raw, raw_asg);
  for (const auto& v : violations) {
    std::cout << to_string(v.kind) << ": " << v.detail << "\n";
  }
  if (violations.empty() && !raw_violations.empty()) {
    for (const auto& v : raw_violations) {
      std::cout << to_string(v.kind) << ": " << v.detail << "\n";
    }
  }
  const bool ok = violations.empty() && raw_violations.empty();
  std::cout << (ok ? "VALID" : "INVALID") << "\n";
  return ok;
}

// Result of one solver on one instance, in the canonical frame.
struct Solved {
  std::optional<Assignment> assignment;
  bool exact = false;    // the solver decides existence
  std::string note;
};

Solved solve_one(const RawStarInstance& raw, const SolveArgs& args) {
  const auto inst = canonicalize(raw);
  Solved s;
  auto from_pazl = [&](PazlResult r) {
    s.assignment = std::move(r.assignment);
    if (r.outcome == PazlResult::Outcome::kUnsat) s.note = "UNSAT";
  };
  auto from_pall = [&](PallResult r) {
    s.assignment = std::move(r.assignment);
    if (r.outcome == PallResult::Outcome::kUnsat) s.note = "UNSAT";
    else if (!r.found()) s.note = r.reason;
  };
  if (args.algo == "sl") {
    from_pazl(shortest_longest(inst));
  } else if (args.algo == "greedy") {
    from_pazl(greedy_macroslot(inst));
  } else if (args.algo == "compact") {
    s.exact = true;
    from_pazl(compact_search(inst));
  } else if (args.algo == "fpt-pall") {
    s.exact = true;
    from_pall(fpt_pall(inst));
  } else if (args.algo == "align") {
    from_pall(align_longest(inst));
  } else if (const auto algo = parse_backward_algo(args.algo)) {
    const auto kind = parse_order_kind(args.policy);
    if (!kind) throw CLI::ValidationError("--policy", "unknown policy " + args.policy);
    auto r = solve_with_orders(inst, raw, *algo, *kind, args.orders, args.seed);
    s.assignment = std::move(r.assignment);
    s.note = "orders tried: " + std::to_string(r.orders_tried);
  } else {
    throw CLI::ValidationError("--algo", "unknown algorithm " + args.algo);
  }
  return s;
}

int run_solve(const SolveArgs& args) {
  const auto raw = read_instance(args.instance);
  const auto inst = canonicalize(raw);
  const Solved s = solve_one(raw, args);
  if (!s.assignment) {
    std::cout << "NO ASSIGNMENT" << (s.note.empty() ? "" : " (" + s.note + ")")
              << "\n";
    return kNotFound;
  }
  print_report(raw, inst, *s.assignment);
  const Assignment raw_asg = to_raw(inst, *s.assignment);
  const bool ok = report_violations(inst, raw, raw_asg);
  if (!args.out.empty()) write_json(args.out, to_json(raw_asg));
  return ok ? kOk : kNotFound;
}

struct SimulateArgs {
  std::string instance;
  std::string assignment;
  std::size_t periods = 1000;
  std::uint64_t seed = 0;
};

int run_simulate(const SimulateArgs& args) {
  const auto raw = read_instance(args.instance);
  std::vector<Slot> offsets, waits;
  if (args.assignment.empty()) {
    offsets = random_offsets(raw, args.seed);
  } else {
    const auto asg = read_assignment(args.assignment);
    offsets = asg.offsets;
    waits = asg.waits;
  }
  const auto report = simulate_statmux(raw, offsets, args.periods, waits);
  std::cout << "route,offset,max_process_time,twice_length\n";
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::cout << i << "," << offsets[i] << "," << report.max_process_time[i]
              << "," << 2 * raw.route_length(i) << "\n";
  }
  std::cout << "margin,stable_period,periods\n"
            << report.margin << "," << report.stable_period << ","
            << report.periods << "\n";
  return kOk;
}

struct ValidateArgs {
  std::string instance;
  std::string assignment;
  std::string oracle_dir;
  std::string algo = "all";
  std::uint64_t budget = 10'000'000;
};

int run_validate_oracle(const ValidateArgs& args) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(args.oracle_dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  const Oracle oracle(args.budget);
  std::vector<std::string> algos = {"compact", "fpt-pall", "sl",  "greedy",
                                    "align",   "gd",       "mls", "pmls",
                                    "fpt-pmls"};
  if (args.algo != "all") algos = {args.algo};
  std::size_t checks = 0, disagreements = 0;
  for (const auto& file : files) {
    const auto raw = read_instance(file);
    const auto inst = canonicalize(raw);
    const bool pazl_sat = oracle.brute_pazl(zero_wait_view(inst)).sat;
    const bool pall_sat = oracle.brute_pall(inst).sat;
    for (const auto& algo : algos) {
      SolveArgs solve;
      solve.algo = algo;
      solve.orders = 20;
      const Solved s = solve_one(raw, solve);
      const bool zero_wait = algo == "compact" || algo == "sl" || algo == "greedy";
      const bool sat = zero_wait ? pazl_sat : pall_sat;
      const auto view = zero_wait ? zero_wait_view(inst) : inst;
      std::string problem;
      if (s.assignment && !is_valid(view, *s.assignment)) {
        problem = "returned an invalid assignment";
      } else if (s.assignment && !sat) {
        problem = "found an assignment the oracle rules out";
      } else if (s.exact && !s.assignment && sat) {
        problem = "reported UNSAT but the oracle finds an assignment";
      }
      ++checks;
      if (!problem.empty()) {
        ++disagreements;
        std::cout << file.string() << ": " << algo << " " << problem << "\n";
      }
    }
  }
  std::cout << files.size() << " instance(s), " << checks << " check(s), "
            << disagreements << " disagreement(s)\n";
  return disagreements == 0 ? kOk : kNotFound;
}

int run_validate(const ValidateArgs& args) {
  if (!args.oracle_dir.empty()) return run_validate_oracle(args);
  if (args.instance.empty() || args.assignment.empty()) {
    throw CLI::ValidationError("validate",
                               "needs INSTANCE and ASSIGNMENT, or --oracle DIR");
  }
  const auto raw = read_instance(args.instance);
  const auto asg = read_assignment(args.assignment);
  if (asg.size() != raw.size()) {
    throw std::runtime_error(args.assignment + ": has " +
                             std::to_string(asg.size()) + " routes, instance has " +
                             std::to_string(raw.size()));
  }
  return report_violations(canonicalize(raw), raw, asg) ? kOk : kNotFound;
}

int run_experiment_cmd(ExperimentOptions options, bool list) {
  if (list) {
    for (const auto& name : experiment_names()) std::cout << name << "\n";
    return kOk;
  }
  std::vector<std::string> names = {options.name};
  if (options.name == "all") names = experiment_names();
  for (const auto& name : names) {
    options.name = name;
    for (const auto& path : run_experiment(options)) {
      std::cout << path.string() << "\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collision-free periodic assignments on star routed networks"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate random raw instances");
  gen_cmd->add_option("--n", gen.n, "Number of routes");
  gen_cmd->add_option("--tau", gen.tau, "Message size in slots");
  gen_cmd->add_option("--load", gen.load, "Target load n*tau/P, e.g. 0.95 or 1/3");
  gen_cmd->add_option("--weights", gen.weights,
                      "uniform:LO:HI | band:C:I | twoband:C1:C2:I (C may use P)");
  gen_cmd->add_option("--margin", gen.margin, "Deadline = 2 * longest route + margin");
  gen_cmd->add_option("--seed", gen.seed, "Seed of the first instance");
  gen_cmd->add_option("--count", gen.count, "Number of instances");
  gen_cmd->add_flag("--tail-only", gen.tail_only, "Draw only the tail weights b");
  gen_cmd->add_option("--out", gen.out, "Output directory");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance");
  solve_cmd->add_option("instance", solve.instance, "Instance JSON")->required();
  solve_cmd->add_option("--algo", solve.algo,
                        "sl|greedy|compact|gd|mls|pmls|fpt-pmls|fpt-pall|align");
  solve_cmd->add_option("--policy", solve.policy, "lsr|slr|lsa|sla|ro|rors|robs");
  solve_cmd->add_option("--orders", solve.orders, "Random orders to draw");
  solve_cmd->add_option("--seed", solve.seed, "Seed of the random orders");
  solve_cmd->add_option("--out", solve.out, "Write the assignment JSON here");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "FIFO statistical multiplexing");
  sim_cmd->add_option("instance", sim.instance, "Instance JSON")->required();
  sim_cmd->add_option("--assignment", sim.assignment,
                      "Use these offsets and waits instead of random offsets");
  sim_cmd->add_option("--periods", sim.periods, "Periods to simulate");
  sim_cmd->add_option("--seed", sim.seed, "Seed of the random offsets");

  ValidateArgs val;
  auto* val_cmd = app.add_subcommand("validate", "Check an assignment");
  val_cmd->add_option("instance", val.instance, "Instance JSON");
  val_cmd->add_option("assignment", val.assignment, "Assignment JSON");
  val_cmd->add_option("--oracle", val.oracle_dir,
                      "Cross-check solvers against brute force on a directory "
                      "of tiny instances");
  val_cmd->add_option("--algo", val.algo, "Solver to cross-check, or all");
  val_cmd->add_option("--budget", val.budget, "Oracle candidate budget");

  ExperimentOptions exp;
  std::string out_dir = ".";
  bool list = false;
  auto* exp_cmd = app.add_subcommand("experiment", "Write experiment CSVs");
  exp_cmd->add_option("name", exp.name, "Experiment name, or all");
  exp_cmd->add_option("--count", exp.count, "Instances per point");
  exp_cmd->add_option("--orders", exp.orders, "Random orders per instance");
  exp_cmd->add_option("--seed", exp.seed, "Base seed");
  exp_cmd->add_option("--threads", exp.threads, "Worker threads (0 = all cores)");
  exp_cmd->add_flag("--full", exp.full, "Paper-scale instance counts");
  exp_cmd->add_option("--out", out_dir, "Output directory");
  exp_cmd->add_flag("--list", list, "List experiment names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (solve_cmd->parsed()) return run_solve(solve);
    if (sim_cmd->parsed()) return run_simulate(sim);
    if (val_cmd->parsed()) return run_validate(val);
    if (exp_cmd->parsed()) {
      if (exp.name.empty() && !list) {
        throw CLI::ValidationError("experiment", "missing experiment name");
      }
      exp.out_dir = out_dir;
      return run_experiment_cmd(exp, list);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
