// Copyright 2026 The Authors.
//
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

// Command-line front end: gen, validate, solve, stats, bench.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fksm/error.hpp"
#include "fksm/fractional.hpp"
#include "fksm/io.hpp"
#include "fksm/oracle.hpp"
#include "fksm/problem.hpp"
#include "fksm/random.hpp"
#include "fksm/relaxed.hpp"
#include "fksm/rounding.hpp"
#include "fksm/truncation.hpp"

namespace fs = std::filesystem;
using namespace fksm;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInternal = 4;

const std::vector<std::string> kMethods = {"truncating", "relaxed-fairness",
                                           "relaxed-knapsack", "bruteforce"};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t s = (std::uint64_t{rd()} << 32) ^ rd();
  std::cerr << "seed=" << s << '\n';
  return s;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

std::string join_counts(const std::vector<int>& counts, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out += (i ? sep : "") + std::to_string(counts[i]);
  }
  return out;
}

std::optional<double> oracle_value(const Problem& p) {
  if (p.instance.size() > kMaxOracleSize) return std::nullopt;
  return brute_force_opt(p.instance, p.objective).best_value;
}

// ---------------------------------------------------------------- gen

struct GenOptions {
  GeneratorParams params;
  std::string objective = "coverage";
  std::optional<std::uint64_t> seed;
  std::string out;
  int count = 1;
};

ObjectiveKind parse_kind(const std::string& name) {
  if (name == "coverage") return ObjectiveKind::kCoverage;
  if (name == "modular") return ObjectiveKind::kModular;
  if (name == "saturating") return ObjectiveKind::kSaturating;
  throw InvalidInput("unknown objective '" + name + "'");
}

int run_gen(GenOptions opt) {
  opt.params.objective_kind = parse_kind(opt.objective);
  const std::uint64_t seed = resolve_seed(opt.seed);
  if (opt.count == 1) {
    emit(to_json(generate_random(opt.params, seed)).dump(2) + "\n", opt.out);
    return 0;
  }
  if (opt.count < 1) throw InvalidInput("--count must be positive");
  if (opt.out.empty()) throw InvalidInput("--count needs --out DIR");
  fs::create_directories(opt.out);
  for (int i = 0; i < opt.count; ++i) {
    std::ostringstream name;
    name << "instance_" << std::setw(3) << std::setfill('0') << i << ".json";
    save_problem(generate_random(opt.params, derive_seed(seed, i)),
                 (fs::path(opt.out) / name.str()).string());
  }
  std::cout << "wrote " << opt.count << " instances to " << opt.out << '\n';
  return 0;
}

// ----------------------------------------------------------- validate

int run_validate(const std::string& path, const std::string& out) {
  const Problem p = load_problem(path);
  const ValidationReport report = validate(p.instance);
  emit(to_json(report).dump(2) + "\n", out);
  if (!report.structurally_valid) return kExitInvalid;
  return report.feasible ? 0 : kExitInfeasible;
}

// -------------------------------------------------------------- solve

struct SolveOptions {
  std::string instance;
  std::string method = "truncating";
  double epsilon = 0.1;
  double eta = kDefaultEta;
  int t_max = kDefaultSeedSetSize;
  int max_groups = kDefaultMaxGroups;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  int runs = 1;
  bool no_oracle = false;
};

struct Outcome {
  IntegralSolution solution;
  double objective = 0;
  double weight = 0;
  std::vector<int> group_counts;
};

std::string status_line(const std::string& method, const Problem& p,
                        const Outcome& o, std::optional<double> opt,
                        std::uint64_t seed) {
  std::ostringstream line;
  line << "method=" << method << " objective=" << format_number(o.objective);
  if (opt) {
    line << " opt=" << format_number(*opt) << " ratio="
         << format_number(*opt > 0 ? o.objective / *opt : 1.0);
  }
  const bool knapsack = o.weight <= p.instance.budget + kFeasibilityTol;
  bool fair = true;
  for (int g = 0; g < p.instance.num_groups(); ++g) {
    fair = fair && p.instance.groups[g].admits(o.group_counts[g]);
  }
  const char* weight_mode = method == "relaxed-knapsack" ? "expected" : "exact";
  const char* fair_mode = method == "relaxed-fairness" ? "expected" : "exact";
  line << " weight=" << format_number(o.weight) << "/"
       << format_number(p.instance.budget) << " weight_status=" << weight_mode
       << (knapsack ? "(met)" : "(violated)") << " fairness_status=" << fair_mode
       << (fair ? "(met)" : "(violated)") << " counts=" << join_counts(o.group_counts)
       << " seed=" << seed;
  return line.str();
}

int run_solve(const SolveOptions& opt) {
  const Problem p = load_problem(opt.instance);
  const Instance& inst = p.instance;
  const ValidationReport check = validate(inst);
  if (!check.structurally_valid) throw InvalidInput(check.errors.front());
  if (!check.feasible) throw Infeasible("infeasible");
  if (opt.runs < 1) throw InvalidInput("--runs must be positive");
  if (opt.format != "json" && opt.format != "csv") {
    throw InvalidInput("--format must be json or csv");
  }
  const std::uint64_t seed = resolve_seed(opt.seed);
  const std::optional<double> opt_value =
      opt.no_oracle ? std::nullopt : oracle_value(p);

  Outcome o;
  std::string body;
  if (opt.method == "bruteforce") {
    const OracleResult r = brute_force_opt(inst, p.objective);
    o = {r.best_set, r.best_value, inst.weight_of(r.best_set),
         inst.group_counts(r.best_set)};
    if (opt.format == "json") {
      Json doc = to_json(r);
      doc["method"] = "bruteforce";
      doc["seed"] = seed;
      body = doc.dump(2) + "\n";
    } else {
      body = "solution,objective,weight,group_counts\n" +
             join_counts(r.best_set, ";") + "," + format_number(r.best_value) +
             "," + format_number(o.weight) + "," + join_counts(o.group_counts, ";") +
             "\n";
    }
  } else if (opt.method == "truncating") {
    TruncatingOptions topt;
    topt.max_groups = opt.max_groups;
    const SolveReport r = solve_fksm_truncating(inst, p.objective, opt.epsilon, seed, topt);
    o = {r.solution, r.objective, r.weight, r.group_counts};
    if (opt.format == "json") {
      body = to_json(r).dump(2) + "\n";
    } else {
      std::ostringstream csv;
      write_params_csv(csv, r);
      body = csv.str();
    }
  } else if (opt.method == "relaxed-fairness" || opt.method == "relaxed-knapsack") {
    std::vector<RelaxedReport> runs;
    for (int r = 0; r < opt.runs; ++r) {
      const std::uint64_t run_seed = opt.runs == 1 ? seed : derive_seed(seed, r);
      runs.push_back(opt.method == "relaxed-fairness"
                         ? solve_relaxed_fairness(inst, p.objective, opt.epsilon,
                                                  opt.eta, run_seed, opt.t_max)
                         : solve_relaxed_knapsack(inst, p.objective, opt.epsilon,
                                                  run_seed));
    }
    const RelaxedReport& first = runs.front();
    o = {first.solution, first.objective, first.diagnostics.total_weight,
         first.diagnostics.group_counts};
    if (opt.format == "json") {
      if (runs.size() == 1) {
        body = to_json(first).dump(2) + "\n";
      } else {
        Json doc = Json::array();
        for (const auto& r : runs) doc.push_back(to_json(r));
        body = doc.dump(2) + "\n";
      }
    } else {
      std::ostringstream csv;
      write_runs_csv(csv, inst, runs);
      body = csv.str();
    }
    if (runs.size() > 1) {
      double mean = 0;
      for (const auto& r : runs) mean += r.objective;
      mean /= static_cast<double>(runs.size());
      std::cerr << "runs=" << runs.size() << " mean_objective=" << format_number(mean)
                << '\n';
    }
  } else {
    throw InvalidInput("unknown method '" + opt.method + "'");
  }
  if (!opt.out.empty()) emit(body, opt.out);
  std::cout << status_line(opt.method, p, o, opt_value, seed) << '\n';
  return 0;
}

// -------------------------------------------------------------- stats

struct StatsOptions {
  std::string instance;
  std::string x_source = "greedy";
  std::string x_file;
  std::string rounder = "weighted";
  long trials = 1000;
  double epsilon = 0.1;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "csv";
};

int run_stats(const StatsOptions& opt) {
  const Problem p = load_problem(opt.instance);
  if (opt.trials < 1) throw InvalidInput("--trials must be positive");
  const std::uint64_t seed = resolve_seed(opt.seed);
  Vector x;
  if (opt.x_source == "file") {
    if (opt.x_file.empty()) throw InvalidInput("--x-source file needs --x-file");
    x = load_vector(opt.x_file);
    if (x.size() != p.instance.size()) {
      throw InvalidInput("x has " + std::to_string(x.size()) +
                         " coordinates, instance has " +
                         std::to_string(p.instance.size()));
    }
  } else if (opt.x_source == "greedy") {
    const ValidationReport check = validate(p.instance);
    if (!check.structurally_valid) throw InvalidInput(check.errors.front());
    if (!check.feasible) throw Infeasible("infeasible");
    x = continuous_greedy(p.instance, p.objective,
                          GreedyConfig::for_epsilon(opt.epsilon, derive_seed(seed, 0)));
  } else {
    throw InvalidInput("--x-source must be greedy or file");
  }
  Rounder rounder;
  if (opt.rounder == "weighted") {
    rounder = Rounder::kWeighted;
  } else if (opt.rounder == "group") {
    rounder = Rounder::kGroup;
  } else {
    throw InvalidInput("--rounder must be weighted or group");
  }
  const RoundingStats stats =
      monte_carlo_stats(p.instance, p.objective, x, rounder, opt.trials, seed);

  if (opt.format == "json") {
    emit(to_json(stats).dump(2) + "\n", opt.out);
  } else if (opt.out.empty()) {
    write_marginals_csv(std::cout, stats);
  } else {
    const fs::path base(opt.out);
    const std::string stem = (base.parent_path() / base.stem()).string();
    std::ofstream marginals(opt.out), pairs(stem + "_pairs.csv"),
        groups(stem + "_groups.csv");
    if (!marginals || !pairs || !groups) throw InvalidInput("cannot write " + opt.out);
    write_marginals_csv(marginals, stats);
    write_pairs_csv(pairs, stats);
    write_groups_csv(groups, stats);
  }
  long violations = 0;
  for (long v : stats.fairness_violations) violations += v;
  std::cerr << "rounder=" << to_string(stats.rounder) << " trials=" << stats.trials
            << " objective=" << format_number(stats.objective.mean)
            << " knapsack_violations=" << stats.knapsack_violations
            << " fairness_violations=" << violations << " seed=" << seed << '\n';
  return 0;
}

// -------------------------------------------------------------- bench

struct BenchOptions {
  std::string dir;
  std::vector<std::string> methods = {"all"};
  double epsilon = 0.1;
  double eta = kDefaultEta;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_bench(BenchOptions opt) {
  if (std::find(opt.methods.begin(), opt.methods.end(), "all") != opt.methods.end()) {
    opt.methods = kMethods;
  }
  for (const auto& m : opt.methods) {
    if (std::find(kMethods.begin(), kMethods.end(), m) == kMethods.end()) {
      throw InvalidInput("unknown method '" + m + "'");
    }
  }
  if (!fs::is_directory(opt.dir)) throw InvalidInput(opt.dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(opt.dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InvalidInput("no .json instances in " + opt.dir);
  const std::uint64_t seed = resolve_seed(opt.seed);

  std::ostringstream csv;
  write_bench_header(csv);
  std::size_t failed = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string name = files[i].filename().string();
    const std::uint64_t inst_seed = derive_seed(seed, i);
    try {
      const Problem p = load_problem(files[i].string());
      const ValidationReport check = validate(p.instance);
      if (!check.ok()) throw Infeasible(check.errors.front());
      const std::optional<double> opt_value = oracle_value(p);
      for (const auto& method : opt.methods) {
        BenchRow row{name, method, 0, opt_value, 0, {}, 0};
        try {
          if (method == "truncating") {
            const SolveReport r =
                solve_fksm_truncating(p.instance, p.objective, opt.epsilon, inst_seed);
            row.objective = r.objective;
            row.group_counts = r.group_counts;
            row.weight = r.weight;
            row.wall_ms = r.wall_time_ms;
          } else if (method == "bruteforce") {
            const auto start = std::chrono::steady_clock::now();
            const OracleResult r = brute_force_opt(p.instance, p.objective);
            row.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
            row.objective = r.best_value;
            row.group_counts = p.instance.group_counts(r.best_set);
            row.weight = p.instance.weight_of(r.best_set);
          } else {
            const RelaxedReport r =
                method == "relaxed-fairness"
                    ? solve_relaxed_fairness(p.instance, p.objective, opt.epsilon,
                                             opt.eta, inst_seed)
                    : solve_relaxed_knapsack(p.instance, p.objective, opt.epsilon,
                                             inst_seed);
            row.objective = r.objective;
            row.group_counts = r.diagnostics.group_counts;
            row.weight = r.diagnostics.total_weight;
            row.wall_ms = r.wall_time_ms;
          }
          write_bench_row(csv, row);
        } catch (const InvalidInput& e) {
          std::cerr << "warning: " << name << " " << method << ": " << e.what() << '\n';
        }
      }
    } catch (const std::exception& e) {
      ++failed;
      std::cerr << "warning: skipping " << name << ": " << e.what() << '\n';
    }
  }
  emit(csv.str(), opt.out);
  std::cerr << "instances=" << files.size() << " failed=" << failed
            << " seed=" << seed << '\n';
  return failed == files.size() ? kExitInvalid : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair knapsack-constrained submodular maximization"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random feasible instance");
  gen_cmd->add_option("--n", gen.params.n, "Number of elements");
  gen_cmd->add_option("--k", gen.params.k, "Number of groups");
  gen_cmd->add_option("--weight-min", gen.params.weight_min);
  gen_cmd->add_option("--weight-max", gen.params.weight_max);
  gen_cmd->add_option("--tightness", gen.params.bound_tightness,
                      "Fairness bound tightness in [0,1]");
  gen_cmd->add_option("--slack", gen.params.budget_slack, "Budget slack in [0,1]");
  gen_cmd->add_option("--objective", gen.objective, "coverage | modular | saturating");
  gen_cmd->add_option("--universe", gen.params.universe_size, "Coverage universe size");
  gen_cmd->add_option("--density", gen.params.cover_density, "Coverage density");
  gen_cmd->add_flag("!--no-lower", gen.params.with_lower_bounds,
                    "Omit fairness lower bounds");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--count", gen.count, "Write this many instances into --out DIR");
  gen_cmd->add_option("--out", gen.out, "Output file (stdout if absent)");

  std::string validate_path, validate_out;
  auto* val_cmd = app.add_subcommand("validate", "Check an instance file");
  val_cmd->add_option("instance", validate_path)->required();
  val_cmd->add_option("--out", validate_out);

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("instance", solve.instance)->required();
  solve_cmd->add_option("--method", solve.method)
      ->check(CLI::IsMember(kMethods));
  solve_cmd->add_option("--epsilon", solve.epsilon);
  solve_cmd->add_option("--eta", solve.eta);
  solve_cmd->add_option("--t-max", solve.t_max, "Seed-set size for relaxed-fairness");
  solve_cmd->add_option("--max-groups", solve.max_groups,
                        "Group limit for truncating enumeration");
  solve_cmd->add_option("--seed", solve.seed);
  solve_cmd->add_option("--out", solve.out);
  solve_cmd->add_option("--format", solve.format, "json | csv");
  solve_cmd->add_option("--runs", solve.runs, "Independent runs (relaxed methods)");
  solve_cmd->add_flag("--no-oracle", solve.no_oracle, "Skip the exact optimum");

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "Monte-Carlo rounding statistics");
  stats_cmd->add_option("instance", stats.instance)->required();
  stats_cmd->add_option("--x-source", stats.x_source, "greedy | file");
  stats_cmd->add_option("--x-file", stats.x_file);
  stats_cmd->add_option("--rounder", stats.rounder, "weighted | group");
  stats_cmd->add_option("--trials", stats.trials);
  stats_cmd->add_option("--epsilon", stats.epsilon);
  stats_cmd->add_option("--seed", stats.seed);
  stats_cmd->add_option("--out", stats.out,
                        "Marginals CSV; _pairs.csv and _groups.csv are written beside it");
  stats_cmd->add_option("--format", stats.format, "csv | json");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run methods over a directory");
  bench_cmd->add_option("dir", bench.dir)->required();
  bench_cmd->add_option("--methods", bench.methods, "all or a list of methods");
  bench_cmd->add_option("--epsilon", bench.epsilon);
  bench_cmd->add_option("--eta", bench.eta);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--out", bench.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*val_cmd) return run_validate(validate_path, validate_out);
    if (*solve_cmd) return run_solve(solve);
    if (*stats_cmd) return run_stats(stats);
    if (*bench_cmd) return run_bench(bench);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInvalid;
}
