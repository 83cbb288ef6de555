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

#include "fksm/truncation.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "fksm/error.hpp"
#include "fksm/fractional.hpp"
#include "fksm/random.hpp"
#include "fksm/rounding.hpp"

namespace fksm {
namespace {

int gamma_min(const GroupBound& b) { return b.lower ? std::max(0, *b.lower + 1) : 0; }

int gamma_max(const GroupBound& b, int group_size) {
  return std::min(b.upper, group_size);
}

// Advances `digits` (most significant first) within [lo, hi]; false once
// every combination has been produced.
bool next_combination(std::vector<int>& digits, const std::vector<int>& lo,
                      const std::vector<int>& hi) {
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
    if (digits[i] < hi[i]) {
      ++digits[i];
      return true;
    }
    digits[i] = lo[i];
  }
  return false;
}

}  // namespace

std::string to_string(const TruncationParams& params) {
  std::ostringstream out;
  out << "gamma=(";
  for (std::size_t i = 0; i < params.gamma.size(); ++i) {
    out << (i ? "," : "") << params.gamma[i];
  }
  out << ") beta=(";
  for (std::size_t i = 0; i < params.beta.size(); ++i) {
    out << (i ? "," : "") << params.beta[i];
  }
  out << ")";
  return out.str();
}

ReducedInstance truncate(const Instance& instance, const TruncationParams& params) {
  const int k = instance.num_groups();
  if (static_cast<int>(params.gamma.size()) != k ||
      static_cast<int>(params.beta.size()) != k) {
    throw InvalidInput("params need one gamma and one beta per group");
  }
  const auto members = instance.members();
  ReducedInstance out;
  out.params = params;
  out.light.resize(k);
  out.light_beta.resize(k);
  out.shift.assign(k, 0);
  double reserved = 0;
  for (int g = 0; g < k; ++g) {
    const GroupBound& b = instance.groups[g];
    const int gamma = params.gamma[g];
    const int beta = params.beta[g];
    const int size = static_cast<int>(members[g].size());
    if (gamma < gamma_min(b) || gamma > gamma_max(b, size) || beta < 0 ||
        beta > gamma) {
      throw InvalidInput("malformed params for group " + std::to_string(g + 1) +
                         ": " + to_string(params));
    }
    out.light[g] = smallest_by_weight(instance, g, gamma);
    out.light_beta[g].assign(out.light[g].begin(), out.light[g].begin() + beta);
    const double w_gamma = instance.weight_of(out.light[g]);
    const double w_beta = instance.weight_of(out.light_beta[g]);
    if (gamma > beta) out.shift[g] = (w_gamma - w_beta) / (gamma - beta);
    reserved += w_gamma;
  }
  const double budget = instance.budget - reserved;
  if (budget < -kFeasibilityTol) throw Infeasible("params infeasible");

  std::vector<char> is_light(instance.size(), 0);
  for (const auto& ids : out.light) {
    for (int e : ids) is_light[e] = 1;
  }
  Instance& reduced = out.instance;
  reduced.budget = std::max(0.0, budget);
  reduced.elements = instance.elements;
  for (Element& el : reduced.elements) {
    if (is_light[el.id]) {
      el.weight = 0;
      continue;
    }
    const double w = el.weight - out.shift[el.group];
    if (w < -kFeasibilityTol * (1 + el.weight)) {
      throw InternalError("truncation produced a negative weight");
    }
    el.weight = std::max(0.0, w);
    el.group += k;
  }
  reduced.groups.resize(2 * k);
  for (int g = 0; g < k; ++g) {
    reduced.groups[g] = GroupBound{std::nullopt, params.beta[g]};
    reduced.groups[g + k] = GroupBound{std::nullopt, params.gamma[g] - params.beta[g]};
  }
  return out;
}

IntegralSolution extend_feasible(const Instance& instance,
                                 const ReducedInstance& reduced,
                                 std::span<const int> reduced_solution,
                                 const Objective& f) {
  for (int e : reduced_solution) {
    if (e < 0 || e >= instance.size()) {
      throw InvalidInput("unknown element id " + std::to_string(e));
    }
  }
  if (!is_feasible(reduced.instance, reduced_solution)) {
    throw InvalidInput("set is infeasible for the reduced instance");
  }
  const int k = instance.num_groups();
  std::vector<char> is_light(instance.size(), 0);
  IntegralSolution light_all;
  for (const auto& ids : reduced.light) {
    for (int e : ids) is_light[e] = 1;
    light_all.insert(light_all.end(), ids.begin(), ids.end());
  }
  std::sort(light_all.begin(), light_all.end());

  IntegralSolution extended;
  std::vector<int> count(k, 0);
  for (int e : reduced_solution) {
    if (!is_light[e]) {
      extended.push_back(e);
      ++count[instance.elements[e].group];
    }
  }
  for (int g = 0; g < k; ++g) {
    for (int e : reduced.light[g]) {
      if (count[g] >= reduced.params.gamma[g]) break;
      extended.push_back(e);
      ++count[g];
    }
  }
  std::sort(extended.begin(), extended.end());
  return f(extended) >= f(light_all) ? extended : light_all;
}

void for_each_params(const Instance& instance,
                     const std::function<void(const TruncationParams&)>& visit,
                     bool only_truncatable, int max_groups) {
  const int k = instance.num_groups();
  if (k > max_groups) {
    throw InvalidInput("instance has " + std::to_string(k) +
                       " groups; parameter enumeration is limited to " +
                       std::to_string(max_groups) + " (override to raise)");
  }
  const auto members = instance.members();
  std::vector<int> lo(k), hi(k);
  // prefix[g][c]: weight of the c lightest members of group g.
  std::vector<std::vector<double>> prefix(k);
  for (int g = 0; g < k; ++g) {
    const int size = static_cast<int>(members[g].size());
    lo[g] = gamma_min(instance.groups[g]);
    hi[g] = gamma_max(instance.groups[g], size);
    if (lo[g] > hi[g]) return;
    const auto order = smallest_by_weight(instance, g, size);
    prefix[g].assign(size + 1, 0);
    for (int c = 0; c < size; ++c) {
      prefix[g][c + 1] = prefix[g][c] + instance.elements[order[c]].weight;
    }
  }
  TruncationParams params;
  params.gamma = lo;
  do {
    if (only_truncatable) {
      double reserved = 0;
      for (int g = 0; g < k; ++g) reserved += prefix[g][params.gamma[g]];
      if (instance.budget - reserved < -kFeasibilityTol) continue;
    }
    const std::vector<int> zeros(k, 0);
    params.beta = zeros;
    do {
      visit(params);
    } while (next_combination(params.beta, zeros, params.gamma));
  } while (next_combination(params.gamma, lo, hi));
}

std::vector<TruncationParams> enumerate_params(const Instance& instance,
                                               bool only_truncatable,
                                               int max_groups) {
  std::vector<TruncationParams> out;
  for_each_params(
      instance, [&out](const TruncationParams& p) { out.push_back(p); },
      only_truncatable, max_groups);
  return out;
}

long count_params(const Instance& instance) {
  const auto members = instance.members();
  long total = 1;
  for (int g = 0; g < instance.num_groups(); ++g) {
    long group_total = 0;
    const int size = static_cast<int>(members[g].size());
    for (int gamma = gamma_min(instance.groups[g]);
         gamma <= gamma_max(instance.groups[g], size); ++gamma) {
      group_total += gamma + 1;
    }
    total *= group_total;
  }
  return total;
}

BfsmResult solve_bfsm(const Instance& reduced, const Objective& f,
                      double epsilon, std::uint64_t seed, int max_retries) {
  for (const GroupBound& b : reduced.groups) {
    if (b.min_count() > 0) {
      throw InvalidInput("upper-bounded solver got an instance with lower bounds");
    }
  }
  if (max_retries < 1) throw InvalidInput("max_retries must be positive");
  Instance scaled = reduced;
  scaled.budget = reduced.budget / (1 + epsilon);
  const Vector x = continuous_greedy(
      scaled, f, GreedyConfig::for_epsilon(epsilon, derive_seed(seed, 0)));

  BfsmResult result;
  IntegralSolution lightest;
  double lightest_weight = 0;
  for (int attempt = 1; attempt <= max_retries; ++attempt) {
    IntegralSolution s = group_pipage_round(scaled, x, derive_seed(seed, attempt));
    const double w = reduced.weight_of(s);
    result.attempts = attempt;
    if (w <= reduced.budget + kFeasibilityTol) {
      result.value = f(s);
      result.selected = std::move(s);
      return result;
    }
    if (lightest.empty() || w < lightest_weight) {
      lightest = std::move(s);
      lightest_weight = w;
    }
  }

  // Drop the element whose removal costs the least until the budget holds.
  result.fallback = true;
  IntegralSolution s = std::move(lightest);
  while (!s.empty() && reduced.weight_of(s) > reduced.budget + kFeasibilityTol) {
    const double current = f(s);
    std::size_t drop = 0;
    double best_loss = 0, best_weight = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      IntegralSolution without = s;
      without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
      const double loss = current - f(without);
      const double w = reduced.elements[s[i]].weight;
      if (i == 0 || loss < best_loss || (loss == best_loss && w > best_weight)) {
        drop = i;
        best_loss = loss;
        best_weight = w;
      }
    }
    s.erase(s.begin() + static_cast<std::ptrdiff_t>(drop));
  }
  result.value = f(s);
  result.selected = std::move(s);
  return result;
}

SolveReport solve_fksm_truncating(const Instance& instance, const Objective& f,
                                  double epsilon, std::uint64_t seed,
                                  const TruncatingOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const ValidationReport check = validate(instance);
  if (!check.structurally_valid) throw InvalidInput(check.errors.front());
  if (!check.feasible) throw Infeasible("infeasible instance");
  if (f.size() != instance.size()) {
    throw InvalidInput("objective and instance disagree on the ground set");
  }

  SolveReport report;
  report.method = "truncating";
  report.seed = seed;
  report.epsilon = epsilon;
  double best = -1;
  std::uint64_t index = 0;
  for_each_params(
      instance,
      [&](const TruncationParams& params) {
        const ReducedInstance reduced = truncate(instance, params);
        const BfsmResult bfsm = solve_bfsm(reduced.instance, f, epsilon,
                                           derive_seed(seed, index++),
                                           options.max_retries);
        ParamDiagnostics diag;
        diag.params = params;
        diag.reduced_budget = reduced.instance.budget;
        diag.bfsm_value = bfsm.value;
        diag.bfsm_attempts = bfsm.attempts;
        diag.bfsm_fallback = bfsm.fallback;
        diag.extended = extend_feasible(instance, reduced, bfsm.selected, f);
        diag.extended_value = f(diag.extended);
        if (diag.extended_value > best + 1e-12) {
          best = diag.extended_value;
          report.solution = diag.extended;
          report.params = params;
        }
        report.per_param.push_back(std::move(diag));
      },
      true, options.max_groups);
  if (report.per_param.empty()) throw Infeasible("no truncation parameters fit the budget");

  report.objective = best;
  report.weight = instance.weight_of(report.solution);
  report.group_counts = instance.group_counts(report.solution);
  report.feasible = is_feasible(instance, report.solution);
  if (!report.feasible) {
    throw InternalError("feasibility extension returned an infeasible set");
  }
  report.wall_time_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

}  // namespace fksm
