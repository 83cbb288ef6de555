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

#include "fksm/relaxed.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>

#include "fksm/error.hpp"
#include "fksm/fractional.hpp"
#include "fksm/multilinear.hpp"
#include "fksm/random.hpp"
#include "fksm/rounding.hpp"

namespace fksm {
namespace {

constexpr std::uint64_t kRoundingStream = ~std::uint64_t{0};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

void require_feasible(const Instance& instance, const Objective& f) {
  const ValidationReport check = validate(instance);
  if (!check.structurally_valid) throw InvalidInput(check.errors.front());
  if (!check.feasible) throw Infeasible("infeasible instance");
  if (f.size() != instance.size()) {
    throw InvalidInput("objective and instance disagree on the ground set");
  }
}

// Whether the cheapest lower-bound fill of the residual fits its budget.
bool has_completion(const Instance& residual) {
  const auto members = residual.members();
  double weight = 0;
  for (int g = 0; g < residual.num_groups(); ++g) {
    const int need = residual.groups[g].min_count();
    if (need > static_cast<int>(members[g].size())) return false;
    weight += residual.weight_of(smallest_by_weight(residual, g, need));
  }
  return weight <= residual.budget + kFeasibilityTol;
}

Contraction contract(const Instance& instance, const Objective& f,
                     IntegralSolution seed_set, double eta) {
  Contraction out;
  const std::vector<int> taken = instance.group_counts(seed_set);
  const double base = f(seed_set);
  std::vector<char> in_seed(instance.size(), 0);
  for (int e : seed_set) in_seed[e] = 1;
  for (int e = 0; e < instance.size(); ++e) {
    if (in_seed[e]) continue;
    if (!seed_set.empty() && marginal(f, seed_set, e) > base * eta) continue;
    out.original_ids.push_back(e);
  }
  Instance& r = out.residual;
  r.budget = std::max(0.0, instance.budget - instance.weight_of(seed_set));
  r.groups = instance.groups;
  for (int g = 0; g < instance.num_groups(); ++g) {
    if (r.groups[g].lower) *r.groups[g].lower -= taken[g];
    r.groups[g].upper -= taken[g];
  }
  for (std::size_t j = 0; j < out.original_ids.size(); ++j) {
    const Element& src = instance.elements[out.original_ids[j]];
    r.elements.push_back(Element{static_cast<int>(j), src.weight, src.group});
  }
  out.objective = f.contract(seed_set, out.original_ids);
  out.seed_set = std::move(seed_set);
  return out;
}

double fractional_value(const Objective& f, const Vector& x, std::uint64_t seed) {
  if (fractional_count(x) <= kMaxExactSupport) return multilinear_exact(f, x);
  return multilinear_sample(f, x, kDefaultSamples, seed).value;
}

Vector solve_fractional(const Instance& instance, const Objective& f,
                        double epsilon, std::uint64_t seed) {
  if (instance.size() == 0) return Vector(0);
  return continuous_greedy(instance, f, GreedyConfig::for_epsilon(epsilon, seed));
}

void finish(const Instance& instance, RelaxedReport& report) {
  RelaxedDiagnostics& d = report.diagnostics;
  d.group_counts = instance.group_counts(report.solution);
  d.total_weight = instance.weight_of(report.solution);
  d.knapsack_ok = d.total_weight <= instance.budget + kFeasibilityTol;
  d.fairness_ok = true;
  for (int g = 0; g < instance.num_groups(); ++g) {
    d.fairness_ok = d.fairness_ok && instance.groups[g].admits(d.group_counts[g]);
  }
  d.fractional_group_sums = instance.group_sums(report.x);
  d.rounded_group_sums = instance.group_sums(report.y);
}

}  // namespace

const char* to_string(ConstraintMode mode) {
  return mode == ConstraintMode::kExpectedFairness ? "expected-fairness"
                                                   : "expected-knapsack";
}

std::vector<Contraction> enumeration_preprocess(const Instance& instance,
                                                const Objective& f, double eta,
                                                int t_max, int pool) {
  if (!(eta > 0)) throw InvalidInput("eta must be positive");
  if (t_max < 0) throw InvalidInput("t_max must be non-negative");
  std::vector<Contraction> out;
  out.push_back(contract(instance, f, {}, eta));
  if (t_max == 0 || instance.size() == 0) return out;

  std::vector<int> order(instance.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> single(instance.size());
  for (int e = 0; e < instance.size(); ++e) {
    const int ids[] = {e};
    single[e] = f(ids);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return single[a] > single[b]; });
  order.resize(std::min<std::size_t>(order.size(), std::max(pool, 0)));
  std::sort(order.begin(), order.end());

  IntegralSolution chosen;
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    for (std::size_t i = from; i < order.size(); ++i) {
      chosen.push_back(order[i]);
      bool fits = instance.weight_of(chosen) <= instance.budget + kFeasibilityTol;
      const std::vector<int> counts = instance.group_counts(chosen);
      for (int g = 0; fits && g < instance.num_groups(); ++g) {
        fits = counts[g] <= instance.groups[g].upper;
      }
      if (fits) {
        out.push_back(contract(instance, f, chosen, eta));
        if (static_cast<int>(chosen.size()) < t_max) extend(i + 1);
      }
      chosen.pop_back();
    }
  };
  extend(0);
  return out;
}

RelaxedReport solve_relaxed_fairness(const Instance& instance,
                                     const Objective& f, double epsilon,
                                     double eta, std::uint64_t seed,
                                     int t_max) {
  const auto start = std::chrono::steady_clock::now();
  require_feasible(instance, f);
  const std::vector<Contraction> candidates =
      enumeration_preprocess(instance, f, eta, t_max);

  std::size_t best = 0;
  Vector best_x;
  double best_value = -1;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const Contraction& cand = candidates[c];
    if (!has_completion(cand.residual)) continue;
    const std::uint64_t cand_seed = derive_seed(seed, c);
    Vector x = solve_fractional(cand.residual, cand.objective, epsilon, cand_seed);
    const double value = f(cand.seed_set) +
                         fractional_value(cand.objective, x, derive_seed(cand_seed, 1));
    if (value > best_value + 1e-12) {
      best_value = value;
      best = c;
      best_x = std::move(x);
    }
  }

  const Contraction& chosen = candidates[best];
  const WeightedRounding rounded = weighted_pipage_round(
      chosen.residual, best_x, derive_seed(seed, kRoundingStream));
  const IntegralSolution z = floor_integralize(rounded.y);

  RelaxedReport report;
  report.mode = ConstraintMode::kExpectedFairness;
  report.x = indicator(instance.size(), chosen.seed_set);
  report.y = report.x;
  for (std::size_t j = 0; j < chosen.original_ids.size(); ++j) {
    report.x[chosen.original_ids[j]] = best_x[j];
    report.y[chosen.original_ids[j]] = rounded.y[j];
  }
  report.solution = chosen.seed_set;
  for (int j : z) report.solution.push_back(chosen.original_ids[j]);
  std::sort(report.solution.begin(), report.solution.end());
  report.objective = f(report.solution);

  RelaxedDiagnostics& d = report.diagnostics;
  d.seed = seed;
  d.seed_set = chosen.seed_set;
  d.fractional_value = best_value;
  for (Eigen::Index j = 0; j < rounded.y.size(); ++j) {
    if (rounded.y[j] > kFloorSnapTol && rounded.y[j] < 1 - kFloorSnapTol) {
      ++d.floor_dropped;
    }
  }
  finish(instance, report);
  if (!d.knapsack_ok) throw InternalError("rounded solution exceeds the budget");
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

RelaxedReport solve_relaxed_knapsack(const Instance& instance,
                                     const Objective& f, double epsilon,
                                     std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  require_feasible(instance, f);
  RelaxedReport report;
  report.mode = ConstraintMode::kExpectedKnapsack;
  report.x = solve_fractional(instance, f, epsilon, derive_seed(seed, 0));
  report.solution =
      group_pipage_round(instance, report.x, derive_seed(seed, kRoundingStream));
  report.y = indicator(instance.size(), report.solution);
  report.objective = f(report.solution);

  RelaxedDiagnostics& d = report.diagnostics;
  d.seed = seed;
  d.fractional_value =
      fractional_value(f, report.x, derive_seed(derive_seed(seed, 0), 1));
  finish(instance, report);
  if (!d.fairness_ok) throw InternalError("group rounding broke a fairness bound");
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

}  // namespace fksm
