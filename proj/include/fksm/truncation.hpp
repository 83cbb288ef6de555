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

#ifndef FKSM_TRUNCATION_HPP_
#define FKSM_TRUNCATION_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fksm/model.hpp"
#include "fksm/objective.hpp"

namespace fksm {

// gamma_i: how many elements the target solution takes from group i.
// beta_i: how many of those are among the gamma_i lightest of the group.
struct TruncationParams {
  std::vector<int> gamma;
  std::vector<int> beta;

  friend bool operator==(const TruncationParams&, const TruncationParams&) = default;
};

std::string to_string(const TruncationParams& params);

// Output of knapsack truncation. `instance` has 2k groups and upper bounds
// only: group i holds L_i(gamma_i) at weight 0 with quota beta_i, group
// i + k holds the rest of G_i with quota gamma_i - beta_i and weights
// lowered by `shift[i]`.
struct ReducedInstance {
  Instance instance;
  TruncationParams params;
  std::vector<std::vector<int>> light;       // L_i(gamma_i), by weight
  std::vector<std::vector<int>> light_beta;  // L_i(beta_i), by weight
  std::vector<double> shift;  // (w(L_i(gamma_i)) - w(L_i(beta_i))) / (gamma_i - beta_i)
};

// Throws InvalidInput for malformed params and Infeasible("params
// infeasible") when the reduced budget would be negative.
ReducedInstance truncate(const Instance& instance, const TruncationParams& params);

// Lifts a reduced-feasible set back to the original instance: keep the
// heavy part, top up each group from L_i(gamma_i) in increasing weight,
// and return the better of that and L(gamma).
IntegralSolution extend_feasible(const Instance& instance,
                                 const ReducedInstance& reduced,
                                 std::span<const int> reduced_solution,
                                 const Objective& f);

inline constexpr int kDefaultMaxGroups = 3;

// Calls `visit` with every (gamma, beta) in lexicographic order. With
// `only_truncatable`, pairs whose reduced budget would be negative are
// skipped. Refuses instances with more than `max_groups` groups.
void for_each_params(const Instance& instance,
                     const std::function<void(const TruncationParams&)>& visit,
                     bool only_truncatable = true,
                     int max_groups = kDefaultMaxGroups);
std::vector<TruncationParams> enumerate_params(const Instance& instance,
                                               bool only_truncatable = true,
                                               int max_groups = kDefaultMaxGroups);

// prod_i sum_{gamma_i} (gamma_i + 1): the unfiltered enumeration size.
long count_params(const Instance& instance);

struct BfsmResult {
  IntegralSolution selected;
  double value = 0;
  int attempts = 0;
  bool fallback = false;  // rounding never met the budget; repaired greedily
};

inline constexpr int kDefaultMaxRetries = 50;

// Upper-bounded fair knapsack maximization: continuous greedy at budget
// B / (1 + epsilon), group pipage rounding, retried with fresh seeds until
// the budget holds.
BfsmResult solve_bfsm(const Instance& reduced, const Objective& f,
                      double epsilon, std::uint64_t seed,
                      int max_retries = kDefaultMaxRetries);

struct ParamDiagnostics {
  TruncationParams params;
  double reduced_budget = 0;
  double bfsm_value = 0;
  int bfsm_attempts = 0;
  bool bfsm_fallback = false;
  double extended_value = 0;
  IntegralSolution extended;
};

struct SolveReport {
  std::string method;
  IntegralSolution solution;
  double objective = 0;
  TruncationParams params;  // pair that produced `solution`
  std::uint64_t seed = 0;
  double epsilon = 0;
  double wall_time_ms = 0;
  double weight = 0;
  std::vector<int> group_counts;
  bool feasible = false;
  std::vector<ParamDiagnostics> per_param;
};

struct TruncatingOptions {
  int max_groups = kDefaultMaxGroups;
  int max_retries = kDefaultMaxRetries;
};

// Enumerate (gamma, beta), truncate, solve the reduced instance, extend,
// and keep the first best extension.
SolveReport solve_fksm_truncating(const Instance& instance, const Objective& f,
                                  double epsilon, std::uint64_t seed,
                                  const TruncatingOptions& options = {});

}  // namespace fksm

#endif  // FKSM_TRUNCATION_HPP_
