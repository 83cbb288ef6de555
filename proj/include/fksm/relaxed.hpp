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

#ifndef FKSM_RELAXED_HPP_
#define FKSM_RELAXED_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fksm/model.hpp"
#include "fksm/objective.hpp"

namespace fksm {

// A seed set A fixed in advance together with the problem left over once
// it is taken. The residual ground set is renumbered 0..m-1; entry j of
// `original_ids` names residual element j in the source instance.
struct Contraction {
  IntegralSolution seed_set;
  Instance residual;
  Objective objective{Modular{}};  // f_A(S) = f(S ∪ A) - f(A)
  std::vector<int> original_ids;
};

inline constexpr double kDefaultEta = 0.25;
inline constexpr int kDefaultSeedSetSize = 2;
inline constexpr int kDefaultSeedPool = 12;

// Candidate contractions, A = ∅ first. A ranges over sets of at most
// `t_max` elements drawn from the `pool` elements of largest singleton
// value, with w(A) <= B and no upper bound exceeded. The residual drops A,
// lowers B by w(A) and each bound by |A ∩ G_i|, and when A != ∅ keeps only
// elements with f(A + e) - f(A) <= eta f(A). A residual may admit no
// feasible completion; solvers skip those.
std::vector<Contraction> enumeration_preprocess(const Instance& instance,
                                                const Objective& f, double eta,
                                                int t_max,
                                                int pool = kDefaultSeedPool);

enum class ConstraintMode { kExpectedFairness, kExpectedKnapsack };

const char* to_string(ConstraintMode mode);

struct RelaxedDiagnostics {
  std::vector<int> group_counts;
  double total_weight = 0;
  std::uint64_t seed = 0;
  IntegralSolution seed_set;
  double fractional_value = 0;  // f(A) + F_A(x)
  Vector fractional_group_sums;
  Vector rounded_group_sums;  // sums of the rounded vector before floor
  int floor_dropped = 0;      // coordinates lost to the floor step
  bool knapsack_ok = false;
  bool fairness_ok = false;
};

struct RelaxedReport {
  IntegralSolution solution;
  double objective = 0;
  ConstraintMode mode = ConstraintMode::kExpectedFairness;
  RelaxedDiagnostics diagnostics;
  Vector x;  // fractional point, original coordinates, A included
  Vector y;  // rounded point before integralization
  double wall_time_ms = 0;
};

// Exact budget, fairness in expectation: preprocessing, continuous greedy
// per candidate, the best fractional candidate is weighted-pipage rounded
// and floored.
RelaxedReport solve_relaxed_fairness(const Instance& instance,
                                     const Objective& f, double epsilon,
                                     double eta, std::uint64_t seed,
                                     int t_max = kDefaultSeedSetSize);

// Exact fairness, budget in expectation: continuous greedy then group
// pipage rounding.
RelaxedReport solve_relaxed_knapsack(const Instance& instance,
                                     const Objective& f, double epsilon,
                                     std::uint64_t seed);

}  // namespace fksm

#endif  // FKSM_RELAXED_HPP_
