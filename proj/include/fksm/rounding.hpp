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

#ifndef FKSM_ROUNDING_HPP_
#define FKSM_ROUNDING_HPP_

#include <cstdint>
#include <vector>

#include "fksm/model.hpp"
#include "fksm/objective.hpp"
#include "fksm/stats.hpp"

namespace fksm {

// Coordinates within this distance of 0 or 1 are snapped after every
// rounding update.
inline constexpr double kSnapTol = 1e-12;
// floor_integralize treats coordinates within this distance of 0 or 1 as
// integral.
inline constexpr double kFloorSnapTol = 1e-9;

enum class PipageBranch {
  kDecreaseP,  // y_p -= delta1, taken with probability delta2/(delta1+delta2)
  kIncreaseP,  // y_p += delta2
  kIndependent,  // lone fractional coordinate rounded on its own
};

struct RoundingStep {
  int p = -1;
  int q = -1;  // -1 for kIndependent
  double delta1 = 0;
  double delta2 = 0;
  PipageBranch branch = PipageBranch::kDecreaseP;
  double yp_before = 0, yq_before = 0;
  double yp_after = 0, yq_after = 0;
};

struct RoundingTrace {
  std::vector<RoundingStep> iterations;
  Vector final;
};

struct WeightedRounding {
  Vector y;  // at most one fractional coordinate
  RoundingTrace trace;
};

// Pipage rounding whose pair moves keep w_p y_p + w_q y_q fixed. Pairs are
// the two fractional coordinates with the smallest ids; the branch of
// iteration t is decided by counter_uniform(seed, t).
WeightedRounding weighted_pipage_round(const Instance& instance,
                                       const Vector& x, std::uint64_t seed);

// z_e = floor(y_e) after snapping. Throws InvalidInput when y has more than
// one fractional coordinate.
IntegralSolution floor_integralize(const Vector& y);

struct GroupRounding {
  IntegralSolution selected;
  RoundingTrace trace;
};

// Uniform-rate pipage inside each group (ascending color), then across
// groups. Every group count ends at the floor or ceiling of its fractional
// sum. Requires x in the polytope.
GroupRounding group_pipage_round_traced(const Instance& instance,
                                        const Vector& x, std::uint64_t seed);
IntegralSolution group_pipage_round(const Instance& instance, const Vector& x,
                                    std::uint64_t seed);

enum class Rounder { kWeighted, kGroup };

const char* to_string(Rounder rounder);

struct RoundingStats {
  long trials = 0;
  Rounder rounder = Rounder::kWeighted;
  std::uint64_t seed = 0;
  Vector x;

  Vector marginal_mean;
  Vector marginal_std_error;
  // Upper triangle (p < q) of E[y_p y_q]; the rest is zero.
  Matrix pair_mean;
  Matrix pair_std_error;

  MeanEstimate objective;     // f of the integral set
  MeanEstimate extension;     // F at the rounded vector
  MeanEstimate weight;        // w(S) of the integral set
  MeanEstimate rounded_weight;  // w·y before integralization
  std::vector<MeanEstimate> group_sum;  // sum of y over each group

  long knapsack_violations = 0;
  std::vector<std::vector<long>> fairness_counts;  // [group][|S ∩ G|]
  std::vector<long> fairness_violations;           // per group
  double max_weight_drift = 0;  // max |w·y - w·x|
  int max_iterations = 0;
  int max_fractional = 0;  // fractional coordinates left in y
};

// Runs `trials` independent roundings of x (trial t uses
// derive_seed(seed, t)) and aggregates in trial order.
RoundingStats monte_carlo_stats(const Instance& instance, const Objective& f,
                                const Vector& x, Rounder rounder, long trials,
                                std::uint64_t seed);

}  // namespace fksm

#endif  // FKSM_ROUNDING_HPP_
