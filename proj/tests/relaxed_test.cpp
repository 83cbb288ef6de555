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

#include <cmath>
#include <cstdint>
#include <vector>

#include "gtest/gtest.h"

#include "fixtures.hpp"
#include "fksm/fractional.hpp"
#include "fksm/random.hpp"
#include "fksm/rounding.hpp"
#include "fksm/stats.hpp"

namespace fksm {
namespace {

using testing::t1;

TEST(PreprocessTest, DisabledYieldsOriginal) {
  const Problem p = t1();
  const auto c = enumeration_preprocess(p.instance, p.objective, 0.25, 0);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_TRUE(c[0].seed_set.empty());
  EXPECT_EQ(c[0].original_ids, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(c[0].residual.weights(), p.instance.weights());
  EXPECT_EQ(c[0].residual.budget, p.instance.budget);
}

TEST(PreprocessTest, SingletonsOnT1) {
  const Problem p = t1();
  const auto c = enumeration_preprocess(p.instance, p.objective, 0.25, 1);
  std::vector<IntegralSolution> seeds;
  for (const auto& cand : c) seeds.push_back(cand.seed_set);
  EXPECT_EQ(seeds, (std::vector<IntegralSolution>{{}, {0}, {1}, {2}, {3}}));
}

TEST(PreprocessTest, ResidualBounds) {
  const Problem p = t1();
  const auto c = enumeration_preprocess(p.instance, p.objective, 10, 1);
  const Contraction& a = c.at(2);
  ASSERT_EQ(a.seed_set, (IntegralSolution{1}));
  EXPECT_EQ(a.residual.groups[0].lower, -1);
  EXPECT_EQ(a.residual.groups[0].upper, 1);
  EXPECT_EQ(a.residual.groups[0].min_count(), 0);
  EXPECT_DOUBLE_EQ(a.residual.budget, 2);
  EXPECT_EQ(a.original_ids, (std::vector<int>{0, 2, 3}));
}

TEST(PreprocessTest, SmallMarginalFilter) {
  const Problem p = t1();
  const auto c = enumeration_preprocess(p.instance, p.objective, 0.25, 1);
  // f({e2}) = 2: only elements adding at most 0.5 survive.
  EXPECT_EQ(c.at(2).original_ids, (std::vector<int>{0}));
}

TEST(RelaxedFairnessTest, T1BudgetAlwaysHolds) {
  const Problem p = t1();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const RelaxedReport r =
        solve_relaxed_fairness(p.instance, p.objective, 0.1, 0.25, seed);
    EXPECT_LE(p.instance.weight_of(r.solution), 4 + 1e-9);
    EXPECT_TRUE(r.diagnostics.knapsack_ok);
    EXPECT_LE(r.diagnostics.floor_dropped, 1);
    EXPECT_LE(r.objective, 3);
  }
}

TEST(RelaxedFairnessTest, WithoutSeedSetsMatchesBarePipeline) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Problem p = testing::random_problem(10, 2, seed);
    const RelaxedReport r =
        solve_relaxed_fairness(p.instance, p.objective, 0.1, 0.25, seed, 0);
    const Vector x = continuous_greedy(p.instance, p.objective,
                                       GreedyConfig::for_epsilon(0.1, derive_seed(seed, 0)));
    const WeightedRounding y =
        weighted_pipage_round(p.instance, x, derive_seed(seed, ~std::uint64_t{0}));
    EXPECT_EQ(r.solution, floor_integralize(y.y));
    EXPECT_EQ(r.x, x);
  }
}

TEST(RelaxedFairnessTest, GroupMeansTrackFractionalSums) {
  const Problem p = t1();
  std::vector<RunningStat> rounded(2), fractional(2);
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const RelaxedReport r =
        solve_relaxed_fairness(p.instance, p.objective, 0.1, 0.25, seed);
    for (int g = 0; g < 2; ++g) {
      rounded[g].add(r.diagnostics.rounded_group_sums[g]);
      fractional[g].add(r.diagnostics.fractional_group_sums[g]);
    }
  }
  for (int g = 0; g < 2; ++g) {
    EXPECT_LE(std::abs(rounded[g].mean() - fractional[g].mean()),
              4 * rounded[g].std_error() + 1e-9);
  }
}

TEST(RelaxedKnapsackTest, T1CountsExact) {
  const Problem p = t1();
  RunningStat weight;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const RelaxedReport r = solve_relaxed_knapsack(p.instance, p.objective, 0.1, seed);
    const auto& c = r.diagnostics.group_counts;
    EXPECT_GE(c[0], 1);
    EXPECT_LE(c[0], 2);
    EXPECT_EQ(c[1], 1);
    EXPECT_TRUE(r.diagnostics.fairness_ok);
    weight.add(r.diagnostics.total_weight);
  }
  EXPECT_LE(weight.mean(), 4 + 4 * weight.std_error());
}

TEST(RelaxedKnapsackTest, IntegralPointIsKept) {
  // Modular values make the first LP vertex integral and greedy keeps it.
  Problem p = t1();
  p.objective = Objective(Modular{{1, 1, 1, 1}});
  const RelaxedReport r = solve_relaxed_knapsack(p.instance, p.objective, 0.5, 1);
  EXPECT_EQ(fractional_count(r.x), 0);
  EXPECT_EQ(r.solution, support(r.x));
  EXPECT_TRUE(r.diagnostics.knapsack_ok);
  EXPECT_TRUE(r.diagnostics.fairness_ok);
  EXPECT_EQ(r.mode, ConstraintMode::kExpectedKnapsack);
}

}  // namespace
}  // namespace fksm
