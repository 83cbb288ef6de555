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

#include "fksm/rounding.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "gtest/gtest.h"

#include "fixtures.hpp"
#include "fksm/error.hpp"
#include "fksm/fractional.hpp"
#include "fksm/multilinear.hpp"
#include "fksm/random.hpp"

namespace fksm {
namespace {

using testing::t1;
using testing::two_element;

TEST(WeightedPipageTest, TwoElementOutcomes) {
  const Problem p = two_element();
  const Vector x{{0.5, 0.5}};
  int down = 0;
  for (std::uint64_t seed = 0; seed < 4000; ++seed) {
    const WeightedRounding r = weighted_pipage_round(p.instance, x, seed);
    ASSERT_EQ(r.trace.iterations.size(), 1u);
    const RoundingStep& s = r.trace.iterations[0];
    EXPECT_DOUBLE_EQ(s.delta1, 0.5);
    EXPECT_DOUBLE_EQ(s.delta2, 0.5);
    if (s.branch == PipageBranch::kDecreaseP) {
      ++down;
      EXPECT_EQ(r.y, (Vector{{0, 0.75}}));
    } else {
      EXPECT_EQ(r.y, (Vector{{1, 0.25}}));
    }
    EXPECT_NEAR(r.y[0] + 2 * r.y[1], 1.5, 1e-12);
  }
  EXPECT_NEAR(down / 4000.0, 0.5, 4 * std::sqrt(0.25 / 4000));
}

TEST(WeightedPipageTest, IntegralIsUnchanged) {
  const Problem p = t1();
  const Vector x{{1, 0, 0, 1}};
  const WeightedRounding r = weighted_pipage_round(p.instance, x, 3);
  EXPECT_EQ(r.y, x);
  EXPECT_TRUE(r.trace.iterations.empty());
}

TEST(WeightedPipageTest, SingleFractionalIsUnchanged) {
  Instance inst;
  inst.elements = {{0, 1, 0}};
  inst.groups = {GroupBound{std::nullopt, 1}};
  inst.budget = 1;
  const WeightedRounding r = weighted_pipage_round(inst, Vector{{0.3}}, 1);
  EXPECT_EQ(r.y, (Vector{{0.3}}));
  EXPECT_TRUE(r.trace.iterations.empty());
}

TEST(WeightedPipageTest, Deterministic) {
  const Problem p = testing::random_problem(10, 2, 3);
  const Vector x = testing::random_point(10, 4);
  EXPECT_EQ(weighted_pipage_round(p.instance, x, 9).y,
            weighted_pipage_round(p.instance, x, 9).y);
}

TEST(WeightedPipageTest, ZeroWeights) {
  Instance inst;
  inst.elements = {{0, 0, 0}, {1, 2, 0}, {2, 0, 0}};
  inst.groups = {GroupBound{std::nullopt, 3}};
  inst.budget = 10;
  const Vector x{{0.4, 0.5, 0.3}};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const WeightedRounding r = weighted_pipage_round(inst, x, seed);
    EXPECT_LE(fractional_count(r.y), 1);
    EXPECT_NEAR(r.y[1] * 2, 1.0, 1e-12);
    for (const RoundingStep& s : r.trace.iterations) {
      EXPECT_GT(s.delta1 + s.delta2, 0);
    }
  }
}

TEST(WeightedPipageTest, ConservesWeightAndProgresses) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Problem p = testing::random_problem(12, 2, seed);
    const Vector x = testing::random_point(12, seed);
    const WeightedRounding r = weighted_pipage_round(p.instance, x, seed);
    const Vector w = p.instance.weights();
    EXPECT_LE(std::abs(w.dot(r.y) - w.dot(x)), 1e-9);
    EXPECT_LE(fractional_count(r.y), 1);
    EXPECT_LE(r.trace.iterations.size(), 12u);
    for (const RoundingStep& s : r.trace.iterations) {
      const bool integral = s.yp_after == 0 || s.yp_after == 1 || s.yq_after == 0 ||
                            s.yq_after == 1;
      EXPECT_TRUE(integral);
    }
  }
}

TEST(WeightedPipageTest, RejectsOutsideCube) {
  const Problem p = two_element();
  EXPECT_THROW(weighted_pipage_round(p.instance, Vector{{1.5, 0}}, 1), InvalidInput);
}

TEST(FloorTest, Examples) {
  EXPECT_EQ(floor_integralize(Vector{{1, 0.3, 1, 0}}), (std::vector<int>{0, 2}));
  EXPECT_EQ(floor_integralize(Vector{{0, 1, 1}}), (std::vector<int>{1, 2}));
  EXPECT_EQ(floor_integralize(Vector{{0.999999999999, 1}}), (std::vector<int>{0, 1}));
  EXPECT_THROW(floor_integralize(Vector{{0.5, 0.5}}), InvalidInput);
}

TEST(GroupPipageTest, WithinGroupStep) {
  Instance inst;
  inst.elements = {{0, 1, 0}, {1, 1, 0}};
  inst.groups = {GroupBound{std::nullopt, 2}};
  inst.budget = 2;
  const Vector x{{0.3, 0.9}};
  int down = 0;
  const int trials = 8000;
  for (int seed = 0; seed < trials; ++seed) {
    const GroupRounding r = group_pipage_round_traced(inst, x, seed);
    const RoundingStep& s = r.trace.iterations.at(0);
    EXPECT_NEAR(s.delta1, 0.1, 1e-12);
    EXPECT_NEAR(s.delta2, 0.7, 1e-12);
    if (s.branch == PipageBranch::kDecreaseP) {
      ++down;
      EXPECT_NEAR(s.yp_after, 0.2, 1e-12);
      EXPECT_EQ(s.yq_after, 1.0);
    } else {
      EXPECT_EQ(s.yp_after, 1.0);
      EXPECT_NEAR(s.yq_after, 0.2, 1e-12);
    }
  }
  EXPECT_NEAR(down / static_cast<double>(trials), 0.875,
              4 * std::sqrt(0.875 * 0.125 / trials));
}

TEST(GroupPipageTest, IntegralIsSupport) {
  const Problem p = t1();
  EXPECT_EQ(group_pipage_round(p.instance, Vector{{0, 1, 0, 1}}, 5),
            (std::vector<int>{1, 3}));
}

TEST(GroupPipageTest, T1CountsAreExact) {
  const Problem p = t1();
  const Vector x{{0.5, 0.5, 0, 1}};
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto counts = p.instance.group_counts(group_pipage_round(p.instance, x, seed));
    EXPECT_EQ(counts, (std::vector<int>{1, 1}));
  }
}

TEST(GroupPipageTest, FairnessOnGreedyPoints) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Problem p = testing::random_problem(12, 3, seed);
    const Vector x = continuous_greedy(p.instance, p.objective,
                                       GreedyConfig::for_epsilon(0.25, seed));
    const Vector sums = p.instance.group_sums(x);
    for (std::uint64_t t = 0; t < 50; ++t) {
      const GroupRounding r = group_pipage_round_traced(p.instance, x, derive_seed(seed, t));
      const auto counts = p.instance.group_counts(r.selected);
      for (int g = 0; g < 3; ++g) {
        EXPECT_TRUE(p.instance.groups[g].admits(counts[g]));
        EXPECT_GE(counts[g], std::floor(sums[g] - 1e-9));
        EXPECT_LE(counts[g], std::ceil(sums[g] + 1e-9));
      }
      EXPECT_LE(r.trace.iterations.size(), 12u);
    }
  }
}

TEST(GroupPipageTest, RejectsOutsidePolytope) {
  const Problem p = t1();
  EXPECT_THROW(group_pipage_round(p.instance, Vector{{0, 0, 0, 1}}, 1), InvalidInput);
}

TEST(MonteCarloTest, TwoElementMarginals) {
  const Problem p = two_element();
  const RoundingStats s = monte_carlo_stats(p.instance, p.objective, Vector{{0.5, 0.5}},
                                            Rounder::kWeighted, 20000, 1);
  for (int e = 0; e < 2; ++e) {
    EXPECT_LE(std::abs(s.marginal_mean[e] - 0.5), 4 * s.marginal_std_error[e]);
  }
  EXPECT_EQ(s.knapsack_violations, 0);
  EXPECT_LE(s.max_weight_drift, 1e-9);
}

TEST(MonteCarloTest, GroupRounderOnT1) {
  const Problem p = t1();
  const RoundingStats s = monte_carlo_stats(p.instance, p.objective,
                                            Vector{{0.5, 0.5, 0, 1}}, Rounder::kGroup,
                                            5000, 2);
  for (long v : s.fairness_violations) EXPECT_EQ(v, 0);
  EXPECT_EQ(s.fairness_counts[0][1], 5000);
  EXPECT_EQ(s.fairness_counts[1][1], 5000);
}

TEST(MonteCarloTest, Deterministic) {
  const Problem p = testing::random_problem(8, 2, 1);
  const Vector x = testing::random_point(8, 2);
  const RoundingStats a =
      monte_carlo_stats(p.instance, p.objective, x, Rounder::kWeighted, 300, 5);
  const RoundingStats b =
      monte_carlo_stats(p.instance, p.objective, x, Rounder::kWeighted, 300, 5);
  EXPECT_EQ(a.marginal_mean, b.marginal_mean);
  EXPECT_EQ(a.pair_mean, b.pair_mean);
  EXPECT_EQ(a.objective.mean, b.objective.mean);
}

TEST(MonteCarloTest, SingleTrialHasZeroError) {
  const Problem p = two_element();
  const RoundingStats s = monte_carlo_stats(p.instance, p.objective, Vector{{0.5, 0.5}},
                                            Rounder::kWeighted, 1, 1);
  EXPECT_EQ(s.trials, 1);
  EXPECT_EQ(s.marginal_std_error, Vector::Zero(2));
}

}  // namespace
}  // namespace fksm
