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

#include "fksm/oracle.hpp"

#include <cstdint>
#include <vector>

#include "gtest/gtest.h"

#include "fixtures.hpp"
#include "fksm/error.hpp"

namespace fksm {
namespace {

using testing::t1;

TEST(BruteForceTest, T1) {
  const Problem p = t1();
  const OracleResult r = brute_force_opt(p.instance, p.objective);
  EXPECT_EQ(r.best_set, (std::vector<int>{1, 3}));
  EXPECT_DOUBLE_EQ(r.best_value, 3);
  EXPECT_EQ(r.params, (TruncationParams{{1, 1}, {0, 1}}));
  EXPECT_EQ(r.enumerated, 16);
}

TEST(BruteForceTest, Infeasible) {
  Problem p = t1();
  p.instance.budget = 1;
  EXPECT_THROW(brute_force_opt(p.instance, p.objective), Infeasible);
}

TEST(BruteForceTest, UnconstrainedModular) {
  Instance inst;
  inst.elements = {{0, 1, 0}, {1, 5, 0}, {2, 2, 1}, {3, 1, 1}};
  inst.groups = {GroupBound{std::nullopt, 2}, GroupBound{std::nullopt, 2}};
  inst.budget = 1e18;
  const Objective f(Modular{{1, 0, 2, 3}});
  const OracleResult r = brute_force_opt(inst, f);
  EXPECT_EQ(r.best_set, (std::vector<int>{0, 2, 3}));
  EXPECT_DOUBLE_EQ(r.best_value, 6);
}

TEST(BruteForceTest, GuardsSize) {
  const Problem p = testing::random_problem(23, 2, 1);
  EXPECT_THROW(brute_force_opt(p.instance, p.objective), InvalidInput);
}

TEST(BruteForceTest, OptimumIsFeasibleAndMaximal) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Problem p = testing::random_problem(10, 2, seed);
    const OracleResult r = brute_force_opt(p.instance, p.objective);
    ASSERT_TRUE(is_feasible(p.instance, r.best_set));
    for (const auto& s : enumerate_feasible(p.instance)) {
      EXPECT_LE(p.objective(s), r.best_value + 1e-12);
    }
  }
}

TEST(EnumerateFeasibleTest, T1) {
  const Problem p = t1();
  const auto sets = enumerate_feasible(p.instance);
  const std::vector<IntegralSolution> expected = {{0, 3}, {1, 3}, {0, 1, 3}, {2, 3}};
  EXPECT_EQ(sets, expected);
}

TEST(EnumerateFeasibleTest, Unconstrained) {
  Instance inst;
  for (int e = 0; e < 6; ++e) inst.elements.push_back({e, 1, e % 2});
  inst.groups = {GroupBound{std::nullopt, 3}, GroupBound{std::nullopt, 3}};
  inst.budget = 1e18;
  EXPECT_EQ(enumerate_feasible(inst).size(), 64u);
}

TEST(EnumerateFeasibleTest, ZeroQuotas) {
  Instance inst;
  for (int e = 0; e < 5; ++e) inst.elements.push_back({e, 1, 0});
  inst.groups = {GroupBound{std::nullopt, 0}};
  inst.budget = 10;
  const auto sets = enumerate_feasible(inst);
  ASSERT_EQ(sets.size(), 1u);
  EXPECT_TRUE(sets[0].empty());
}

TEST(EnumerateFeasibleTest, MatchesFilter) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Problem p = testing::random_problem(12, 3, seed);
    std::size_t count = 0;
    for (std::uint64_t mask = 0; mask < (1u << 12); ++mask) {
      count += is_feasible(p.instance, ids_from_mask(mask));
    }
    EXPECT_EQ(enumerate_feasible(p.instance).size(), count);
  }
}

TEST(EnumerateFeasibleTest, GuardsSize) {
  const Problem p = testing::random_problem(21, 2, 1);
  EXPECT_THROW(enumerate_feasible(p.instance), InvalidInput);
}

}  // namespace
}  // namespace fksm
