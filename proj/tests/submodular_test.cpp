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

#include "fksm/objective.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "gtest/gtest.h"

#include "fixtures.hpp"
#include "fksm/error.hpp"
#include "fksm/multilinear.hpp"
#include "fksm/random.hpp"

namespace fksm {
namespace {

using testing::t1;

TEST(EvalTest, T1Coverage) {
  const Objective f = t1().objective;
  EXPECT_DOUBLE_EQ(eval(f, std::vector<int>{1, 3}), 3);
  EXPECT_DOUBLE_EQ(eval(f, std::vector<int>{}), 0);
  EXPECT_DOUBLE_EQ(eval(f, std::vector<int>{0, 1}), 2);
  EXPECT_THROW(eval(f, std::vector<int>{4}), InvalidInput);
}

TEST(EvalTest, MaskMatchesIds) {
  const Problem p = testing::random_problem(10, 2, 4);
  for (std::uint64_t mask = 0; mask < 1024; ++mask) {
    EXPECT_DOUBLE_EQ(p.objective.value_mask(mask), p.objective(ids_from_mask(mask)));
  }
}

TEST(EvalTest, Saturating) {
  const Objective f(Saturating{{1, 2, 3}, 4});
  EXPECT_DOUBLE_EQ(f(std::vector<int>{0, 1}), 3);
  EXPECT_DOUBLE_EQ(f(std::vector<int>{1, 2}), 4);
}

TEST(MarginalTest, T1) {
  const Objective f = t1().objective;
  EXPECT_DOUBLE_EQ(marginal(f, std::vector<int>{}, 1), 2);
  EXPECT_DOUBLE_EQ(marginal(f, std::vector<int>{1}, 1), 0);
  EXPECT_DOUBLE_EQ(marginal(f, std::vector<int>{1, 2}, 3), 0);
  EXPECT_THROW(marginal(f, std::vector<int>{}, 7), InvalidInput);
}

TEST(ContractTest, MatchesDefinition) {
  for (auto kind : {ObjectiveKind::kCoverage, ObjectiveKind::kModular,
                    ObjectiveKind::kSaturating}) {
    const Problem p = testing::random_problem(8, 2, 11, kind);
    const std::vector<int> fixed = {1, 4};
    const std::vector<int> keep = {0, 2, 5, 7};
    const Objective g = p.objective.contract(fixed, keep);
    ASSERT_EQ(g.size(), 4);
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
      std::vector<int> full = fixed;
      for (int j : ids_from_mask(mask)) full.push_back(keep[j]);
      EXPECT_NEAR(g.value_mask(mask), p.objective(full) - p.objective(fixed), 1e-12);
    }
  }
}

TEST(MultilinearTest, TwoElementHalf) {
  const Objective f(Coverage{{1}, {{0}, {0}}});
  EXPECT_DOUBLE_EQ(multilinear_exact(f, Vector{{0.5, 0.5}}), 0.75);
  EXPECT_DOUBLE_EQ(multilinear_exact(f, Vector::Zero(2)), 0);
}

TEST(MultilinearTest, IndicatorGivesSetValue) {
  const Problem p = testing::random_problem(10, 2, 5);
  for (std::uint64_t mask = 0; mask < 1024; ++mask) {
    const auto ids = ids_from_mask(mask);
    EXPECT_NEAR(multilinear_exact(p.objective, indicator(10, ids)), p.objective(ids),
                1e-12);
  }
}

TEST(MultilinearTest, AffineInEachCoordinate) {
  const Problem p = testing::random_problem(9, 2, 6);
  const Vector x = testing::random_point(9, 1);
  for (int i = 0; i < 9; ++i) {
    Vector lo = x, hi = x;
    lo[i] = 0;
    hi[i] = 1;
    const double expected = (1 - x[i]) * multilinear_exact(p.objective, lo) +
                            x[i] * multilinear_exact(p.objective, hi);
    EXPECT_NEAR(multilinear_exact(p.objective, x), expected, 1e-10);
  }
}

TEST(MultilinearTest, RejectsLargeSupport) {
  const Objective f(Modular{std::vector<double>(23, 1)});
  EXPECT_THROW(multilinear_exact(f, Vector::Constant(23, 0.5)), InvalidInput);
}

TEST(SampleTest, Deterministic) {
  const Objective f = t1().objective;
  const Vector x{{0.2, 0.4, 0.6, 0.8}};
  const auto a = multilinear_sample(f, x, 1000, 9);
  const auto b = multilinear_sample(f, x, 1000, 9);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(a.samples, 1000);
  EXPECT_EQ(a.seed, 9u);
}

TEST(SampleTest, TwoElementAccuracy) {
  const Objective f(Coverage{{1}, {{0}, {0}}});
  const auto est = multilinear_sample(f, Vector{{0.5, 0.5}}, 100000, 3);
  EXPECT_LE(std::abs(est.value - 0.75), 4 * est.std_error);
}

TEST(SampleTest, IntegralPointIsExact) {
  const Objective f = t1().objective;
  const auto est = multilinear_sample(f, Vector{{0, 1, 0, 1}}, 500, 1);
  EXPECT_DOUBLE_EQ(est.value, 3);
  EXPECT_DOUBLE_EQ(est.std_error, 0);
}

TEST(SampleTest, MeanOverSeedsMatchesExact) {
  for (std::uint64_t inst = 0; inst < 5; ++inst) {
    const Problem p = testing::random_problem(10, 2, 100 + inst);
    const Vector x = testing::random_point(10, inst);
    const double exact = multilinear_exact(p.objective, x);
    double mean = 0, var = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
      const auto est = multilinear_sample(p.objective, x, 2000, derive_seed(inst, s));
      mean += est.value / 50;
      var += est.std_error * est.std_error / (50.0 * 50.0);
    }
    EXPECT_LE(std::abs(mean - exact), 4 * std::sqrt(var));
  }
}

TEST(GradientTest, ModularIsExact) {
  const Objective f(Modular{{0.5, 1.5, 2, 3}});
  const Vector x{{0.1, 0.7, 0.3, 1}};
  const auto g = gradient_estimate(f, x, 5, 1);
  EXPECT_EQ(g.value, (Vector{{0.5, 1.5, 2, 3}}));
  EXPECT_EQ(gradient_exact(f, x), (Vector{{0.5, 1.5, 2, 3}}));
}

TEST(GradientTest, MatchesFiniteDifferences) {
  for (std::uint64_t inst = 0; inst < 5; ++inst) {
    const Problem p = testing::random_problem(8, 2, 200 + inst);
    const Vector x = testing::random_point(8, inst);
    const auto g = gradient_estimate(p.objective, x, 20000, inst);
    const Vector exact = gradient_exact(p.objective, x);
    const double h = 1e-4;
    for (int e = 0; e < 8; ++e) {
      Vector hi = x, lo = x;
      hi[e] += h;
      lo[e] -= h;
      const double fd = (multilinear_exact(p.objective, hi) -
                         multilinear_exact(p.objective, lo)) / (2 * h);
      EXPECT_LE(std::abs(g.value[e] - fd), 4 * g.std_error[e] + 1e-6);
      EXPECT_NEAR(exact[e], fd, 1e-6);
      EXPECT_GE(g.value[e], -4 * g.std_error[e]);
    }
  }
}

TEST(GradientTest, SaturatedCoordinateIsZero) {
  // Element 2 covers only item 0, which element 0 covers surely.
  const Objective f(Coverage{{1, 1}, {{0}, {1}, {0}}});
  const Vector x{{1, 0.5, 0.5}};
  EXPECT_DOUBLE_EQ(gradient_estimate(f, x, 1000, 2).value[2], 0);
  EXPECT_DOUBLE_EQ(gradient_exact(f, x)[2], 0);
}

TEST(SubmodularCheckTest, KnownFamilies) {
  EXPECT_TRUE(check_submodular(t1().objective, CheckMode::kExhaustive).submodular);
  const Objective sat(Saturating{{1, 2, 3, 0.5, 2}, 4});
  const auto r = check_submodular(sat, CheckMode::kExhaustive);
  EXPECT_TRUE(r.submodular);
  EXPECT_TRUE(r.monotone);
  EXPECT_TRUE(check_submodular(testing::random_problem(20, 2, 1).objective,
                               CheckMode::kSampled, 2000, 5)
                  .submodular);
}

TEST(SubmodularCheckTest, FindsViolator) {
  const SetFunction f = [](std::span<const int> ids) {
    return ids.size() == 2 ? 10.0 : static_cast<double>(ids.size());
  };
  const auto r = check_submodular(2, f, CheckMode::kExhaustive);
  EXPECT_FALSE(r.submodular);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_GT(r.witness->gain_larger, r.witness->gain_smaller);
}

}  // namespace
}  // namespace fksm
