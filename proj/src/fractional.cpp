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

#include "fksm/fractional.hpp"

#include <cmath>
#include <limits>

#include "fksm/error.hpp"
#include "fksm/lp.hpp"
#include "fksm/random.hpp"

namespace fksm {

GreedyConfig GreedyConfig::for_epsilon(double epsilon, std::uint64_t seed) {
  if (!(epsilon > 0)) throw InvalidInput("epsilon must be positive");
  GreedyConfig config;
  config.epsilon = epsilon;
  config.steps = std::max(1, static_cast<int>(std::ceil(1.0 / epsilon - 1e-9)));
  config.seed = seed;
  return config;
}

Vector lp_max_over_polytope(const Instance& instance, const Vector& c) {
  const int n = instance.size();
  const int k = instance.num_groups();
  if (c.size() != n) throw InvalidInput("objective has the wrong dimension");
  const double inf = std::numeric_limits<double>::infinity();
  BoundedLp<double> lp;
  lp.rows = Matrix::Zero(k + 1, n);
  lp.row_lower.resize(k + 1);
  lp.row_upper.resize(k + 1);
  lp.rows.row(0) = instance.weights().transpose();
  lp.row_lower[0] = -inf;
  lp.row_upper[0] = instance.budget;
  for (const Element& el : instance.elements) lp.rows(el.group + 1, el.id) = 1;
  for (int g = 0; g < k; ++g) {
    const GroupBound& b = instance.groups[g];
    lp.row_lower[g + 1] = b.lower ? b.min_count() : -inf;
    lp.row_upper[g + 1] = b.upper;
  }
  lp.col_lower = Vector::Zero(n);
  lp.col_upper = Vector::Ones(n);
  lp.objective = c;
  const auto solution = solve_bounded_lp(lp);
  if (solution.status != LpStatus::kOptimal) {
    throw InternalError("fair knapsack polytope is empty");
  }
  if (!in_polytope(instance, solution.x, kFeasibilityTol)) {
    throw InternalError("LP vertex violates the polytope beyond tolerance");
  }
  return solution.x;
}

Vector continuous_greedy(const Instance& instance, const Objective& f,
                         const GreedyConfig& config) {
  if (config.steps < 1) throw InvalidInput("continuous greedy needs T >= 1");
  if (f.size() != instance.size()) {
    throw InvalidInput("objective and instance disagree on the ground set");
  }
  const int n = instance.size();
  Vector x = Vector::Zero(n);
  Vector sum = Vector::Zero(n);
  for (int t = 0; t < config.steps; ++t) {
    Vector gradient;
    if (fractional_count(x) <= config.exact_gradient_max_support) {
      gradient = gradient_exact(f, x);
    } else {
      gradient = gradient_estimate(f, x, config.samples_per_gradient,
                                   derive_seed(config.seed, t))
                     .value;
    }
    sum += lp_max_over_polytope(instance, gradient);
    x = sum / static_cast<double>(config.steps);
  }
  return x.cwiseMax(0.0).cwiseMin(1.0);
}

double second_difference_along_pair(const Objective& f, const Vector& x, int i,
                                    int j, double c_i, double c_j, double h) {
  if (x.size() != f.size() || i < 0 || j < 0 || i >= x.size() ||
      j >= x.size()) {
    throw InvalidInput("coordinate out of range");
  }
  if (c_i < 0 || c_j < 0) throw InvalidInput("line coefficients must be >= 0");
  Vector d = Vector::Zero(x.size());
  d[i] += c_i;
  d[j] -= c_j;
  const Vector plus = x + h * d;
  const Vector minus = x - h * d;
  auto inside = [](const Vector& v) {
    return v.size() == 0 || (v.minCoeff() >= 0 && v.maxCoeff() <= 1);
  };
  if (!inside(plus) || !inside(minus)) {
    throw InvalidInput("step leaves the unit cube");
  }
  return multilinear_exact(f, plus) - 2 * multilinear_exact(f, x) +
         multilinear_exact(f, minus);
}

}  // namespace fksm
