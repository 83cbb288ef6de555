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

#ifndef FKSM_FRACTIONAL_HPP_
#define FKSM_FRACTIONAL_HPP_

#include <cstdint>

#include "fksm/model.hpp"
#include "fksm/multilinear.hpp"
#include "fksm/objective.hpp"

namespace fksm {

struct GreedyConfig {
  int steps = 10;  // T; ceil(1/epsilon) is the usual choice
  long samples_per_gradient = kDefaultSamples;
  std::uint64_t seed = 0;
  double epsilon = 0.1;
  // Gradients are enumerated exactly while the iterate has at most this
  // many fractional coordinates, and sampled beyond it.
  int exact_gradient_max_support = 12;

  static GreedyConfig for_epsilon(double epsilon, std::uint64_t seed);
};

// Exact maximizer of c·x over the fair knapsack polytope. Throws
// InternalError if the polytope is empty, which validation rules out.
Vector lp_max_over_polytope(const Instance& instance, const Vector& c);

// x_{t+1} = x_t + v_t / T with v_t the best polytope vertex for the current
// gradient. The result is an average of T polytope points.
Vector continuous_greedy(const Instance& instance, const Objective& f,
                         const GreedyConfig& config);

// F(x + h d) - 2 F(x) + F(x - h d) for d = c_i e_i - c_j e_j, by exact
// enumeration.
double second_difference_along_pair(const Objective& f, const Vector& x, int i,
                                    int j, double c_i, double c_j, double h);

}  // namespace fksm

#endif  // FKSM_FRACTIONAL_HPP_
