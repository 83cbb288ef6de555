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

#ifndef FKSM_TESTS_FIXTURES_HPP_
#define FKSM_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <vector>

#include "fksm/model.hpp"
#include "fksm/objective.hpp"
#include "fksm/problem.hpp"

namespace fksm::testing {

// Four elements, weights (1,2,3,1), colors (1,1,1,2), groups (0,2] and
// (0,1], B = 4; coverage over three unit items.
inline Problem t1() {
  Problem p;
  p.instance.elements = {{0, 1, 0}, {1, 2, 0}, {2, 3, 0}, {3, 1, 1}};
  p.instance.groups = {GroupBound{0, 2}, GroupBound{0, 1}};
  p.instance.budget = 4;
  p.objective = Objective(Coverage{{1, 1, 1}, {{0}, {0, 1}, {1, 2}, {2}}});
  return p;
}

// Two elements of weights 1 and 2 in one unbounded group.
inline Problem two_element() {
  Problem p;
  p.instance.elements = {{0, 1, 0}, {1, 2, 0}};
  p.instance.groups = {GroupBound{std::nullopt, 2}};
  p.instance.budget = 3;
  p.objective = Objective(Coverage{{1}, {{0}, {0}}});
  return p;
}

// Single group a(1), b(2), c(3), interval (0, 2], B = 4.
inline Problem single_group() {
  Problem p;
  p.instance.elements = {{0, 1, 0}, {1, 2, 0}, {2, 3, 0}};
  p.instance.groups = {GroupBound{0, 2}};
  p.instance.budget = 4;
  p.objective = Objective(Modular{{1, 1, 2}});
  return p;
}

inline Problem random_problem(int n, int k, std::uint64_t seed,
                              ObjectiveKind kind = ObjectiveKind::kCoverage) {
  GeneratorParams params;
  params.n = n;
  params.k = k;
  params.objective_kind = kind;
  params.cover_density = 0.2;
  return generate_random(params, seed);
}

// Random point strictly inside the unit cube.
Vector random_point(int n, std::uint64_t seed);

}  // namespace fksm::testing

#endif  // FKSM_TESTS_FIXTURES_HPP_
