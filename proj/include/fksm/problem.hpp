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

#ifndef FKSM_PROBLEM_HPP_
#define FKSM_PROBLEM_HPP_

#include <cstdint>

#include "fksm/model.hpp"
#include "fksm/objective.hpp"

namespace fksm {

// An instance together with its objective, as stored in instance files.
struct Problem {
  Instance instance;
  Objective objective{Modular{}};
};

struct GeneratorParams {
  int n = 10;
  int k = 2;
  double weight_min = 1;
  double weight_max = 10;
  // Upper bounds are drawn from [ceil(tightness |G|), |G|]; minimum counts
  // are max(1, ceil(tightness u)).
  double bound_tightness = 0.5;
  // B = fill + slack (heaviest admissible weight - fill), fill being the
  // cheapest lower-bound fill.
  double budget_slack = 0.5;
  ObjectiveKind objective_kind = ObjectiveKind::kCoverage;
  int universe_size = 0;  // coverage; 0 means 2n
  double cover_density = 0.3;
  bool with_lower_bounds = true;
};

// Random feasible problem, identical for identical (params, seed). Throws
// InvalidInput for unusable parameters.
Problem generate_random(const GeneratorParams& params, std::uint64_t seed);

}  // namespace fksm

#endif  // FKSM_PROBLEM_HPP_
