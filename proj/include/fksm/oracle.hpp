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

#ifndef FKSM_ORACLE_HPP_
#define FKSM_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "fksm/model.hpp"
#include "fksm/objective.hpp"
#include "fksm/truncation.hpp"

namespace fksm {

inline constexpr int kMaxOracleSize = 22;
inline constexpr int kMaxEnumerateSize = 20;

struct OracleResult {
  IntegralSolution best_set;
  double best_value = 0;
  TruncationParams params;  // read off best_set
  long long enumerated = 0;
};

// gamma_i = |S ∩ G_i|, beta_i = |S ∩ L_i(gamma_i)|.
TruncationParams extract_params(const Instance& instance,
                                std::span<const int> solution);

// Exact optimum over all 2^n subsets. Among equal values the smallest
// bitmask (bit e = element e) wins. Throws Infeasible("no feasible set").
OracleResult brute_force_opt(const Instance& instance, const Objective& f);

// Feasible subsets as bitmasks, ascending.
void for_each_feasible(const Instance& instance,
                       const std::function<void(std::uint64_t)>& visit);
std::vector<IntegralSolution> enumerate_feasible(const Instance& instance);

}  // namespace fksm

#endif  // FKSM_ORACLE_HPP_
