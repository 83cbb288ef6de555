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

#include <bit>
#include <string>

#include "fksm/error.hpp"

namespace fksm {
namespace {

// Bitmask feasibility with weights split into two lookup tables.
class MaskChecker {
 public:
  MaskChecker(const Instance& instance, int limit) : instance_(instance) {
    const int n = instance.size();
    if (n > limit) {
      throw InvalidInput("exhaustive search is limited to " +
                         std::to_string(limit) + " elements, got " +
                         std::to_string(n));
    }
    low_bits_ = n / 2;
    low_.assign(std::size_t{1} << low_bits_, 0);
    high_.assign(std::size_t{1} << (n - low_bits_), 0);
    fill(low_, 0);
    fill(high_, low_bits_);
    group_masks_.assign(instance.num_groups(), 0);
    for (const Element& e : instance.elements) {
      group_masks_[e.group] |= std::uint64_t{1} << e.id;
    }
  }

  bool operator()(std::uint64_t mask) const {
    for (std::size_t g = 0; g < group_masks_.size(); ++g) {
      if (!instance_.groups[g].admits(std::popcount(mask & group_masks_[g]))) {
        return false;
      }
    }
    const double w = low_[mask & ((std::uint64_t{1} << low_bits_) - 1)] +
                     high_[mask >> low_bits_];
    return w <= instance_.budget + kFeasibilityTol;
  }

 private:
  void fill(std::vector<double>& table, int offset) {
    for (std::size_t m = 1; m < table.size(); ++m) {
      const int bit = std::countr_zero(m);
      table[m] = table[m & (m - 1)] + instance_.elements[offset + bit].weight;
    }
  }

  const Instance& instance_;
  int low_bits_ = 0;
  std::vector<double> low_, high_;
  std::vector<std::uint64_t> group_masks_;
};

}  // namespace

TruncationParams extract_params(const Instance& instance,
                                std::span<const int> solution) {
  TruncationParams params;
  params.gamma = instance.group_counts(solution);
  params.beta.assign(instance.num_groups(), 0);
  std::vector<char> chosen(instance.size(), 0);
  for (int e : solution) chosen[e] = 1;
  for (int g = 0; g < instance.num_groups(); ++g) {
    for (int e : smallest_by_weight(instance, g, params.gamma[g])) {
      params.beta[g] += chosen[e];
    }
  }
  return params;
}

OracleResult brute_force_opt(const Instance& instance, const Objective& f) {
  const MaskChecker feasible(instance, kMaxOracleSize);
  if (f.size() != instance.size()) {
    throw InvalidInput("objective and instance disagree on the ground set");
  }
  const std::uint64_t end = std::uint64_t{1} << instance.size();
  OracleResult result;
  result.enumerated = static_cast<long long>(end);
  bool found = false;
  std::uint64_t best = 0;
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    if (!feasible(mask)) continue;
    const double value = f.value_mask(mask);
    if (!found || value > result.best_value + 1e-12) {
      found = true;
      best = mask;
      result.best_value = value;
    }
  }
  if (!found) throw Infeasible("no feasible set");
  result.best_set = ids_from_mask(best);
  result.params = extract_params(instance, result.best_set);
  return result;
}

void for_each_feasible(const Instance& instance,
                       const std::function<void(std::uint64_t)>& visit) {
  const MaskChecker feasible(instance, kMaxEnumerateSize);
  const std::uint64_t end = std::uint64_t{1} << instance.size();
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    if (feasible(mask)) visit(mask);
  }
}

std::vector<IntegralSolution> enumerate_feasible(const Instance& instance) {
  std::vector<IntegralSolution> out;
  for_each_feasible(instance,
                    [&out](std::uint64_t mask) { out.push_back(ids_from_mask(mask)); });
  return out;
}

}  // namespace fksm
