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

#ifndef FKSM_MODEL_HPP_
#define FKSM_MODEL_HPP_

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace fksm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Absolute slack for every knapsack / fairness / polytope comparison.
inline constexpr double kFeasibilityTol = 1e-9;

// A subset of the ground set: element ids in ascending order.
using IntegralSolution = std::vector<int>;

struct Element {
  int id = 0;         // ordinal position in Instance::elements
  double weight = 0;  // w_e >= 0
  int group = 0;      // zero-based color; files use color = group + 1
};

// Fairness interval (lower, upper] on |S ∩ G_i|. An absent lower bound
// means no lower bound at all.
struct GroupBound {
  std::optional<int> lower;
  int upper = 0;

  // Smallest admissible count, i.e. lower + 1 (never below zero).
  int min_count() const { return lower ? std::max(0, *lower + 1) : 0; }
  bool admits(int count) const {
    return count <= upper && (!lower || count > *lower);
  }
};

struct Instance {
  std::vector<Element> elements;
  std::vector<GroupBound> groups;
  double budget = 0;

  int size() const { return static_cast<int>(elements.size()); }
  int num_groups() const { return static_cast<int>(groups.size()); }

  Vector weights() const;
  // Member ids of every group, ascending.
  std::vector<std::vector<int>> members() const;
  double weight_of(std::span<const int> ids) const;
  std::vector<int> group_counts(std::span<const int> ids) const;
  // Per-group sums of a fractional point.
  Vector group_sums(const Vector& x) const;
};

struct ValidationReport {
  bool structurally_valid = true;
  bool feasible = false;
  // Weight of the lower-bound fill, when it could be formed.
  std::optional<double> min_fill_weight;
  std::vector<std::string> errors;

  bool ok() const { return structurally_valid && feasible; }
};

ValidationReport validate(const Instance& instance);

// The `count` smallest-weight members of `group`, ties broken by id, listed
// in that order.
std::vector<int> smallest_by_weight(const Instance& instance, int group,
                                    int count);

// Union over groups of the min_count() smallest-weight members (ascending
// ids). Throws Infeasible when a group is too small.
IntegralSolution lower_bound_fill(const Instance& instance);

bool is_feasible(const Instance& instance, std::span<const int> ids,
                 double tol = kFeasibilityTol);

// Membership in the fair knapsack polytope with the strict lower bound read
// as sum >= lower + 1.
bool in_polytope(const Instance& instance, const Vector& x,
                 double tol = kFeasibilityTol);

Vector indicator(int n, std::span<const int> ids);
// Ids with x_e > 1/2.
IntegralSolution support(const Vector& x);

}  // namespace fksm

#endif  // FKSM_MODEL_HPP_
