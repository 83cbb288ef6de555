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

#include "fksm/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fksm/error.hpp"

namespace fksm {

Vector Instance::weights() const {
  Vector w(size());
  for (int e = 0; e < size(); ++e) w[e] = elements[e].weight;
  return w;
}

std::vector<std::vector<int>> Instance::members() const {
  std::vector<std::vector<int>> out(groups.size());
  for (const Element& el : elements) {
    if (el.group >= 0 && el.group < num_groups()) out[el.group].push_back(el.id);
  }
  return out;
}

double Instance::weight_of(std::span<const int> ids) const {
  double total = 0;
  for (int e : ids) total += elements.at(e).weight;
  return total;
}

std::vector<int> Instance::group_counts(std::span<const int> ids) const {
  std::vector<int> counts(groups.size(), 0);
  for (int e : ids) ++counts.at(elements.at(e).group);
  return counts;
}

Vector Instance::group_sums(const Vector& x) const {
  Vector sums = Vector::Zero(num_groups());
  for (int e = 0; e < size(); ++e) sums[elements[e].group] += x[e];
  return sums;
}

ValidationReport validate(const Instance& instance) {
  ValidationReport report;
  auto fail = [&report](const std::string& msg) {
    report.structurally_valid = false;
    report.errors.push_back(msg);
  };
  const int n = instance.size();
  const int k = instance.num_groups();
  if (!std::isfinite(instance.budget) || instance.budget < 0) {
    fail("budget must be a finite nonnegative number");
  }
  std::vector<int> group_size(k, 0);
  for (int e = 0; e < n; ++e) {
    const Element& el = instance.elements[e];
    if (el.id != e) {
      fail("element at position " + std::to_string(e) + " has id " +
           std::to_string(el.id));
    }
    if (!std::isfinite(el.weight) || el.weight < 0) {
      fail("element " + std::to_string(e) + " has a negative or non-finite weight");
    }
    if (el.group < 0 || el.group >= k) {
      fail("element " + std::to_string(e) + " has color " +
           std::to_string(el.group + 1) + " with no group bound");
    } else {
      ++group_size[el.group];
    }
  }
  for (int g = 0; g < k; ++g) {
    const GroupBound& b = instance.groups[g];
    const std::string name = "group " + std::to_string(g + 1);
    if (b.upper < 0) fail(name + ": upper bound is negative");
    if (b.upper > group_size[g]) fail(name + ": upper bound exceeds group size");
    if (b.lower && (*b.lower < 0 || *b.lower >= b.upper)) {
      fail(name + ": lower bound must satisfy 0 <= lower < upper");
    }
  }
  if (!report.structurally_valid) return report;

  double fill = 0;
  for (int g = 0; g < k; ++g) {
    for (int e : smallest_by_weight(instance, g, instance.groups[g].min_count())) {
      fill += instance.elements[e].weight;
    }
  }
  report.min_fill_weight = fill;
  report.feasible = fill <= instance.budget + kFeasibilityTol;
  if (!report.feasible) {
    std::ostringstream msg;
    msg << "infeasible: lower-bound fill needs weight " << fill
        << " > budget " << instance.budget;
    report.errors.push_back(msg.str());
  }
  return report;
}

std::vector<int> smallest_by_weight(const Instance& instance, int group,
                                    int count) {
  std::vector<int> ids;
  for (const Element& el : instance.elements) {
    if (el.group == group) ids.push_back(el.id);
  }
  if (count < 0 || count > static_cast<int>(ids.size())) {
    throw Infeasible("group " + std::to_string(group + 1) + " has only " +
                     std::to_string(ids.size()) + " elements, need " +
                     std::to_string(count));
  }
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
    return instance.elements[a].weight < instance.elements[b].weight;
  });
  ids.resize(count);
  return ids;
}

IntegralSolution lower_bound_fill(const Instance& instance) {
  IntegralSolution out;
  for (int g = 0; g < instance.num_groups(); ++g) {
    auto part = smallest_by_weight(instance, g, instance.groups[g].min_count());
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_feasible(const Instance& instance, std::span<const int> ids,
                 double tol) {
  if (instance.weight_of(ids) > instance.budget + tol) return false;
  const auto counts = instance.group_counts(ids);
  for (int g = 0; g < instance.num_groups(); ++g) {
    if (!instance.groups[g].admits(counts[g])) return false;
  }
  return true;
}

bool in_polytope(const Instance& instance, const Vector& x, double tol) {
  if (x.size() != instance.size()) return false;
  if (x.size() > 0 && (x.minCoeff() < -tol || x.maxCoeff() > 1 + tol)) {
    return false;
  }
  if (instance.weights().dot(x) > instance.budget + tol) return false;
  const Vector sums = instance.group_sums(x);
  for (int g = 0; g < instance.num_groups(); ++g) {
    const GroupBound& b = instance.groups[g];
    if (sums[g] > b.upper + tol) return false;
    if (b.lower && sums[g] < *b.lower + 1 - tol) return false;
  }
  return true;
}

Vector indicator(int n, std::span<const int> ids) {
  Vector x = Vector::Zero(n);
  for (int e : ids) x[e] = 1;
  return x;
}

IntegralSolution support(const Vector& x) {
  IntegralSolution out;
  for (int e = 0; e < x.size(); ++e) {
    if (x[e] > 0.5) out.push_back(e);
  }
  return out;
}

}  // namespace fksm
