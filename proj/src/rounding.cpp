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

#include "fksm/rounding.hpp"

#include <algorithm>
#include <cmath>

#include "fksm/error.hpp"
#include "fksm/multilinear.hpp"
#include "fksm/random.hpp"

namespace fksm {
namespace {

bool fractional(double v) { return v > 0 && v < 1; }

double snap(double v) {
  if (v < kSnapTol) return 0;
  if (v > 1 - kSnapTol) return 1;
  return v;
}

Vector checked_unit_point(const Instance& instance, const Vector& x) {
  if (x.size() != instance.size()) {
    throw InvalidInput("point has the wrong dimension");
  }
  for (int e = 0; e < x.size(); ++e) {
    if (!(x[e] >= -kSnapTol && x[e] <= 1 + kSnapTol)) {
      throw InvalidInput("coordinate " + std::to_string(e) +
                         " lies outside [0, 1]");
    }
  }
  Vector y = x;
  for (int e = 0; e < y.size(); ++e) y[e] = snap(y[e]);
  return y;
}

// Classic (equal-rate) pipage move on coordinates p and q.
RoundingStep uniform_move(Vector& y, int p, int q, double u) {
  RoundingStep step;
  step.p = p;
  step.q = q;
  step.yp_before = y[p];
  step.yq_before = y[q];
  const double yp = y[p], yq = y[q];
  step.delta1 = std::min(yp, 1 - yq);
  step.delta2 = std::min(1 - yp, yq);
  if (u < step.delta2 / (step.delta1 + step.delta2)) {
    step.branch = PipageBranch::kDecreaseP;
    if (yp <= 1 - yq) {
      y[p] = 0;
      y[q] = std::min(1.0, yq + yp);
    } else {
      y[q] = 1;
      y[p] = std::max(0.0, yp - (1 - yq));
    }
  } else {
    step.branch = PipageBranch::kIncreaseP;
    if (1 - yp <= yq) {
      y[p] = 1;
      y[q] = std::max(0.0, yq - (1 - yp));
    } else {
      y[q] = 0;
      y[p] = std::min(1.0, yp + yq);
    }
  }
  y[p] = snap(y[p]);
  y[q] = snap(y[q]);
  step.yp_after = y[p];
  step.yq_after = y[q];
  return step;
}

}  // namespace

const char* to_string(Rounder rounder) {
  return rounder == Rounder::kWeighted ? "weighted" : "group";
}

WeightedRounding weighted_pipage_round(const Instance& instance,
                                       const Vector& x, std::uint64_t seed) {
  Vector y = checked_unit_point(instance, x);
  const int n = instance.size();
  RoundingTrace trace;
  std::vector<char> skipped(n, 0);
  for (std::uint64_t iter = 0;; ++iter) {
    int p = -1, q = -1;
    for (int e = 0; e < n && q < 0; ++e) {
      if (!fractional(y[e]) || skipped[e]) continue;
      (p < 0 ? p : q) = e;
    }
    if (q < 0) break;

    double wp = instance.elements[p].weight;
    double wq = instance.elements[q].weight;
    if (wp == 0 && wq == 0) {
      trace.iterations.push_back(uniform_move(y, p, q, counter_uniform(seed, iter)));
      continue;
    }
    if (wq == 0) {
      // The zero-weight coordinate moves alone: w_q / w_p reads as +inf.
      std::swap(p, q);
      std::swap(wp, wq);
    }
    RoundingStep step;
    step.p = p;
    step.q = q;
    step.yp_before = y[p];
    step.yq_before = y[q];
    const double yp = y[p], yq = y[q];
    const double u = counter_uniform(seed, iter);
    if (wp == 0) {
      step.delta1 = yp;
      step.delta2 = 1 - yp;
      const bool down = u < step.delta2 / (step.delta1 + step.delta2);
      step.branch = down ? PipageBranch::kDecreaseP : PipageBranch::kIncreaseP;
      y[p] = down ? 0 : 1;
    } else {
      const double ratio_qp = wq / wp;  // w_q / w_p
      const double ratio_pq = wp / wq;  // w_p / w_q
      const bool p_hits_zero = yp <= (1 - yq) * ratio_qp;
      const bool p_hits_one = 1 - yp <= yq * ratio_qp;
      step.delta1 = p_hits_zero ? yp : (1 - yq) * ratio_qp;
      step.delta2 = p_hits_one ? 1 - yp : yq * ratio_qp;
      if (!(step.delta1 + step.delta2 > 0)) {
        skipped[p] = skipped[q] = 1;
        continue;
      }
      if (u < step.delta2 / (step.delta1 + step.delta2)) {
        step.branch = PipageBranch::kDecreaseP;
        if (p_hits_zero) {
          y[p] = 0;
          y[q] = std::min(1.0, yq + yp * ratio_pq);
        } else {
          y[q] = 1;
          y[p] = std::max(0.0, yp - step.delta1);
        }
      } else {
        step.branch = PipageBranch::kIncreaseP;
        if (p_hits_one) {
          y[p] = 1;
          y[q] = std::max(0.0, yq - (1 - yp) * ratio_pq);
        } else {
          y[q] = 0;
          y[p] = std::min(1.0, yp + step.delta2);
        }
      }
    }
    y[p] = snap(y[p]);
    y[q] = snap(y[q]);
    step.yp_after = y[p];
    step.yq_after = y[q];
    trace.iterations.push_back(step);
  }
  trace.final = y;
  return {std::move(y), std::move(trace)};
}

IntegralSolution floor_integralize(const Vector& y) {
  IntegralSolution out;
  int fractional_coords = 0;
  for (int e = 0; e < y.size(); ++e) {
    if (y[e] >= 1 - kFloorSnapTol) {
      out.push_back(e);
    } else if (y[e] > kFloorSnapTol) {
      ++fractional_coords;
    }
  }
  if (fractional_coords > 1) {
    throw InvalidInput("vector has " + std::to_string(fractional_coords) +
                       " fractional coordinates; floor needs at most one");
  }
  return out;
}

GroupRounding group_pipage_round_traced(const Instance& instance,
                                        const Vector& x, std::uint64_t seed) {
  if (!in_polytope(instance, x, kFeasibilityTol)) {
    throw InvalidInput("group pipage rounding needs a point of the polytope");
  }
  Vector y = checked_unit_point(instance, x);
  RoundingTrace trace;
  std::uint64_t iter = 0;
  const auto members = instance.members();
  auto first_two = [&y](const std::vector<int>& ids, int& p, int& q) {
    p = q = -1;
    for (int e : ids) {
      if (!fractional(y[e])) continue;
      if (p < 0) {
        p = e;
      } else {
        q = e;
        return;
      }
    }
  };
  for (const auto& group : members) {
    for (int p, q;;) {
      first_two(group, p, q);
      if (q < 0) break;
      trace.iterations.push_back(uniform_move(y, p, q, counter_uniform(seed, iter++)));
    }
  }
  std::vector<int> all(instance.size());
  for (int e = 0; e < instance.size(); ++e) all[e] = e;
  for (int p, q;;) {
    first_two(all, p, q);
    if (p < 0) break;
    const double u = counter_uniform(seed, iter++);
    if (q >= 0) {
      trace.iterations.push_back(uniform_move(y, p, q, u));
      continue;
    }
    RoundingStep step;
    step.p = p;
    step.branch = PipageBranch::kIndependent;
    step.delta1 = y[p];
    step.delta2 = 1 - y[p];
    step.yp_before = y[p];
    y[p] = u < y[p] ? 1 : 0;
    step.yp_after = y[p];
    trace.iterations.push_back(step);
  }
  trace.final = y;
  return {support(y), std::move(trace)};
}

IntegralSolution group_pipage_round(const Instance& instance, const Vector& x,
                                    std::uint64_t seed) {
  return group_pipage_round_traced(instance, x, seed).selected;
}

RoundingStats monte_carlo_stats(const Instance& instance, const Objective& f,
                                const Vector& x, Rounder rounder, long trials,
                                std::uint64_t seed) {
  if (trials < 1) throw InvalidInput("trials must be positive");
  const int n = instance.size();
  const int k = instance.num_groups();
  const Vector w = instance.weights();
  const double wx = w.dot(x);

  std::vector<RunningStat> marginal(n), pair(static_cast<std::size_t>(n) * n);
  std::vector<RunningStat> group_sum(k);
  RunningStat objective, extension, weight, rounded_weight;
  RoundingStats stats;
  stats.trials = trials;
  stats.rounder = rounder;
  stats.seed = seed;
  stats.x = x;
  stats.fairness_counts.resize(k);
  stats.fairness_violations.assign(k, 0);
  const auto members = instance.members();
  for (int g = 0; g < k; ++g) stats.fairness_counts[g].assign(members[g].size() + 1, 0);

  for (long t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    Vector y;
    IntegralSolution selected;
    int iterations = 0;
    if (rounder == Rounder::kWeighted) {
      auto rounded = weighted_pipage_round(instance, x, trial_seed);
      iterations = static_cast<int>(rounded.trace.iterations.size());
      y = std::move(rounded.y);
      selected = floor_integralize(y);
      extension.add(multilinear_exact(f, y));
    } else {
      auto rounded = group_pipage_round_traced(instance, x, trial_seed);
      iterations = static_cast<int>(rounded.trace.iterations.size());
      y = std::move(rounded.trace.final);
      selected = std::move(rounded.selected);
      extension.add(f(selected));
    }
    stats.max_iterations = std::max(stats.max_iterations, iterations);
    stats.max_fractional = std::max(stats.max_fractional, fractional_count(y));
    for (int p = 0; p < n; ++p) {
      marginal[p].add(y[p]);
      for (int q = p + 1; q < n; ++q) {
        pair[static_cast<std::size_t>(p) * n + q].add(y[p] * y[q]);
      }
    }
    const double wy = w.dot(y);
    stats.max_weight_drift = std::max(stats.max_weight_drift, std::abs(wy - wx));
    rounded_weight.add(wy);
    const double ws = instance.weight_of(selected);
    weight.add(ws);
    if (ws > instance.budget + kFeasibilityTol) ++stats.knapsack_violations;
    objective.add(f(selected));
    const Vector sums = instance.group_sums(y);
    const auto counts = instance.group_counts(selected);
    for (int g = 0; g < k; ++g) {
      group_sum[g].add(sums[g]);
      ++stats.fairness_counts[g][counts[g]];
      if (!instance.groups[g].admits(counts[g])) ++stats.fairness_violations[g];
    }
  }

  stats.marginal_mean.resize(n);
  stats.marginal_std_error.resize(n);
  stats.pair_mean = Matrix::Zero(n, n);
  stats.pair_std_error = Matrix::Zero(n, n);
  for (int p = 0; p < n; ++p) {
    stats.marginal_mean[p] = marginal[p].mean();
    stats.marginal_std_error[p] = marginal[p].std_error();
    for (int q = p + 1; q < n; ++q) {
      const auto& s = pair[static_cast<std::size_t>(p) * n + q];
      stats.pair_mean(p, q) = s.mean();
      stats.pair_std_error(p, q) = s.std_error();
    }
  }
  stats.objective = summarize(objective);
  stats.extension = summarize(extension);
  stats.weight = summarize(weight);
  stats.rounded_weight = summarize(rounded_weight);
  for (const auto& s : group_sum) stats.group_sum.push_back(summarize(s));
  return stats;
}

}  // namespace fksm
