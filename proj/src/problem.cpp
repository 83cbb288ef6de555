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

#include "fksm/problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fksm/error.hpp"
#include "fksm/random.hpp"

namespace fksm {
namespace {

constexpr int kMaxAttempts = 100;

double round_cents(double v) { return std::round(v * 100) / 100; }

Objective make_objective(const GeneratorParams& p, Rng& rng) {
  switch (p.objective_kind) {
    case ObjectiveKind::kCoverage: {
      Coverage c;
      const int universe = p.universe_size > 0 ? p.universe_size : 2 * p.n;
      for (int i = 0; i < universe; ++i) {
        c.item_values.push_back(round_cents(rng.uniform(0.5, 1.5)));
      }
      c.covers.resize(p.n);
      for (auto& items : c.covers) {
        for (int i = 0; i < universe; ++i) {
          if (rng.bernoulli(p.cover_density)) items.push_back(i);
        }
        if (items.empty()) items.push_back(rng.integer(0, universe - 1));
      }
      return Objective(std::move(c));
    }
    case ObjectiveKind::kModular: {
      Modular m;
      for (int e = 0; e < p.n; ++e) m.values.push_back(round_cents(rng.uniform(0.5, 1.5)));
      return Objective(std::move(m));
    }
    case ObjectiveKind::kSaturating: {
      Saturating s;
      double total = 0;
      for (int e = 0; e < p.n; ++e) {
        s.values.push_back(round_cents(rng.uniform(0.5, 1.5)));
        total += s.values.back();
      }
      s.cap = round_cents(total / 2);
      return Objective(std::move(s));
    }
  }
  throw InternalError("unreachable objective kind");
}

std::optional<Instance> draw_instance(const GeneratorParams& p, Rng& rng) {
  Instance inst;
  std::vector<int> colors(p.n);
  for (int e = 0; e < p.n; ++e) colors[e] = e < p.k ? e : rng.integer(0, p.k - 1);
  for (int e = p.n - 1; e > 0; --e) std::swap(colors[e], colors[rng.integer(0, e)]);
  for (int e = 0; e < p.n; ++e) {
    inst.elements.push_back(
        Element{e, round_cents(rng.uniform(p.weight_min, p.weight_max)), colors[e]});
  }
  inst.groups.resize(p.k);
  const auto members = inst.members();
  double fill = 0, heaviest = 0;
  for (int g = 0; g < p.k; ++g) {
    const int size = static_cast<int>(members[g].size());
    const int lo = std::max(1, static_cast<int>(std::ceil(p.bound_tightness * size)));
    GroupBound& b = inst.groups[g];
    b.upper = rng.integer(std::min(lo, size), size);
    if (p.with_lower_bounds) {
      const int need =
          std::max(1, static_cast<int>(std::ceil(p.bound_tightness * b.upper)));
      b.lower = std::min(need, b.upper) - 1;
    }

    std::vector<double> w;
    for (int e : members[g]) w.push_back(inst.elements[e].weight);
    std::sort(w.begin(), w.end());
    for (int i = 0; i < b.min_count(); ++i) fill += w[i];
    for (int i = 0; i < b.upper; ++i) heaviest += w[size - 1 - i];
  }
  inst.budget = round_cents(fill + p.budget_slack * (heaviest - fill));
  // Rounding to cents may undercut the fill by less than a cent.
  if (inst.budget < fill) inst.budget = fill;
  if (!validate(inst).ok()) return std::nullopt;
  return inst;
}

}  // namespace

Problem generate_random(const GeneratorParams& p, std::uint64_t seed) {
  if (p.k < 1 || p.n < p.k) {
    throw InvalidInput("need n >= k >= 1, got n=" + std::to_string(p.n) +
                       " k=" + std::to_string(p.k));
  }
  if (!(p.weight_min >= 0) || !(p.weight_max >= p.weight_min)) {
    throw InvalidInput("need 0 <= weight_min <= weight_max");
  }
  if (!(p.bound_tightness >= 0 && p.bound_tightness <= 1) ||
      !(p.budget_slack >= 0 && p.budget_slack <= 1)) {
    throw InvalidInput("bound_tightness and budget_slack must lie in [0, 1]");
  }
  if (!(p.cover_density >= 0 && p.cover_density <= 1) || p.universe_size < 0) {
    throw InvalidInput("cover_density must lie in [0, 1], universe_size >= 0");
  }
  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    if (auto inst = draw_instance(p, rng)) {
      return Problem{std::move(*inst), make_objective(p, rng)};
    }
  }
  throw InvalidInput("could not draw a feasible instance from these parameters");
}

}  // namespace fksm
