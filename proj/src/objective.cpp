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

#include "fksm/objective.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "fksm/error.hpp"
#include "fksm/random.hpp"

namespace fksm {
namespace {

void check_values(const std::vector<double>& values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v) || v < 0) {
      throw InvalidInput(std::string(what) + " must be finite and nonnegative");
    }
  }
}

void check_id(int e, int n) {
  if (e < 0 || e >= n) {
    throw InvalidInput("unknown element id " + std::to_string(e));
  }
}

}  // namespace

const char* to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kCoverage:
      return "coverage";
    case ObjectiveKind::kModular:
      return "modular";
    case ObjectiveKind::kSaturating:
      return "saturating";
  }
  return "unknown";
}

Objective::Objective(Coverage coverage) : payload_(std::move(coverage)) {
  const auto& c = std::get<Coverage>(payload_);
  check_values(c.item_values, "item values");
  n_ = static_cast<int>(c.covers.size());
  const int m = static_cast<int>(c.item_values.size());
  for (const auto& cover : c.covers) {
    for (int item : cover) {
      if (item < 0 || item >= m) {
        throw InvalidInput("cover set references unknown item " +
                           std::to_string(item));
      }
    }
  }
  build_cover_bits();
}

Objective::Objective(Modular modular) : payload_(std::move(modular)) {
  const auto& m = std::get<Modular>(payload_);
  check_values(m.values, "modular values");
  n_ = static_cast<int>(m.values.size());
}

Objective::Objective(Saturating saturating) : payload_(std::move(saturating)) {
  const auto& s = std::get<Saturating>(payload_);
  check_values(s.values, "saturating values");
  if (!std::isfinite(s.cap) || s.cap < 0) {
    throw InvalidInput("saturating cap must be finite and nonnegative");
  }
  n_ = static_cast<int>(s.values.size());
}

void Objective::build_cover_bits() {
  const auto& c = std::get<Coverage>(payload_);
  words_ = static_cast<int>((c.item_values.size() + 63) / 64);
  cover_bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
  for (int e = 0; e < n_; ++e) {
    for (int item : c.covers[e]) {
      cover_bits_[static_cast<std::size_t>(e) * words_ + item / 64] |=
          std::uint64_t{1} << (item % 64);
    }
  }
}

ObjectiveKind Objective::kind() const {
  return static_cast<ObjectiveKind>(payload_.index());
}

double Objective::coverage_value(const std::uint64_t* words) const {
  const auto& values = std::get<Coverage>(payload_).item_values;
  double total = 0;
  for (int w = 0; w < words_; ++w) {
    std::uint64_t bits = words[w];
    while (bits != 0) {
      total += values[w * 64 + std::countr_zero(bits)];
      bits &= bits - 1;
    }
  }
  return total;
}

double Objective::operator()(std::span<const int> ids) const {
  for (int e : ids) check_id(e, n_);
  switch (kind()) {
    case ObjectiveKind::kCoverage: {
      thread_local std::vector<std::uint64_t> covered;
      covered.assign(words_, 0);
      for (int e : ids) {
        const std::uint64_t* row = &cover_bits_[static_cast<std::size_t>(e) * words_];
        for (int w = 0; w < words_; ++w) covered[w] |= row[w];
      }
      return coverage_value(covered.data());
    }
    case ObjectiveKind::kModular: {
      const auto& values = std::get<Modular>(payload_).values;
      double total = 0;
      for (int e : ids) total += values[e];
      return total;
    }
    case ObjectiveKind::kSaturating: {
      const auto& s = std::get<Saturating>(payload_);
      double total = 0;
      for (int e : ids) total += s.values[e];
      return std::min(s.cap, total);
    }
  }
  throw InternalError("unreachable objective kind");
}

double Objective::value_mask(std::uint64_t mask) const {
  if (n_ < 64 && (mask >> n_) != 0) {
    throw InvalidInput("mask references an unknown element");
  }
  if (kind() == ObjectiveKind::kCoverage) {
    thread_local std::vector<std::uint64_t> covered;
    covered.assign(words_, 0);
    while (mask != 0) {
      const int e = std::countr_zero(mask);
      mask &= mask - 1;
      const std::uint64_t* row = &cover_bits_[static_cast<std::size_t>(e) * words_];
      for (int w = 0; w < words_; ++w) covered[w] |= row[w];
    }
    return coverage_value(covered.data());
  }
  return (*this)(ids_from_mask(mask));
}

double Objective::max_singleton() const {
  double best = 0;
  for (int e = 0; e < n_; ++e) {
    const int ids[] = {e};
    best = std::max(best, (*this)(ids));
  }
  return best;
}

Objective Objective::scaled(double factor) const {
  if (!std::isfinite(factor) || factor < 0) {
    throw InvalidInput("scale factor must be finite and nonnegative");
  }
  auto scale = [factor](std::vector<double> v) {
    for (double& x : v) x *= factor;
    return v;
  };
  switch (kind()) {
    case ObjectiveKind::kCoverage: {
      Coverage c = std::get<Coverage>(payload_);
      c.item_values = scale(std::move(c.item_values));
      return Objective(std::move(c));
    }
    case ObjectiveKind::kModular:
      return Objective(Modular{scale(std::get<Modular>(payload_).values)});
    case ObjectiveKind::kSaturating: {
      const auto& s = std::get<Saturating>(payload_);
      return Objective(Saturating{scale(s.values), s.cap * factor});
    }
  }
  throw InternalError("unreachable objective kind");
}

Objective Objective::contract(std::span<const int> fixed,
                              std::span<const int> keep) const {
  for (int e : fixed) check_id(e, n_);
  for (int e : keep) check_id(e, n_);
  switch (kind()) {
    case ObjectiveKind::kCoverage: {
      const auto& c = std::get<Coverage>(payload_);
      Coverage out;
      out.item_values = c.item_values;
      for (int e : fixed) {
        for (int item : c.covers[e]) out.item_values[item] = 0;
      }
      for (int e : keep) out.covers.push_back(c.covers[e]);
      return Objective(std::move(out));
    }
    case ObjectiveKind::kModular: {
      const auto& values = std::get<Modular>(payload_).values;
      Modular out;
      for (int e : keep) out.values.push_back(values[e]);
      return Objective(std::move(out));
    }
    case ObjectiveKind::kSaturating: {
      const auto& s = std::get<Saturating>(payload_);
      double used = 0;
      for (int e : fixed) used += s.values[e];
      Saturating out;
      out.cap = std::max(0.0, s.cap - used);
      for (int e : keep) out.values.push_back(s.values[e]);
      return Objective(std::move(out));
    }
  }
  throw InternalError("unreachable objective kind");
}

double eval(const Objective& f, std::span<const int> ids) { return f(ids); }

double marginal(const Objective& f, std::span<const int> ids, int e) {
  check_id(e, f.size());
  if (std::find(ids.begin(), ids.end(), e) != ids.end()) {
    f(ids);  // still validates the ids
    return 0;
  }
  std::vector<int> with(ids.begin(), ids.end());
  with.push_back(e);
  return f(with) - f(ids);
}

std::vector<int> ids_from_mask(std::uint64_t mask) {
  std::vector<int> ids;
  ids.reserve(std::popcount(mask));
  while (mask != 0) {
    ids.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return ids;
}

SubmodularityCheck check_submodular(int n, const SetFunction& f, CheckMode mode,
                                    long budget, std::uint64_t seed) {
  constexpr double kTol = 1e-9;
  SubmodularityCheck result;
  if (mode == CheckMode::kExhaustive) {
    if (n > 12) throw InvalidInput("exhaustive submodularity check needs n <= 12");
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<double> table(count);
    for (std::uint64_t m = 0; m < count; ++m) table[m] = f(ids_from_mask(m));
    for (std::uint64_t s = 0; s < count; ++s) {
      for (int e = 0; e < n; ++e) {
        const std::uint64_t be = std::uint64_t{1} << e;
        if (s & be) continue;
        const double gain = table[s | be] - table[s];
        if (gain < -kTol) result.monotone = false;
        for (int g = 0; g < n; ++g) {
          const std::uint64_t bg = std::uint64_t{1} << g;
          if (g == e || (s & bg)) continue;
          const double later = table[s | bg | be] - table[s | bg];
          if (later > gain + kTol) {
            result.submodular = false;
            result.witness = SubmodularityWitness{ids_from_mask(s),
                                                  ids_from_mask(s | bg), e,
                                                  gain, later};
            return result;
          }
        }
      }
    }
    return result;
  }

  if (n < 1) return result;
  Rng rng(seed);
  for (long t = 0; t < budget; ++t) {
    std::vector<int> smaller, larger;
    const int e = rng.integer(0, n - 1);
    for (int v = 0; v < n; ++v) {
      if (v == e) continue;
      if (rng.bernoulli(0.5)) {
        larger.push_back(v);
        if (rng.bernoulli(0.5)) smaller.push_back(v);
      }
    }
    auto with = [e](std::vector<int> s) {
      s.insert(std::upper_bound(s.begin(), s.end(), e), e);
      return s;
    };
    const double gain_a = f(with(smaller)) - f(smaller);
    const double gain_b = f(with(larger)) - f(larger);
    if (gain_a < -kTol || gain_b < -kTol) result.monotone = false;
    if (gain_b > gain_a + kTol) {
      result.submodular = false;
      result.witness = SubmodularityWitness{smaller, larger, e, gain_a, gain_b};
      return result;
    }
  }
  return result;
}

SubmodularityCheck check_submodular(const Objective& f, CheckMode mode,
                                    long budget, std::uint64_t seed) {
  return check_submodular(
      f.size(), [&f](std::span<const int> ids) { return f(ids); }, mode, budget,
      seed);
}

}  // namespace fksm
