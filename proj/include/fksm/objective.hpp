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

#ifndef FKSM_OBJECTIVE_HPP_
#define FKSM_OBJECTIVE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace fksm {

// f(S) = total value of the universe items covered by S.
struct Coverage {
  std::vector<double> item_values;
  std::vector<std::vector<int>> covers;  // per element, item indices
};

// f(S) = sum of per-element values.
struct Modular {
  std::vector<double> values;
};

// f(S) = min(cap, sum of per-element values).
struct Saturating {
  std::vector<double> values;
  double cap = 0;
};

enum class ObjectiveKind { kCoverage, kModular, kSaturating };

const char* to_string(ObjectiveKind kind);

// Monotone submodular set function over elements 0..size()-1. Immutable
// once built; copies are cheap to share across threads.
class Objective {
 public:
  explicit Objective(Coverage coverage);
  explicit Objective(Modular modular);
  explicit Objective(Saturating saturating);

  ObjectiveKind kind() const;
  int size() const { return n_; }
  const std::variant<Coverage, Modular, Saturating>& payload() const {
    return payload_;
  }

  // f(S). Throws InvalidInput on an unknown element id.
  double operator()(std::span<const int> ids) const;
  // f of the set whose bit e is set; requires size() <= 64.
  double value_mask(std::uint64_t mask) const;

  double max_singleton() const;
  Objective scaled(double factor) const;

  // g(S) = f(S ∪ fixed) - f(fixed) over the elements `keep`, renumbered
  // 0..keep.size()-1 in the given order. Stays in the same family.
  Objective contract(std::span<const int> fixed,
                     std::span<const int> keep) const;

 private:
  void build_cover_bits();
  double coverage_value(const std::uint64_t* words) const;

  std::variant<Coverage, Modular, Saturating> payload_;
  int n_ = 0;
  int words_ = 0;                         // coverage only
  std::vector<std::uint64_t> cover_bits_;  // n_ x words_
};

double eval(const Objective& f, std::span<const int> ids);
// f(S ∪ {e}) - f(S).
double marginal(const Objective& f, std::span<const int> ids, int e);

enum class CheckMode { kExhaustive, kSampled };

struct SubmodularityWitness {
  std::vector<int> smaller;  // A
  std::vector<int> larger;   // B, A ⊆ B
  int element = -1;          // e ∉ B
  double gain_smaller = 0;   // f(A+e) - f(A)
  double gain_larger = 0;    // f(B+e) - f(B)
};

struct SubmodularityCheck {
  bool submodular = true;
  bool monotone = true;
  std::optional<SubmodularityWitness> witness;
};

using SetFunction = std::function<double(std::span<const int>)>;

// Searches for A ⊆ B, e ∉ B with a larger gain at B than at A. Exhaustive
// mode needs n <= 12 and tests every (S, e, g) triple of the local form;
// sampled mode draws `budget` random chains.
SubmodularityCheck check_submodular(int n, const SetFunction& f, CheckMode mode,
                                    long budget = 0, std::uint64_t seed = 0);
SubmodularityCheck check_submodular(const Objective& f, CheckMode mode,
                                    long budget = 0, std::uint64_t seed = 0);

// Ids of the set bits of `mask`.
std::vector<int> ids_from_mask(std::uint64_t mask);

}  // namespace fksm

#endif  // FKSM_OBJECTIVE_HPP_
