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

#include "fksm/multilinear.hpp"

#include <algorithm>
#include <vector>

#include "fksm/error.hpp"
#include "fksm/random.hpp"
#include "fksm/stats.hpp"

namespace fksm {
namespace {

void check_point(const Objective& f, const Vector& x) {
  if (x.size() != f.size()) {
    throw InvalidInput("point has " + std::to_string(x.size()) +
                       " coordinates, objective has " +
                       std::to_string(f.size()) + " elements");
  }
}

// Evaluates f(base ∪ R ∪ {add} \ {remove}) for subsets R of the fractional
// support, addressed by a support-relative bit mask.
class SupportEvaluator {
 public:
  SupportEvaluator(const Objective& f, const Vector& x) : f_(f) {
    check_point(f, x);
    for (int e = 0; e < x.size(); ++e) {
      if (x[e] >= 1) {
        base_.push_back(e);
      } else if (x[e] > 0) {
        support_.push_back(e);
        probs_.push_back(x[e]);
      }
    }
    if (static_cast<int>(support_.size()) > kMaxExactSupport) {
      throw InvalidInput("fractional support of " +
                         std::to_string(support_.size()) +
                         " exceeds the exact-evaluation limit of " +
                         std::to_string(kMaxExactSupport));
    }
    use_masks_ = f.size() <= 64;
    if (use_masks_) {
      for (int e : base_) base_mask_ |= std::uint64_t{1} << e;
    }
  }

  int support_size() const { return static_cast<int>(support_.size()); }
  const std::vector<int>& support() const { return support_; }
  const std::vector<int>& base() const { return base_; }

  double probability(std::uint64_t r) const {
    double p = 1;
    for (int j = 0; j < support_size(); ++j) {
      p *= (r >> j & 1) ? probs_[j] : 1 - probs_[j];
    }
    return p;
  }

  double value(std::uint64_t r, int add = -1, int remove = -1) const {
    if (use_masks_) {
      std::uint64_t mask = base_mask_;
      for (int j = 0; j < support_size(); ++j) {
        if (r >> j & 1) mask |= std::uint64_t{1} << support_[j];
      }
      if (add >= 0) mask |= std::uint64_t{1} << add;
      if (remove >= 0) mask &= ~(std::uint64_t{1} << remove);
      return f_.value_mask(mask);
    }
    std::vector<int> ids;
    for (int e : base_) {
      if (e != remove) ids.push_back(e);
    }
    for (int j = 0; j < support_size(); ++j) {
      if ((r >> j & 1) && support_[j] != remove) ids.push_back(support_[j]);
    }
    if (add >= 0 && std::find(ids.begin(), ids.end(), add) == ids.end()) {
      ids.push_back(add);
    }
    return f_(ids);
  }

 private:
  const Objective& f_;
  std::vector<int> base_;
  std::vector<int> support_;
  std::vector<double> probs_;
  bool use_masks_ = false;
  std::uint64_t base_mask_ = 0;
};

// f(R) for a random R drawn with inclusion probabilities x; `in` receives
// the membership flags.
double sample_set(const Objective& f, const Vector& x, Rng& rng,
                  std::vector<char>& in, std::vector<int>& ids) {
  ids.clear();
  for (int e = 0; e < x.size(); ++e) {
    in[e] = rng.uniform() < x[e];
    if (in[e]) ids.push_back(e);
  }
  return f(ids);
}

}  // namespace

int fractional_count(const Vector& x) {
  int count = 0;
  for (int e = 0; e < x.size(); ++e) count += (x[e] > 0 && x[e] < 1);
  return count;
}

double multilinear_exact(const Objective& f, const Vector& x) {
  const SupportEvaluator eval(f, x);
  const std::uint64_t count = std::uint64_t{1} << eval.support_size();
  double total = 0;
  for (std::uint64_t r = 0; r < count; ++r) {
    const double p = eval.probability(r);
    if (p > 0) total += p * eval.value(r);
  }
  return total;
}

MultilinearEstimate multilinear_sample(const Objective& f, const Vector& x,
                                       long samples, std::uint64_t seed) {
  check_point(f, x);
  if (samples < 1) throw InvalidInput("sample count must be positive");
  RunningStat stat;
  std::vector<char> in(x.size());
  std::vector<int> ids;
  for (long t = 0; t < samples; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    stat.add(sample_set(f, x, rng, in, ids));
  }
  return {stat.mean(), stat.std_error(), samples, seed};
}

Vector gradient_exact(const Objective& f, const Vector& x) {
  if (f.kind() == ObjectiveKind::kModular) {
    check_point(f, x);
    const auto& values = std::get<Modular>(f.payload()).values;
    return Eigen::Map<const Vector>(values.data(), f.size());
  }
  const SupportEvaluator eval(f, x);
  const int s = eval.support_size();
  const std::uint64_t count = std::uint64_t{1} << s;
  std::vector<double> table(count), prob(count);
  for (std::uint64_t r = 0; r < count; ++r) {
    table[r] = eval.value(r);
    prob[r] = eval.probability(r);
  }
  Vector grad = Vector::Zero(x.size());
  for (int j = 0; j < s; ++j) {
    const std::uint64_t bit = std::uint64_t{1} << j;
    double d = 0;
    for (std::uint64_t r = 0; r < count; ++r) {
      if (prob[r] > 0) d += prob[r] * (table[r | bit] - table[r & ~bit]);
    }
    grad[eval.support()[j]] = d;
  }
  std::vector<char> in_base(x.size(), 0);
  for (int e : eval.base()) in_base[e] = 1;
  for (int e = 0; e < x.size(); ++e) {
    if (x[e] > 0 && x[e] < 1) continue;
    double d = 0;
    for (std::uint64_t r = 0; r < count; ++r) {
      if (prob[r] == 0) continue;
      d += prob[r] * (in_base[e] ? table[r] - eval.value(r, -1, e)
                                 : eval.value(r, e) - table[r]);
    }
    grad[e] = d;
  }
  return grad;
}

GradientEstimate gradient_estimate(const Objective& f, const Vector& x,
                                   long samples, std::uint64_t seed) {
  check_point(f, x);
  if (samples < 1) throw InvalidInput("sample count must be positive");
  const int n = static_cast<int>(x.size());
  if (f.kind() == ObjectiveKind::kModular) {
    const auto& values = std::get<Modular>(f.payload()).values;
    return {Eigen::Map<const Vector>(values.data(), n), Vector::Zero(n)};
  }
  std::vector<RunningStat> stats(n);
  std::vector<char> in(n);
  std::vector<int> ids;
  for (long t = 0; t < samples; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const double base = sample_set(f, x, rng, in, ids);
    if (n <= 64) {
      std::uint64_t mask = 0;
      for (int e : ids) mask |= std::uint64_t{1} << e;
      for (int e = 0; e < n; ++e) {
        const double toggled = f.value_mask(mask ^ (std::uint64_t{1} << e));
        stats[e].add(in[e] ? base - toggled : toggled - base);
      }
      continue;
    }
    for (int e = 0; e < n; ++e) {
      std::vector<int> other;
      other.reserve(ids.size() + 1);
      for (int v : ids) {
        if (v != e) other.push_back(v);
      }
      if (in[e]) {
        stats[e].add(base - f(other));
      } else {
        other.push_back(e);
        stats[e].add(f(other) - base);
      }
    }
  }
  GradientEstimate out{Vector(n), Vector(n)};
  for (int e = 0; e < n; ++e) {
    out.value[e] = stats[e].mean();
    out.std_error[e] = stats[e].std_error();
  }
  return out;
}

}  // namespace fksm
