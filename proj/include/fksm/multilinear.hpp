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

#ifndef FKSM_MULTILINEAR_HPP_
#define FKSM_MULTILINEAR_HPP_

#include <cstdint>

#include "fksm/model.hpp"
#include "fksm/objective.hpp"

namespace fksm {

// Largest fractional support multilinear_exact will enumerate.
inline constexpr int kMaxExactSupport = 22;
inline constexpr long kDefaultSamples = 10000;

struct MultilinearEstimate {
  double value = 0;
  double std_error = 0;
  long samples = 0;
  std::uint64_t seed = 0;
};

struct GradientEstimate {
  Vector value;
  Vector std_error;
};

// Number of coordinates strictly inside (0, 1).
int fractional_count(const Vector& x);

// F(x) = E[f(R)], R ~ independent inclusion with probabilities x. Integral
// coordinates are conditioned in; only the fractional support is
// enumerated, so nearly-integral points are cheap.
double multilinear_exact(const Objective& f, const Vector& x);

MultilinearEstimate multilinear_sample(const Objective& f, const Vector& x,
                                       long samples, std::uint64_t seed);

// dF/dx_e = E[f(R ∪ e) - f(R \ e)] by enumeration over the fractional
// support.
Vector gradient_exact(const Objective& f, const Vector& x);

// Coupled estimator: one sample R per trial shared by every coordinate.
GradientEstimate gradient_estimate(const Objective& f, const Vector& x,
                                   long samples, std::uint64_t seed);

}  // namespace fksm

#endif  // FKSM_MULTILINEAR_HPP_
