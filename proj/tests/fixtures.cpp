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

#include "fixtures.hpp"

#include "fksm/random.hpp"

namespace fksm::testing {

Vector random_point(int n, std::uint64_t seed) {
  Rng rng(seed);
  Vector x(n);
  for (int e = 0; e < n; ++e) x[e] = rng.uniform(0.05, 0.95);
  return x;
}

}  // namespace fksm::testing
