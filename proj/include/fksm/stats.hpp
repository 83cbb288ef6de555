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

#ifndef FKSM_STATS_HPP_
#define FKSM_STATS_HPP_

#include <cmath>

namespace fksm {

// Welford accumulator. std_error() is the sample standard deviation over
// sqrt(count), and 0 when fewer than two values were seen.
class RunningStat {
 public:
  void add(double value) {
    ++count_;
    const double delta = value - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (value - mean_);
  }

  long count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }
  double std_error() const {
    return count_ > 1 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
  }

 private:
  long count_ = 0;
  double mean_ = 0;
  double m2_ = 0;
};

struct MeanEstimate {
  double mean = 0;
  double std_error = 0;
};

inline MeanEstimate summarize(const RunningStat& s) {
  return {s.mean(), s.std_error()};
}

}  // namespace fksm

#endif  // FKSM_STATS_HPP_
