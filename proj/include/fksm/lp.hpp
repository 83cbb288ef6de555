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

#ifndef FKSM_LP_HPP_
#define FKSM_LP_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "fksm/error.hpp"

namespace fksm {

// max objective·x  s.t.  row_lower <= rows·x <= row_upper,
//                        col_lower <= x <= col_upper.
// Column bounds must be finite; each row needs at least one finite side.
template <typename Scalar>
struct BoundedLp {
  using MatrixType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using VectorType = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  MatrixType rows;
  VectorType row_lower, row_upper;
  VectorType col_lower, col_upper;
  VectorType objective;
};

enum class LpStatus { kOptimal, kInfeasible };

template <typename Scalar>
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  typename BoundedLp<Scalar>::VectorType x;
  Scalar value = 0;
  int iterations = 0;
};

namespace internal {

// Dense two-phase primal simplex over bounded variables. Row activities are
// explicit variables t = rows·x, and phase one drives one artificial per row
// to zero. Bland's rule on entering and leaving variables makes the pivot
// sequence, and therefore the returned vertex, a deterministic function of
// the input.
template <typename Scalar>
class BoundedSimplex {
 public:
  using MatrixType = typename BoundedLp<Scalar>::MatrixType;
  using VectorType = typename BoundedLp<Scalar>::VectorType;

  explicit BoundedSimplex(const BoundedLp<Scalar>& lp) : lp_(lp) {
    m_ = static_cast<int>(lp.rows.rows());
    n_ = static_cast<int>(lp.rows.cols());
    total_ = n_ + 2 * m_;
    const Scalar inf = std::numeric_limits<Scalar>::infinity();
    lo_.assign(total_, 0);
    hi_.assign(total_, inf);
    value_.assign(total_, 0);
    status_.assign(total_, kAtLower);
    basis_.assign(m_, -1);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lp.col_lower[j];
      hi_[j] = lp.col_upper[j];
      if (!std::isfinite(static_cast<double>(lo_[j])) ||
          !std::isfinite(static_cast<double>(hi_[j])) || lo_[j] > hi_[j]) {
        throw InvalidInput("column bounds must be finite and ordered");
      }
      value_[j] = lo_[j];
    }
    tableau_ = MatrixType::Zero(m_, total_);
    for (int r = 0; r < m_; ++r) {
      const int t = n_ + r;
      lo_[t] = lp.row_lower[r];
      hi_[t] = lp.row_upper[r];
      if (lo_[t] > hi_[t]) throw InvalidInput("row bounds are out of order");
      if (std::isfinite(static_cast<double>(lo_[t]))) {
        status_[t] = kAtLower;
        value_[t] = lo_[t];
      } else if (std::isfinite(static_cast<double>(hi_[t]))) {
        status_[t] = kAtUpper;
        value_[t] = hi_[t];
      } else {
        throw InvalidInput("every row needs a finite bound");
      }
      const Scalar activity = lp.rows.row(r).dot(
          Eigen::Map<const VectorType>(value_.data(), n_));
      // rows·x - t + sign·a = 0 with a >= 0 at the start.
      const Scalar residual = value_[t] - activity;
      const Scalar sign = residual >= 0 ? Scalar(1) : Scalar(-1);
      const int a = n_ + m_ + r;
      value_[a] = sign * residual;
      status_[a] = kBasic;
      basis_[r] = a;
      // B = diag(sign), so B^-1 M = sign * M.
      tableau_.row(r).head(n_) = sign * lp.rows.row(r);
      tableau_(r, t) = -sign;
      tableau_(r, a) = 1;
    }
    scale_ = 1;
    for (int j = 0; j < n_; ++j) {
      scale_ = std::max(scale_, std::abs(lp.objective[j]));
    }
  }

  LpSolution<Scalar> solve() {
    LpSolution<Scalar> out;
    std::vector<Scalar> cost(total_, 0);
    for (int r = 0; r < m_; ++r) cost[n_ + m_ + r] = -1;
    run(cost, Scalar(1));
    Scalar infeasibility = 0;
    for (int r = 0; r < m_; ++r) infeasibility += value_[n_ + m_ + r];
    out.iterations = iterations_;
    if (infeasibility > Scalar(1e-7)) return out;

    for (int r = 0; r < m_; ++r) {
      const int a = n_ + m_ + r;
      hi_[a] = 0;
      value_[a] = 0;
      if (status_[a] != kBasic) status_[a] = kAtLower;
    }
    std::fill(cost.begin(), cost.end(), Scalar(0));
    for (int j = 0; j < n_; ++j) cost[j] = lp_.objective[j];
    run(cost, scale_);
    refresh_basic_values();

    out.status = LpStatus::kOptimal;
    out.iterations = iterations_;
    out.x.resize(n_);
    for (int j = 0; j < n_; ++j) {
      out.x[j] = std::clamp(value_[j], lo_[j], hi_[j]);
    }
    out.value = lp_.objective.dot(out.x);
    return out;
  }

 private:
  enum Status { kBasic, kAtLower, kAtUpper };

  void run(const std::vector<Scalar>& cost, Scalar cost_scale) {
    const Scalar dj_tol = Scalar(1e-10) * cost_scale;
    const Scalar pivot_tol = Scalar(1e-11);
    const Scalar inf = std::numeric_limits<Scalar>::infinity();
    const int max_iterations = 1000 + 50 * (total_ + m_);
    std::vector<Scalar> dual(m_);
    for (;;) {
      if (++iterations_ > max_iterations) {
        throw InternalError("simplex iteration limit exceeded");
      }
      for (int i = 0; i < m_; ++i) dual[i] = cost[basis_[i]];
      int enter = -1;
      for (int j = 0; j < total_ && enter < 0; ++j) {
        if (status_[j] == kBasic || !(hi_[j] > lo_[j])) continue;
        Scalar dj = cost[j];
        for (int i = 0; i < m_; ++i) dj -= dual[i] * tableau_(i, j);
        if ((status_[j] == kAtLower && dj > dj_tol) ||
            (status_[j] == kAtUpper && dj < -dj_tol)) {
          enter = j;
        }
      }
      if (enter < 0) return;

      const Scalar dir = status_[enter] == kAtLower ? Scalar(1) : Scalar(-1);
      Scalar step = hi_[enter] - lo_[enter];
      int leave_row = -1;
      for (int i = 0; i < m_; ++i) {
        const Scalar alpha = dir * tableau_(i, enter);
        const int b = basis_[i];
        Scalar limit = inf;
        if (alpha > pivot_tol) {
          limit = (value_[b] - lo_[b]) / alpha;
        } else if (alpha < -pivot_tol) {
          limit = (hi_[b] - value_[b]) / -alpha;
        } else {
          continue;
        }
        limit = std::max(limit, Scalar(0));
        if (limit < step ||
            (limit == step && leave_row >= 0 && b < basis_[leave_row])) {
          step = limit;
          leave_row = i;
        }
      }
      if (!std::isfinite(static_cast<double>(step))) {
        throw InternalError("simplex found an unbounded direction");
      }
      for (int i = 0; i < m_; ++i) {
        value_[basis_[i]] -= step * dir * tableau_(i, enter);
      }
      value_[enter] += step * dir;
      if (leave_row < 0) {
        status_[enter] = dir > 0 ? kAtUpper : kAtLower;
        value_[enter] = dir > 0 ? hi_[enter] : lo_[enter];
        continue;
      }
      const int leave = basis_[leave_row];
      const bool to_lower = dir * tableau_(leave_row, enter) > 0;
      status_[leave] = to_lower ? kAtLower : kAtUpper;
      value_[leave] = to_lower ? lo_[leave] : hi_[leave];
      pivot(leave_row, enter);
      basis_[leave_row] = enter;
      status_[enter] = kBasic;
    }
  }

  void pivot(int row, int col) {
    tableau_.row(row) /= tableau_(row, col);
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      const Scalar factor = tableau_(i, col);
      if (factor != 0) tableau_.row(i) -= factor * tableau_.row(row);
    }
  }

  // Basic values from the nonbasic ones: B z_B + N z_N = 0.
  void refresh_basic_values() {
    for (int i = 0; i < m_; ++i) {
      Scalar v = 0;
      for (int j = 0; j < total_; ++j) {
        if (status_[j] != kBasic) v -= tableau_(i, j) * value_[j];
      }
      value_[basis_[i]] = v;
    }
  }

  const BoundedLp<Scalar>& lp_;
  int m_ = 0, n_ = 0, total_ = 0;
  int iterations_ = 0;
  Scalar scale_ = 1;
  MatrixType tableau_;
  std::vector<Scalar> lo_, hi_, value_;
  std::vector<Status> status_;
  std::vector<int> basis_;
};

}  // namespace internal

template <typename Scalar>
LpSolution<Scalar> solve_bounded_lp(const BoundedLp<Scalar>& lp) {
  const auto m = lp.rows.rows();
  const auto n = lp.rows.cols();
  if (lp.row_lower.size() != m || lp.row_upper.size() != m ||
      lp.col_lower.size() != n || lp.col_upper.size() != n ||
      lp.objective.size() != n) {
    throw InvalidInput("inconsistent LP dimensions");
  }
  return internal::BoundedSimplex<Scalar>(lp).solve();
}

}  // namespace fksm

#endif  // FKSM_LP_HPP_
