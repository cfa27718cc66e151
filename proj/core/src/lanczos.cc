// Copyright 2026 The sbmrobust Authors.
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

#include "sbmrobust/lanczos.h"

#include <algorithm>
#include <cmath>

#include "sbmrobust/error.h"
#include "sbmrobust/seed.h"

namespace sbmrobust {

namespace {

Eigen::VectorXd RandomUnit(int n, uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v.normalized();
}

}  // namespace

Lanczos::Lanczos(const Eigen::MatrixXd& a, LanczosOptions options)
    : a_(a), options_(options), n_(static_cast<int>(a.rows())) {
  if (a.rows() != a.cols() || n_ == 0) {
    ThrowInvalidInput("Lanczos needs a non-empty square matrix");
  }
  int budget = options_.max_steps > 0 ? std::min(options_.max_steps, n_) : n_;
  options_.max_steps = budget;
  options_.check_every = std::max(1, options_.check_every);
  basis_.resize(n_, std::min(budget + 1, n_));
  alpha_.resize(budget);
  beta_.resize(budget);
  basis_.col(0) = RandomUnit(n_, options_.seed);
}

void Lanczos::Step() {
  const int j = steps_;
  Eigen::VectorXd w = a_ * basis_.col(j);
  const double alpha = basis_.col(j).dot(w);
  w -= alpha * basis_.col(j);
  if (j > 0) w -= beta_(j - 1) * basis_.col(j - 1);
  // Two passes of classical Gram-Schmidt keep the basis orthogonal to
  // working precision.
  for (int pass = 0; pass < 2; ++pass) {
    const auto q = basis_.leftCols(j + 1);
    w -= q * (q.transpose() * w);
  }
  alpha_(j) = alpha;
  norm_estimate_ = std::max(norm_estimate_, std::abs(alpha) + w.norm());
  ++steps_;
  if (steps_ == n_) {
    beta_(j) = 0.0;
    return;
  }
  double beta = w.norm();
  if (beta <= 1e-12 * std::max(norm_estimate_, 1e-300)) {
    beta = 0.0;
    // Invariant subspace: continue from a random orthogonal direction.
    Eigen::VectorXd r;
    do {
      r = RandomUnit(n_, Mix64(options_.seed ^ ++restart_count_));
      for (int pass = 0; pass < 2; ++pass) {
        const auto q = basis_.leftCols(steps_);
        r -= q * (q.transpose() * r);
      }
    } while (r.norm() < 1e-8);
    w = r.normalized();
  } else {
    w /= beta;
  }
  beta_(j) = beta;
  if (steps_ < basis_.cols()) basis_.col(steps_) = w;
}

void Lanczos::ComputeRitz() {
  const int m = steps_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  Eigen::VectorXd diag = alpha_.head(m);
  Eigen::VectorXd sub = beta_.head(std::max(m - 1, 0));
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  values_ = es.eigenvalues();
  ritz_coeffs_ = es.eigenvectors();
  const double coupling = m < n_ ? std::abs(beta_(m - 1)) : 0.0;
  residuals_ = coupling * ritz_coeffs_.row(m - 1).transpose().cwiseAbs();
}

bool Lanczos::Run(const StopRule& stop) {
  while (steps_ < options_.max_steps) {
    const int target =
        std::min(options_.max_steps, steps_ + options_.check_every);
    while (steps_ < target) Step();
    ComputeRitz();
    if (stop(RitzView(values_, residuals_))) return true;
  }
  if (steps_ == 0) return false;
  return steps_ == n_;
}

Eigen::VectorXd Lanczos::Vector(int i) const {
  Eigen::VectorXd v = basis_.leftCols(steps_) * ritz_coeffs_.col(i);
  return v.normalized();
}

}  // namespace sbmrobust
