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

#ifndef SBMROBUST_LANCZOS_H_
#define SBMROBUST_LANCZOS_H_

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

namespace sbmrobust {

// Ritz approximations after some number of Lanczos steps. Values ascend;
// residual(i) bounds ||A y_i - theta_i y_i|| for the unit Ritz vector y_i.
class RitzView {
 public:
  RitzView(const Eigen::VectorXd& values, const Eigen::VectorXd& residuals)
      : values_(values), residuals_(residuals) {}
  int size() const { return static_cast<int>(values_.size()); }
  double value(int i) const { return values_(i); }
  double residual(int i) const { return residuals_(i); }

 private:
  const Eigen::VectorXd& values_;
  const Eigen::VectorXd& residuals_;
};

struct LanczosOptions {
  int max_steps = 0;  // 0 means the matrix dimension
  int check_every = 4;
  uint64_t seed = 0x5eed5eedULL;
};

// Symmetric Lanczos with full reorthogonalization. On breakdown (an invariant
// subspace was found) a fresh random direction orthogonal to the basis is
// appended, so repeated eigenvalues are eventually resolved. Once the basis
// spans the whole space every Ritz pair is exact.
class Lanczos {
 public:
  using StopRule = std::function<bool(const RitzView&)>;

  Lanczos(const Eigen::MatrixXd& a, LanczosOptions options = {});

  // Extends the Krylov basis until `stop` accepts the Ritz values or the
  // step budget is spent. Returns true when `stop` accepted.
  bool Run(const StopRule& stop);

  int steps() const { return steps_; }
  const Eigen::VectorXd& values() const { return values_; }
  const Eigen::VectorXd& residuals() const { return residuals_; }
  // Unit Ritz vector for values()(i).
  Eigen::VectorXd Vector(int i) const;

 private:
  void Step();
  void ComputeRitz();

  const Eigen::MatrixXd& a_;
  LanczosOptions options_;
  int n_ = 0;
  int steps_ = 0;
  Eigen::MatrixXd basis_;
  Eigen::VectorXd alpha_;
  Eigen::VectorXd beta_;  // beta_(j) couples basis columns j and j + 1
  Eigen::VectorXd values_;
  Eigen::VectorXd residuals_;
  Eigen::MatrixXd ritz_coeffs_;
  uint64_t restart_count_ = 0;
  double norm_estimate_ = 0.0;
};

}  // namespace sbmrobust

#endif  // SBMROBUST_LANCZOS_H_
