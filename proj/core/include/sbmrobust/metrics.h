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

// Ground-truth evaluation of an estimate: label alignment, estimation error,
// outlier counts and the error bound in terms of subset overlap.

#ifndef SBMROBUST_METRICS_H_
#define SBMROBUST_METRICS_H_

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sbmrobust/estimator.h"
#include "sbmrobust/graph.h"
#include "sbmrobust/sbm.h"

namespace sbmrobust {

// alignment[k] is the estimated part matched to true community k.
using Alignment = std::vector<int>;

// overlap(a, b) = number of nodes with estimated label a and true label b.
Eigen::MatrixXi OverlapMatrix(const PartitionedSubset& p,
                              const CommunityAssignment& truth);

// Permutation maximizing sum_k overlap(alignment[k], k). Exhaustive for
// K <= 8, Hungarian method above. Ties go to the lexicographically first
// permutation in the exhaustive case.
Alignment AlignLabels(const PartitionedSubset& p,
                      const CommunityAssignment& truth);
Alignment MaxWeightAssignment(const Eigen::MatrixXi& overlap);

// sum over k <= l of |gamma_true(k, l) - gamma_hat(a[k], a[l])|.
double EstimationError(const Eigen::MatrixXd& gamma_true,
                       const GammaHat& gamma_hat, const Alignment& alignment);

int OutliersIn(const NodeSubset& s, const NodeSubset& outliers);

struct EvalReport {
  double estimation_error = 0.0;
  Alignment alignment;
  int outliers_in_s = 0;
  int subset_size = 0;
  int min_overlap = 0;  // min_k |S_a[k] ∩ Omega_k ∩ F|
  double cost = 0.0;    // ||A_S - Q(S)||
  double cost_to_overlap = 0.0;
  double max_gamma_diag = 0.0;
  double noise_norm = 0.0;  // ||A_F - E[A]_F||
  double bound_rhs = 0.0;
  bool vacuous = false;  // min_overlap == 0, bound_rhs is +inf
  bool bound_holds = false;
};

// ||A_F - E[A]_F|| for the sample's inliers. Depends only on the sample, so
// callers evaluating several subsets can compute it once.
double InlierNoiseNorm(const SbmSample& sample,
                       const SpectralNormOptions& options = {});

// Fills every term of the bound
//   K^2 / min_overlap * (max_k Gamma_kk + ||A_F - E[A]_F|| + ||A_S - Q(S)||)
// from explicitly formed matrices and compares it with the error.
EvalReport BoundCheck(const SbmSample& sample, const PartitionedSubset& p,
                      const GammaHat& gamma_hat,
                      std::optional<double> noise_norm = std::nullopt,
                      const SpectralNormOptions& options = {});

}  // namespace sbmrobust

#endif  // SBMROBUST_METRICS_H_
