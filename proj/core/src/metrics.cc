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

#include "sbmrobust/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sbmrobust/error.h"
#include "sbmrobust/spectral.h"

namespace sbmrobust {

Eigen::MatrixXi OverlapMatrix(const PartitionedSubset& p,
                              const CommunityAssignment& truth) {
  if (p.k() != truth.k()) ThrowInvalidInput("alignment needs equal K");
  if (p.nodes().Bound() > truth.n()) {
    ThrowInvalidInput("partition outside the labelled graph");
  }
  Eigen::MatrixXi overlap = Eigen::MatrixXi::Zero(p.k(), p.k());
  for (int i = 0; i < p.size(); ++i) {
    ++overlap(p.labels()[i], truth[p.nodes()[i]]);
  }
  return overlap;
}

namespace {

// Minimum-cost perfect matching on a square matrix, potentials form of the
// Hungarian method. Returns row -> column.
std::vector<int> Hungarian(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);  // match[col] = row, 1-based
  for (int row = 1; row <= n; ++row) {
    match[0] = row;
    int col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[col0] = 1;
      const int i0 = match[col0];
      double delta = inf;
      int col1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = col0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          col1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const int col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<int> row_to_col(n);
  for (int j = 1; j <= n; ++j) row_to_col[match[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

Alignment MaxWeightAssignment(const Eigen::MatrixXi& overlap) {
  const int k = static_cast<int>(overlap.rows());
  if (overlap.cols() != k) ThrowInvalidInput("overlap matrix must be square");
  if (k > 8) {
    // Rows of the cost matrix are true communities, columns estimated parts.
    return Hungarian(-overlap.transpose().cast<double>());
  }
  Alignment perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Alignment best = perm;
  long best_score = -1;
  do {
    long score = 0;
    for (int c = 0; c < k; ++c) score += overlap(perm[c], c);
    if (score > best_score) {
      best_score = score;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Alignment AlignLabels(const PartitionedSubset& p,
                      const CommunityAssignment& truth) {
  return MaxWeightAssignment(OverlapMatrix(p, truth));
}

double EstimationError(const Eigen::MatrixXd& gamma_true,
                       const GammaHat& gamma_hat, const Alignment& alignment) {
  const int k = static_cast<int>(gamma_true.rows());
  if (gamma_true.cols() != k || gamma_hat.rows() != k ||
      gamma_hat.cols() != k || static_cast<int>(alignment.size()) != k) {
    ThrowInvalidInput("estimation error needs matching K x K shapes");
  }
  double err = 0.0;
  for (int a = 0; a < k; ++a) {
    for (int b = a; b < k; ++b) {
      err += std::abs(gamma_true(a, b) - gamma_hat(alignment[a], alignment[b]));
    }
  }
  return err;
}

int OutliersIn(const NodeSubset& s, const NodeSubset& outliers) {
  int count = 0;
  for (int v : outliers) count += s.Contains(v) ? 1 : 0;
  return count;
}

double InlierNoiseNorm(const SbmSample& sample,
                       const SpectralNormOptions& options) {
  const Eigen::MatrixXd expected =
      ExpectedAdjacency(sample.params, sample.assignment);
  const auto f = sample.inliers.indices();
  const Eigen::MatrixXd a_f = Restrict(sample.graph, sample.inliers);
  Eigen::MatrixXd diff(a_f.rows(), a_f.cols());
  for (Eigen::Index j = 0; j < diff.cols(); ++j) {
    for (Eigen::Index i = 0; i < diff.rows(); ++i) {
      diff(i, j) = a_f(i, j) - expected(f[i], f[j]);
    }
  }
  if (diff.size() == 0) return 0.0;
  return SpectralNorm(diff, options).norm;
}

EvalReport BoundCheck(const SbmSample& sample, const PartitionedSubset& p,
                      const GammaHat& gamma_hat,
                      std::optional<double> noise_norm,
                      const SpectralNormOptions& options) {
  const int k = p.k();
  EvalReport r;
  r.alignment = AlignLabels(p, sample.assignment);
  r.estimation_error =
      EstimationError(sample.params.gamma, gamma_hat, r.alignment);
  r.subset_size = p.size();
  r.outliers_in_s = OutliersIn(p.nodes(), sample.outliers);

  // |S_a[c] ∩ Omega_c ∩ F| per true community c.
  std::vector<int> overlap(k, 0);
  for (int i = 0; i < p.size(); ++i) {
    const int v = p.nodes()[i];
    const int c = sample.assignment[v];
    if (r.alignment[c] == p.labels()[i] && !sample.outliers.Contains(v)) {
      ++overlap[c];
    }
  }
  r.min_overlap = *std::min_element(overlap.begin(), overlap.end());

  const Eigen::MatrixXd residual =
      Restrict(sample.graph, p.nodes()) - QHat(p, gamma_hat);
  r.cost = SpectralNorm(residual, options).norm;
  r.max_gamma_diag = sample.params.gamma.diagonal().maxCoeff();
  r.noise_norm = noise_norm ? *noise_norm : InlierNoiseNorm(sample, options);

  const double inf = std::numeric_limits<double>::infinity();
  if (r.min_overlap == 0) {
    r.vacuous = true;
    r.cost_to_overlap = inf;
    r.bound_rhs = inf;
  } else {
    r.cost_to_overlap = r.cost / r.min_overlap;
    r.bound_rhs = static_cast<double>(k) * k / r.min_overlap *
                  (r.max_gamma_diag + r.noise_norm + r.cost);
  }
  r.bound_holds = r.estimation_error <= r.bound_rhs;
  return r;
}

}  // namespace sbmrobust
