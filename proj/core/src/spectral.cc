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

#include "sbmrobust/spectral.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sbmrobust/error.h"
#include "sbmrobust/lanczos.h"

namespace sbmrobust {

Laplacian NormalizedLaplacian(const Eigen::MatrixXd& adjacency) {
  const Eigen::Index n = adjacency.rows();
  Laplacian l;
  l.source_degrees.resize(n);
  Eigen::VectorXd inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = adjacency.row(i).sum();
    l.source_degrees[i] = static_cast<int>(std::lround(d));
    inv_sqrt(i) = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  l.matrix = -(inv_sqrt.asDiagonal() * adjacency * inv_sqrt.asDiagonal());
  for (Eigen::Index i = 0; i < n; ++i) {
    l.matrix(i, i) = l.source_degrees[i] > 0 ? 1.0 : 0.0;
  }
  return l;
}

Laplacian NormalizedLaplacian(const Graph& g) {
  return NormalizedLaplacian(g.Adjacency());
}

void CanonicalizeSign(Eigen::Ref<Eigen::VectorXd> v, double tolerance) {
  const double scale = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > tolerance * scale) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

namespace {

// Indices (ascending) of the first k values above the zero threshold among
// values[0..limit), or fewer if not available.
std::vector<int> PickNonzero(const Eigen::VectorXd& values, int limit, int k,
                             double threshold) {
  std::vector<int> picked;
  for (int i = 0; i < limit && static_cast<int>(picked.size()) < k; ++i) {
    if (values(i) > threshold) picked.push_back(i);
  }
  return picked;
}

[[noreturn]] void ThrowDegenerate(int found, int k) {
  throw Error(ErrorCode::kDegenerateSpectrum,
              "only " + std::to_string(found) +
                  " non-zero Laplacian eigenvalues, " + std::to_string(k) +
                  " requested");
}

}  // namespace

Eigen::MatrixXd SmallestNonzeroEigvecs(const Laplacian& l, int k,
                                       const EigenOptions& options,
                                       Eigen::VectorXd* eigenvalues) {
  if (k < 1) ThrowInvalidInput("need at least one eigenvector");
  const int n = static_cast<int>(l.matrix.rows());
  if (n == 0) ThrowDegenerate(0, k);
  Eigen::MatrixXd out(n, k);
  Eigen::VectorXd picked_values(k);

  if (n <= options.dense_crossover) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l.matrix);
    const Eigen::VectorXd& values = es.eigenvalues();
    const double threshold = options.zero_threshold * std::max(values(n - 1), 0.0);
    std::vector<int> picked = PickNonzero(values, n, k, threshold);
    if (static_cast<int>(picked.size()) < k || values(n - 1) <= 0.0) {
      ThrowDegenerate(static_cast<int>(picked.size()), k);
    }
    for (int c = 0; c < k; ++c) {
      out.col(c) = es.eigenvectors().col(picked[c]);
      picked_values(c) = values(picked[c]);
    }
  } else {
    LanczosOptions lo;
    lo.seed = options.seed;
    Lanczos lanczos(l.matrix, lo);
    lanczos.Run([&](const RitzView& ritz) {
      const int m = ritz.size();
      const double top = std::max(ritz.value(m - 1), 0.0);
      const double threshold = options.zero_threshold * top;
      const double tol = options.residual_tolerance * std::max(top, 1.0);
      int nonzero = 0;
      for (int i = 0; i < m; ++i) {
        if (ritz.residual(i) > tol) return false;
        if (ritz.value(i) > threshold && ++nonzero == k) return true;
      }
      return false;
    });
    const Eigen::VectorXd& values = lanczos.values();
    const int m = static_cast<int>(values.size());
    const double top = std::max(values(m - 1), 0.0);
    std::vector<int> picked =
        PickNonzero(values, m, k, options.zero_threshold * top);
    if (static_cast<int>(picked.size()) < k || top <= 0.0) {
      ThrowDegenerate(static_cast<int>(picked.size()), k);
    }
    for (int c = 0; c < k; ++c) {
      out.col(c) = lanczos.Vector(picked[c]);
      picked_values(c) = values(picked[c]);
    }
  }
  for (int c = 0; c < k; ++c) CanonicalizeSign(out.col(c));
  if (eigenvalues) *eigenvalues = picked_values;
  return out;
}

ClusterLabels SpectralClustering(const Eigen::MatrixXd& adjacency, int k,
                                 uint64_t seed,
                                 const SpectralOptions& options) {
  const int n = static_cast<int>(adjacency.rows());
  if (k < 1 || n < k) ThrowInvalidInput("spectral clustering needs 1 <= K <= n");
  if (k == 1) {
    ClusterLabels single;
    single.labels.assign(n, 0);
    single.k = 1;
    return single;
  }
  const Laplacian l = NormalizedLaplacian(adjacency);
  Eigen::MatrixXd embedding = SmallestNonzeroEigvecs(l, k, options.eigen);
  if (options.normalize_rows) {
    for (int i = 0; i < n; ++i) {
      const double norm = embedding.row(i).norm();
      if (norm > 0.0) embedding.row(i) /= norm;
    }
  }
  return KMeans(embedding, k, seed, options.kmeans);
}

ClusterLabels SpectralClustering(const Graph& g, int k, uint64_t seed,
                                 const SpectralOptions& options) {
  return SpectralClustering(g.Adjacency(), k, seed, options);
}

SpectralNormResult SpectralNorm(const Eigen::MatrixXd& m,
                                const SpectralNormOptions& options) {
  if (m.rows() != m.cols()) ThrowInvalidInput("spectral norm needs a square matrix");
  const int n = static_cast<int>(m.rows());
  SpectralNormResult result;
  if (n == 0) return result;
  const double scale = m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0)) {
    ThrowInvalidInput("spectral norm expects a symmetric matrix");
  }

  if (n <= options.dense_crossover) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    const Eigen::VectorXd& values = es.eigenvalues();
    const int pick = std::abs(values(0)) > std::abs(values(n - 1)) ? 0 : n - 1;
    result.eigenvalue = values(pick);
    result.vector = es.eigenvectors().col(pick);
  } else {
    LanczosOptions lo;
    lo.seed = options.seed;
    Lanczos lanczos(m, lo);
    lanczos.Run([&](const RitzView& ritz) {
      const int last = ritz.size() - 1;
      const double big =
          std::max(std::abs(ritz.value(0)), std::abs(ritz.value(last)));
      const double tol = options.relative_tolerance * big;
      return ritz.residual(0) <= tol && ritz.residual(last) <= tol;
    });
    const Eigen::VectorXd& values = lanczos.values();
    const int last = static_cast<int>(values.size()) - 1;
    const int pick = std::abs(values(0)) > std::abs(values(last)) ? 0 : last;
    result.eigenvalue = values(pick);
    result.vector = lanczos.Vector(pick);
  }
  result.norm = std::abs(result.eigenvalue);
  CanonicalizeSign(result.vector);
  return result;
}

}  // namespace sbmrobust
