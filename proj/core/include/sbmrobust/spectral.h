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

#ifndef SBMROBUST_SPECTRAL_H_
#define SBMROBUST_SPECTRAL_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sbmrobust/graph.h"

namespace sbmrobust {

struct Laplacian {
  Eigen::MatrixXd matrix;
  std::vector<int> source_degrees;
};

// L_ii = 1 if deg(i) > 0, L_ij = -1 / sqrt(deg(i) deg(j)) on edges, else 0.
Laplacian NormalizedLaplacian(const Eigen::MatrixXd& adjacency);
Laplacian NormalizedLaplacian(const Graph& g);

struct EigenOptions {
  // Matrices up to this size use a dense decomposition, larger ones Lanczos.
  int dense_crossover = 64;
  // Eigenvalues below zero_threshold * max eigenvalue count as zero.
  double zero_threshold = 1e-8;
  // Residual tolerance for Lanczos Ritz pairs, relative to the matrix scale.
  double residual_tolerance = 1e-8;
  uint64_t seed = 0x1a2c705ULL;
};

// Columns are unit eigenvectors for the k smallest eigenvalues above the zero
// threshold, in ascending order, each flipped so that its first entry of
// non-negligible magnitude is positive. Throws degenerate-spectrum when fewer
// than k such eigenvalues exist.
Eigen::MatrixXd SmallestNonzeroEigvecs(const Laplacian& l, int k,
                                       const EigenOptions& options = {},
                                       Eigen::VectorXd* eigenvalues = nullptr);

struct KMeansOptions {
  int restarts = 10;
  int max_iterations = 300;
  double tolerance = 1e-7;  // max centroid shift that counts as converged
};

struct ClusterLabels {
  std::vector<int> labels;  // 0..k-1
  int k = 0;
  double wcss = 0.0;
  bool degenerate = false;  // some label unused
};

// Lloyd iterations from k-means++ seeding, best of `restarts` by
// within-cluster sum of squares. A cluster that empties is re-seeded with
// the point farthest from its current centroid.
ClusterLabels KMeans(const Eigen::MatrixXd& points, int k, uint64_t seed,
                     const KMeansOptions& options = {});

struct SpectralOptions {
  EigenOptions eigen;
  KMeansOptions kmeans;
  bool normalize_rows = false;
};

// k-means on the rows of the smallest-nonzero eigenvector matrix of the
// normalized Laplacian. K = 1 returns a single cluster without any spectral
// work.
ClusterLabels SpectralClustering(const Eigen::MatrixXd& adjacency, int k,
                                 uint64_t seed,
                                 const SpectralOptions& options = {});
ClusterLabels SpectralClustering(const Graph& g, int k, uint64_t seed,
                                 const SpectralOptions& options = {});

struct SpectralNormOptions {
  int dense_crossover = 64;
  double relative_tolerance = 1e-6;
  uint64_t seed = 0x7e57ab1eULL;
};

struct SpectralNormResult {
  double norm = 0.0;
  double eigenvalue = 0.0;  // signed eigenvalue with |eigenvalue| == norm
  Eigen::VectorXd vector;   // unit eigenvector for `eigenvalue`
};

// Largest absolute eigenvalue of a symmetric matrix, plus its eigenvector.
// Non-symmetric input is invalid.
SpectralNormResult SpectralNorm(const Eigen::MatrixXd& m,
                                const SpectralNormOptions& options = {});

// Flips the sign of v so that its first entry above `tolerance * max|v|` is
// positive.
void CanonicalizeSign(Eigen::Ref<Eigen::VectorXd> v, double tolerance = 1e-10);

}  // namespace sbmrobust

#endif  // SBMROBUST_SPECTRAL_H_
