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

// Stochastic block model sampling and the Beta node-corruption adversary.
// Community labels are 0-based throughout (0..K-1).

#ifndef SBMROBUST_SBM_H_
#define SBMROBUST_SBM_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sbmrobust/graph.h"
#include "sbmrobust/seed.h"

namespace sbmrobust {

struct SbmParams {
  std::vector<double> pi;  // community size probabilities
  Eigen::MatrixXd gamma;   // K x K connectivity

  int k() const { return static_cast<int>(pi.size()); }

  // Throws invalid-input unless 0 < pi_k < 1 (or pi = {1} for K = 1),
  // sum(pi) = 1, and gamma is a symmetric K x K matrix in [0, 1].
  void Validate() const;

  // Uniform pi, `within` on the diagonal and `between` elsewhere.
  static SbmParams Planted(int k, double within, double between);
};

class CommunityAssignment {
 public:
  CommunityAssignment() = default;
  CommunityAssignment(std::vector<int> z, int k);

  int n() const { return static_cast<int>(z_.size()); }
  int k() const { return k_; }
  int operator[](int i) const { return z_[i]; }
  const std::vector<int>& z() const { return z_; }

  // n x K one-hot membership matrix Z.
  Eigen::MatrixXd Membership() const;
  // Omega_c = {i : z_i = c}.
  NodeSubset Community(int c) const;
  std::vector<int> CommunitySizes() const;

 private:
  std::vector<int> z_;
  int k_ = 0;
};

struct SbmDraw {
  Graph graph;
  CommunityAssignment assignment;
};

// z_i ~ Pi i.i.d., then each unordered pair independently with probability
// gamma(z_i, z_j).
SbmDraw SampleSbm(const SbmParams& params, int n, uint64_t seed);

// E[A] = Z gamma Z^t - diag(Z gamma Z^t).
Eigen::MatrixXd ExpectedAdjacency(const SbmParams& params,
                                  const CommunityAssignment& assignment);

struct CorruptionConfig {
  // s = alpha + beta of the Beta draw; variance is mu (1 - mu) / (s + 1).
  double beta_concentration = 0.1;
  uint64_t seed = 0;
};

struct SbmSample {
  Graph graph;        // observed, possibly corrupted
  Graph clean_graph;  // before corruption
  CommunityAssignment assignment;
  SbmParams params;
  NodeSubset inliers;
  NodeSubset outliers;
  double gamma_frac = 0.0;
  // m x K matrix of drawn outlier connection probabilities, row r belongs to
  // outliers[r].
  Eigen::MatrixXd outlier_probabilities;
  uint64_t graph_seed = 0;
  uint64_t corruption_seed = 0;
};

// floor(gamma_frac * n), robust to representation error in gamma_frac.
int OutlierCount(double gamma_frac, int n);

// Beta(alpha, beta) sampled in log space so tiny shape parameters neither
// underflow nor produce 0/0. mu in {0, 1} is handled by the caller.
double SampleBeta(double alpha, double beta, Rng& rng);

// Picks floor(gamma_frac * n) outliers uniformly without replacement. For
// each outlier i and community c draws p_ic ~ Beta(mu s, (1 - mu) s) with
// mu = gamma(z_i, c) and resamples every edge {i, j} as Bernoulli(p_{i z_j}).
// Pairs of outliers are resampled once, with the lower-indexed endpoint's
// probability. Inlier-inlier pairs are never touched.
SbmSample Corrupt(const Graph& clean, const CommunityAssignment& assignment,
                  const SbmParams& params, double gamma_frac,
                  const CorruptionConfig& cfg);

}  // namespace sbmrobust

#endif  // SBMROBUST_SBM_H_
