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

#include "sbmrobust/sbm.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "sbmrobust/error.h"

namespace sbmrobust {

void SbmParams::Validate() const {
  const int kk = k();
  if (kk < 1) ThrowInvalidInput("SBM needs at least one community");
  double total = 0.0;
  for (double p : pi) {
    const bool ok = kk == 1 ? (p > 0.0 && p <= 1.0) : (p > 0.0 && p < 1.0);
    if (!ok) ThrowInvalidInput("community probability outside (0, 1)");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    ThrowInvalidInput("community probabilities must sum to 1");
  }
  if (gamma.rows() != kk || gamma.cols() != kk) {
    ThrowInvalidInput("connectivity matrix must be K x K");
  }
  for (int a = 0; a < kk; ++a) {
    for (int b = 0; b < kk; ++b) {
      const double g = gamma(a, b);
      if (!(g >= 0.0 && g <= 1.0)) {
        ThrowInvalidInput("connectivity entries must lie in [0, 1]");
      }
      if (g != gamma(b, a)) ThrowInvalidInput("connectivity not symmetric");
    }
  }
}

SbmParams SbmParams::Planted(int k, double within, double between) {
  SbmParams p;
  p.pi.assign(k, 1.0 / k);
  p.gamma = Eigen::MatrixXd::Constant(k, k, between);
  p.gamma.diagonal().setConstant(within);
  return p;
}

CommunityAssignment::CommunityAssignment(std::vector<int> z, int k)
    : z_(std::move(z)), k_(k) {
  if (k_ < 1) ThrowInvalidInput("assignment needs K >= 1");
  for (int c : z_) {
    if (c < 0 || c >= k_) ThrowInvalidInput("community label out of range");
  }
}

Eigen::MatrixXd CommunityAssignment::Membership() const {
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n(), k_);
  for (int i = 0; i < n(); ++i) z(i, z_[i]) = 1.0;
  return z;
}

NodeSubset CommunityAssignment::Community(int c) const {
  std::vector<int> members;
  for (int i = 0; i < n(); ++i) {
    if (z_[i] == c) members.push_back(i);
  }
  return NodeSubset::FromIndices(std::move(members));
}

std::vector<int> CommunityAssignment::CommunitySizes() const {
  std::vector<int> sizes(k_, 0);
  for (int c : z_) ++sizes[c];
  return sizes;
}

SbmDraw SampleSbm(const SbmParams& params, int n, uint64_t seed) {
  params.Validate();
  if (n < params.k()) ThrowInvalidInput("SBM sample needs n >= K");
  Rng rng(seed);
  std::discrete_distribution<int> label(params.pi.begin(), params.pi.end());
  std::vector<int> z(n);
  for (int& c : z) c = label(rng);

  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (Uniform01(rng) < params.gamma(z[i], z[j])) edges.emplace_back(i, j);
    }
  }
  return SbmDraw{Graph::FromEdges(n, edges),
                 CommunityAssignment(std::move(z), params.k())};
}

Eigen::MatrixXd ExpectedAdjacency(const SbmParams& params,
                                  const CommunityAssignment& assignment) {
  const Eigen::MatrixXd z = assignment.Membership();
  Eigen::MatrixXd q = z * params.gamma * z.transpose();
  q.diagonal().setZero();
  return q;
}

int OutlierCount(double gamma_frac, int n) {
  return static_cast<int>(std::floor(gamma_frac * n + 1e-9));
}

namespace {

double LogGamma(double shape, Rng& rng) {
  if (shape >= 1.0) {
    return std::log(std::gamma_distribution<double>(shape, 1.0)(rng));
  }
  // G(a) = G(a + 1) * U^(1/a).
  const double g = std::gamma_distribution<double>(shape + 1.0, 1.0)(rng);
  double u = Uniform01(rng);
  while (u <= 0.0) u = Uniform01(rng);
  return std::log(g) + std::log(u) / shape;
}

}  // namespace

double SampleBeta(double alpha, double beta, Rng& rng) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    ThrowInvalidInput("Beta shape parameters must be positive");
  }
  const double lx = LogGamma(alpha, rng);
  const double ly = LogGamma(beta, rng);
  return 1.0 / (1.0 + std::exp(ly - lx));
}

SbmSample Corrupt(const Graph& clean, const CommunityAssignment& assignment,
                  const SbmParams& params, double gamma_frac,
                  const CorruptionConfig& cfg) {
  params.Validate();
  if (!(gamma_frac >= 0.0 && gamma_frac < 0.5)) {
    ThrowInvalidInput("corruption fraction must lie in [0, 1/2)");
  }
  if (!(cfg.beta_concentration > 0.0)) {
    ThrowInvalidInput("Beta concentration must be positive");
  }
  const int n = clean.n();
  if (assignment.n() != n || assignment.k() != params.k()) {
    ThrowInvalidInput("assignment does not match graph or parameters");
  }
  const int m = OutlierCount(gamma_frac, n);
  const int k = params.k();
  Rng rng(cfg.seed);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> chosen(order.begin(), order.begin() + m);
  std::sort(chosen.begin(), chosen.end());

  SbmSample out;
  out.clean_graph = clean;
  out.assignment = assignment;
  out.params = params;
  out.gamma_frac = gamma_frac;
  out.corruption_seed = cfg.seed;
  out.outliers = NodeSubset::FromIndices(chosen);
  out.inliers = Complement(out.outliers, n);
  out.outlier_probabilities.resize(m, k);

  std::vector<int> outlier_row(n, -1);
  for (int r = 0; r < m; ++r) {
    const int i = chosen[r];
    outlier_row[i] = r;
    for (int c = 0; c < k; ++c) {
      const double mu = params.gamma(assignment[i], c);
      double p = mu;
      if (mu > 0.0 && mu < 1.0) {
        p = SampleBeta(mu * cfg.beta_concentration,
                       (1.0 - mu) * cfg.beta_concentration, rng);
      }
      out.outlier_probabilities(r, c) = p;
    }
  }

  std::vector<Edge> edges;
  edges.reserve(clean.edge_count());
  for (const Edge& e : clean.Edges()) {
    if (outlier_row[e.first] < 0 && outlier_row[e.second] < 0) {
      edges.push_back(e);
    }
  }
  for (int r = 0; r < m; ++r) {
    const int i = chosen[r];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      // Outlier pairs are handled from the lower-indexed endpoint only.
      if (outlier_row[j] >= 0 && j < i) continue;
      if (Uniform01(rng) < out.outlier_probabilities(r, assignment[j])) {
        edges.emplace_back(std::min(i, j), std::max(i, j));
      }
    }
  }
  out.graph = Graph::FromEdges(n, edges);
  return out;
}

}  // namespace sbmrobust
