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
#include <numeric>

#include <gtest/gtest.h>

#include "sbmrobust/baselines.h"
#include "sbmrobust/error.h"

namespace sbmrobust {
namespace {

// Best overlap over all K! permutations.
long BruteForceBest(const Eigen::MatrixXi& overlap) {
  const int k = static_cast<int>(overlap.rows());
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  long best = -1;
  do {
    long score = 0;
    for (int c = 0; c < k; ++c) score += overlap(perm[c], c);
    best = std::max(best, score);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

long Score(const Eigen::MatrixXi& overlap, const Alignment& a) {
  long s = 0;
  for (int c = 0; c < static_cast<int>(a.size()); ++c) s += overlap(a[c], c);
  return s;
}

TEST(AlignLabelsTest, IdentityAndSwap) {
  const CommunityAssignment truth({0, 0, 1, 1, 2, 2}, 3);
  const NodeSubset all = NodeSubset::All(6);
  EXPECT_EQ(AlignLabels(PartitionedSubset(all, {0, 0, 1, 1, 2, 2}, 3), truth),
            (Alignment{0, 1, 2}));
  EXPECT_EQ(AlignLabels(PartitionedSubset(all, {1, 1, 0, 0, 2, 2}, 3), truth),
            (Alignment{1, 0, 2}));
}

TEST(AlignLabelsTest, MatchesBruteForceOnRandomConfusions) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 1 + trial % 5;
    Eigen::MatrixXi overlap(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) overlap(i, j) = static_cast<int>(rng() % 20);
    }
    const Alignment a = MaxWeightAssignment(overlap);
    std::vector<int> sorted = a;
    std::sort(sorted.begin(), sorted.end());
    for (int c = 0; c < k; ++c) ASSERT_EQ(sorted[c], c);
    EXPECT_EQ(Score(overlap, a), BruteForceBest(overlap));
  }
}

TEST(AlignLabelsTest, HungarianAboveEightMatchesBruteForce) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const int k = 9;
    Eigen::MatrixXi overlap(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) overlap(i, j) = static_cast<int>(rng() % 50);
    }
    EXPECT_EQ(Score(overlap, MaxWeightAssignment(overlap)), BruteForceBest(overlap));
  }
}

TEST(EstimationErrorTest, WorkedExampleAndPermutationInvariance) {
  Eigen::MatrixXd g(2, 2), gh(2, 2);
  g << 0.65, 0.35, 0.35, 0.65;
  gh << 0.6, 0.35, 0.35, 0.7;
  EXPECT_NEAR(EstimationError(g, gh, {0, 1}), 0.10, 1e-15);
  EXPECT_EQ(EstimationError(g, g, {0, 1}), 0.0);

  Eigen::MatrixXd g3(3, 3), gh3(3, 3);
  g3 << 0.7, 0.1, 0.2, 0.1, 0.5, 0.3, 0.2, 0.3, 0.6;
  gh3 << 0.6, 0.15, 0.2, 0.15, 0.55, 0.25, 0.2, 0.25, 0.65;
  const double base = EstimationError(g3, gh3, {0, 1, 2});
  // Relabel the truth by pi and compose the alignment accordingly.
  const std::vector<int> pi = {2, 0, 1};
  Eigen::MatrixXd permuted(3, 3);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) permuted(pi[a], pi[b]) = g3(a, b);
  }
  Alignment composed(3);
  for (int a = 0; a < 3; ++a) composed[pi[a]] = a;
  EXPECT_NEAR(EstimationError(permuted, gh3, composed), base, 1e-15);
  EXPECT_THROW(EstimationError(g3, gh, {0, 1}), Error);
}

SbmSample Sample(int k, int n, double gamma, uint64_t seed) {
  const SbmParams p = SbmParams::Planted(k, 0.6, 0.2);
  const SbmDraw d = SampleSbm(p, n, seed);
  return Corrupt(d.graph, d.assignment, p, gamma, {0.1, seed * 3 + 1});
}

TEST(BoundCheckTest, CleanGraphTruePartitionHolds) {
  const SbmSample s = Sample(2, 120, 0.0, 4);
  const OracleResult o = OracleEstimate(s);
  const EvalReport r = BoundCheck(s, o.partition, o.gamma_hat);
  EXPECT_EQ(r.alignment, (Alignment{0, 1}));
  EXPECT_LT(r.estimation_error, 0.05);
  EXPECT_GT(r.min_overlap, 40);
  EXPECT_TRUE(r.bound_holds);
  EXPECT_FALSE(r.vacuous);
  EXPECT_NEAR(r.bound_rhs,
              4.0 / r.min_overlap * (0.6 + r.noise_norm + r.cost), 1e-12);
  EXPECT_NEAR(r.cost_to_overlap, r.cost / r.min_overlap, 1e-15);
}

TEST(BoundCheckTest, OutlierCountsAndNoiseNorm) {
  const SbmSample s = Sample(2, 80, 0.3, 5);
  std::vector<int> nodes(60);
  std::iota(nodes.begin(), nodes.end(), 10);
  const NodeSubset sub = NodeSubset::FromIndices(nodes);
  std::vector<int> labels(60);
  for (int i = 0; i < 60; ++i) labels[i] = s.assignment[nodes[i]];
  const PartitionedSubset p(sub, labels, 2);
  const EvalReport r = BoundCheck(s, p, EstimateGamma(s.graph, p));
  int inliers_in_s = 0;
  for (int v : sub) inliers_in_s += s.inliers.Contains(v);
  EXPECT_EQ(r.outliers_in_s + inliers_in_s, 60);

  // Noise norm against an explicit dense computation.
  const Eigen::MatrixXd e = ExpectedAdjacency(s.params, s.assignment);
  Eigen::MatrixXd diff = Restrict(s.graph, s.inliers);
  for (int i = 0; i < s.inliers.size(); ++i) {
    for (int j = 0; j < s.inliers.size(); ++j) {
      diff(i, j) -= e(s.inliers[i], s.inliers[j]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(diff, Eigen::EigenvaluesOnly);
  EXPECT_NEAR(r.noise_norm, es.eigenvalues().cwiseAbs().maxCoeff(), 1e-6);
}

TEST(BoundCheckTest, ZeroOverlapIsVacuous) {
  const SbmSample s = Sample(2, 40, 0.0, 6);
  // Only community-0 nodes, split in two parts: one true community is missed.
  std::vector<int> nodes;
  for (int i = 0; i < 40; ++i) {
    if (s.assignment[i] == 0) nodes.push_back(i);
  }
  std::vector<int> labels(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) labels[i] = i % 2;
  const PartitionedSubset p(NodeSubset::FromIndices(nodes), labels, 2);
  const EvalReport r = BoundCheck(s, p, EstimateGamma(s.graph, p));
  EXPECT_EQ(r.min_overlap, 0);
  EXPECT_TRUE(r.vacuous);
  EXPECT_TRUE(std::isinf(r.bound_rhs));
  EXPECT_TRUE(r.bound_holds);
}

}  // namespace
}  // namespace sbmrobust
