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

#include "sbmrobust/estimator.h"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "sbmrobust/error.h"
#include "sbmrobust/sbm.h"
#include "test_util.h"

namespace sbmrobust {
namespace {

Graph Fixture() {
  const std::vector<Edge> edges = {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {4, 5},
                                   {5, 6}, {6, 7}, {4, 6}, {1, 5}, {0, 7}, {3, 5}};
  return Graph::FromEdges(8, edges);
}

PartitionedSubset FixturePartition() {
  return PartitionedSubset(NodeSubset::FromIndices({0, 1, 2, 3, 5, 6, 7}),
                           {0, 0, 0, 1, 1, 1, 0}, 2);
}

// Brute-force block sums over ordered pairs, divided by |S_a| |S_b|.
Eigen::MatrixXd BruteForceGamma(const Eigen::MatrixXd& a,
                                const std::vector<int>& nodes,
                                const std::vector<int>& labels, int k) {
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(k, k);
  std::vector<double> size(k, 0.0);
  for (int c : labels) size[c] += 1.0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (size_t j = 0; j < nodes.size(); ++j) {
      sum(labels[i], labels[j]) += a(nodes[i], nodes[j]);
    }
  }
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y) sum(x, y) /= size[x] * size[y];
  }
  return sum;
}

TEST(EstimateGammaTest, FixtureMatchesReference) {
  // Reference values from an independent numpy computation.
  const GammaHat gh = EstimateGamma(Fixture(), FixturePartition());
  EXPECT_DOUBLE_EQ(gh(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(gh(0, 1), 0.25);
  EXPECT_DOUBLE_EQ(gh(1, 0), 0.25);
  EXPECT_DOUBLE_EQ(gh(1, 1), 0.4444444444444444);
  const CostResult r = CostOfPartition(Fixture(), FixturePartition());
  EXPECT_NEAR(r.cost, 2.2169264392408841, 1e-10);
}

TEST(EstimateGammaTest, UnbiasedDiagonalOption) {
  EstimatorOptions opts;
  opts.unbiased_diagonal = true;
  const GammaHat gh = EstimateGamma(Fixture(), FixturePartition(), opts);
  EXPECT_DOUBLE_EQ(gh(0, 0), 8.0 / 12.0);
  EXPECT_DOUBLE_EQ(gh(1, 1), 4.0 / 6.0);
  EXPECT_DOUBLE_EQ(gh(0, 1), 0.25);
}

TEST(EstimateGammaTest, MatchesBruteForceExactly) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 10 + trial % 40;
    const int k = 1 + trial % 4;
    const auto edges = testing::RandomEdges(n, 0.3, rng);
    const Graph g = Graph::FromEdges(n, edges);
    const Eigen::MatrixXd a = testing::DenseFromEdges(n, edges);
    std::vector<int> nodes;
    for (int i = 0; i < n; ++i) {
      if (rng() % 3 != 0 || static_cast<int>(nodes.size()) < k) nodes.push_back(i);
    }
    std::vector<int> labels(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
      labels[i] = i < static_cast<size_t>(k) ? static_cast<int>(i) : rng() % k;
    }
    const PartitionedSubset p(NodeSubset::FromIndices(nodes), labels, k);
    const Eigen::MatrixXd expect = BruteForceGamma(a, nodes, labels, k);
    EXPECT_TRUE(EstimateGamma(g, p) == expect) << "trial " << trial;
    EXPECT_TRUE(EstimateGammaFromRestricted(Restrict(g, p.nodes()), p) == expect);
  }
}

TEST(QHatTest, EntriesFollowLabels) {
  const PartitionedSubset p = FixturePartition();
  const GammaHat gh = EstimateGamma(Fixture(), p);
  const Eigen::MatrixXd q = QHat(p, gh);
  for (int i = 0; i < p.size(); ++i) {
    for (int j = 0; j < p.size(); ++j) {
      EXPECT_EQ(q(i, j), gh(p.labels()[i], p.labels()[j]));
    }
  }
  EXPECT_TRUE(q.isApprox(p.Membership() * gh * p.Membership().transpose()));
  EXPECT_THROW(QHat(p, Eigen::MatrixXd::Zero(3, 3)), Error);
}

TEST(PartitionedSubsetTest, RejectsEmptyPartsAndBadLabels) {
  const NodeSubset s = NodeSubset::FromIndices({0, 1, 2});
  EXPECT_THROW(PartitionedSubset(s, {0, 0, 0}, 2), Error);
  EXPECT_THROW(PartitionedSubset(s, {0, 1, 2}, 2), Error);
  EXPECT_THROW(PartitionedSubset(s, {0, 1}, 2), Error);
  const PartitionedSubset p(s, {1, 0, 1}, 2);
  EXPECT_EQ(p.Part(1), NodeSubset::FromIndices({0, 2}));
  EXPECT_EQ(p.PartSizes(), (std::vector<int>{1, 2}));
}

TEST(CostTest, EqualsDenseResidualNorm) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const SbmDraw d = SampleSbm(SbmParams::Planted(2, 0.6, 0.2), 40 + 8 * trial, trial);
    std::vector<int> nodes;
    for (int i = 0; i < d.graph.n(); ++i) {
      if (rng() % 4 != 0) nodes.push_back(i);
    }
    const NodeSubset s = NodeSubset::FromIndices(nodes);
    const CostResult r = Cost(d.graph, s, 2, 5);
    ASSERT_FALSE(r.degenerate);
    const Eigen::MatrixXd resid =
        Restrict(d.graph, s) - QHat(r.partition, r.gamma_hat);
    const double expect = testing::DenseSpectralNorm(resid);
    EXPECT_NEAR(r.cost, expect, 1e-6 * expect);
    EXPECT_EQ(r.top_eigenvector.size(), s.size());
  }
}

TEST(CostTest, EdgelessSubsetIsDegenerate) {
  const Graph g = Graph::FromEdges(6, std::vector<Edge>{{0, 1}});
  const CostResult r = Cost(g, NodeSubset::FromIndices({2, 3, 4, 5}), 2, 1);
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(std::isinf(r.cost));
  EXPECT_THROW(Cost(g, NodeSubset::FromIndices({2}), 2, 1), Error);
}

TEST(CostEvaluatorTest, CachesAndMatchesDirectCost) {
  const SbmDraw d = SampleSbm(SbmParams::Planted(2, 0.6, 0.2), 60, 4);
  CostEvaluator eval(d.graph, 2, 99);
  std::vector<int> nodes(40);
  std::iota(nodes.begin(), nodes.end(), 0);
  const NodeSubset s = NodeSubset::FromIndices(nodes);
  const auto first = eval.Evaluate(s);
  const auto second = eval.Evaluate(s);
  EXPECT_EQ(first.get(), second.get());
  EXPECT_EQ(eval.evaluations(), 1);
  EXPECT_EQ(eval.cache_hits(), 1);
  const CostResult direct = Cost(d.graph, s, 2, eval.ClusterSeed(s));
  EXPECT_EQ(first->cost, direct.cost);
  EXPECT_EQ(first->top_eigenvector.size(), 0);

  CostEvaluator tiny(d.graph, 2, 99, {}, 1);
  const auto kept = tiny.Evaluate(s);
  tiny.Evaluate(s.Swap(0, 50));
  EXPECT_EQ(kept->cost, first->cost);  // survives eviction
}

}  // namespace
}  // namespace sbmrobust
