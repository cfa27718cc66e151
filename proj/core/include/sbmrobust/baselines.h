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

// Comparison methods: the ground-truth oracle, degree pruning and
// eigenvector-sampled filtering.

#ifndef SBMROBUST_BASELINES_H_
#define SBMROBUST_BASELINES_H_

#include <cstdint>
#include <vector>

#include "sbmrobust/estimator.h"
#include "sbmrobust/graph.h"
#include "sbmrobust/sbm.h"
#include "sbmrobust/subsearch.h"

namespace sbmrobust {

struct OracleResult {
  PartitionedSubset partition;  // inliers labelled with their true community
  GammaHat gamma_hat;
};

// Estimate on the true inlier set partitioned by the true labels.
OracleResult OracleEstimate(const SbmSample& sample,
                            const EstimatorOptions& options = {});

enum class PruneQuota {
  kSplit,  // ceil(num / 2K) highest plus ceil(num / 2K) lowest per cluster
  kEach,   // ceil(num / K) highest plus ceil(num / K) lowest per cluster
};

struct PruningOptions {
  PruneQuota quota = PruneQuota::kSplit;
  CostOptions cost;
};

struct PruningResult {
  std::vector<int> clusters;  // first-pass labels on the full graph
  NodeSubset kept;
  NodeSubset removed;
  int isolated_dropped = 0;
  int clusters_truncated = 0;  // clusters smaller than their quota
  CostResult final;            // recluster, Gamma estimate and cost on `kept`
};

// Clusters g, removes the quota of highest- and lowest-degree nodes (degrees
// in the full graph, index order breaking ties) from every cluster, drops
// nodes left isolated, then reclusters what remains.
PruningResult Pruning(const Graph& g, int k, int num_to_prune, uint64_t seed,
                      const PruningOptions& options = {});

struct FilteringOptions {
  CostOptions cost;
};

struct FilteringResult {
  NodeSubset best;  // minimum-cost iterate
  CostResult best_eval;
  int best_step = 0;
  std::vector<int> removal_order;  // node ids in deletion order
  // One row per iterate S_0 .. S_max_removals, in the search trace schema:
  // temperature 0, one forced removal per step, strictly shrinking size.
  RunTrace trace;
};

// Removal distribution over the members of S: v_i^2 / ||v||^2.
std::vector<double> RemovalProbabilities(const Eigen::VectorXd& v);

// Starts from the whole graph and repeatedly deletes one node sampled from
// the squared top eigenvector of the residual A_S - Q(S), reclustering at
// every step. Returns the iterate of least cost. A degenerate iterate (no
// eigenvector) deletes a uniformly drawn node instead.
FilteringResult Filtering(const Graph& g, int k, int max_removals,
                          uint64_t seed, const FilteringOptions& options = {},
                          const TraceAnnotator& annotate = {});

}  // namespace sbmrobust

#endif  // SBMROBUST_BASELINES_H_
