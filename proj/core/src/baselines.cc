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

#include "sbmrobust/baselines.h"

#include <algorithm>
#include <cstdio>
#include <random>

#include "sbmrobust/error.h"
#include "sbmrobust/seed.h"
#include "sbmrobust/spectral.h"

namespace sbmrobust {

OracleResult OracleEstimate(const SbmSample& sample,
                            const EstimatorOptions& options) {
  std::vector<int> labels;
  labels.reserve(sample.inliers.size());
  for (int v : sample.inliers) labels.push_back(sample.assignment[v]);
  OracleResult out{PartitionedSubset(sample.inliers, std::move(labels),
                                     sample.params.k()),
                   {}};
  out.gamma_hat = EstimateGamma(sample.graph, out.partition, options);
  return out;
}

PruningResult Pruning(const Graph& g, int k, int num_to_prune, uint64_t seed,
                      const PruningOptions& options) {
  const int n = g.n();
  if (num_to_prune < 0 || num_to_prune >= n) {
    ThrowInvalidInput("num_to_prune must lie in [0, n)");
  }
  const ClusterLabels clusters =
      SpectralClustering(g, k, DeriveSeed(seed, {Fnv1a("cluster")}),
                         options.cost.clustering);
  const std::vector<int> degree = Degrees(g);
  const int divisor = options.quota == PruneQuota::kSplit ? 2 * k : k;
  const int quota = (num_to_prune + divisor - 1) / divisor;

  PruningResult out;
  out.clusters = clusters.labels;
  std::vector<uint8_t> keep(n, 1);
  for (int c = 0; c < k; ++c) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      if (clusters.labels[i] == c) members.push_back(i);
    }
    std::sort(members.begin(), members.end(), [&](int a, int b) {
      return degree[a] != degree[b] ? degree[a] < degree[b] : a < b;
    });
    const int size = static_cast<int>(members.size());
    if (quota == 0 || size == 0) continue;
    if (size <= 2 * quota) {
      ++out.clusters_truncated;
      std::fprintf(stderr,
                   "warning: cluster %d has %d nodes, quota %d per side; "
                   "keeping one node\n",
                   c, size, quota);
      for (int i = 0; i < size; ++i) {
        if (i != size / 2) keep[members[i]] = 0;
      }
      continue;
    }
    for (int i = 0; i < quota; ++i) {
      keep[members[i]] = 0;
      keep[members[size - 1 - i]] = 0;
    }
  }
  // Nodes isolated by the removal go too.
  std::vector<uint8_t> isolated(n, 0);
  for (int i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    bool has = false;
    for (int j : g.Neighbors(i)) {
      if (keep[j]) {
        has = true;
        break;
      }
    }
    isolated[i] = !has;
  }
  std::vector<int> kept;
  std::vector<int> removed;
  for (int i = 0; i < n; ++i) {
    if (keep[i] && isolated[i]) ++out.isolated_dropped;
    (keep[i] && !isolated[i] ? kept : removed).push_back(i);
  }
  if (static_cast<int>(kept.size()) < k) {
    throw Error(ErrorCode::kInfeasible, "pruning left fewer than K nodes");
  }
  out.kept = NodeSubset::FromIndices(std::move(kept));
  out.removed = NodeSubset::FromIndices(std::move(removed));
  out.final = Cost(g, out.kept, k, DeriveSeed(seed, {Fnv1a("recluster")}),
                   options.cost);
  return out;
}

std::vector<double> RemovalProbabilities(const Eigen::VectorXd& v) {
  const double total = v.squaredNorm();
  std::vector<double> p(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    p[i] = total > 0.0 ? v(i) * v(i) / total : 1.0 / v.size();
  }
  return p;
}

FilteringResult Filtering(const Graph& g, int k, int max_removals,
                          uint64_t seed, const FilteringOptions& options,
                          const TraceAnnotator& annotate) {
  const int n = g.n();
  if (max_removals < 0 || max_removals >= n || n - max_removals < k) {
    ThrowInvalidInput("max_removals must leave at least K nodes");
  }
  CostOptions cost_options = options.cost;
  cost_options.keep_eigenvector = true;
  Rng rng(DeriveSeed(seed, {Fnv1a("filter")}));

  FilteringResult out;
  NodeSubset current = NodeSubset::All(n);
  double best_cost = 0.0;
  for (int t = 0; t <= max_removals; ++t) {
    CostResult eval =
        Cost(g, current, k,
             DeriveSeed(seed, {Fnv1a("cluster"), static_cast<uint64_t>(t)}),
             cost_options);
    if (t == 0 || eval.cost < best_cost) {
      best_cost = eval.cost;
      out.best = current;
      out.best_eval = eval;
      out.best_step = t;
    }
    TraceRow row;
    row.iter = t;
    row.current_cost = eval.cost;
    row.best_cost = best_cost;
    row.accepted = t > 0 ? 1 : 0;
    row.proposals = row.accepted;
    row.subgraph_size = current.size();
    if (annotate) row.truth = annotate(current, eval);
    out.trace.rows.push_back(row);
    if (t == max_removals) break;

    int pick;
    if (eval.top_eigenvector.size() == current.size()) {
      const std::vector<double> p = RemovalProbabilities(eval.top_eigenvector);
      pick = std::discrete_distribution<int>(p.begin(), p.end())(rng);
    } else {
      pick = std::uniform_int_distribution<int>(0, current.size() - 1)(rng);
    }
    out.removal_order.push_back(current[pick]);
    current = current.Without(current[pick]);
  }
  out.best_eval.top_eigenvector.resize(0);
  return out;
}

}  // namespace sbmrobust
