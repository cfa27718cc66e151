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

// Plug-in block connectivity estimates on a partitioned node subset and the
// residual-norm cost c(S) = ||A_S - Q(S)|| that the searches minimize.

#ifndef SBMROBUST_ESTIMATOR_H_
#define SBMROBUST_ESTIMATOR_H_

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "sbmrobust/graph.h"
#include "sbmrobust/spectral.h"

namespace sbmrobust {

// A node subset S with a label in 0..k-1 for each of its members; part c is
// S_c = {S(i) : labels[i] == c}.
class PartitionedSubset {
 public:
  PartitionedSubset() = default;
  // Throws invalid-input when a label is out of range or a part is empty.
  PartitionedSubset(NodeSubset nodes, std::vector<int> labels, int k);

  int k() const { return k_; }
  const NodeSubset& nodes() const { return nodes_; }
  const std::vector<int>& labels() const { return labels_; }
  int size() const { return nodes_.size(); }
  NodeSubset Part(int c) const;
  std::vector<int> PartSizes() const;
  // |S| x K one-hot matrix.
  Eigen::MatrixXd Membership() const;

 private:
  NodeSubset nodes_;
  std::vector<int> labels_;
  int k_ = 0;
};

using GammaHat = Eigen::MatrixXd;

struct EstimatorOptions {
  // Divide same-block sums by |S_k|(|S_k| - 1) instead of |S_k|^2.
  bool unbiased_diagonal = false;
};

// Gamma_kl = (1 / |S_k||S_l|) * sum over S_k x S_l of A.
GammaHat EstimateGamma(const Graph& g, const PartitionedSubset& p,
                       const EstimatorOptions& options = {});
// Same estimate from an already formed A_S (rows ordered like p.nodes()).
GammaHat EstimateGammaFromRestricted(const Eigen::MatrixXd& a_s,
                                     const PartitionedSubset& p,
                                     const EstimatorOptions& options = {});

// Q(S) = S Gamma S^t, diagonal included.
Eigen::MatrixXd QHat(const PartitionedSubset& p, const GammaHat& gh);

struct CostOptions {
  SpectralOptions clustering;
  SpectralNormOptions norm;
  EstimatorOptions estimator;
  bool keep_eigenvector = true;
};

struct CostResult {
  double cost = 0.0;  // +infinity when degenerate
  bool degenerate = false;
  PartitionedSubset partition;
  GammaHat gamma_hat;
  // Unit eigenvector of the residual for its largest-magnitude eigenvalue,
  // ordered like partition.nodes(). Empty when degenerate or when
  // CostOptions::keep_eigenvector is off.
  Eigen::VectorXd top_eigenvector;
};

// Clusters the subgraph induced by `s` (spectral clustering with
// `cluster_seed`), estimates Gamma on the resulting parts and returns the
// spectral norm of A_S - Q(S). A clustering with an empty part or a
// degenerate spectrum yields cost = +infinity with `degenerate` set.
CostResult Cost(const Graph& g, const NodeSubset& s, int k,
                uint64_t cluster_seed, const CostOptions& options = {});

// Cost evaluated on a caller-supplied partition (no clustering).
CostResult CostOfPartition(const Graph& g, const PartitionedSubset& p,
                           const CostOptions& options = {});

// Memoized cost for one search; eigenvectors are not kept. The clustering seed for S is
// DeriveSeed(run_seed, {S.Hash()}), so c(S) is a deterministic function of S
// within a run. Not thread-safe; use one evaluator per thread.
class CostEvaluator {
 public:
  CostEvaluator(const Graph& g, int k, uint64_t run_seed,
                CostOptions options = {}, size_t max_entries = 20000);

  // Results stay valid after later evaluations evict them from the cache.
  std::shared_ptr<const CostResult> Evaluate(const NodeSubset& s);
  uint64_t ClusterSeed(const NodeSubset& s) const;

  int k() const { return k_; }
  const Graph& graph() const { return g_; }
  int64_t evaluations() const { return evaluations_; }
  int64_t cache_hits() const { return cache_hits_; }

 private:
  struct Entry {
    std::vector<int> nodes;
    std::shared_ptr<const CostResult> result;
  };

  const Graph& g_;
  int k_;
  uint64_t run_seed_;
  CostOptions options_;
  size_t max_entries_;
  std::unordered_multimap<uint64_t, Entry> cache_;
  int64_t evaluations_ = 0;
  int64_t cache_hits_ = 0;
};

}  // namespace sbmrobust

#endif  // SBMROBUST_ESTIMATOR_H_
