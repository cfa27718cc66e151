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

#include <algorithm>
#include <limits>
#include <string>

#include "sbmrobust/error.h"
#include "sbmrobust/seed.h"

namespace sbmrobust {

PartitionedSubset::PartitionedSubset(NodeSubset nodes, std::vector<int> labels,
                                     int k)
    : nodes_(std::move(nodes)), labels_(std::move(labels)), k_(k) {
  if (k_ < 1) ThrowInvalidInput("partition needs K >= 1");
  if (static_cast<int>(labels_.size()) != nodes_.size()) {
    ThrowInvalidInput("one label per subset member required");
  }
  std::vector<int> sizes(k_, 0);
  for (int c : labels_) {
    if (c < 0 || c >= k_) ThrowInvalidInput("part label out of range");
    ++sizes[c];
  }
  for (int c = 0; c < k_; ++c) {
    if (sizes[c] == 0) {
      ThrowInvalidInput("part " + std::to_string(c) + " is empty");
    }
  }
}

NodeSubset PartitionedSubset::Part(int c) const {
  std::vector<int> members;
  for (int i = 0; i < size(); ++i) {
    if (labels_[i] == c) members.push_back(nodes_[i]);
  }
  return NodeSubset::FromIndices(std::move(members));
}

std::vector<int> PartitionedSubset::PartSizes() const {
  std::vector<int> sizes(k_, 0);
  for (int c : labels_) ++sizes[c];
  return sizes;
}

Eigen::MatrixXd PartitionedSubset::Membership() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size(), k_);
  for (int i = 0; i < size(); ++i) m(i, labels_[i]) = 1.0;
  return m;
}

namespace {

GammaHat Normalize(Eigen::MatrixXd counts, const std::vector<int>& sizes,
                   const EstimatorOptions& options) {
  const int k = static_cast<int>(sizes.size());
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      double denom = static_cast<double>(sizes[a]) * sizes[b];
      if (a == b && options.unbiased_diagonal) {
        denom = static_cast<double>(sizes[a]) * (sizes[a] - 1);
      }
      counts(a, b) = denom > 0.0 ? counts(a, b) / denom : 0.0;
    }
  }
  return counts;
}

}  // namespace

GammaHat EstimateGamma(const Graph& g, const PartitionedSubset& p,
                       const EstimatorOptions& options) {
  if (p.nodes().Bound() > g.n()) ThrowInvalidInput("partition outside graph");
  const int k = p.k();
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(k, k);
  std::vector<int> label_of(g.n(), -1);
  for (int i = 0; i < p.size(); ++i) label_of[p.nodes()[i]] = p.labels()[i];
  for (int i = 0; i < p.size(); ++i) {
    const int a = p.labels()[i];
    for (int j : g.Neighbors(p.nodes()[i])) {
      if (label_of[j] >= 0) counts(a, label_of[j]) += 1.0;
    }
  }
  return Normalize(std::move(counts), p.PartSizes(), options);
}

GammaHat EstimateGammaFromRestricted(const Eigen::MatrixXd& a_s,
                                     const PartitionedSubset& p,
                                     const EstimatorOptions& options) {
  if (a_s.rows() != p.size() || a_s.cols() != p.size()) {
    ThrowInvalidInput("restricted adjacency does not match the partition");
  }
  const int k = p.k();
  // Column sums per block first, then row blocks: O(|S|^2 + |S| K).
  Eigen::MatrixXd per_row = Eigen::MatrixXd::Zero(p.size(), k);
  for (int j = 0; j < p.size(); ++j) per_row.col(p.labels()[j]) += a_s.col(j);
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < p.size(); ++i) counts.row(p.labels()[i]) += per_row.row(i);
  return Normalize(std::move(counts), p.PartSizes(), options);
}

Eigen::MatrixXd QHat(const PartitionedSubset& p, const GammaHat& gh) {
  if (gh.rows() != p.k() || gh.cols() != p.k()) {
    ThrowInvalidInput("Gamma estimate does not match the partition");
  }
  const int s = p.size();
  Eigen::MatrixXd q(s, s);
  const auto& labels = p.labels();
  for (int j = 0; j < s; ++j) {
    for (int i = 0; i < s; ++i) q(i, j) = gh(labels[i], labels[j]);
  }
  return q;
}

namespace {

CostResult Degenerate() {
  CostResult r;
  r.cost = std::numeric_limits<double>::infinity();
  r.degenerate = true;
  return r;
}

CostResult Finish(const Eigen::MatrixXd& a_s, PartitionedSubset p,
                  const CostOptions& options) {
  CostResult r;
  r.gamma_hat = EstimateGammaFromRestricted(a_s, p, options.estimator);
  const Eigen::MatrixXd residual = a_s - QHat(p, r.gamma_hat);
  SpectralNormResult norm = SpectralNorm(residual, options.norm);
  r.cost = norm.norm;
  if (options.keep_eigenvector) r.top_eigenvector = std::move(norm.vector);
  r.partition = std::move(p);
  return r;
}

}  // namespace

CostResult Cost(const Graph& g, const NodeSubset& s, int k,
                uint64_t cluster_seed, const CostOptions& options) {
  if (k < 1 || s.size() < k) ThrowInvalidInput("cost needs |S| >= K >= 1");
  const Eigen::MatrixXd a_s = Restrict(g, s);
  ClusterLabels labels;
  try {
    labels = SpectralClustering(a_s, k, cluster_seed, options.clustering);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kDegenerateSpectrum) return Degenerate();
    throw;
  }
  if (labels.degenerate) return Degenerate();
  return Finish(a_s, PartitionedSubset(s, std::move(labels.labels), k),
                options);
}

CostResult CostOfPartition(const Graph& g, const PartitionedSubset& p,
                           const CostOptions& options) {
  return Finish(Restrict(g, p.nodes()), p, options);
}

CostEvaluator::CostEvaluator(const Graph& g, int k, uint64_t run_seed,
                             CostOptions options, size_t max_entries)
    : g_(g),
      k_(k),
      run_seed_(run_seed),
      options_(std::move(options)),
      max_entries_(std::max<size_t>(1, max_entries)) {
  options_.keep_eigenvector = false;
}

uint64_t CostEvaluator::ClusterSeed(const NodeSubset& s) const {
  return DeriveSeed(run_seed_, {s.Hash()});
}

std::shared_ptr<const CostResult> CostEvaluator::Evaluate(const NodeSubset& s) {
  const uint64_t h = s.Hash();
  auto [lo, hi] = cache_.equal_range(h);
  for (auto it = lo; it != hi; ++it) {
    if (std::equal(it->second.nodes.begin(), it->second.nodes.end(),
                   s.begin(), s.end())) {
      ++cache_hits_;
      return it->second.result;
    }
  }
  ++evaluations_;
  auto result = std::make_shared<const CostResult>(
      Cost(g_, s, k_, DeriveSeed(run_seed_, {h}), options_));
  if (cache_.size() >= max_entries_) cache_.clear();
  cache_.emplace(h, Entry{std::vector<int>(s.begin(), s.end()), result});
  return result;
}

}  // namespace sbmrobust
