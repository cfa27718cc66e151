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

#ifndef SBMROBUST_GRAPH_H_
#define SBMROBUST_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sbmrobust {

using Edge = std::pair<int, int>;

// Sorted, duplicate-free list of node ids.
class NodeSubset {
 public:
  NodeSubset() = default;

  // Sorts and validates. Duplicates or negative ids are invalid input.
  static NodeSubset FromIndices(std::vector<int> indices);
  // {0, 1, ..., n - 1}.
  static NodeSubset All(int n);

  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  int operator[](int i) const { return indices_[i]; }
  std::span<const int> indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  bool Contains(int node) const;
  // Position of `node` inside the subset, or -1.
  int PositionOf(int node) const;
  // Largest id plus one, 0 for the empty subset.
  int Bound() const { return indices_.empty() ? 0 : indices_.back() + 1; }

  // Replaces `removed` (must be present) with `added` (must be absent).
  NodeSubset Swap(int removed, int added) const;
  NodeSubset Without(int removed) const;

  // Order-sensitive hash of the sorted ids.
  uint64_t Hash() const;

  // Membership mask of length n.
  std::vector<uint8_t> Mask(int n) const;

  friend bool operator==(const NodeSubset&, const NodeSubset&) = default;

 private:
  explicit NodeSubset(std::vector<int> sorted) : indices_(std::move(sorted)) {}
  std::vector<int> indices_;
};

// Complement of `s` in {0, ..., n - 1}.
NodeSubset Complement(const NodeSubset& s, int n);

struct GraphBuildStats {
  int self_loops_dropped = 0;
  int duplicates_dropped = 0;
};

// Undirected simple graph. Stores a dense byte adjacency matrix for O(1)
// lookups next to sorted neighbor lists; both are built once and the graph is
// immutable afterwards.
class Graph {
 public:
  Graph() = default;

  // Self-loops and repeated edges (in either orientation) are dropped and
  // counted in `stats` when provided.
  static Graph FromEdges(int n, std::span<const Edge> edges,
                         GraphBuildStats* stats = nullptr);
  // `adjacency` must be square, symmetric, 0/1 with a zero diagonal.
  static Graph FromAdjacency(const Eigen::MatrixXd& adjacency);

  int n() const { return n_; }
  int64_t edge_count() const { return edge_count_; }

  bool HasEdge(int i, int j) const {
    return dense_[static_cast<size_t>(i) * n_ + j] != 0;
  }
  std::span<const int> Neighbors(int i) const { return neighbors_[i]; }
  int Degree(int i) const { return static_cast<int>(neighbors_[i].size()); }

  // Row-major n x n bytes.
  std::span<const uint8_t> dense() const { return dense_; }

  // Each undirected edge once, as (i, j) with i < j, in lexicographic order.
  std::vector<Edge> Edges() const;

  Eigen::MatrixXd Adjacency() const;

 private:
  int n_ = 0;
  int64_t edge_count_ = 0;
  std::vector<uint8_t> dense_;
  std::vector<std::vector<int>> neighbors_;
};

// (A_{rows x cols})_{ij} = A_{rows(i), cols(j)}.
Eigen::MatrixXd Restrict(const Graph& g, const NodeSubset& rows,
                         const NodeSubset& cols);
// A_S, the induced adjacency.
Eigen::MatrixXd Restrict(const Graph& g, const NodeSubset& s);

std::vector<int> Degrees(const Graph& g);

// Degrees inside the subgraph induced by `s`, ordered like `s`.
std::vector<int> InducedDegrees(const Graph& g, const NodeSubset& s);

// True iff the subgraph induced by `s` is connected. Empty `s` is invalid.
bool IsConnected(const Graph& g, const NodeSubset& s);
// Same check against a membership mask with `count` members.
bool IsConnectedMask(const Graph& g, std::span<const uint8_t> mask, int count);

// Connected components of the whole graph, largest first.
std::vector<NodeSubset> ConnectedComponents(const Graph& g);

// Subgraph induced by `s`, relabeled to 0..|s|-1 in the order of `s`.
Graph InducedSubgraph(const Graph& g, const NodeSubset& s);

enum class IndexBase { kAuto, kZero, kOne };

struct EdgeListInfo {
  int n = 0;
  bool one_based = false;
  int lines = 0;
  GraphBuildStats stats;
};

// Plain-text edge list: two integer ids per line; `#`, `%` and Pajek `*`
// header lines are skipped, extra numeric columns are ignored. With kAuto a
// file without any id 0 is read as 1-based. Errors carry the line number.
Graph ReadEdgeList(std::istream& in, IndexBase base = IndexBase::kAuto,
                   EdgeListInfo* info = nullptr);
Graph LoadEdgeList(const std::string& path, IndexBase base = IndexBase::kAuto,
                   EdgeListInfo* info = nullptr);

}  // namespace sbmrobust

#endif  // SBMROBUST_GRAPH_H_
