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

#include "sbmrobust/graph.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "sbmrobust/error.h"
#include "sbmrobust/seed.h"

namespace sbmrobust {

NodeSubset NodeSubset::FromIndices(std::vector<int> indices) {
  std::sort(indices.begin(), indices.end());
  if (!indices.empty() && indices.front() < 0) {
    ThrowInvalidInput("node subset contains a negative id");
  }
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    ThrowInvalidInput("node subset contains duplicate ids");
  }
  return NodeSubset(std::move(indices));
}

NodeSubset NodeSubset::All(int n) {
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  return NodeSubset(std::move(all));
}

bool NodeSubset::Contains(int node) const {
  return std::binary_search(indices_.begin(), indices_.end(), node);
}

int NodeSubset::PositionOf(int node) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), node);
  if (it == indices_.end() || *it != node) return -1;
  return static_cast<int>(it - indices_.begin());
}

NodeSubset NodeSubset::Swap(int removed, int added) const {
  if (!Contains(removed) || Contains(added)) {
    ThrowInvalidInput("swap requires removed in subset and added outside");
  }
  std::vector<int> out;
  out.reserve(indices_.size());
  for (int v : indices_) {
    if (v != removed) out.push_back(v);
  }
  out.insert(std::lower_bound(out.begin(), out.end(), added), added);
  return NodeSubset(std::move(out));
}

NodeSubset NodeSubset::Without(int removed) const {
  if (!Contains(removed)) ThrowInvalidInput("node not in subset");
  std::vector<int> out;
  out.reserve(indices_.size() - 1);
  for (int v : indices_) {
    if (v != removed) out.push_back(v);
  }
  return NodeSubset(std::move(out));
}

uint64_t NodeSubset::Hash() const {
  uint64_t h = Mix64(indices_.size());
  for (int v : indices_) h = Mix64(h ^ static_cast<uint64_t>(v));
  return h;
}

std::vector<uint8_t> NodeSubset::Mask(int n) const {
  std::vector<uint8_t> mask(n, 0);
  for (int v : indices_) {
    if (v >= n) ThrowInvalidInput("node id out of range for mask");
    mask[v] = 1;
  }
  return mask;
}

NodeSubset Complement(const NodeSubset& s, int n) {
  std::vector<uint8_t> mask = s.Mask(n);
  std::vector<int> out;
  out.reserve(n - s.size());
  for (int i = 0; i < n; ++i) {
    if (!mask[i]) out.push_back(i);
  }
  return NodeSubset::FromIndices(std::move(out));
}

Graph Graph::FromEdges(int n, std::span<const Edge> edges,
                       GraphBuildStats* stats) {
  if (n < 0) ThrowInvalidInput("negative node count");
  Graph g;
  g.n_ = n;
  g.dense_.assign(static_cast<size_t>(n) * n, 0);
  g.neighbors_.assign(n, {});
  GraphBuildStats local;
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      ThrowInvalidInput("edge endpoint out of range: (" + std::to_string(a) +
                        ", " + std::to_string(b) + ")");
    }
    if (a == b) {
      ++local.self_loops_dropped;
      continue;
    }
    uint8_t& cell = g.dense_[static_cast<size_t>(a) * n + b];
    if (cell) {
      ++local.duplicates_dropped;
      continue;
    }
    cell = 1;
    g.dense_[static_cast<size_t>(b) * n + a] = 1;
    g.neighbors_[a].push_back(b);
    g.neighbors_[b].push_back(a);
    ++g.edge_count_;
  }
  for (auto& list : g.neighbors_) std::sort(list.begin(), list.end());
  if (stats) *stats = local;
  return g;
}

Graph Graph::FromAdjacency(const Eigen::MatrixXd& adjacency) {
  if (adjacency.rows() != adjacency.cols()) {
    ThrowInvalidInput("adjacency matrix must be square");
  }
  const int n = static_cast<int>(adjacency.rows());
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    if (adjacency(i, i) != 0.0) ThrowInvalidInput("adjacency has self-loops");
    for (int j = i + 1; j < n; ++j) {
      const double a = adjacency(i, j);
      if (a != adjacency(j, i)) ThrowInvalidInput("adjacency not symmetric");
      if (a != 0.0 && a != 1.0) ThrowInvalidInput("adjacency not binary");
      if (a == 1.0) edges.emplace_back(i, j);
    }
  }
  return FromEdges(n, edges);
}

std::vector<Edge> Graph::Edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (int i = 0; i < n_; ++i) {
    for (int j : neighbors_[i]) {
      if (j > i) out.emplace_back(i, j);
    }
  }
  return out;
}

Eigen::MatrixXd Graph::Adjacency() const {
  return Restrict(*this, NodeSubset::All(n_));
}

namespace {

void CheckRange(const Graph& g, const NodeSubset& s) {
  if (s.Bound() > g.n()) {
    ThrowInvalidInput("node id " + std::to_string(s.Bound() - 1) +
                      " out of range for graph with " + std::to_string(g.n()) +
                      " nodes");
  }
}

}  // namespace

Eigen::MatrixXd Restrict(const Graph& g, const NodeSubset& rows,
                         const NodeSubset& cols) {
  CheckRange(g, rows);
  CheckRange(g, cols);
  Eigen::MatrixXd out(rows.size(), cols.size());
  const auto dense = g.dense();
  const size_t n = g.n();
  for (int j = 0; j < cols.size(); ++j) {
    const size_t col = cols[j];
    for (int i = 0; i < rows.size(); ++i) {
      out(i, j) = dense[rows[i] * n + col];
    }
  }
  return out;
}

Eigen::MatrixXd Restrict(const Graph& g, const NodeSubset& s) {
  return Restrict(g, s, s);
}

std::vector<int> Degrees(const Graph& g) {
  std::vector<int> deg(g.n());
  for (int i = 0; i < g.n(); ++i) deg[i] = g.Degree(i);
  return deg;
}

std::vector<int> InducedDegrees(const Graph& g, const NodeSubset& s) {
  CheckRange(g, s);
  std::vector<uint8_t> mask = s.Mask(g.n());
  std::vector<int> deg(s.size(), 0);
  for (int i = 0; i < s.size(); ++i) {
    for (int j : g.Neighbors(s[i])) deg[i] += mask[j];
  }
  return deg;
}

bool IsConnectedMask(const Graph& g, std::span<const uint8_t> mask,
                     int count) {
  if (count <= 0) ThrowInvalidInput("connectivity of an empty subset");
  int start = -1;
  for (int i = 0; i < g.n(); ++i) {
    if (mask[i]) {
      start = i;
      break;
    }
  }
  std::vector<uint8_t> seen(g.n(), 0);
  std::vector<int> stack = {start};
  seen[start] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : g.Neighbors(v)) {
      if (mask[w] && !seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == count;
}

bool IsConnected(const Graph& g, const NodeSubset& s) {
  if (s.empty()) ThrowInvalidInput("connectivity of an empty subset");
  CheckRange(g, s);
  std::vector<uint8_t> mask = s.Mask(g.n());
  return IsConnectedMask(g, mask, s.size());
}

std::vector<NodeSubset> ConnectedComponents(const Graph& g) {
  std::vector<int> comp(g.n(), -1);
  std::vector<std::vector<int>> members;
  for (int s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(members.size());
    members.emplace_back();
    std::vector<int> queue = {s};
    comp[s] = id;
    for (size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      members[id].push_back(v);
      for (int w : g.Neighbors(v)) {
        if (comp[w] < 0) {
          comp[w] = id;
          queue.push_back(w);
        }
      }
    }
  }
  std::vector<NodeSubset> out;
  out.reserve(members.size());
  for (auto& m : members) out.push_back(NodeSubset::FromIndices(std::move(m)));
  std::stable_sort(out.begin(), out.end(),
                   [](const NodeSubset& a, const NodeSubset& b) {
                     return a.size() > b.size();
                   });
  return out;
}

Graph InducedSubgraph(const Graph& g, const NodeSubset& s) {
  CheckRange(g, s);
  std::vector<Edge> edges;
  for (int i = 0; i < s.size(); ++i) {
    for (int j = i + 1; j < s.size(); ++j) {
      if (g.HasEdge(s[i], s[j])) edges.emplace_back(i, j);
    }
  }
  return Graph::FromEdges(s.size(), edges);
}

Graph ReadEdgeList(std::istream& in, IndexBase base, EdgeListInfo* info) {
  std::vector<Edge> raw;
  bool saw_zero = false;
  int max_id = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const char lead = line[first];
    if (lead == '#' || lead == '%' || lead == '*') continue;
    std::istringstream fields(line);
    long long a = 0;
    long long b = 0;
    if (!(fields >> a >> b)) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                         ": expected two integer node ids");
    }
    std::string extra;
    while (fields >> extra) {
      char* end = nullptr;
      std::strtod(extra.c_str(), &end);
      if (end == extra.c_str() || *end != '\0') {
        throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                           ": unexpected token '" + extra +
                                           "'");
      }
    }
    if (a < 0 || b < 0 || a > 100'000'000 || b > 100'000'000) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                         ": node id out of range");
    }
    saw_zero = saw_zero || a == 0 || b == 0;
    max_id = std::max<int>(max_id, static_cast<int>(std::max(a, b)));
    raw.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  bool one_based = base == IndexBase::kOne;
  if (base == IndexBase::kAuto) one_based = !saw_zero && max_id >= 1;
  if (one_based && saw_zero) {
    throw Error(ErrorCode::kParse, "id 0 found in a 1-based edge list");
  }
  const int n = one_based ? max_id : max_id + 1;
  if (one_based) {
    for (auto& [a, b] : raw) {
      --a;
      --b;
    }
  }
  EdgeListInfo local;
  local.n = n;
  local.one_based = one_based;
  local.lines = line_no;
  Graph g = Graph::FromEdges(std::max(n, 0), raw, &local.stats);
  if (info) *info = local;
  return g;
}

Graph LoadEdgeList(const std::string& path, IndexBase base,
                   EdgeListInfo* info) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open edge list " + path);
  return ReadEdgeList(in, base, info);
}

}  // namespace sbmrobust
