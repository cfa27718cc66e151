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

// Independent reference implementations shared by the tests. Nothing here
// calls into the library beyond its plain data types.

#ifndef SBMROBUST_TESTS_TEST_UTIL_H_
#define SBMROBUST_TESTS_TEST_UTIL_H_

#include <numeric>
#include <ostream>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sbmrobust/graph.h"

namespace sbmrobust {

// Readable gtest failure messages.
inline void PrintTo(const NodeSubset& s, std::ostream* os) {
  *os << '{';
  for (int i = 0; i < s.size(); ++i) *os << (i ? ", " : "") << s[i];
  *os << '}';
}

}  // namespace sbmrobust

namespace sbmrobust::testing {

inline std::vector<Edge> RandomEdges(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.emplace_back(i, j);
    }
  }
  return edges;
}

inline Eigen::MatrixXd DenseFromEdges(int n, const std::vector<Edge>& edges) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [i, j] : edges) {
    if (i == j) continue;
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return a;
}

inline Eigen::MatrixXd RandomSymmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = normal(rng);
  }
  return m;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Join(int a, int b) { parent_[Find(a)] = Find(b); }

 private:
  std::vector<int> parent_;
};

// Connectivity of the induced subgraph on `nodes` by union-find.
inline bool ConnectedByUnionFind(const Eigen::MatrixXd& a,
                                 const std::vector<int>& nodes) {
  if (nodes.empty()) return false;
  UnionFind uf(static_cast<int>(a.rows()));
  for (int u : nodes) {
    for (int v : nodes) {
      if (a(u, v) != 0.0) uf.Join(u, v);
    }
  }
  const int root = uf.Find(nodes[0]);
  for (int u : nodes) {
    if (uf.Find(u) != root) return false;
  }
  return true;
}

// Largest |eigenvalue| by a full dense symmetric decomposition.
inline double DenseSpectralNorm(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace sbmrobust::testing

#endif  // SBMROBUST_TESTS_TEST_UTIL_H_
