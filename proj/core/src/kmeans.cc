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

#include <algorithm>
#include <limits>
#include <random>

#include "sbmrobust/error.h"
#include "sbmrobust/seed.h"
#include "sbmrobust/spectral.h"

namespace sbmrobust {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                Eigen::RowMajor>;

struct Run {
  std::vector<int> labels;
  double wcss = std::numeric_limits<double>::infinity();
};

RowMatrix PlusPlusSeeds(const RowMatrix& x, int k, Rng& rng) {
  const int n = static_cast<int>(x.rows());
  RowMatrix centers(k, x.cols());
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  std::vector<uint8_t> chosen(n, 0);
  int first = std::uniform_int_distribution<int>(0, n - 1)(rng);
  centers.row(0) = x.row(first);
  chosen[first] = 1;
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (x.row(i) - centers.row(c - 1)).squaredNorm());
      total += d2[i];
    }
    int pick = -1;
    if (total > 0.0) {
      double target = Uniform01(rng) * total;
      for (int i = 0; i < n; ++i) {
        target -= d2[i];
        if (target < 0.0 && d2[i] > 0.0) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {
        for (int i = n - 1; i >= 0; --i) {
          if (d2[i] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // Everything coincides with a center; any unchosen point will do.
      std::vector<int> free;
      for (int i = 0; i < n; ++i) {
        if (!chosen[i]) free.push_back(i);
      }
      pick = free[std::uniform_int_distribution<size_t>(0, free.size() - 1)(rng)];
    }
    centers.row(c) = x.row(pick);
    chosen[pick] = 1;
  }
  return centers;
}

double Assign(const RowMatrix& x, const RowMatrix& centers,
              std::vector<int>& labels, std::vector<double>& dist) {
  const int n = static_cast<int>(x.rows());
  const int k = static_cast<int>(centers.rows());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      const double d = (x.row(i) - centers.row(c)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    labels[i] = best;
    dist[i] = best_d;
    total += best_d;
  }
  return total;
}

Run Lloyd(const RowMatrix& x, int k, Rng& rng, const KMeansOptions& options) {
  const int n = static_cast<int>(x.rows());
  RowMatrix centers = PlusPlusSeeds(x, k, rng);
  std::vector<int> labels(n, 0);
  std::vector<double> dist(n, 0.0);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    Assign(x, centers, labels, dist);
    RowMatrix next = RowMatrix::Zero(k, x.cols());
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
      next.row(labels[i]) += x.row(i);
      ++counts[labels[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        next.row(c) /= counts[c];
        continue;
      }
      // Re-seed an empty cluster with the point farthest from its centroid.
      int far = static_cast<int>(std::max_element(dist.begin(), dist.end()) -
                                 dist.begin());
      next.row(c) = x.row(far);
      dist[far] = 0.0;
    }
    const double shift = (next - centers).rowwise().norm().maxCoeff();
    centers = std::move(next);
    if (shift < options.tolerance) break;
  }
  Run run;
  run.labels.resize(n);
  run.wcss = Assign(x, centers, run.labels, dist);
  return run;
}

}  // namespace

ClusterLabels KMeans(const Eigen::MatrixXd& points, int k, uint64_t seed,
                     const KMeansOptions& options) {
  const int n = static_cast<int>(points.rows());
  if (k < 1 || n < k) ThrowInvalidInput("k-means needs 1 <= K <= n");
  const RowMatrix x = points;
  Run best;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    Rng rng(DeriveSeed(seed, {static_cast<uint64_t>(r)}));
    Run run = Lloyd(x, k, rng, options);
    if (run.wcss < best.wcss) best = std::move(run);
  }
  // Relabel by order of first appearance so equal partitions compare equal.
  std::vector<int> rename(k, -1);
  int next = 0;
  for (int& label : best.labels) {
    if (rename[label] < 0) rename[label] = next++;
    label = rename[label];
  }
  ClusterLabels out;
  out.labels = std::move(best.labels);
  out.k = k;
  out.wcss = best.wcss;
  out.degenerate = next < k;
  return out;
}

}  // namespace sbmrobust
