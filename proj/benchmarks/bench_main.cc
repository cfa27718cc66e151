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

#include <benchmark/benchmark.h>

#include "sbmrobust/estimator.h"
#include "sbmrobust/graph.h"
#include "sbmrobust/sbm.h"
#include "sbmrobust/seed.h"
#include "sbmrobust/spectral.h"
#include "sbmrobust/subsearch.h"

namespace sbmrobust {
namespace {

Graph PlantedGraph(int n) {
  return SampleSbm(SbmParams::Planted(2, 0.65, 0.35), n, 7).graph;
}

void BM_Cost(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = PlantedGraph(n);
  const NodeSubset s = InitialSubgraph(g, n * 7 / 10, uint64_t{11});
  uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Cost(g, s, 2, ++seed).cost);
  }
}
BENCHMARK(BM_Cost)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMicrosecond);

// Lanczos versus the dense eigensolver on the same residual-like matrix.
void BM_SpectralNorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bool dense = state.range(1) != 0;
  const Graph g = PlantedGraph(n);
  const Eigen::MatrixXd m =
      Restrict(g, NodeSubset::All(n)) - Eigen::MatrixXd::Constant(n, n, 0.5);
  SpectralNormOptions options;
  options.dense_crossover = dense ? n + 1 : 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SpectralNorm(m, options).norm);
  }
  state.SetLabel(dense ? "dense" : "lanczos");
}
BENCHMARK(BM_SpectralNorm)
    ->ArgsProduct({{32, 64, 128, 256, 512}, {0, 1}})
    ->Unit(benchmark::kMicrosecond);

void BM_Neighbor(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = PlantedGraph(n);
  Rng rng(3);
  NodeSubset s = InitialSubgraph(g, n * 7 / 10, rng);
  for (auto _ : state) {
    s = Neighbor(g, s, rng);
    benchmark::DoNotOptimize(s.size());
  }
}
BENCHMARK(BM_Neighbor)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace sbmrobust

BENCHMARK_MAIN();
