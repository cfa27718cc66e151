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

// Simulated annealing over connected node subsets of fixed size, minimizing
// the residual-norm cost of the estimator module. A move swaps one member of
// the subset for an outside node adjacent to the remaining members.

#ifndef SBMROBUST_SUBSEARCH_H_
#define SBMROBUST_SUBSEARCH_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sbmrobust/estimator.h"
#include "sbmrobust/graph.h"
#include "sbmrobust/seed.h"

namespace sbmrobust {

enum class ScheduleKind { kGeometric, kLogarithmic };

struct SaConfig {
  double gamma_frac = 0.0;
  // 0 means n - floor(gamma_frac * n).
  int subgraph_size = 0;
  double cooling_rate = 0.99;
  // Chain length per outer iteration; the last entry repeats. Empty means a
  // constant max(1, floor(gamma_frac * n)).
  std::vector<int> chain_lengths;
  int t_max = 1000;
  int t_tol = 25;
  double epsilon = 1e-4;
  uint64_t seed = 12345;

  ScheduleKind schedule = ScheduleKind::kGeometric;
  // T_t = log_c / log(t + log_t0 + 1) for the logarithmic schedule.
  double log_c = 1.0;
  double log_t0 = 1.0;

  // When set, skips the acceptance-rate probe.
  std::optional<double> initial_temperature;
  double target_acceptance = 0.95;
  int probe_length = 100;
  double temperature_growth = 1.5;
  int max_temperature_steps = 40;

  int neighbor_retries = 100;
  // Wall-clock limit in seconds for the outer loop; 0 disables it.
  double time_budget_seconds = 0.0;

  CostOptions cost;

  void Validate() const;
  int SubgraphSize(int n) const;
  int ChainLength(int outer_iter, int n) const;  // outer_iter is 1-based
};

struct TraceTruth {
  double estimation_error = 0.0;
  int outliers_in_s = 0;
};

struct TraceRow {
  int iter = 0;
  double temperature = 0.0;
  double current_cost = 0.0;
  double best_cost = 0.0;
  int accepted = 0;
  int proposals = 0;
  int subgraph_size = 0;
  std::optional<TraceTruth> truth;
};

struct RunTrace {
  std::vector<TraceRow> rows;

  // Header plus one line per row. Ground-truth columns appear only when
  // every row carries them. Doubles are printed with 17 significant digits.
  void WriteCsv(std::ostream& out) const;
};

// Ground-truth hook called with the state at the end of every chain.
using TraceAnnotator =
    std::function<TraceTruth(const NodeSubset&, const CostResult&)>;

enum class StopReason { kMaxIterations, kConverged, kTimeBudget, kTrivial };
const char* StopReasonName(StopReason reason);

struct SearchResult {
  NodeSubset best;
  double best_cost = 0.0;
  std::shared_ptr<const CostResult> best_eval;
  RunTrace trace;
  double initial_temperature = 0.0;
  double initial_acceptance = 0.0;
  int outer_iterations = 0;
  StopReason stop_reason = StopReason::kMaxIterations;
  int reinitializations = 0;
  int64_t cost_evaluations = 0;
  int64_t cache_hits = 0;
  double seconds = 0.0;
};

// Random connected subset of `size` nodes grown from a uniform start node in
// the largest component by repeatedly adding a uniform frontier node.
// Throws infeasible when the largest component is smaller than `size`.
NodeSubset InitialSubgraph(const Graph& g, int size, Rng& rng);
NodeSubset InitialSubgraph(const Graph& g, int size, uint64_t seed);

// Uniform draw over (i in s, j outside s) with j adjacent to s \ {i},
// rejected and redrawn while the swapped set is disconnected. Throws
// stuck-neighborhood after `max_retries` rejections or when no pair exists.
NodeSubset Neighbor(const Graph& g, const NodeSubset& s, Rng& rng,
                    int max_retries = 100);

// min(1, exp(delta / temperature)).
double AcceptanceProbability(double delta, double temperature);

// Fraction of accepted moves in a `length`-step Metropolis chain from `s0`
// at `temperature`. The chain is private to the probe.
double ProbeAcceptanceRate(const Graph& g, const NodeSubset& s0,
                           CostEvaluator& evaluator, double temperature,
                           int length, Rng& rng, int max_retries = 100);

struct InitialTemperature {
  double temperature = 1.0;
  double acceptance_rate = 0.0;
  int growth_steps = 0;
  bool capped = false;
};

// Smallest T in 1, g, g^2, ... (g = temperature_growth) whose probe
// acceptance rate reaches target_acceptance; stops at g^max_temperature_steps
// with `capped` set.
InitialTemperature SetInitialTemperature(const Graph& g, const NodeSubset& s0,
                                         CostEvaluator& evaluator,
                                         const SaConfig& cfg, Rng& rng);

// The full annealing run. The best state is the lowest-cost state ever
// accepted (or the initial one).
SearchResult RunSubSearch(const Graph& g, int k, const SaConfig& cfg,
                          const TraceAnnotator& annotate = {});

}  // namespace sbmrobust

#endif  // SBMROBUST_SUBSEARCH_H_
