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

// Experiment harness: configuration, seed plumbing, per-cell runs and the
// CSV/JSON artifacts behind the command-line tool.
//
// Seeds. Every random stream is DeriveSeed(master_seed, coordinates):
//   graph        {Fnv1a("graph"), n, gamma_ppm, graph}
//   corruption   {Fnv1a("corrupt"), n, gamma_ppm, graph}
//   method run   {Fnv1a(method name), n, gamma_ppm, graph, run}
// with gamma_ppm = round(1e6 * gamma). Coordinates are values rather than
// grid positions, so growing a grid or adding a method leaves every other
// stream untouched.

#ifndef SBMROBUST_EXPERIMENTS_H_
#define SBMROBUST_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sbmrobust/baselines.h"
#include "sbmrobust/metrics.h"
#include "sbmrobust/sbm.h"
#include "sbmrobust/serialize.h"
#include "sbmrobust/statistics.h"
#include "sbmrobust/subsearch.h"

namespace sbmrobust {

enum class ExperimentKind { kSingle, kSweepGamma, kSweepN, kReal };
const char* ExperimentKindName(ExperimentKind kind);
ExperimentKind ParseExperimentKind(const std::string& name);

enum class Method { kSubSearch, kFiltering, kPruning, kOracle };
const char* MethodName(Method method);
Method ParseMethod(const std::string& name);
// Comma-separated list, e.g. "subsearch,pruning".
std::vector<Method> ParseMethodList(const std::string& list);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kSingle;

  int n = 200;
  int k = 2;
  std::vector<double> pi;  // empty: uniform
  Eigen::MatrixXd gamma;   // empty: 0.65 within, 0.35 between
  double gamma_frac = 0.3;

  std::vector<double> gamma_grid = {0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40};
  std::vector<int> n_grid = {100, 150, 200, 300, 400};
  int graphs_per_gamma = 10;
  int graphs_per_n = 5;
  int runs_per_graph = 3;

  std::vector<Method> methods = {Method::kSubSearch, Method::kFiltering,
                                 Method::kPruning, Method::kOracle};
  SaConfig sa;  // seed and gamma_frac are set per run
  CorruptionConfig corruption;
  PruneQuota prune_quota = PruneQuota::kSplit;
  int num_to_prune = 0;  // 0: floor(gamma n), or 0.1 n on a real graph
  int max_removals = 0;  // 0: floor(n / 2)

  double subgraph_frac = 0.9;  // real graphs: |S| = floor(frac n)
  std::string edge_list;

  std::string out_dir = "out";
  uint64_t master_seed = 12345;
  double time_budget_seconds = 0.0;  // per SubSearch run
  int jobs = 1;
  bool resume = true;
  bool quiet = false;

  // Throws invalid-input.
  void Validate() const;
  SbmParams Params() const;
  // Hash of everything that affects results (not out_dir, jobs, resume).
  uint64_t Fingerprint() const;
};

// Unknown keys are parse errors.
ExperimentConfig ConfigFromJson(const Json& j);
Json ConfigToJson(const ExperimentConfig& cfg);

struct CellSpec {
  int n = 0;
  double gamma_frac = 0.0;
  int graph = 0;
};

uint64_t GammaPpm(double gamma_frac);
uint64_t GraphSeed(const ExperimentConfig& cfg, const CellSpec& cell);
uint64_t CorruptionSeed(const ExperimentConfig& cfg, const CellSpec& cell);
uint64_t MethodSeed(const ExperimentConfig& cfg, const CellSpec& cell,
                    Method method, int run);

// One corrupted sample for a cell.
SbmSample MakeSample(const ExperimentConfig& cfg, const CellSpec& cell);

// Result of one method run on one graph.
struct MethodOutcome {
  Method method = Method::kSubSearch;
  int run = 0;
  uint64_t seed = 0;
  double cost = 0.0;  // +inf when no valid partition was found
  std::optional<PartitionedSubset> partition;
  GammaHat gamma_hat;
  RunTrace trace;
  Json details;  // method-specific counters
  double seconds = 0.0;
};

// Ground truth, when given, annotates SubSearch and filtering traces.
MethodOutcome RunMethod(const ExperimentConfig& cfg, Method method,
                        const Graph& g, int k, double gamma_frac,
                        uint64_t seed, const SbmSample* truth = nullptr);

// Runs every configured method on one cell (runs_per_graph times for the
// stochastic ones, keeping the least cost), writes sample.json,
// trace_<method>.csv and summary.json under `dir`, and returns the summary.
// With cfg.resume, a summary with a matching fingerprint is loaded instead.
Json RunCell(const ExperimentConfig& cfg, const CellSpec& cell,
             const std::string& dir);

Json RunSingle(const ExperimentConfig& cfg);

struct SweepRow {
  double x = 0.0;  // gamma or n
  Method method = Method::kSubSearch;
  int count = 0;
  double mean_error = 0.0;
  double error_half_width = 0.0;
  double mean_cost = 0.0;
  double mean_outliers = 0.0;
  double mean_cost_to_overlap = 0.0;
  double cost_to_overlap_half_width = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::optional<LineFit> slope;  // n-sweep only
};

// Aggregates from the per-cell summary.json files, so the merged CSV can be
// rebuilt from disk alone.
SweepResult MergeSweepGamma(const ExperimentConfig& cfg);
SweepResult MergeSweepN(const ExperimentConfig& cfg);

SweepResult RunSweepGamma(const ExperimentConfig& cfg);
SweepResult RunSweepN(const ExperimentConfig& cfg);

Json RunReal(const ExperimentConfig& cfg);

std::string CellDir(const ExperimentConfig& cfg, const CellSpec& cell);

}  // namespace sbmrobust

#endif  // SBMROBUST_EXPERIMENTS_H_
