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

// sbmrobust: single | sweep-gamma | sweep-n | real.
// Exit codes: 0 success, 1 infeasible or invalid configuration, 2 parse error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sbmrobust/error.h"
#include "sbmrobust/experiments.h"

namespace {

using sbmrobust::ExperimentConfig;
using sbmrobust::ExperimentKind;

struct Overrides {
  std::string config;
  std::optional<uint64_t> seed;
  std::optional<double> gamma;
  std::optional<int> n;
  std::optional<int> k;
  std::optional<std::string> out_dir;
  std::optional<std::string> methods;
  std::optional<double> subgraph_frac;
  std::optional<int> num_to_prune;
  std::optional<int> max_removals;
  std::optional<double> time_budget;
  std::optional<int> jobs;
  std::optional<int> graphs;
  std::optional<int> runs;
  std::string edge_list;
  bool no_resume = false;
  bool quiet = false;
};

void AddCommon(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "JSON configuration file");
  app->add_option("--seed", o.seed, "master seed");
  app->add_option("--gamma", o.gamma, "corrupted fraction");
  app->add_option("--n", o.n, "number of nodes");
  app->add_option("--k", o.k, "number of communities");
  app->add_option("--out-dir", o.out_dir, "output directory");
  app->add_option("--methods", o.methods,
                  "comma list of subsearch,filtering,pruning,oracle");
  app->add_option("--subgraph-frac", o.subgraph_frac,
                  "kept fraction on real graphs");
  app->add_option("--num-to-prune", o.num_to_prune, "pruning budget");
  app->add_option("--max-removals", o.max_removals, "filtering steps");
  app->add_option("--time-budget", o.time_budget,
                  "wall-clock seconds per annealing run");
  app->add_option("--jobs", o.jobs, "parallel sweep cells");
  app->add_option("--graphs", o.graphs, "graphs per sweep point");
  app->add_option("--runs", o.runs, "runs per graph, least cost kept");
  app->add_flag("--no-resume", o.no_resume, "recompute existing cells");
  app->add_flag("--quiet", o.quiet, "no progress lines");
}

ExperimentConfig Build(ExperimentKind kind, const Overrides& o) {
  ExperimentConfig cfg;
  if (!o.config.empty()) {
    cfg = sbmrobust::ConfigFromJson(sbmrobust::ReadJsonFile(o.config));
  }
  cfg.kind = kind;
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.gamma) cfg.gamma_frac = *o.gamma;
  if (o.n) cfg.n = *o.n;
  if (o.k) cfg.k = *o.k;
  if (o.out_dir) cfg.out_dir = *o.out_dir;
  if (o.methods) cfg.methods = sbmrobust::ParseMethodList(*o.methods);
  if (o.subgraph_frac) cfg.subgraph_frac = *o.subgraph_frac;
  if (o.num_to_prune) cfg.num_to_prune = *o.num_to_prune;
  if (o.max_removals) cfg.max_removals = *o.max_removals;
  if (o.time_budget) cfg.time_budget_seconds = *o.time_budget;
  if (o.jobs) cfg.jobs = *o.jobs;
  if (o.graphs) {
    cfg.graphs_per_gamma = *o.graphs;
    cfg.graphs_per_n = *o.graphs;
  }
  if (o.runs) cfg.runs_per_graph = *o.runs;
  if (!o.edge_list.empty()) cfg.edge_list = o.edge_list;
  if (o.no_resume) cfg.resume = false;
  if (o.quiet) cfg.quiet = true;
  return cfg;
}

void PrintMethods(const sbmrobust::Json& summary) {
  for (const auto& [name, m] : summary.at("methods").items()) {
    std::printf("%-10s cost=%s", name.c_str(), m.at("cost").dump().c_str());
    if (m.contains("estimation_error")) {
      std::printf(" error=%s outliers_in_S=%s",
                  m.at("estimation_error").dump().c_str(),
                  m.at("outliers_in_S").dump().c_str());
    }
    std::printf("\n");
  }
}

void PrintSweep(const sbmrobust::SweepResult& r, const char* x_name) {
  for (const auto& row : r.rows) {
    std::printf("%s=%g %-10s error=%.4f +- %.4f cost_to_overlap=%.4f\n",
                x_name, row.x, sbmrobust::MethodName(row.method),
                row.mean_error, row.error_half_width, row.mean_cost_to_overlap);
  }
  if (r.slope) std::printf("log-log slope %.4f\n", r.slope->slope);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust SBM parameter estimation experiments"};
  app.require_subcommand(1);
  Overrides single_o, gamma_o, n_o, real_o;
  CLI::App* single = app.add_subcommand("single", "one corrupted graph, all methods");
  AddCommon(single, single_o);
  CLI::App* sweep_gamma =
      app.add_subcommand("sweep-gamma", "error versus corrupted fraction");
  AddCommon(sweep_gamma, gamma_o);
  CLI::App* sweep_n = app.add_subcommand("sweep-n", "cost-to-overlap versus n");
  AddCommon(sweep_n, n_o);
  CLI::App* real = app.add_subcommand("real", "annealing on an edge-list graph");
  AddCommon(real, real_o);
  real->add_option("edge_list,--edge-list", real_o.edge_list, "edge list file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (single->parsed()) {
      PrintMethods(sbmrobust::RunSingle(Build(ExperimentKind::kSingle, single_o)));
    } else if (sweep_gamma->parsed()) {
      PrintSweep(sbmrobust::RunSweepGamma(Build(ExperimentKind::kSweepGamma, gamma_o)),
                 "gamma");
    } else if (sweep_n->parsed()) {
      PrintSweep(sbmrobust::RunSweepN(Build(ExperimentKind::kSweepN, n_o)), "n");
    } else if (real->parsed()) {
      const auto summary = sbmrobust::RunReal(Build(ExperimentKind::kReal, real_o));
      std::printf("graph: %d nodes, %d edges\n", summary.at("nodes").get<int>(),
                  summary.at("edges").get<int>());
      PrintMethods(summary);
    }
  } catch (const sbmrobust::Error& e) {
    std::fprintf(stderr, "sbmrobust: %s: %s\n", sbmrobust::ErrorCodeName(e.code()),
                 e.what());
    return e.code() == sbmrobust::ErrorCode::kParse ? 2 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "sbmrobust: %s\n", e.what());
    return 1;
  }
  return 0;
}
