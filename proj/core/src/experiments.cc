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

#include "sbmrobust/experiments.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "sbmrobust/error.h"
#include "sbmrobust/seed.h"

namespace sbmrobust {

namespace fs = std::filesystem;

const char* ExperimentKindName(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSingle:
      return "single";
    case ExperimentKind::kSweepGamma:
      return "sweep-gamma";
    case ExperimentKind::kSweepN:
      return "sweep-n";
    case ExperimentKind::kReal:
      return "real";
  }
  return "?";
}

ExperimentKind ParseExperimentKind(const std::string& name) {
  for (ExperimentKind k : {ExperimentKind::kSingle, ExperimentKind::kSweepGamma,
                           ExperimentKind::kSweepN, ExperimentKind::kReal}) {
    if (name == ExperimentKindName(k)) return k;
  }
  throw Error(ErrorCode::kParse, "unknown experiment kind '" + name + "'");
}

const char* MethodName(Method method) {
  switch (method) {
    case Method::kSubSearch:
      return "subsearch";
    case Method::kFiltering:
      return "filtering";
    case Method::kPruning:
      return "pruning";
    case Method::kOracle:
      return "oracle";
  }
  return "?";
}

Method ParseMethod(const std::string& name) {
  for (Method m : {Method::kSubSearch, Method::kFiltering, Method::kPruning,
                   Method::kOracle}) {
    if (name == MethodName(m)) return m;
  }
  throw Error(ErrorCode::kParse, "unknown method '" + name + "'");
}

std::vector<Method> ParseMethodList(const std::string& list) {
  std::vector<Method> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const Method m = ParseMethod(item);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  if (out.empty()) throw Error(ErrorCode::kParse, "empty method list");
  return out;
}

void ExperimentConfig::Validate() const {
  if (k < 1) ThrowInvalidInput("K must be at least 1");
  if (kind != ExperimentKind::kReal) {
    Params().Validate();
    if (n < 2 * k) ThrowInvalidInput("n must be at least 2K");
  }
  if (!(gamma_frac >= 0.0 && gamma_frac < 1.0)) {
    ThrowInvalidInput("gamma must lie in [0, 1)");
  }
  if (kind == ExperimentKind::kSweepGamma) {
    if (gamma_grid.empty()) ThrowInvalidInput("gamma grid is empty");
    for (double g : gamma_grid) {
      if (!(g >= 0.0 && g < 1.0)) ThrowInvalidInput("gamma grid outside [0, 1)");
    }
    if (graphs_per_gamma < 1) ThrowInvalidInput("graphs_per_gamma must be >= 1");
  }
  if (kind == ExperimentKind::kSweepN) {
    if (n_grid.empty()) ThrowInvalidInput("n grid is empty");
    for (size_t i = 0; i < n_grid.size(); ++i) {
      if (n_grid[i] < 2 * k) ThrowInvalidInput("n grid entries must be >= 2K");
      if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
        ThrowInvalidInput("n grid must be increasing");
      }
    }
    if (graphs_per_n < 1) ThrowInvalidInput("graphs_per_n must be >= 1");
  }
  if (kind == ExperimentKind::kReal) {
    if (edge_list.empty()) ThrowInvalidInput("real experiment needs an edge list");
    if (!(subgraph_frac > 0.0 && subgraph_frac <= 1.0)) {
      ThrowInvalidInput("subgraph fraction must lie in (0, 1]");
    }
  }
  if (runs_per_graph < 1) ThrowInvalidInput("runs_per_graph must be >= 1");
  if (methods.empty()) ThrowInvalidInput("no methods requested");
  if (num_to_prune < 0 || max_removals < 0) {
    ThrowInvalidInput("num_to_prune and max_removals must be non-negative");
  }
  if (jobs < 1) ThrowInvalidInput("jobs must be >= 1");
  if (time_budget_seconds < 0.0) ThrowInvalidInput("negative time budget");
  if (!(corruption.beta_concentration > 0.0)) {
    ThrowInvalidInput("Beta concentration must be positive");
  }
  SaConfig probe = sa;
  probe.gamma_frac = 0.0;
  probe.Validate();
}

SbmParams ExperimentConfig::Params() const {
  SbmParams p = SbmParams::Planted(k, 0.65, 0.35);
  if (!pi.empty()) p.pi = pi;
  if (gamma.size() > 0) p.gamma = gamma;
  return p;
}

namespace {

const char* ScheduleName(ScheduleKind s) {
  return s == ScheduleKind::kGeometric ? "geometric" : "logarithmic";
}

Json SaToJson(const SaConfig& sa) {
  Json j;
  j["subgraph_size"] = sa.subgraph_size;
  j["cooling_rate"] = sa.cooling_rate;
  j["chain_lengths"] = sa.chain_lengths;
  j["t_max"] = sa.t_max;
  j["t_tol"] = sa.t_tol;
  j["epsilon"] = sa.epsilon;
  j["schedule"] = ScheduleName(sa.schedule);
  j["log_c"] = sa.log_c;
  j["log_t0"] = sa.log_t0;
  j["initial_temperature"] =
      sa.initial_temperature ? Json(*sa.initial_temperature) : Json(nullptr);
  j["target_acceptance"] = sa.target_acceptance;
  j["probe_length"] = sa.probe_length;
  j["temperature_growth"] = sa.temperature_growth;
  j["max_temperature_steps"] = sa.max_temperature_steps;
  j["neighbor_retries"] = sa.neighbor_retries;
  return j;
}

void SaFromJson(const Json& j, SaConfig& sa) {
  for (const auto& [key, v] : j.items()) {
    if (key == "subgraph_size") {
      sa.subgraph_size = v.get<int>();
    } else if (key == "cooling_rate") {
      sa.cooling_rate = v.get<double>();
    } else if (key == "chain_lengths") {
      sa.chain_lengths = v.get<std::vector<int>>();
    } else if (key == "t_max") {
      sa.t_max = v.get<int>();
    } else if (key == "t_tol") {
      sa.t_tol = v.get<int>();
    } else if (key == "epsilon") {
      sa.epsilon = v.get<double>();
    } else if (key == "schedule") {
      const std::string s = v.get<std::string>();
      if (s == "geometric") {
        sa.schedule = ScheduleKind::kGeometric;
      } else if (s == "logarithmic") {
        sa.schedule = ScheduleKind::kLogarithmic;
      } else {
        throw Error(ErrorCode::kParse, "unknown schedule '" + s + "'");
      }
    } else if (key == "log_c") {
      sa.log_c = v.get<double>();
    } else if (key == "log_t0") {
      sa.log_t0 = v.get<double>();
    } else if (key == "initial_temperature") {
      if (v.is_null()) {
        sa.initial_temperature.reset();
      } else {
        sa.initial_temperature = v.get<double>();
      }
    } else if (key == "target_acceptance") {
      sa.target_acceptance = v.get<double>();
    } else if (key == "probe_length") {
      sa.probe_length = v.get<int>();
    } else if (key == "temperature_growth") {
      sa.temperature_growth = v.get<double>();
    } else if (key == "max_temperature_steps") {
      sa.max_temperature_steps = v.get<int>();
    } else if (key == "neighbor_retries") {
      sa.neighbor_retries = v.get<int>();
    } else {
      throw Error(ErrorCode::kParse, "unknown key 'sa." + key + "'");
    }
  }
}

}  // namespace

ExperimentConfig ConfigFromJson(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, "config must be an object");
  ExperimentConfig cfg;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "kind") {
        cfg.kind = ParseExperimentKind(v.get<std::string>());
      } else if (key == "n") {
        cfg.n = v.get<int>();
      } else if (key == "k") {
        cfg.k = v.get<int>();
      } else if (key == "pi") {
        cfg.pi = v.get<std::vector<double>>();
      } else if (key == "gamma_matrix") {
        cfg.gamma = MatrixFromJson(v);
      } else if (key == "gamma") {
        cfg.gamma_frac = v.get<double>();
      } else if (key == "gamma_grid") {
        cfg.gamma_grid = v.get<std::vector<double>>();
      } else if (key == "n_grid") {
        cfg.n_grid = v.get<std::vector<int>>();
      } else if (key == "graphs_per_gamma") {
        cfg.graphs_per_gamma = v.get<int>();
      } else if (key == "graphs_per_n") {
        cfg.graphs_per_n = v.get<int>();
      } else if (key == "runs_per_graph") {
        cfg.runs_per_graph = v.get<int>();
      } else if (key == "methods") {
        cfg.methods.clear();
        for (const auto& m : v) cfg.methods.push_back(ParseMethod(m.get<std::string>()));
      } else if (key == "sa") {
        SaFromJson(v, cfg.sa);
      } else if (key == "beta_concentration") {
        cfg.corruption.beta_concentration = v.get<double>();
      } else if (key == "prune_quota") {
        const std::string q = v.get<std::string>();
        if (q == "split") {
          cfg.prune_quota = PruneQuota::kSplit;
        } else if (q == "each") {
          cfg.prune_quota = PruneQuota::kEach;
        } else {
          throw Error(ErrorCode::kParse, "unknown prune_quota '" + q + "'");
        }
      } else if (key == "num_to_prune") {
        cfg.num_to_prune = v.get<int>();
      } else if (key == "max_removals") {
        cfg.max_removals = v.get<int>();
      } else if (key == "subgraph_frac") {
        cfg.subgraph_frac = v.get<double>();
      } else if (key == "edge_list") {
        cfg.edge_list = v.get<std::string>();
      } else if (key == "out_dir") {
        cfg.out_dir = v.get<std::string>();
      } else if (key == "seed") {
        cfg.master_seed = v.get<uint64_t>();
      } else if (key == "time_budget") {
        cfg.time_budget_seconds = v.get<double>();
      } else if (key == "jobs") {
        cfg.jobs = v.get<int>();
      } else if (key == "resume") {
        cfg.resume = v.get<bool>();
      } else if (key == "quiet") {
        cfg.quiet = v.get<bool>();
      } else {
        throw Error(ErrorCode::kParse, "unknown config key '" + key + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("config: ") + e.what());
  }
  return cfg;
}

Json ConfigToJson(const ExperimentConfig& cfg) {
  Json j;
  j["kind"] = ExperimentKindName(cfg.kind);
  j["n"] = cfg.n;
  j["k"] = cfg.k;
  j["pi"] = cfg.pi;
  j["gamma_matrix"] = cfg.gamma.size() > 0 ? MatrixToJson(cfg.gamma) : Json::array();
  j["gamma"] = cfg.gamma_frac;
  j["gamma_grid"] = cfg.gamma_grid;
  j["n_grid"] = cfg.n_grid;
  j["graphs_per_gamma"] = cfg.graphs_per_gamma;
  j["graphs_per_n"] = cfg.graphs_per_n;
  j["runs_per_graph"] = cfg.runs_per_graph;
  Json methods = Json::array();
  for (Method m : cfg.methods) methods.push_back(MethodName(m));
  j["methods"] = methods;
  j["sa"] = SaToJson(cfg.sa);
  j["beta_concentration"] = cfg.corruption.beta_concentration;
  j["prune_quota"] = cfg.prune_quota == PruneQuota::kSplit ? "split" : "each";
  j["num_to_prune"] = cfg.num_to_prune;
  j["max_removals"] = cfg.max_removals;
  j["subgraph_frac"] = cfg.subgraph_frac;
  j["edge_list"] = cfg.edge_list;
  j["out_dir"] = cfg.out_dir;
  j["seed"] = cfg.master_seed;
  j["time_budget"] = cfg.time_budget_seconds;
  j["jobs"] = cfg.jobs;
  j["resume"] = cfg.resume;
  j["quiet"] = cfg.quiet;
  return j;
}

uint64_t ExperimentConfig::Fingerprint() const {
  Json j = ConfigToJson(*this);
  for (const char* key : {"out_dir", "jobs", "resume", "quiet"}) j.erase(key);
  return Fnv1a(j.dump());
}

uint64_t GammaPpm(double gamma_frac) {
  return static_cast<uint64_t>(std::llround(gamma_frac * 1e6));
}

uint64_t GraphSeed(const ExperimentConfig& cfg, const CellSpec& cell) {
  return DeriveSeed(cfg.master_seed,
                    {Fnv1a("graph"), static_cast<uint64_t>(cell.n),
                     GammaPpm(cell.gamma_frac), static_cast<uint64_t>(cell.graph)});
}

uint64_t CorruptionSeed(const ExperimentConfig& cfg, const CellSpec& cell) {
  return DeriveSeed(cfg.master_seed,
                    {Fnv1a("corrupt"), static_cast<uint64_t>(cell.n),
                     GammaPpm(cell.gamma_frac), static_cast<uint64_t>(cell.graph)});
}

uint64_t MethodSeed(const ExperimentConfig& cfg, const CellSpec& cell,
                    Method method, int run) {
  return DeriveSeed(cfg.master_seed,
                    {Fnv1a(MethodName(method)), static_cast<uint64_t>(cell.n),
                     GammaPpm(cell.gamma_frac), static_cast<uint64_t>(cell.graph),
                     static_cast<uint64_t>(run)});
}

SbmSample MakeSample(const ExperimentConfig& cfg, const CellSpec& cell) {
  const SbmParams params = cfg.Params();
  const uint64_t graph_seed = GraphSeed(cfg, cell);
  SbmDraw draw = SampleSbm(params, cell.n, graph_seed);
  CorruptionConfig corruption = cfg.corruption;
  corruption.seed = CorruptionSeed(cfg, cell);
  SbmSample s =
      Corrupt(draw.graph, draw.assignment, params, cell.gamma_frac, corruption);
  s.graph_seed = graph_seed;
  return s;
}

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

TraceAnnotator MakeAnnotator(const SbmSample* truth) {
  if (truth == nullptr) return {};
  return [truth](const NodeSubset& s, const CostResult& eval) {
    TraceTruth t;
    t.outliers_in_s = OutliersIn(s, truth->outliers);
    t.estimation_error =
        eval.degenerate
            ? std::numeric_limits<double>::infinity()
            : EstimationError(truth->params.gamma, eval.gamma_hat,
                              AlignLabels(eval.partition, truth->assignment));
    return t;
  };
}

RunTrace SingleRowTrace(double cost, int size, const SbmSample* truth,
                        const CostResult* eval) {
  TraceRow row;
  row.current_cost = cost;
  row.best_cost = cost;
  row.subgraph_size = size;
  if (truth != nullptr && eval != nullptr) {
    row.truth = MakeAnnotator(truth)(eval->partition.nodes(), *eval);
  }
  RunTrace trace;
  trace.rows.push_back(row);
  return trace;
}

void TakeEval(const CostResult& eval, MethodOutcome& out) {
  out.cost = eval.cost;
  if (!eval.degenerate) {
    out.partition = eval.partition;
    out.gamma_hat = eval.gamma_hat;
  }
}

bool IsStochastic(Method m) { return m != Method::kOracle; }

}  // namespace

MethodOutcome RunMethod(const ExperimentConfig& cfg, Method method,
                        const Graph& g, int k, double gamma_frac,
                        uint64_t seed, const SbmSample* truth) {
  const auto start = Clock::now();
  MethodOutcome out;
  out.method = method;
  out.seed = seed;
  const int n = g.n();
  switch (method) {
    case Method::kSubSearch: {
      SaConfig sa = cfg.sa;
      sa.seed = seed;
      sa.gamma_frac = gamma_frac;
      if (cfg.time_budget_seconds > 0.0) {
        sa.time_budget_seconds = cfg.time_budget_seconds;
      }
      SearchResult r = RunSubSearch(g, k, sa, MakeAnnotator(truth));
      TakeEval(*r.best_eval, out);
      out.trace = std::move(r.trace);
      out.details = SearchToJson(r);
      out.details["subgraph_size"] = r.best.size();
      break;
    }
    case Method::kFiltering: {
      const int removals = cfg.max_removals > 0 ? cfg.max_removals : n / 2;
      FilteringResult r =
          Filtering(g, k, removals, seed, {cfg.sa.cost}, MakeAnnotator(truth));
      TakeEval(r.best_eval, out);
      out.trace = std::move(r.trace);
      out.details["max_removals"] = removals;
      out.details["best_step"] = r.best_step;
      out.details["subgraph_size"] = r.best.size();
      break;
    }
    case Method::kPruning: {
      const int num = cfg.num_to_prune > 0 ? cfg.num_to_prune
                                           : OutlierCount(gamma_frac, n);
      PruningResult r = Pruning(g, k, num, seed, {cfg.prune_quota, cfg.sa.cost});
      TakeEval(r.final, out);
      out.trace = SingleRowTrace(r.final.cost, r.kept.size(), truth,
                                 r.final.degenerate ? nullptr : &r.final);
      out.details["num_to_prune"] = num;
      out.details["isolated_dropped"] = r.isolated_dropped;
      out.details["clusters_truncated"] = r.clusters_truncated;
      out.details["subgraph_size"] = r.kept.size();
      break;
    }
    case Method::kOracle: {
      if (truth == nullptr) ThrowInvalidInput("oracle needs ground truth");
      const OracleResult o = OracleEstimate(*truth, cfg.sa.cost.estimator);
      CostOptions opts = cfg.sa.cost;
      opts.keep_eigenvector = false;
      const CostResult eval = CostOfPartition(g, o.partition, opts);
      TakeEval(eval, out);
      out.trace = SingleRowTrace(eval.cost, o.partition.size(), truth, &eval);
      out.details["subgraph_size"] = o.partition.size();
      break;
    }
  }
  out.seconds = SecondsSince(start);
  return out;
}

namespace {

void WriteTrace(const std::string& path, const RunTrace& trace) {
  std::ostringstream os;
  trace.WriteCsv(os);
  WriteTextFile(path, os.str());
}

void Log(const ExperimentConfig& cfg, const std::string& line) {
  if (cfg.quiet) return;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << line << std::endl;
}

std::string Format(const char* fmt, double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, a);
  return buf;
}

}  // namespace

std::string CellDir(const ExperimentConfig& cfg, const CellSpec& cell) {
  char graph[32];
  std::snprintf(graph, sizeof(graph), "graph_%03d", cell.graph);
  switch (cfg.kind) {
    case ExperimentKind::kSweepGamma:
      return (fs::path(cfg.out_dir) / Format("gamma_%.4f", cell.gamma_frac) / graph)
          .string();
    case ExperimentKind::kSweepN:
      return (fs::path(cfg.out_dir) / ("n_" + std::to_string(cell.n)) / graph)
          .string();
    default:
      return cfg.out_dir;
  }
}

Json RunCell(const ExperimentConfig& cfg, const CellSpec& cell,
             const std::string& dir) {
  const fs::path root(dir);
  const fs::path summary_path = root / "summary.json";
  const uint64_t fingerprint = cfg.Fingerprint();
  if (cfg.resume && fs::exists(summary_path)) {
    try {
      Json old = ReadJsonFile(summary_path.string());
      if (old.value("fingerprint", uint64_t{0}) == fingerprint) return old;
    } catch (const Error&) {
      // Unreadable checkpoint: recompute.
    }
  }
  const auto start = Clock::now();
  const SbmSample sample = MakeSample(cfg, cell);
  WriteJsonFile((root / "sample.json").string(), SampleToJson(sample));
  const double noise = InlierNoiseNorm(sample, cfg.sa.cost.norm);

  Json summary;
  summary["fingerprint"] = fingerprint;
  summary["n"] = cell.n;
  summary["k"] = cfg.k;
  summary["gamma"] = cell.gamma_frac;
  summary["graph"] = cell.graph;
  summary["graph_seed"] = sample.graph_seed;
  summary["corruption_seed"] = sample.corruption_seed;
  summary["outliers"] = sample.outliers.size();
  summary["noise_norm"] = noise;
  Json methods = Json::object();

  for (Method m : cfg.methods) {
    const int runs = IsStochastic(m) ? cfg.runs_per_graph : 1;
    std::optional<MethodOutcome> best;
    Json run_rows = Json::array();
    for (int r = 0; r < runs; ++r) {
      MethodOutcome o = RunMethod(cfg, m, sample.graph, cfg.k, cell.gamma_frac,
                                  MethodSeed(cfg, cell, m, r), &sample);
      o.run = r;
      Json row;
      row["run"] = r;
      row["seed"] = o.seed;
      row["cost"] = DoubleToJson(o.cost);
      row["seconds"] = o.seconds;
      if (o.partition) {
        const Alignment a = AlignLabels(*o.partition, sample.assignment);
        row["estimation_error"] =
            EstimationError(sample.params.gamma, o.gamma_hat, a);
        row["outliers_in_S"] = OutliersIn(o.partition->nodes(), sample.outliers);
      }
      run_rows.push_back(row);
      if (!best || o.cost < best->cost) best = std::move(o);
    }
    Json mj;
    mj["runs"] = run_rows;
    mj["chosen_run"] = best->run;
    mj["cost"] = DoubleToJson(best->cost);
    mj["details"] = best->details;
    if (best->partition) {
      const EvalReport rep = BoundCheck(sample, *best->partition,
                                        best->gamma_hat, noise, cfg.sa.cost.norm);
      mj["estimation_error"] = DoubleToJson(rep.estimation_error);
      mj["outliers_in_S"] = rep.outliers_in_s;
      mj["gamma_hat"] = MatrixToJson(best->gamma_hat);
      mj["report"] = ReportToJson(rep);
    } else {
      mj["estimation_error"] = nullptr;
      mj["outliers_in_S"] = nullptr;
      mj["report"] = nullptr;
    }
    WriteTrace((root / (std::string("trace_") + MethodName(m) + ".csv")).string(),
               best->trace);
    methods[MethodName(m)] = mj;
  }
  summary["methods"] = methods;
  summary["seconds"] = SecondsSince(start);
  WriteJsonFile(summary_path.string(), summary);
  Log(cfg, "cell n=" + std::to_string(cell.n) +
               Format(" gamma=%.4f", cell.gamma_frac) +
               " graph=" + std::to_string(cell.graph) +
               Format(" done in %.1f s", summary["seconds"].get<double>()));
  return summary;
}

Json RunSingle(const ExperimentConfig& cfg) {
  cfg.Validate();
  ExperimentConfig c = cfg;
  c.kind = ExperimentKind::kSingle;
  WriteJsonFile((fs::path(c.out_dir) / "config.json").string(), ConfigToJson(c));
  return RunCell(c, {c.n, c.gamma_frac, 0}, c.out_dir);
}

namespace {

void RunCells(const ExperimentConfig& cfg, const std::vector<CellSpec>& cells) {
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (failure) return;
      }
      try {
        RunCell(cfg, cells[i], CellDir(cfg, cells[i]));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = std::min<int>(cfg.jobs, static_cast<int>(cells.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> Finite(std::vector<double> xs) {
  xs.erase(std::remove_if(xs.begin(), xs.end(),
                          [](double x) { return !std::isfinite(x); }),
           xs.end());
  return xs;
}

// Mean and half-width, +inf when any value is non-finite.
MeanInterval Interval(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  if (Finite(xs).size() != xs.size()) {
    MeanInterval r;
    r.count = static_cast<int>(xs.size());
    r.mean = std::numeric_limits<double>::infinity();
    r.half_width = r.mean;
    return r;
  }
  return ConfidenceInterval(xs);
}

SweepRow Aggregate(double x, Method m, const std::vector<Json>& cells) {
  std::vector<double> err, cost, outl, ratio;
  for (const Json& s : cells) {
    const Json& mj = s.at("methods").at(MethodName(m));
    err.push_back(DoubleFromJson(mj.at("estimation_error")));
    cost.push_back(DoubleFromJson(mj.at("cost")));
    outl.push_back(mj.at("outliers_in_S").is_null()
                       ? std::numeric_limits<double>::infinity()
                       : mj.at("outliers_in_S").get<double>());
    ratio.push_back(mj.at("report").is_null()
                        ? std::numeric_limits<double>::infinity()
                        : DoubleFromJson(mj.at("report").at("cost_to_overlap")));
  }
  SweepRow row;
  row.x = x;
  row.method = m;
  row.count = static_cast<int>(cells.size());
  const MeanInterval e = Interval(err);
  row.mean_error = e.mean;
  row.error_half_width = e.half_width;
  row.mean_cost = Interval(cost).mean;
  row.mean_outliers = Interval(outl).mean;
  const MeanInterval r = Interval(ratio);
  row.mean_cost_to_overlap = r.mean;
  row.cost_to_overlap_half_width = r.half_width;
  return row;
}

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json LoadCell(const ExperimentConfig& cfg, const CellSpec& cell) {
  const std::string path = (fs::path(CellDir(cfg, cell)) / "summary.json").string();
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kInvalidInput, "missing cell summary " + path);
  }
  return ReadJsonFile(path);
}

ExperimentConfig SweepNConfig(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.kind = ExperimentKind::kSweepN;
  c.methods = {Method::kSubSearch};
  return c;
}

}  // namespace

SweepResult MergeSweepGamma(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.kind = ExperimentKind::kSweepGamma;
  SweepResult result;
  std::string csv =
      "gamma,method,count,mean_error,half_width,mean_cost,mean_outliers_in_S\n";
  for (double gamma : c.gamma_grid) {
    std::vector<Json> cells;
    for (int g = 0; g < c.graphs_per_gamma; ++g) {
      cells.push_back(LoadCell(c, {c.n, gamma, g}));
    }
    for (Method m : c.methods) {
      const SweepRow row = Aggregate(gamma, m, cells);
      result.rows.push_back(row);
      csv += Num(gamma) + ',' + MethodName(m) + ',' + std::to_string(row.count) +
             ',' + Num(row.mean_error) + ',' + Num(row.error_half_width) + ',' +
             Num(row.mean_cost) + ',' + Num(row.mean_outliers) + '\n';
    }
  }
  WriteTextFile((fs::path(c.out_dir) / "sweep_gamma.csv").string(), csv);
  return result;
}

SweepResult RunSweepGamma(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.kind = ExperimentKind::kSweepGamma;
  c.Validate();
  WriteJsonFile((fs::path(c.out_dir) / "config.json").string(), ConfigToJson(c));
  std::vector<CellSpec> cells;
  for (double gamma : c.gamma_grid) {
    for (int g = 0; g < c.graphs_per_gamma; ++g) cells.push_back({c.n, gamma, g});
  }
  RunCells(c, cells);
  return MergeSweepGamma(c);
}

SweepResult MergeSweepN(const ExperimentConfig& cfg) {
  const ExperimentConfig c = SweepNConfig(cfg);
  SweepResult result;
  std::string csv =
      "n,count,mean_cost_to_overlap,half_width,mean_error,mean_cost\n";
  std::vector<double> xs, ys;
  for (int n : c.n_grid) {
    std::vector<Json> cells;
    for (int g = 0; g < c.graphs_per_n; ++g) {
      cells.push_back(LoadCell(c, {n, c.gamma_frac, g}));
    }
    const SweepRow row = Aggregate(n, Method::kSubSearch, cells);
    result.rows.push_back(row);
    xs.push_back(n);
    ys.push_back(row.mean_cost_to_overlap);
    csv += std::to_string(n) + ',' + std::to_string(row.count) + ',' +
           Num(row.mean_cost_to_overlap) + ',' +
           Num(row.cost_to_overlap_half_width) + ',' + Num(row.mean_error) +
           ',' + Num(row.mean_cost) + '\n';
  }
  WriteTextFile((fs::path(c.out_dir) / "sweep_n.csv").string(), csv);
  Json fit;
  if (xs.size() >= 2 && Finite(ys).size() == ys.size()) {
    result.slope = LogLogFit(xs, ys);
    fit["slope"] = result.slope->slope;
    fit["intercept"] = result.slope->intercept;
  } else {
    fit["slope"] = nullptr;
    fit["intercept"] = nullptr;
  }
  WriteJsonFile((fs::path(c.out_dir) / "sweep_n_fit.json").string(), fit);
  return result;
}

SweepResult RunSweepN(const ExperimentConfig& cfg) {
  const ExperimentConfig c = SweepNConfig(cfg);
  c.Validate();
  WriteJsonFile((fs::path(c.out_dir) / "config.json").string(), ConfigToJson(c));
  std::vector<CellSpec> cells;
  for (int n : c.n_grid) {
    for (int g = 0; g < c.graphs_per_n; ++g) cells.push_back({n, c.gamma_frac, g});
  }
  RunCells(c, cells);
  return MergeSweepN(c);
}

namespace {

Json DegreeHistogram(const Graph& g, const NodeSubset& kept) {
  std::map<int, std::pair<int, int>> hist;
  for (int i = 0; i < g.n(); ++i) {
    auto& slot = hist[g.Degree(i)];
    (kept.Contains(i) ? slot.first : slot.second) += 1;
  }
  Json rows = Json::array();
  for (const auto& [d, c] : hist) rows.push_back({d, c.first, c.second});
  return rows;
}

std::string HistogramCsv(const Json& rows) {
  std::string csv = "degree,kept,removed\n";
  for (const auto& r : rows) {
    csv += std::to_string(r[0].get<int>()) + ',' + std::to_string(r[1].get<int>()) +
           ',' + std::to_string(r[2].get<int>()) + '\n';
  }
  return csv;
}

}  // namespace

Json RunReal(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.kind = ExperimentKind::kReal;
  c.Validate();
  EdgeListInfo info;
  const Graph g = LoadEdgeList(c.edge_list, IndexBase::kAuto, &info);
  const int n = g.n();
  const int size = static_cast<int>(std::floor(c.subgraph_frac * n + 1e-9));
  if (size < c.k) ThrowInvalidInput("subgraph smaller than K");
  const double gamma_frac = 1.0 - c.subgraph_frac;
  if (c.sa.subgraph_size == 0) c.sa.subgraph_size = size;
  const int offset = info.one_based ? 1 : 0;
  const CellSpec cell{n, gamma_frac, 0};
  const fs::path root(c.out_dir);
  WriteJsonFile((root / "config.json").string(), ConfigToJson(c));

  Json summary;
  summary["edge_list"] = c.edge_list;
  summary["nodes"] = n;
  summary["edges"] = g.edge_count();
  summary["one_based"] = info.one_based;
  summary["self_loops_dropped"] = info.stats.self_loops_dropped;
  summary["duplicates_dropped"] = info.stats.duplicates_dropped;
  summary["subgraph_size"] = c.sa.subgraph_size;
  summary["k"] = c.k;
  Json methods = Json::object();
  for (Method m : c.methods) {
    if (m == Method::kOracle) continue;  // no ground truth on real graphs
    ExperimentConfig mc = c;
    if (m == Method::kPruning && mc.num_to_prune == 0) mc.num_to_prune = n / 10;
    std::optional<MethodOutcome> best;
    Json runs = Json::array();
    for (int r = 0; r < c.runs_per_graph; ++r) {
      MethodOutcome o =
          RunMethod(mc, m, g, c.k, gamma_frac, MethodSeed(c, cell, m, r));
      o.run = r;
      runs.push_back({{"run", r},
                      {"seed", o.seed},
                      {"cost", DoubleToJson(o.cost)},
                      {"seconds", o.seconds}});
      if (!best || o.cost < best->cost) best = std::move(o);
    }
    Json mj;
    mj["runs"] = runs;
    mj["chosen_run"] = best->run;
    mj["cost"] = DoubleToJson(best->cost);
    mj["details"] = best->details;
    if (best->partition) {
      const PartitionedSubset& p = *best->partition;
      Json labels = Json::array();
      for (int i = 0; i < p.size(); ++i) {
        labels.push_back({p.nodes()[i] + offset, p.labels()[i]});
      }
      std::vector<int> removed;
      for (int v : Complement(p.nodes(), n)) removed.push_back(v + offset);
      mj["gamma_hat"] = MatrixToJson(best->gamma_hat);
      mj["labels"] = labels;
      mj["removed"] = removed;
      const Json hist = DegreeHistogram(g, p.nodes());
      mj["degree_histogram"] = hist;
      WriteTextFile(
          (root / (std::string("degree_hist_") + MethodName(m) + ".csv")).string(),
          HistogramCsv(hist));
    }
    WriteTrace((root / (std::string("trace_") + MethodName(m) + ".csv")).string(),
               best->trace);
    methods[MethodName(m)] = mj;
  }
  summary["methods"] = methods;
  WriteJsonFile((root / "summary.json").string(), summary);
  return summary;
}

}  // namespace sbmrobust
