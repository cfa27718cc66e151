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

#include "sbmrobust/subsearch.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>

#include "sbmrobust/error.h"
#include "sbmrobust/sbm.h"

namespace sbmrobust {

void SaConfig::Validate() const {
  if (!(cooling_rate > 0.0 && cooling_rate < 1.0)) {
    ThrowInvalidInput("cooling rate must lie in (0, 1)");
  }
  if (!(epsilon > 0.0)) ThrowInvalidInput("epsilon must be positive");
  if (t_tol < 1) ThrowInvalidInput("t_tol must be at least 1");
  if (t_max < 0) ThrowInvalidInput("t_max must be non-negative");
  if (!(gamma_frac >= 0.0 && gamma_frac < 1.0)) {
    ThrowInvalidInput("gamma_frac must lie in [0, 1)");
  }
  for (int l : chain_lengths) {
    if (l < 1) ThrowInvalidInput("chain lengths must be positive");
  }
  if (schedule == ScheduleKind::kLogarithmic &&
      !(log_c > 0.0 && log_t0 >= 1.0)) {
    ThrowInvalidInput("logarithmic schedule needs C > 0 and t0 >= 1");
  }
  if (initial_temperature && !(*initial_temperature > 0.0)) {
    ThrowInvalidInput("initial temperature must be positive");
  }
  if (!(temperature_growth > 1.0)) {
    ThrowInvalidInput("temperature growth must exceed 1");
  }
  if (probe_length < 1) ThrowInvalidInput("probe length must be positive");
}

int SaConfig::SubgraphSize(int n) const {
  return subgraph_size > 0 ? subgraph_size : n - OutlierCount(gamma_frac, n);
}

int SaConfig::ChainLength(int outer_iter, int n) const {
  if (chain_lengths.empty()) return std::max(1, OutlierCount(gamma_frac, n));
  const size_t idx = std::min<size_t>(std::max(outer_iter, 1) - 1,
                                      chain_lengths.size() - 1);
  return chain_lengths[idx];
}

namespace {

void AppendDouble(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

void RunTrace::WriteCsv(std::ostream& out) const {
  const bool with_truth =
      !rows.empty() &&
      std::all_of(rows.begin(), rows.end(),
                  [](const TraceRow& r) { return r.truth.has_value(); });
  out << "outer_iter,temperature,current_cost,best_cost,accepted_moves,"
         "proposals,subgraph_size";
  if (with_truth) out << ",estimation_error,outliers_in_S";
  out << '\n';
  std::string line;
  for (const TraceRow& r : rows) {
    line.clear();
    line += std::to_string(r.iter);
    line += ',';
    AppendDouble(line, r.temperature);
    line += ',';
    AppendDouble(line, r.current_cost);
    line += ',';
    AppendDouble(line, r.best_cost);
    line += ',' + std::to_string(r.accepted) + ',' +
            std::to_string(r.proposals) + ',' +
            std::to_string(r.subgraph_size);
    if (with_truth) {
      line += ',';
      AppendDouble(line, r.truth->estimation_error);
      line += ',' + std::to_string(r.truth->outliers_in_s);
    }
    out << line << '\n';
  }
}

const char* StopReasonName(StopReason reason) {
  switch (reason) {
    case StopReason::kMaxIterations:
      return "max_iterations";
    case StopReason::kConverged:
      return "converged";
    case StopReason::kTimeBudget:
      return "time_budget";
    case StopReason::kTrivial:
      return "trivial";
  }
  return "unknown";
}

NodeSubset InitialSubgraph(const Graph& g, int size, Rng& rng) {
  if (size < 1 || size > g.n()) {
    ThrowInvalidInput("subgraph size must lie in [1, n]");
  }
  const std::vector<NodeSubset> components = ConnectedComponents(g);
  const NodeSubset& largest = components.front();
  if (largest.size() < size) {
    throw Error(ErrorCode::kInfeasible,
                "largest connected component has " +
                    std::to_string(largest.size()) + " nodes, " +
                    std::to_string(size) + " requested");
  }
  if (size == largest.size()) return largest;

  std::vector<uint8_t> state(g.n(), 0);  // 1 = member, 2 = frontier
  std::vector<int> members;
  std::vector<int> frontier;
  auto add = [&](int v) {
    state[v] = 1;
    members.push_back(v);
    for (int w : g.Neighbors(v)) {
      if (state[w] == 0) {
        state[w] = 2;
        frontier.push_back(w);
      }
    }
  };
  add(largest[std::uniform_int_distribution<int>(0, largest.size() - 1)(rng)]);
  while (static_cast<int>(members.size()) < size) {
    const size_t pick =
        std::uniform_int_distribution<size_t>(0, frontier.size() - 1)(rng);
    const int v = frontier[pick];
    frontier[pick] = frontier.back();
    frontier.pop_back();
    add(v);
  }
  return NodeSubset::FromIndices(std::move(members));
}

NodeSubset InitialSubgraph(const Graph& g, int size, uint64_t seed) {
  Rng rng(seed);
  return InitialSubgraph(g, size, rng);
}

NodeSubset Neighbor(const Graph& g, const NodeSubset& s, Rng& rng,
                    int max_retries) {
  const int size = s.size();
  if (size >= g.n()) {
    throw Error(ErrorCode::kStuckNeighborhood, "subset already spans the graph");
  }
  std::vector<uint8_t> mask = s.Mask(g.n());
  // For each outside node adjacent to s: how many members it touches and
  // one of them (the only one when the count is 1).
  std::vector<int> boundary;
  std::vector<int> touches(g.n(), 0);
  std::vector<int> some_member(g.n(), -1);
  for (int v : s) {
    for (int w : g.Neighbors(v)) {
      if (mask[w]) continue;
      if (touches[w]++ == 0) boundary.push_back(w);
      some_member[w] = v;
    }
  }
  std::sort(boundary.begin(), boundary.end());
  std::vector<double> cumulative;
  cumulative.reserve(boundary.size());
  double total = 0.0;
  for (int w : boundary) {
    total += touches[w] >= 2 ? size : size - 1;
    cumulative.push_back(total);
  }
  if (total <= 0.0) {
    throw Error(ErrorCode::kStuckNeighborhood, "no valid swap exists");
  }
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    const double r = Uniform01(rng) * total;
    const size_t b = std::min<size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), r) -
            cumulative.begin(),
        boundary.size() - 1);
    const int added = boundary[b];
    int removed;
    if (touches[added] >= 2) {
      removed = s[std::uniform_int_distribution<int>(0, size - 1)(rng)];
    } else {
      // Any member except the unique attachment point.
      const int forbidden = s.PositionOf(some_member[added]);
      int pos = std::uniform_int_distribution<int>(0, size - 2)(rng);
      if (pos >= forbidden) ++pos;
      removed = s[pos];
    }
    mask[removed] = 0;
    mask[added] = 1;
    const bool connected = IsConnectedMask(g, mask, size);
    mask[removed] = 1;
    mask[added] = 0;
    if (connected) return s.Swap(removed, added);
  }
  throw Error(ErrorCode::kStuckNeighborhood,
              "no connected swap found after " + std::to_string(max_retries) +
                  " draws");
}

double AcceptanceProbability(double delta, double temperature) {
  if (!(temperature > 0.0)) ThrowInvalidInput("temperature must be positive");
  if (std::isnan(delta)) return 0.0;
  if (delta >= 0.0) return 1.0;
  return std::exp(delta / temperature);
}

namespace {

// Acceptance with the convention that leaving a degenerate (infinite-cost)
// state is always allowed.
double MoveProbability(double current, double candidate, double temperature) {
  if (std::isinf(current) && std::isinf(candidate)) return 1.0;
  return AcceptanceProbability(current - candidate, temperature);
}

}  // namespace

double ProbeAcceptanceRate(const Graph& g, const NodeSubset& s0,
                           CostEvaluator& evaluator, double temperature,
                           int length, Rng& rng, int max_retries) {
  NodeSubset state = s0;
  double cost = evaluator.Evaluate(state)->cost;
  int accepted = 0;
  for (int l = 0; l < length; ++l) {
    NodeSubset candidate;
    try {
      candidate = Neighbor(g, state, rng, max_retries);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kStuckNeighborhood) throw;
      state = s0;
      cost = evaluator.Evaluate(state)->cost;
      continue;
    }
    const double next = evaluator.Evaluate(candidate)->cost;
    const double u = Uniform01(rng);
    if (u < MoveProbability(cost, next, temperature)) {
      state = std::move(candidate);
      cost = next;
      ++accepted;
    }
  }
  return static_cast<double>(accepted) / length;
}

InitialTemperature SetInitialTemperature(const Graph& g, const NodeSubset& s0,
                                         CostEvaluator& evaluator,
                                         const SaConfig& cfg, Rng& rng) {
  InitialTemperature out;
  double t = 1.0;
  for (int step = 0;; ++step) {
    const double rate = ProbeAcceptanceRate(g, s0, evaluator, t,
                                            cfg.probe_length, rng,
                                            cfg.neighbor_retries);
    out.temperature = t;
    out.acceptance_rate = rate;
    out.growth_steps = step;
    if (rate >= cfg.target_acceptance) return out;
    if (step == cfg.max_temperature_steps) {
      out.capped = true;
      std::fprintf(stderr,
                   "warning: initial temperature capped at %g (acceptance "
                   "%.3f)\n",
                   t, rate);
      return out;
    }
    t *= cfg.temperature_growth;
  }
}

SearchResult RunSubSearch(const Graph& g, int k, const SaConfig& cfg,
                          const TraceAnnotator& annotate) {
  cfg.Validate();
  const auto start = std::chrono::steady_clock::now();
  const int n = g.n();
  const int size = cfg.SubgraphSize(n);
  if (k < 1 || size < k || size > n) {
    ThrowInvalidInput("subgraph size must lie in [K, n]");
  }
  Rng rng(DeriveSeed(cfg.seed, {Fnv1a("chain")}));
  Rng probe_rng(DeriveSeed(cfg.seed, {Fnv1a("probe")}));
  CostEvaluator evaluator(g, k, DeriveSeed(cfg.seed, {Fnv1a("cost")}),
                          cfg.cost);

  SearchResult result;
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };
  auto finish = [&](SearchResult& r) {
    r.cost_evaluations = evaluator.evaluations();
    r.cache_hits = evaluator.cache_hits();
    r.seconds = elapsed();
  };
  auto make_row = [&](int iter, double temperature, const NodeSubset& s,
                      const CostResult& eval, double best_cost, int accepted,
                      int proposals) {
    TraceRow row;
    row.iter = iter;
    row.temperature = temperature;
    row.current_cost = eval.cost;
    row.best_cost = best_cost;
    row.accepted = accepted;
    row.proposals = proposals;
    row.subgraph_size = s.size();
    if (annotate) row.truth = annotate(s, eval);
    return row;
  };

  NodeSubset current = InitialSubgraph(g, size, rng);
  std::shared_ptr<const CostResult> current_eval = evaluator.Evaluate(current);
  result.best = current;
  result.best_eval = current_eval;
  result.best_cost = current_eval->cost;

  if (size == n) {
    result.stop_reason = StopReason::kTrivial;
    result.trace.rows.push_back(
        make_row(0, 0.0, current, *current_eval, result.best_cost, 0, 0));
    finish(result);
    return result;
  }

  double temperature;
  if (cfg.schedule == ScheduleKind::kLogarithmic) {
    temperature = cfg.log_c / std::log(cfg.log_t0 + 1.0);
  } else if (cfg.initial_temperature) {
    temperature = *cfg.initial_temperature;
  } else {
    const InitialTemperature t0 =
        SetInitialTemperature(g, current, evaluator, cfg, probe_rng);
    temperature = t0.temperature;
    result.initial_acceptance = t0.acceptance_rate;
  }
  result.initial_temperature = temperature;
  result.trace.rows.push_back(
      make_row(0, temperature, current, *current_eval, result.best_cost, 0, 0));

  std::deque<double> window;
  for (int t = 1; t <= cfg.t_max; ++t) {
    const int length = cfg.ChainLength(t, n);
    int accepted = 0;
    for (int l = 0; l < length; ++l) {
      NodeSubset candidate;
      try {
        candidate = Neighbor(g, current, rng, cfg.neighbor_retries);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kStuckNeighborhood) throw;
        // Restart the chain from a fresh random connected subset.
        ++result.reinitializations;
        current = InitialSubgraph(g, size, rng);
        current_eval = evaluator.Evaluate(current);
        if (current_eval->cost < result.best_cost) {
          result.best = current;
          result.best_eval = current_eval;
          result.best_cost = current_eval->cost;
        }
        continue;
      }
      std::shared_ptr<const CostResult> candidate_eval =
          evaluator.Evaluate(candidate);
      const double u = Uniform01(rng);
      if (u < MoveProbability(current_eval->cost, candidate_eval->cost,
                              temperature)) {
        current = std::move(candidate);
        current_eval = std::move(candidate_eval);
        ++accepted;
        if (current_eval->cost < result.best_cost) {
          result.best = current;
          result.best_eval = current_eval;
          result.best_cost = current_eval->cost;
        }
      }
    }
    result.trace.rows.push_back(make_row(t, temperature, current,
                                         *current_eval, result.best_cost,
                                         accepted, length));
    result.outer_iterations = t;

    if (cfg.schedule == ScheduleKind::kLogarithmic) {
      temperature = cfg.log_c / std::log(t + cfg.log_t0 + 1.0);
    } else {
      temperature = cfg.cooling_rate * temperature;
    }

    window.push_back(current_eval->cost);
    if (static_cast<int>(window.size()) > cfg.t_tol) window.pop_front();
    if (static_cast<int>(window.size()) == cfg.t_tol) {
      const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
      if (*hi - *lo < cfg.epsilon) {
        result.stop_reason = StopReason::kConverged;
        break;
      }
    }
    if (cfg.time_budget_seconds > 0.0 && elapsed() > cfg.time_budget_seconds) {
      result.stop_reason = StopReason::kTimeBudget;
      break;
    }
  }
  finish(result);
  return result;
}

}  // namespace sbmrobust
