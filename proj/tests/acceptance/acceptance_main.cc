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

// Acceptance suite. Each criterion prints its measurements and one final
// "criterion N: PASS|FAIL" line; the exit status is 0 only on PASS.
//
//   sbmrobust_acceptance --criterion 3 --out-dir build/acceptance_out
//
// Tolerances are fixed below and never read from the command line.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sbmrobust/baselines.h"
#include "sbmrobust/error.h"
#include "sbmrobust/experiments.h"
#include "sbmrobust/metrics.h"
#include "sbmrobust/statistics.h"
#include "sbmrobust/subsearch.h"

namespace sbmrobust {
namespace {

namespace fs = std::filesystem;

// Criterion 1 and 2.
constexpr uint64_t kSingleSeeds[] = {1, 2, 3, 4, 5};
constexpr double kSubSearchMedianError = 0.12;
constexpr double kSubSearchMedianOutliers = 12;
constexpr double kOracleMedianError = 0.06;
constexpr double kRunSeconds = 30 * 60;
constexpr double kPruningMinError = 0.2;
constexpr double kPruningMinOutliers = 15;
// Criterion 3.
constexpr int kSweepGraphs = 5;
constexpr int kSweepRuns = 3;
constexpr double kOracleGap = 0.1;
constexpr double kOracleGapMaxGamma = 0.3;
// Criterion 4.
constexpr double kSlopeLow = -0.65;
constexpr double kSlopeHigh = -0.35;
constexpr int kSweepNGraphs = 3;
// Criterion 5.
constexpr int kBoundRuns = 200;
// Criterion 6.
constexpr int kJazzNodes = 198;
constexpr int kJazzEdges = 2742;
constexpr double kJazzCost = 17.0;
constexpr uint64_t kJazzSeeds[] = {1, 2, 3};
// Criterion 7.
constexpr double kNormRelTol = 1e-5;
constexpr double kLaplacianSlack = 1e-9;
// Criterion 8.
constexpr double kHalfTol = 1e-12;
constexpr int kFuzzMoves = 10000;
// Criterion 9. Two-sided 99% normal quantile for the Monte-Carlo intervals.
constexpr double kZ99 = 2.5758293035489004;

class Report {
 public:
  explicit Report(int id) : id_(id) {}
  void Check(bool ok, const std::string& what) {
    std::printf("  [%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
    std::fflush(stdout);
    all_ &= ok;
  }
  void Note(const std::string& what) {
    std::printf("  %s\n", what.c_str());
    std::fflush(stdout);
  }
  int Finish() const {
    std::printf("criterion %d: %s\n", id_, all_ ? "PASS" : "FAIL");
    return all_ ? 0 : 1;
  }

 private:
  int id_;
  bool all_ = true;
};

std::string Fmt(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

ExperimentConfig Reference(const std::string& out_dir) {
  ExperimentConfig cfg;  // n = 200, K = 2, Gamma = [[.65 .35] [.35 .65]]
  cfg.gamma_frac = 0.3;
  cfg.out_dir = out_dir;
  cfg.resume = false;
  return cfg;
}

double Num(const Json& j) { return DoubleFromJson(j); }

int CriterionSingle(const std::string& out) {
  Report rep(1);
  std::map<std::string, std::vector<double>> err, outl;
  double slowest = 0.0;
  for (uint64_t seed : kSingleSeeds) {
    ExperimentConfig cfg = Reference(out + "/c1/seed_" + std::to_string(seed));
    cfg.master_seed = seed;
    const Json s = RunSingle(cfg);
    std::string line = Fmt("seed %llu:", static_cast<unsigned long long>(seed));
    for (const auto& [name, m] : s.at("methods").items()) {
      err[name].push_back(Num(m.at("estimation_error")));
      outl[name].push_back(Num(m.at("outliers_in_S")));
      line += Fmt(" %s %.4f/%d", name.c_str(), err[name].back(),
                  static_cast<int>(outl[name].back()));
    }
    for (const auto& run : s["methods"]["subsearch"]["runs"]) {
      slowest = std::max(slowest, run.at("seconds").get<double>());
    }
    rep.Note(line + "  (error/outliers)");
  }
  const double sub = Median(err["subsearch"]);
  const double filt = Median(err["filtering"]);
  const double prune = Median(err["pruning"]);
  rep.Check(sub <= kSubSearchMedianError,
            Fmt("median SubSearch error %.4f <= %.2f", sub, kSubSearchMedianError));
  rep.Check(sub < filt && sub < prune,
            Fmt("median SubSearch error below filtering %.4f and pruning %.4f",
                filt, prune));
  int paired = 0;
  for (size_t i = 0; i < err["subsearch"].size(); ++i) {
    paired += err["subsearch"][i] < std::min(err["filtering"][i], err["pruning"][i]);
  }
  rep.Note(Fmt("SubSearch best of three on %d of %zu graphs", paired,
               err["subsearch"].size()));
  const double so = Median(outl["subsearch"]);
  rep.Check(so <= kSubSearchMedianOutliers,
            Fmt("median outliers in S_best %.1f <= %.0f of 60", so,
                kSubSearchMedianOutliers));
  const double oracle = Median(err["oracle"]);
  rep.Check(oracle <= kOracleMedianError,
            Fmt("median oracle error %.4f <= %.2f", oracle, kOracleMedianError));
  rep.Check(slowest <= kRunSeconds,
            Fmt("slowest SubSearch run %.1f s <= %.0f s", slowest, kRunSeconds));
  return rep.Finish();
}

int CriterionPruning(const std::string& out) {
  Report rep(2);
  std::vector<double> err, outl;
  for (uint64_t seed : kSingleSeeds) {
    ExperimentConfig cfg = Reference(out + "/c2/seed_" + std::to_string(seed));
    cfg.master_seed = seed;
    cfg.methods = {Method::kPruning};
    cfg.num_to_prune = 60;
    const Json s = RunSingle(cfg);
    const Json& m = s["methods"]["pruning"];
    err.push_back(Num(m["estimation_error"]));
    outl.push_back(Num(m["outliers_in_S"]));
    rep.Note(Fmt("seed %llu: error %.4f, outliers kept %d, cost %.3f",
                 static_cast<unsigned long long>(seed), err.back(),
                 static_cast<int>(outl.back()), Num(m["cost"])));
  }
  rep.Check(Median(err) >= kPruningMinError,
            Fmt("median pruning error %.4f >= %.2f", Median(err), kPruningMinError));
  rep.Check(Median(outl) >= kPruningMinOutliers,
            Fmt("median outliers kept %.1f >= %.0f of 60", Median(outl),
                kPruningMinOutliers));
  return rep.Finish();
}

int CriterionSweepGamma(const std::string& out) {
  Report rep(3);
  ExperimentConfig cfg = Reference(out + "/c3");
  cfg.kind = ExperimentKind::kSweepGamma;
  cfg.gamma_grid = {0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40};
  cfg.graphs_per_gamma = kSweepGraphs;
  cfg.runs_per_graph = kSweepRuns;
  const SweepResult r = RunSweepGamma(cfg);
  std::map<double, std::map<Method, SweepRow>> by;
  for (const SweepRow& row : r.rows) by[row.x][row.method] = row;
  for (const auto& [gamma, m] : by) {
    const double sub = m.at(Method::kSubSearch).mean_error;
    const double filt = m.at(Method::kFiltering).mean_error;
    const double prune = m.at(Method::kPruning).mean_error;
    const double oracle = m.at(Method::kOracle).mean_error;
    rep.Note(Fmt("gamma %.2f: subsearch %.4f +- %.4f, filtering %.4f, pruning "
                 "%.4f, oracle %.4f",
                 gamma, sub, m.at(Method::kSubSearch).error_half_width, filt,
                 prune, oracle));
    rep.Check(sub <= filt && sub <= prune,
              Fmt("gamma %.2f: SubSearch mean error not above the baselines", gamma));
    if (gamma <= kOracleGapMaxGamma + 1e-9) {
      rep.Check(sub - oracle <= kOracleGap,
                Fmt("gamma %.2f: SubSearch minus oracle %.4f <= %.1f", gamma,
                    sub - oracle, kOracleGap));
    }
  }
  return rep.Finish();
}

int CriterionSweepN(const std::string& out) {
  Report rep(4);
  ExperimentConfig cfg = Reference(out + "/c4");
  cfg.kind = ExperimentKind::kSweepN;
  cfg.gamma_frac = 0.2;
  cfg.n_grid = {100, 150, 200, 300, 400};
  cfg.graphs_per_n = kSweepNGraphs;
  cfg.runs_per_graph = 1;
  const SweepResult r = RunSweepN(cfg);
  for (const SweepRow& row : r.rows) {
    rep.Note(Fmt("n %4.0f: cost-to-overlap %.5f +- %.5f, error %.4f", row.x,
                 row.mean_cost_to_overlap, row.cost_to_overlap_half_width,
                 row.mean_error));
  }
  const bool fitted = r.slope.has_value();
  const double slope = fitted ? r.slope->slope : NAN;
  rep.Check(fitted && slope >= kSlopeLow && slope <= kSlopeHigh,
            Fmt("log-log slope %.4f in [%.2f, %.2f]", slope, kSlopeLow, kSlopeHigh));
  return rep.Finish();
}

int CriterionBound(const std::string&) {
  Report rep(5);
  const int ks[] = {1, 2, 3};
  const double gammas[] = {0.0, 0.1, 0.3};
  int checked = 0, held = 0, vacuous = 0;
  double worst_ratio = 0.0;
  for (int run = 0; run < kBoundRuns; ++run) {
    const int k = ks[run % 3];
    const double gamma = gammas[(run / 3) % 3];
    ExperimentConfig cfg;
    cfg.k = k;
    cfg.n = 60 + 20 * k;
    cfg.gamma = SbmParams::Planted(k, 0.6, 0.2).gamma;
    cfg.master_seed = 5000 + run;
    const CellSpec cell{cfg.n, gamma, 0};
    const SbmSample s = MakeSample(cfg, cell);
    SaConfig sa;
    sa.gamma_frac = gamma;
    sa.t_max = 40;
    sa.seed = MethodSeed(cfg, cell, Method::kSubSearch, 0);
    const SearchResult r = RunSubSearch(s.graph, k, sa);
    if (r.best_eval->degenerate) {
      rep.Check(false, Fmt("run %d: degenerate result", run));
      continue;
    }
    const EvalReport e = BoundCheck(s, r.best_eval->partition, r.best_eval->gamma_hat);
    if (e.min_overlap == 0) {
      ++vacuous;
      continue;
    }
    ++checked;
    held += e.estimation_error <= e.bound_rhs;
    worst_ratio = std::max(worst_ratio, e.estimation_error / e.bound_rhs);
  }
  rep.Note(Fmt("%d runs with positive overlap, %d with zero overlap", checked,
               vacuous));
  rep.Note(Fmt("largest error / bound ratio %.4g", worst_ratio));
  rep.Check(checked > 0 && held == checked,
            Fmt("bound holds on %d of %d runs", held, checked));
  return rep.Finish();
}

std::string JazzPath() {
  if (const char* env = std::getenv("SBMROBUST_JAZZ_PATH")) return env;
  return std::string(SBMROBUST_SOURCE_DIR) + "/data/jazz.net";
}

int CriterionJazz(const std::string& out) {
  Report rep(6);
  const std::string path = JazzPath();
  if (!fs::exists(path)) {
    rep.Check(false, "jazz edge list not found at " + path +
                         " (set SBMROBUST_JAZZ_PATH)");
    return rep.Finish();
  }
  EdgeListInfo info;
  const Graph g = LoadEdgeList(path, IndexBase::kAuto, &info);
  rep.Check(g.n() == kJazzNodes && g.edge_count() == kJazzEdges,
            Fmt("loaded %d nodes, %lld edges", g.n(),
                static_cast<long long>(g.edge_count())));
  for (uint64_t seed : kJazzSeeds) {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::kReal;
    cfg.k = 3;
    cfg.subgraph_frac = 0.9;
    cfg.edge_list = path;
    cfg.methods = {Method::kSubSearch, Method::kPruning};
    cfg.num_to_prune = 30;
    cfg.runs_per_graph = 1;
    cfg.master_seed = seed;
    cfg.out_dir = out + "/c6/seed_" + std::to_string(seed);
    cfg.resume = false;
    const Json s = RunReal(cfg);
    const double sub = Num(s["methods"]["subsearch"]["cost"]);
    const double prune = Num(s["methods"]["pruning"]["cost"]);
    rep.Check(sub <= kJazzCost && sub < prune,
              Fmt("seed %llu: SubSearch cost %.3f <= %.1f and below pruning %.3f",
                  static_cast<unsigned long long>(seed), sub, kJazzCost, prune));
  }
  return rep.Finish();
}

// Oracles for criterion 7, written against plain Eigen.
double DenseNorm(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

int CriterionNumerics(const std::string&) {
  Report rep(7);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + (t * 198) / 99;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = normal(rng);
    }
    if (t % 2) m = m.cwiseAbs();  // positive matrices: one dominant eigenvalue
    const double expect = DenseNorm(m);
    worst = std::max(worst, std::abs(SpectralNorm(m).norm - expect) / expect);
  }
  rep.Check(worst <= kNormRelTol,
            Fmt("spectral norm, 100 matrices up to 200x200: worst relative "
                "error %.3g <= %.0e",
                worst, kNormRelTol));

  int exact = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 8 + t % 60;
    const int k = 1 + t % 4;
    std::bernoulli_distribution coin(0.25);
    std::vector<Edge> edges;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (coin(rng)) {
          edges.emplace_back(i, j);
          a(i, j) = a(j, i) = 1.0;
        }
      }
    }
    std::vector<int> nodes, labels;
    for (int i = 0; i < n; ++i) {
      if (i < k || rng() % 4) {
        nodes.push_back(i);
        labels.push_back(i < k ? i : static_cast<int>(rng() % k));
      }
    }
    Eigen::MatrixXd brute = Eigen::MatrixXd::Zero(k, k);
    std::vector<double> size(k, 0.0);
    for (int c : labels) size[c] += 1;
    for (size_t i = 0; i < nodes.size(); ++i) {
      for (size_t j = 0; j < nodes.size(); ++j) {
        brute(labels[i], labels[j]) += a(nodes[i], nodes[j]);
      }
    }
    for (int x = 0; x < k; ++x) {
      for (int y = 0; y < k; ++y) brute(x, y) /= size[x] * size[y];
    }
    const PartitionedSubset p(NodeSubset::FromIndices(nodes), labels, k);
    exact += EstimateGamma(Graph::FromEdges(n, edges), p) == brute;
  }
  rep.Check(exact == 100, Fmt("Gamma estimate exact on %d of 100 pairs", exact));

  double lo = INFINITY, hi = -INFINITY;
  for (int t = 0; t < 50; ++t) {
    const int n = 10 + 3 * t;
    std::bernoulli_distribution coin(0.05 + 0.004 * t);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (coin(rng)) edges.emplace_back(i, j);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        NormalizedLaplacian(Graph::FromEdges(n, edges)).matrix,
        Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues().minCoeff());
    hi = std::max(hi, es.eigenvalues().maxCoeff());
  }
  rep.Check(lo >= -kLaplacianSlack && hi <= 2 + kLaplacianSlack,
            Fmt("Laplacian spectra of 50 graphs within [%.3g, %.17g]", lo, hi));
  return rep.Finish();
}

bool ConnectedByUnionFind(const Graph& g, const NodeSubset& s) {
  std::vector<int> parent(g.n());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (int u : s) {
    for (int v : s) {
      if (g.HasEdge(u, v)) parent[find(u)] = find(v);
    }
  }
  for (int u : s) {
    if (find(u) != find(s[0])) return false;
  }
  return true;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int CriterionMechanics(const std::string& out) {
  Report rep(8);
  const double t = 0.37;
  rep.Check(AcceptanceProbability(0.0, t) == 1.0, "delta = 0 accepts with probability 1");
  const double half = AcceptanceProbability(-t * std::log(2.0), t);
  rep.Check(std::abs(half - 0.5) <= kHalfTol,
            Fmt("delta = -T ln 2 gives %.17g", half));

  ExperimentConfig cfg;
  cfg.n = 150;
  const SbmSample s = MakeSample(cfg, {150, 0.3, 0});
  CostEvaluator eval(s.graph, 2, 11);
  Rng rng(19);
  NodeSubset current = InitialSubgraph(s.graph, 105, rng);
  double cost = eval.Evaluate(current)->cost;
  int accepted = 0, bad = 0;
  for (int move = 0; move < kFuzzMoves; ++move) {
    NodeSubset cand = Neighbor(s.graph, current, rng);
    const double c = eval.Evaluate(cand)->cost;
    if (Uniform01(rng) < AcceptanceProbability(cost - c, 0.5)) {
      current = std::move(cand);
      cost = c;
      ++accepted;
      bad += current.size() != 105 || !ConnectedByUnionFind(s.graph, current);
    }
  }
  rep.Check(bad == 0, Fmt("%d of %d moves accepted, %d broke size or "
                          "connectivity",
                          accepted, kFuzzMoves, bad));

  ExperimentConfig small;
  small.n = 80;
  small.gamma_frac = 0.2;
  small.methods = {Method::kSubSearch, Method::kFiltering};
  small.runs_per_graph = 1;
  small.resume = false;
  small.quiet = true;
  small.out_dir = out + "/c8/a";
  RunSingle(small);
  small.out_dir = out + "/c8/b";
  RunSingle(small);
  bool same = true;
  for (const char* f : {"trace_subsearch.csv", "trace_filtering.csv", "sample.json"}) {
    const std::string a = Slurp(out + "/c8/a/" + f);
    same &= !a.empty() && a == Slurp(out + "/c8/b/" + f);
  }
  rep.Check(same, "identical seeds give byte-identical traces");
  return rep.Finish();
}

int CriterionCorruption(const std::string&) {
  Report rep(9);
  ExperimentConfig cfg;  // n = 200, K = 2
  const SbmParams params = cfg.Params();
  int identical = 0;
  // Per (true community, target community): drawn probabilities and realized
  // densities of each outlier row.
  std::map<std::pair<int, int>, std::vector<double>> drawn, realized;
  for (int seed = 0; seed < 100; ++seed) {
    cfg.master_seed = 900 + seed;
    const SbmSample s = MakeSample(cfg, {200, 0.3, 0});
    identical += Restrict(s.clean_graph, s.inliers) == Restrict(s.graph, s.inliers);
    std::vector<int> inliers_in(2, 0);
    for (int v : s.inliers) ++inliers_in[s.assignment[v]];
    for (int r = 0; r < s.outliers.size(); ++r) {
      const int i = s.outliers[r];
      std::vector<int> hits(2, 0);
      for (int j : s.graph.Neighbors(i)) {
        if (s.inliers.Contains(j)) ++hits[s.assignment[j]];
      }
      for (int c = 0; c < 2; ++c) {
        drawn[{s.assignment[i], c}].push_back(s.outlier_probabilities(r, c));
        realized[{s.assignment[i], c}].push_back(double(hits[c]) / inliers_in[c]);
      }
    }
  }
  rep.Check(identical == 100,
            Fmt("inlier block bit-identical on %d of 100 seeds", identical));
  for (const auto* table : {&drawn, &realized}) {
    const char* what = table == &drawn ? "drawn" : "realized";
    for (const auto& [cell, xs] : *table) {
      const double mean = Mean(xs);
      const double se = StdDev(xs) / std::sqrt(double(xs.size()));
      const double g = params.gamma(cell.first, cell.second);
      rep.Check(std::abs(mean - g) <= kZ99 * se,
                Fmt("%s Gamma~(%d,%d): mean %.4f vs %.2f, 99%% half-width %.4f "
                    "(%zu rows)",
                    what, cell.first, cell.second, mean, g, kZ99 * se, xs.size()));
    }
  }
  return rep.Finish();
}

}  // namespace
}  // namespace sbmrobust

int main(int argc, char** argv) {
  CLI::App app{"sbmrobust acceptance criteria"};
  int criterion = 0;
  std::string out = "acceptance_out";
  app.add_option("--criterion", criterion, "criterion number 1-9")->required();
  app.add_option("--out-dir", out, "scratch directory for artifacts");
  CLI11_PARSE(app, argc, argv);

  using namespace sbmrobust;
  const std::map<int, std::function<int(const std::string&)>> table = {
      {1, CriterionSingle},   {2, CriterionPruning},   {3, CriterionSweepGamma},
      {4, CriterionSweepN},   {5, CriterionBound},     {6, CriterionJazz},
      {7, CriterionNumerics}, {8, CriterionMechanics}, {9, CriterionCorruption}};
  const auto it = table.find(criterion);
  if (it == table.end()) {
    std::fprintf(stderr, "unknown criterion %d\n", criterion);
    return 2;
  }
  const auto start = std::chrono::steady_clock::now();
  int status;
  try {
    status = it->second(out);
  } catch (const std::exception& e) {
    std::printf("  error: %s\ncriterion %d: FAIL\n", e.what(), criterion);
    status = 1;
  }
  std::printf("  elapsed %.1f s\n",
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                  .count());
  return status;
}
