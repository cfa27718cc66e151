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

#include "sbmrobust/serialize.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "sbmrobust/error.h"

namespace sbmrobust {

Json DoubleToJson(double x) {
  return std::isfinite(x) ? Json(x) : Json(nullptr);
}

double DoubleFromJson(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity()
                     : j.get<double>();
}

Json MatrixToJson(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(DoubleToJson(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd MatrixFromJson(const Json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols) {
      throw Error(ErrorCode::kParse, "ragged matrix in JSON");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = DoubleFromJson(j[r][c]);
  }
  return m;
}

Json SubsetToJson(const NodeSubset& s) {
  return Json(std::vector<int>(s.begin(), s.end()));
}

NodeSubset SubsetFromJson(const Json& j) {
  return NodeSubset::FromIndices(j.get<std::vector<int>>());
}

namespace {

Json EdgesToJson(const Graph& g) {
  Json out = Json::array();
  for (const auto& [a, b] : g.Edges()) out.push_back({a, b});
  return out;
}

Graph GraphFromJson(int n, const Json& edges) {
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (const auto& e : edges) list.emplace_back(e[0].get<int>(), e[1].get<int>());
  return Graph::FromEdges(n, list);
}

}  // namespace

Json SampleToJson(const SbmSample& s) {
  Json j;
  j["n"] = s.graph.n();
  j["k"] = s.params.k();
  j["pi"] = s.params.pi;
  j["gamma"] = MatrixToJson(s.params.gamma);
  j["gamma_frac"] = s.gamma_frac;
  j["z"] = s.assignment.z();
  j["inliers"] = SubsetToJson(s.inliers);
  j["outliers"] = SubsetToJson(s.outliers);
  j["outlier_probabilities"] = MatrixToJson(s.outlier_probabilities);
  j["graph_seed"] = s.graph_seed;
  j["corruption_seed"] = s.corruption_seed;
  j["edges"] = EdgesToJson(s.graph);
  j["clean_edges"] = EdgesToJson(s.clean_graph);
  return j;
}

SbmSample SampleFromJson(const Json& j) {
  try {
    SbmSample s;
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    s.params.pi = j.at("pi").get<std::vector<double>>();
    s.params.gamma = MatrixFromJson(j.at("gamma"));
    s.params.Validate();
    s.gamma_frac = j.at("gamma_frac").get<double>();
    s.assignment = CommunityAssignment(j.at("z").get<std::vector<int>>(), k);
    s.inliers = SubsetFromJson(j.at("inliers"));
    s.outliers = SubsetFromJson(j.at("outliers"));
    s.outlier_probabilities = MatrixFromJson(j.at("outlier_probabilities"));
    if (s.outlier_probabilities.size() == 0) {
      s.outlier_probabilities.resize(s.outliers.size(), k);
    }
    s.graph_seed = j.at("graph_seed").get<uint64_t>();
    s.corruption_seed = j.at("corruption_seed").get<uint64_t>();
    s.graph = GraphFromJson(n, j.at("edges"));
    s.clean_graph = GraphFromJson(n, j.at("clean_edges"));
    return s;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("sample JSON: ") + e.what());
  }
}

Json PartitionToJson(const PartitionedSubset& p) {
  Json j;
  j["k"] = p.k();
  j["nodes"] = SubsetToJson(p.nodes());
  j["labels"] = p.labels();
  return j;
}

Json ReportToJson(const EvalReport& r) {
  Json j;
  j["estimation_error"] = DoubleToJson(r.estimation_error);
  j["alignment"] = r.alignment;
  j["outliers_in_S"] = r.outliers_in_s;
  j["subset_size"] = r.subset_size;
  j["min_overlap"] = r.min_overlap;
  j["cost"] = DoubleToJson(r.cost);
  j["cost_to_overlap"] = DoubleToJson(r.cost_to_overlap);
  j["max_gamma_diag"] = DoubleToJson(r.max_gamma_diag);
  j["noise_norm"] = DoubleToJson(r.noise_norm);
  j["bound_rhs"] = DoubleToJson(r.bound_rhs);
  j["vacuous"] = r.vacuous;
  j["bound_holds"] = r.bound_holds;
  return j;
}

Json SearchToJson(const SearchResult& r) {
  Json j;
  j["best_cost"] = DoubleToJson(r.best_cost);
  j["initial_temperature"] = r.initial_temperature;
  j["initial_acceptance"] = r.initial_acceptance;
  j["outer_iterations"] = r.outer_iterations;
  j["stop_reason"] = StopReasonName(r.stop_reason);
  j["reinitializations"] = r.reinitializations;
  j["cost_evaluations"] = r.cost_evaluations;
  j["cache_hits"] = r.cache_hits;
  return j;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
}

void WriteTextFile(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::filesystem::create_directories(target.parent_path());
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorCode::kInvalidInput, "short write to " + path);
  }
  std::filesystem::rename(tmp, target);
}

void WriteJsonFile(const std::string& path, const Json& j) {
  WriteTextFile(path, j.dump(2) + "\n");
}

}  // namespace sbmrobust
