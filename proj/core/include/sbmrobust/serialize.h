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

// JSON forms of samples, estimates and reports. Non-finite doubles are
// written as null and read back as +inf.

#ifndef SBMROBUST_SERIALIZE_H_
#define SBMROBUST_SERIALIZE_H_

#include <string>

#include <Eigen/Dense>

#include "json.hpp"
#include "sbmrobust/estimator.h"
#include "sbmrobust/metrics.h"
#include "sbmrobust/sbm.h"
#include "sbmrobust/subsearch.h"

namespace sbmrobust {

using Json = nlohmann::json;

Json DoubleToJson(double x);
double DoubleFromJson(const Json& j);

Json MatrixToJson(const Eigen::MatrixXd& m);  // array of rows
Eigen::MatrixXd MatrixFromJson(const Json& j);

Json SubsetToJson(const NodeSubset& s);
NodeSubset SubsetFromJson(const Json& j);

// Parameters, labels, inlier/outlier split, observed and clean edge lists,
// drawn outlier probabilities and seeds. Loading rebuilds the sample exactly.
Json SampleToJson(const SbmSample& sample);
SbmSample SampleFromJson(const Json& j);

Json PartitionToJson(const PartitionedSubset& p);
Json ReportToJson(const EvalReport& r);
Json SearchToJson(const SearchResult& r);

// Throws parse errors with the path in the message.
Json ReadJsonFile(const std::string& path);
// Writes through a temporary file and rename.
void WriteJsonFile(const std::string& path, const Json& j);
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace sbmrobust

#endif  // SBMROBUST_SERIALIZE_H_
