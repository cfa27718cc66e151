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

#ifndef SBMROBUST_STATISTICS_H_
#define SBMROBUST_STATISTICS_H_

#include <span>

namespace sbmrobust {

double Mean(std::span<const double> xs);
double Median(std::span<const double> xs);
// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double StdDev(std::span<const double> xs);

// Two-sided Student-t quantile t_{1 - alpha/2, df}.
double StudentTQuantile(double confidence, int df);

struct MeanInterval {
  double mean = 0.0;
  double half_width = 0.0;  // 0 when count < 2
  int count = 0;
};

// mean +- t_{0.975, n-1} sd / sqrt(n) for confidence 0.95.
MeanInterval ConfidenceInterval(std::span<const double> xs,
                                double confidence = 0.95);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Least-squares fit of log(y) against log(x). Needs positive values and at
// least two distinct x.
LineFit LogLogFit(std::span<const double> x, std::span<const double> y);

}  // namespace sbmrobust

#endif  // SBMROBUST_STATISTICS_H_
