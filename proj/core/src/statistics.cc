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

#include "sbmrobust/statistics.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "sbmrobust/error.h"

namespace sbmrobust {

double Mean(std::span<const double> xs) {
  if (xs.empty()) ThrowInvalidInput("mean of an empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double Median(std::span<const double> xs) {
  if (xs.empty()) ThrowInvalidInput("median of an empty sample");
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  const size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

double StdDev(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = Mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double StudentTQuantile(double confidence, int df) {
  if (df < 1 || !(confidence > 0.0 && confidence < 1.0)) {
    ThrowInvalidInput("t quantile needs df >= 1 and confidence in (0, 1)");
  }
  boost::math::students_t dist(static_cast<double>(df));
  return boost::math::quantile(dist, 0.5 + 0.5 * confidence);
}

MeanInterval ConfidenceInterval(std::span<const double> xs,
                                double confidence) {
  MeanInterval r;
  r.count = static_cast<int>(xs.size());
  r.mean = Mean(xs);
  if (r.count >= 2) {
    r.half_width = StudentTQuantile(confidence, r.count - 1) * StdDev(xs) /
                   std::sqrt(static_cast<double>(r.count));
  }
  return r;
}

LineFit LogLogFit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    ThrowInvalidInput("log-log fit needs two or more paired points");
  }
  const size_t n = x.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> lx(n), ly(n);
  for (size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      ThrowInvalidInput("log-log fit needs positive values");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) ThrowInvalidInput("log-log fit needs distinct x values");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

}  // namespace sbmrobust
