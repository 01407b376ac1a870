// Copyright 2026 The ECHO Authors.
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

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "echo/analytics.h"

namespace echo {
namespace {

// Continued fraction for the incomplete beta function, modified Lentz.
double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIterations = 500;
  constexpr double kEpsilon = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1;
  const double qam = a - 1;
  double c = 1;
  double d = 1 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1) < kEpsilon) break;
  }
  return h;
}

}  // namespace

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double IncompleteBeta(double a, double b, double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1) / (a + b + 2)) return front * BetaContinuedFraction(a, b, x) / a;
  return 1 - front * BetaContinuedFraction(b, a, 1 - x) / b;
}

double StudentTCdf(double t, double df) {
  if (std::isinf(t)) return t > 0 ? 1 : 0;
  const double tail = 0.5 * IncompleteBeta(df / 2, 0.5, df / (df + t * t));
  return t > 0 ? 1 - tail : tail;
}

double NormalPValue(double z, Tail tail) {
  switch (tail) {
    case Tail::kRight: return NormalCdf(-z);
    case Tail::kLeft: return NormalCdf(z);
    case Tail::kTwo: return std::min(1.0, 2 * NormalCdf(-std::fabs(z)));
  }
  return 1;
}

double StudentTPValue(double t, double df, Tail tail) {
  switch (tail) {
    case Tail::kRight: return StudentTCdf(-t, df);
    case Tail::kLeft: return StudentTCdf(t, df);
    case Tail::kTwo: return std::min(1.0, 2 * StudentTCdf(-std::fabs(t), df));
  }
  return 1;
}

absl::StatusOr<double> Pearson(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size()) return absl::InvalidArgumentError("inputs differ in length");
  if (x.size() < 2) return absl::InvalidArgumentError("need at least two observations");
  // Sums over data shifted by the first observation.
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - x[0];
    const double dy = y[i] - y[0];
    sx += dx;
    sy += dy;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  const double vx = n * sxx - sx * sx;
  const double vy = n * syy - sy * sy;
  if (!(vx > 0) || !(vy > 0)) {
    return absl::InvalidArgumentError("correlation undefined: zero variance");
  }
  const double r = (n * sxy - sx * sy) / (std::sqrt(vx) * std::sqrt(vy));
  return std::clamp(r, -1.0, 1.0);
}

std::string DecisionName(const TestResult &result) {
  return result.reject ? "reject H0" : "fail to reject H0";
}

absl::StatusOr<TestResult> ProportionZTest(int successes, int n, double p0, Tail tail,
                                           double alpha) {
  if (n < 1) return absl::InvalidArgumentError("proportion test needs n >= 1");
  if (successes < 0 || successes > n) return absl::InvalidArgumentError("successes outside [0, n]");
  if (!(p0 > 0 && p0 < 1)) return absl::InvalidArgumentError("null proportion must lie in (0, 1)");
  TestResult r;
  r.test = "proportion";
  r.n = n;
  r.tail = tail;
  r.alpha = alpha;
  r.estimate = static_cast<double>(successes) / n;
  r.statistic = (r.estimate - p0) / std::sqrt(p0 * (1 - p0) / n);
  r.p_value = NormalPValue(r.statistic, tail);
  r.reject = r.p_value < alpha;
  return r;
}

absl::StatusOr<TestResult> MeanTTest(const std::vector<double> &sample, double mu0, Tail tail,
                                     double alpha) {
  const size_t n = sample.size();
  if (n < 2) return absl::InvalidArgumentError("mean test needs n >= 2");
  double sum = 0;
  for (double v : sample) sum += v;
  const double mean = sum / static_cast<double>(n);
  double ss = 0;
  for (double v : sample) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0)) return absl::InvalidArgumentError("t statistic undefined: zero sample variance");
  TestResult r;
  r.test = "mean";
  r.n = static_cast<int>(n);
  r.tail = tail;
  r.alpha = alpha;
  r.estimate = mean;
  r.statistic = (mean - mu0) / (sd / std::sqrt(static_cast<double>(n)));
  r.p_value = StudentTPValue(r.statistic, static_cast<double>(n - 1), tail);
  r.reject = r.p_value < alpha;
  return r;
}

}  // namespace echo
