// Copyright 2026 The mixlab Authors
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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>

#include "rng.hpp"

namespace mixlab {

namespace {

// r(u) = log(1+u) - u, evaluated by series for small |u| where the direct
// form cancels.
double log1p_minus_u(double u) {
  if (std::abs(u) > 0.125) return std::log1p(u) - u;
  double sum = 0.0;
  double p = u;  // u^{k-1}
  for (int k = 2; k <= 60; ++k) {
    p *= u;
    const double t = ((k & 1) ? p : -p) / static_cast<double>(k);
    sum += t;
    if (std::abs(t) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double QuadraticChainLaw::contraction() const {
  return std::abs(1.0 - eta * curvature);
}

QuadraticChainLaw QuadraticChainLaw::worst_case(double m, double M, double eta,
                                                std::uint64_t horizon) {
  require(0.0 <= m && m <= M, ErrorCode::InvalidArgument, "worst_case: need 0 <= m <= M");
  require(eta > 0.0, ErrorCode::InvalidArgument, "worst_case: eta must be > 0");
  QuadraticChainLaw q;
  q.eta = eta;
  q.horizon = horizon;
  q.curvature = std::abs(1.0 - eta * m) > std::abs(1.0 - eta * M) ? m : M;
  return q;
}

Gaussian1D exact_iterate_law(const QuadraticChainLaw& q) {
  require(q.eta > 0.0, ErrorCode::InvalidArgument, "iterate law: eta must be > 0");
  require(q.curvature >= 0.0, ErrorCode::InvalidArgument,
          "iterate law: curvature must be >= 0");
  const double c = q.contraction();
  if (q.horizon == QuadraticChainLaw::kStationary) {
    require(c < 1.0, ErrorCode::InvalidArgument,
            "iterate law: no stationary law when c = 1");
    return {0.0, 2.0 * q.eta / (1.0 - c * c)};
  }
  const double T = static_cast<double>(q.horizon);
  if (q.horizon == 0) return {0.0, 0.0};
  // 2 eta * sum_{s<T} c^{2s}
  const double var = c == 1.0
                         ? 2.0 * q.eta * T
                         : 2.0 * q.eta * (1.0 - std::pow(c, 2.0 * T)) / (1.0 - c * c);
  return {0.0, var};
}

double exact_renyi_gap(double alpha, double c, std::uint64_t horizon) {
  require(alpha >= 1.0, ErrorCode::InvalidArgument, "exact gap: alpha must be >= 1");
  require(c > 0.0 && c < 1.0, ErrorCode::InvalidArgument, "exact gap: c must lie in (0,1)");
  require(horizon >= 1, ErrorCode::InvalidArgument, "exact gap: horizon must be >= 1");
  const double x = std::pow(c, 2.0 * static_cast<double>(horizon));
  // D_alpha(N(0,1-x) || N(0,1)) = (1/(2b)) log(1-bx) - (1/2) log(1-x) with
  // b = 1-alpha <= 0, rewritten through r(u) = log(1+u) - u so the O(x)
  // halves cancel exactly: value = r(-bx)/(2b) - r(-x)/2.
  const double b = 1.0 - alpha;
  require(1.0 - b * x > 0.0, ErrorCode::InvalidArgument, "exact gap: impossible sign");
  if (alpha == 1.0) return -0.5 * log1p_minus_u(-x);
  return log1p_minus_u(-b * x) / (2.0 * b) - 0.5 * log1p_minus_u(-x);
}

double sc_lower_bound_value(double alpha, double c, std::uint64_t horizon) {
  require(alpha >= 1.0, ErrorCode::InvalidArgument, "lower value: alpha must be >= 1");
  require(c > 0.0 && c < 1.0, ErrorCode::InvalidArgument, "lower value: c must lie in (0,1)");
  return alpha * std::pow(c, 4.0 * static_cast<double>(horizon)) / 4.0;
}

EscapeEstimate random_walk_escape(double diameter, double eta, std::uint64_t horizon,
                                  std::uint64_t trials, std::uint64_t seed,
                                  double start_fraction) {
  require(diameter > 0.0 && eta > 0.0, ErrorCode::InvalidArgument,
          "escape: diameter and eta must be > 0");
  require(trials >= 10000, ErrorCode::InvalidArgument, "escape: need at least 1e4 trials");
  const double lo = -diameter / 2.0, hi = diameter / 2.0;
  const double start = start_fraction * diameter;
  const double stddev = std::sqrt(2.0 * eta);
  std::uint64_t hits = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    RngStream stream(seed, trial);
    double x = start;
    for (std::uint64_t t = 0; t < horizon; ++t)
      x = std::clamp(x + stream.normal(stddev), lo, hi);
    if (x >= 0.0) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  const double se = std::sqrt(std::max(p * (1.0 - p), 1.0 / static_cast<double>(trials)) /
                              static_cast<double>(trials));
  const double ceiling =
      horizon == 0 ? 0.0
                   : std::exp(-diameter * diameter /
                              (64.0 * static_cast<double>(horizon) * eta));
  return {p, se, ceiling, trials, p <= ceiling + 3.0 * se};
}

SupWalkTail random_walk_sup_tail(double a, std::uint64_t horizon, std::uint64_t trials,
                                 std::uint64_t seed) {
  require(a > 0.0, ErrorCode::InvalidArgument, "sup tail: a must be > 0");
  require(horizon >= 1, ErrorCode::InvalidArgument, "sup tail: horizon must be >= 1");
  require(trials >= 10000, ErrorCode::InvalidArgument, "sup tail: need at least 1e4 trials");
  std::uint64_t hits = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    RngStream stream(seed, trial);
    double sum = 0.0;
    for (std::uint64_t t = 0; t < horizon; ++t) {
      sum += stream.normal(1.0);
      if (std::abs(sum) >= a) {
        ++hits;
        break;
      }
    }
  }
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  const double se = std::sqrt(std::max(p * (1.0 - p), 1.0 / static_cast<double>(trials)) /
                              static_cast<double>(trials));
  const double bound = std::exp(-a * a / (2.0 * static_cast<double>(horizon)));
  return {p, se, bound, p <= bound + 3.0 * se};
}

}  // namespace mixlab
