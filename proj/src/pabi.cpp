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

#include "pabi.hpp"

#include <algorithm>
#include <cmath>

namespace mixlab {

namespace {

// ceil with a small guard so that analytically exact integers computed in
// floating point (e.g. log2 of powers of two) do not round up spuriously.
std::uint64_t ceil_count(double x) {
  require(x < 9.0e18, ErrorCode::InvalidArgument, "iteration count overflows");
  const double c = std::ceil(x - 1e-9);
  return c <= 0.0 ? 0ull : static_cast<std::uint64_t>(c);
}

void check_common(const BoundInputs& in) {
  require(in.alpha >= 1.0, ErrorCode::InvalidArgument, "alpha must be >= 1");
  require(in.diameter >= 0.0, ErrorCode::InvalidArgument, "diameter must be >= 0");
  require(in.sigma2 > 0.0, ErrorCode::InvalidArgument, "sigma2 must be > 0");
  require(in.contraction >= 0.0 && in.contraction <= 1.0, ErrorCode::InvalidArgument,
          "contraction must lie in [0,1]");
  require(in.horizon >= 1, ErrorCode::InvalidArgument, "horizon must be >= 1");
}

double threshold_for(Metric metric, double eps, double* alpha_in_out) {
  switch (metric) {
    case Metric::Renyi:
      return eps;
    case Metric::KL:
      *alpha_in_out = 1.0;
      return eps;
    case Metric::TV:
      *alpha_in_out = 1.0;
      return 2.0 * eps * eps;  // Pinsker
    case Metric::ChiSq:
      *alpha_in_out = 2.0;
      return std::log1p(eps);
    case Metric::Hellinger:
      *alpha_in_out = 1.0;
      return eps * eps;
  }
  fail(ErrorCode::InvalidArgument, "unknown metric");
}

}  // namespace

double pabi_divergence_bound(const BoundInputs& in, PabiMode mode) {
  check_common(in);
  const double lead = in.alpha * in.diameter * in.diameter / (2.0 * in.sigma2);
  const double c = in.contraction;
  const double T = static_cast<double>(in.horizon);
  if (mode == PabiMode::Piecewise) {
    if (c == 1.0) return lead / T;
    return lead * std::pow(c, 2.0 * T);
  }
  if (std::abs(1.0 - c) < 1e-12) return lead / T;
  // (c^2-1)/(1 - c^{-2T}) rewritten as (1-c^2) c^{2T} / (1-c^{2T}); stable
  // for c near 0 and free of c^{-2T} overflow.
  const double c2T = std::pow(c, 2.0 * T);
  return lead * (1.0 - c * c) * c2T / (1.0 - c2T);
}

ShiftAllocation optimal_shift_allocation(double c, double diameter, std::uint64_t horizon) {
  require(c > 0.0 && c <= 1.0, ErrorCode::InvalidArgument, "allocation: c must be in (0,1]");
  require(diameter >= 0.0, ErrorCode::InvalidArgument, "allocation: diameter must be >= 0");
  require(horizon >= 1, ErrorCode::InvalidArgument, "allocation: horizon must be >= 1");
  const double T = static_cast<double>(horizon);
  ShiftAllocation out;
  out.shifts.resize(horizon);
  if (std::abs(1.0 - c) < 1e-12) {
    out.beta = 1.0 / T;
    std::fill(out.shifts.begin(), out.shifts.end(), diameter / T);
  } else {
    const double c2T = std::pow(c, 2.0 * T);
    out.beta = (c * c - 1.0) / (1.0 - 1.0 / c2T);
    // a_t = c^{-t} beta D, evaluated as D (1-c^2) c^{2T-t} / (1-c^{2T}).
    const double scale = diameter * (1.0 - c * c) / (1.0 - c2T);
    for (std::uint64_t t = 1; t <= horizon; ++t)
      out.shifts[t - 1] = scale * std::pow(c, 2.0 * T - static_cast<double>(t));
  }
  out.objective = 0.0;
  for (double a : out.shifts) out.objective += a * a;
  return out;
}

std::uint64_t mixing_time_upper_convex(double diameter, double eta, double eps,
                                       Metric metric, double alpha) {
  require(diameter > 0.0, ErrorCode::InvalidArgument, "upper bound: diameter must be > 0");
  require(eta > 0.0, ErrorCode::InvalidArgument, "upper bound: eta must be > 0");
  require(eps > 0.0 && eps < 1.0, ErrorCode::InvalidArgument,
          "upper bound: eps must lie in (0,1)");
  require(alpha >= 1.0, ErrorCode::InvalidArgument, "upper bound: alpha must be >= 1");
  const double d2_over_eta = diameter * diameter / eta;
  const std::uint64_t block = ceil_count(2.0 * d2_over_eta);
  switch (metric) {
    case Metric::TV:
      // One block reaches TV 1/4 and each block contracts TV by 1/4.
      return block * std::max<std::uint64_t>(1, ceil_count(std::log2(1.0 / eps) / 2.0));
    case Metric::Renyi:
      break;
    case Metric::KL:
      alpha = 1.0;
      break;
    case Metric::ChiSq:
      alpha = 2.0;
      eps = std::log1p(eps);
      break;
    case Metric::Hellinger:
      alpha = 1.0;
      eps = eps * eps;
      break;
  }
  // Two phases: reach Renyi error 1, i.e. Hellinger-alpha error 2 e^{alpha-1},
  // then contract per TV block.
  const std::uint64_t phase1 = ceil_count(alpha * d2_over_eta / 4.0);
  const double log2_target = 1.0 + (alpha - 1.0) / std::log(2.0) - std::log2(eps);
  const std::uint64_t blocks = std::max<std::uint64_t>(1, ceil_count(log2_target));
  return phase1 + block * blocks;
}

ScUpperResult mixing_time_upper_strongly_convex(double diameter, double eta, double m,
                                                double M, double eps, Metric metric,
                                                double alpha) {
  require(m >= 0.0 && m <= M, ErrorCode::InvalidArgument, "need 0 <= m <= M");
  if (m == 0.0)
    return {mixing_time_upper_convex(diameter, eta, eps, metric, alpha), 1.0};
  require(eta > 0.0 && eta < 2.0 / M, ErrorCode::StepsizeTooLarge,
          "strongly convex bound needs eta < 2/M");
  require(diameter > 0.0, ErrorCode::InvalidArgument, "diameter must be > 0");
  require(eps > 0.0, ErrorCode::InvalidArgument, "eps must be > 0");
  require(alpha >= 1.0, ErrorCode::InvalidArgument, "alpha must be >= 1");
  const double thr = threshold_for(metric, eps, &alpha);
  const double c = std::max(std::abs(1.0 - eta * m), std::abs(1.0 - eta * M));
  const double start = alpha * diameter * diameter / (4.0 * eta);
  if (c == 0.0 || start <= thr) return {1, c};
  const double t = 0.5 * std::log(start / thr) / std::log(1.0 / c);
  return {std::max<std::uint64_t>(1, ceil_count(t)), c};
}

std::uint64_t mixing_time_lower_convex(double diameter, double eta) {
  require(diameter > 0.0 && eta > 0.0, ErrorCode::InvalidArgument,
          "lower bound: diameter and eta must be > 0");
  return ceil_count(diameter * diameter / (100.0 * eta));
}

std::uint64_t mixing_time_lower_strongly_convex(double alpha, double c, double eps) {
  require(alpha >= 1.0, ErrorCode::InvalidArgument, "alpha must be >= 1");
  require(c > 0.0 && c < 1.0, ErrorCode::InvalidArgument, "c must lie in (0,1)");
  require(eps > 0.0, ErrorCode::InvalidArgument, "eps must be > 0");
  if (eps >= alpha / 4.0) return 0;
  const double r = std::log(alpha / (4.0 * eps)) / (4.0 * std::log(1.0 / c));
  auto holds = [&](std::uint64_t T) {
    return alpha * std::pow(c, 4.0 * static_cast<double>(T)) / 4.0 > eps;
  };
  std::uint64_t T = static_cast<std::uint64_t>(std::max(0.0, std::floor(r)));
  while (T > 0 && !holds(T)) --T;
  return T;
}

DiameterPatch unconstrained_diameter_adapter(const ConvexBody& body,
                                             std::optional<double> d_proxy, double eps) {
  require(eps > 0.0 && eps < 1.0, ErrorCode::InvalidArgument,
          "adapter: eps must lie in (0,1)");
  if (auto d = body.diameter()) return {*d, eps, false};
  require(d_proxy.has_value(), ErrorCode::UnboundedBody,
          "unbounded body needs an externally supplied mass-capture diameter");
  require(*d_proxy > 0.0, ErrorCode::InvalidArgument, "adapter: proxy diameter must be > 0");
  return {*d_proxy, 3.0 * eps, true};
}

}  // namespace mixlab
