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

#pragma once

#include <cstdint>
#include <optional>

#include "common.hpp"
#include "geometry.hpp"

namespace mixlab {

/// Inputs to the divergence / mixing-time calculators. For the Langevin
/// chain the per-coordinate noise variance is sigma2 = 2*eta.
struct BoundInputs {
  double alpha = 1.0;
  double diameter = 0.0;
  double sigma2 = 0.0;
  double contraction = 1.0;
  std::uint64_t horizon = 0;
};

enum class PabiMode { Piecewise, Continuous };

/// Final-iterate Renyi divergence bound for two coupled contractive noisy
/// iterations started at most `diameter` apart.
///   piecewise:  (alpha*D^2 / (2 sigma^2)) * (1/T  if c == 1, else c^{2T})
///   continuous: (alpha*D^2 / (2 sigma^2)) * (1-c^2) c^{2T} / (1-c^{2T}),
/// which tends to 1/T as c -> 1 and never exceeds the piecewise value.
double pabi_divergence_bound(const BoundInputs& in, PabiMode mode);

/// Minimizer of sum_t a_t^2 subject to sum_t c^{-t} a_t = D over a >= 0:
/// a_t = c^{-t} * beta * D with beta = (c^2-1)/(1-c^{-2T}); a_t = D/T at c = 1.
struct ShiftAllocation {
  Vec shifts;          // a_1..a_T
  double beta;         // allocation coefficient (1/T at c = 1)
  double objective;    // sum_t a_t^2
};
ShiftAllocation optimal_shift_allocation(double c, double diameter, std::uint64_t horizon);

enum class Metric { Renyi, KL, TV, ChiSq, Hellinger };

/// Iterations to reach `eps` in `metric` for convex potentials on a body of
/// diameter D. Base TV block is ceil(2 D^2/eta) (error 1/4) with per-block
/// contraction 1/4; Renyi runs the two-phase schedule
///   ceil(alpha D^2/(4 eta)) + block * ceil(log2(2 e^{alpha-1} / eps)).
/// KL is the alpha = 1 Renyi schedule, chi^2 reduces to Renyi-2 at
/// log(1+eps), Hellinger reduces to KL at eps^2. Constants are instantiated
/// from the exact coupled-iteration argument, not asymptotic statements.
std::uint64_t mixing_time_upper_convex(double diameter, double eta, double eps,
                                       Metric metric, double alpha = 1.0);

/// Smallest T >= 1 with (alpha D^2/(4 eta)) c^{2T} below the metric's
/// threshold (Renyi: eps, KL: eps, TV: 2 eps^2, chi^2: log(1+eps),
/// Hellinger: eps^2). Requires m > 0 and eta < 2/M; m = 0 delegates to the
/// convex calculator.
struct ScUpperResult {
  std::uint64_t iterations;
  double contraction;  // the c the bound was evaluated with
};
ScUpperResult mixing_time_upper_strongly_convex(double diameter, double eta, double m,
                                                double M, double eps, Metric metric,
                                                double alpha = 1.0);

/// Certified TV-1/4 lower bound ceil(D^2 / (100 eta)) from the zero-potential
/// reachability construction.
std::uint64_t mixing_time_lower_convex(double diameter, double eta);

/// Largest T with alpha c^{4T}/4 > eps; 0 when eps >= alpha/4.
std::uint64_t mixing_time_lower_strongly_convex(double alpha, double c, double eps);

/// Substitute for the diameter on unbounded bodies: the caller supplies an
/// externally obtained D covering all but eps of the stationary mass, and the
/// resulting TV guarantee degrades to 3*eps. Bounded bodies pass through
/// unchanged.
struct DiameterPatch {
  double effective_diameter;
  double tv_target;
  bool via_proxy;
};
DiameterPatch unconstrained_diameter_adapter(const ConvexBody& body,
                                             std::optional<double> d_proxy, double eps);

}  // namespace mixlab
