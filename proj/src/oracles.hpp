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

#include "divergences.hpp"

namespace mixlab {

/// Unconstrained 1-D chain on the quadratic (curvature/2) x^2 started at 0;
/// its iterate laws are exactly Gaussian.
struct QuadraticChainLaw {
  static constexpr std::uint64_t kStationary = ~0ull;

  double curvature = 1.0;
  double eta = 0.1;
  std::uint64_t horizon = 0;  // kStationary selects the T -> infinity law

  double contraction() const;  // |1 - eta*curvature|

  /// Curvature in {m, M} maximizing |1 - eta*lambda|; ties go to M (either
  /// choice attains the same contraction, so outputs are unaffected).
  static QuadraticChainLaw worst_case(double m, double M, double eta, std::uint64_t horizon);
};

/// N(0, 2 eta (1-c^{2T})/(1-c^2)); the stationary sentinel yields
/// N(0, 2 eta/(1-c^2)) and requires c < 1.
Gaussian1D exact_iterate_law(const QuadraticChainLaw& q);

/// D_alpha(X_T || stationary law) for the quadratic chain, i.e. the Renyi
/// divergence between N(0, 1-c^{2T}) and N(0,1). alpha = 1 is the KL limit.
/// Evaluated cancellation-free so the value is accurate even when c^{2T}
/// underflows the leading terms.
double exact_renyi_gap(double alpha, double c, std::uint64_t horizon);

/// alpha c^{4T} / 4.
double sc_lower_bound_value(double alpha, double c, std::uint64_t horizon);

struct EscapeEstimate {
  double estimate;      // Monte Carlo P[X_T >= 0]
  double std_error;
  double ceiling;       // exp(-D^2 / (64 T eta))
  std::uint64_t trials;
  bool within_bound;    // estimate <= ceiling + 3 std errors
};

/// Projected zero-potential walk on [-D/2, D/2] started at start_fraction*D
/// (default -D/4), with N(0, 2 eta) increments.
EscapeEstimate random_walk_escape(double diameter, double eta, std::uint64_t horizon,
                                  std::uint64_t trials, std::uint64_t seed,
                                  double start_fraction = -0.25);

struct SupWalkTail {
  double estimate;   // Monte Carlo P[max_t |sum_s xi_s| >= a]
  double std_error;
  double bound;      // exp(-a^2 / (2T))
  bool within_bound;
};

/// Concentration of the running supremum of a standard Gaussian walk.
SupWalkTail random_walk_sup_tail(double a, std::uint64_t horizon, std::uint64_t trials,
                                 std::uint64_t seed);

}  // namespace mixlab
