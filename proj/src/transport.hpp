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

#include "common.hpp"
#include "divergences.hpp"

namespace mixlab {

/// Feasible moves for the shifted-divergence program: mass at mu's point i
/// may go to nu's point j iff |x_i - y_j| <= shift (up to float slack).
/// Row i of the coupling lives on the scaled simplex {p >= 0, sum p = mu_i}.
struct TransportProblem {
  Vec row_mass;                                   // mu weights
  Vec col_ref;                                    // nu weights
  std::vector<std::vector<std::size_t>> allowed;  // per-row admissible columns
  bool feasible = true;                           // false: some row is stranded

  static TransportProblem build(const DiscreteDist& mu, const DiscreteDist& nu,
                                double shift);
};

/// Minimizes the alpha in {1,2} divergence objective of the column marginal
/// against col_ref over the transport polytope. Projected gradient with
/// Armijo backtracking; Frank-Wolfe fallback when backtracking stalls;
/// convergence on Frank-Wolfe gap <= 1e-10 * max(1,|F|) or relative
/// objective change < 1e-10. Returns the divergence value.
double solve_min_divergence(const TransportProblem& prob, double alpha);

}  // namespace mixlab
