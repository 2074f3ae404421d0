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

#include <string>

#include "common.hpp"

namespace mixlab {

struct Gaussian1D {
  double mean = 0.0;
  double variance = 1.0;  // 0 denotes a point mass
};

/// Finitely supported distribution on the line. Support strictly increasing,
/// weights nonnegative and summing to 1 (tolerance 1e-12).
class DiscreteDist {
 public:
  DiscreteDist(Vec support, Vec weights);

  static DiscreteDist dirac(double x);
  /// Scales weights to total mass 1 before validating.
  static DiscreteDist normalized(Vec support, Vec weights);

  const Vec& support() const { return support_; }
  const Vec& weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }

  /// Law of scale*X + offset. Negative scale reverses the support order;
  /// scale 0 collapses to a Dirac.
  DiscreteDist pushforward_affine(double scale, double offset) const;

 private:
  Vec support_;
  Vec weights_;
};

enum class DivergenceKind { Renyi, KL, TV, ChiSq, Hellinger, HellingerAlpha };

struct DivergenceValue {
  DivergenceKind kind = DivergenceKind::KL;
  double alpha = 1.0;  // meaningful for Renyi / HellingerAlpha
  double value = 0.0;  // may be +infinity

  std::string csv_row() const;  // kind,alpha,value
};

/// Closed-form Renyi divergence of order alpha >= 1 between 1-D Gaussians;
/// alpha = 1 is the KL limit taken analytically. Requires
/// sigma_alpha^2 = (1-alpha) var0 + alpha var1 > 0 and var1 > 0.
double renyi_gaussian(double alpha, const Gaussian1D& g0, const Gaussian1D& g1);

/// Renyi divergence on the merged support, with the conventions 0/0 = 0 and
/// x/0 = infinity (so the result is +infinity iff mu puts mass outside nu's
/// support). alpha = 1 is KL.
double renyi_discrete(double alpha, const DiscreteDist& mu, const DiscreteDist& nu);

struct ComparisonBounds {
  double tv_bound;         // sqrt(kl/2)
  double hellinger_bound;  // sqrt(kl)
  double chi2;             // exp(d2) - 1
};
ComparisonBounds comparison_bounds(double kl, double d2);

/// H_alpha = (exp((alpha-1) d) - 1)/(alpha-1) for alpha > 1; H_2 = chi^2.
double hellinger_alpha_from_renyi(double alpha, double d);
double renyi_from_hellinger_alpha(double alpha, double h);

/// inf of D_alpha(mu' || nu) over mu' within infinity-Wasserstein distance
/// `shift` of mu, solved exactly (tolerance 1e-8) as a convex program over
/// couplings on the transport polytope. Brute-force regime only: support
/// sizes <= 16 and alpha in {1, 2}.
double shifted_renyi_discrete(double alpha, const DiscreteDist& mu, const DiscreteDist& nu,
                              double shift);

/// Upper bound on the shifted divergence from the translation witness that
/// moves all of mu rigidly toward nu by at most `shift`. No optimality claim.
double shifted_renyi_translation_bound(double alpha, const DiscreteDist& mu,
                                       const DiscreteDist& nu, double shift);

/// (1/2) sum_k |p_k - q_k| over `bins` equal-width bins spanning the pooled
/// sample range.
double empirical_tv(std::span<const double> a, std::span<const double> b, std::size_t bins);

struct EmpiricalTv {
  double tv;
  double std_error;  // delta-method estimate from the bin counts
};
EmpiricalTv empirical_tv_with_error(std::span<const double> a, std::span<const double> b,
                                    std::size_t bins);

double tv_discrete(const DiscreteDist& mu, const DiscreteDist& nu);

/// Deterministic coarsening: groups of adjacent support points are merged
/// (weights summed, leftmost point kept). group_sizes must sum to size().
DiscreteDist merge_adjacent(const DiscreteDist& d, std::span<const std::size_t> group_sizes);

/// Law of X + Y for independent X ~ a, Y ~ b; sums closer than `merge_tol`
/// are identified.
DiscreteDist convolve(const DiscreteDist& a, const DiscreteDist& b, double merge_tol = 1e-12);

}  // namespace mixlab
