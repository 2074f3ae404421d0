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

namespace mixlab {

/// One summand f_i of a finite-sum potential. Restricted to families with
/// closed-form gradients and exactly known regularity (m, M), so that bound
/// calculators never introspect function bodies.
class PotentialComponent {
 public:
  enum class Kind { Zero, IsotropicQuadratic, DiagonalQuadratic };

  static PotentialComponent zero();
  /// f(x) = (curvature/2) * ||x - center||^2, m = M = curvature.
  static PotentialComponent isotropic_quadratic(double curvature, Vec center);
  /// f(x) = sum_j (curvatures[j]/2) * (x_j - center_j)^2,
  /// m = min curvature, M = max curvature.
  static PotentialComponent diagonal_quadratic(Vec curvatures, Vec center);

  Kind kind() const { return kind_; }
  double strong_convexity() const { return m_; }
  double smoothness() const { return smooth_; }
  /// 0 means dimension-free (the zero potential adapts to its argument).
  std::size_t dim() const { return dim_; }

  double value(std::span<const double> x) const;
  Vec gradient(std::span<const double> x) const;

  double isotropic_curvature() const { return curvatures_.empty() ? 0.0 : curvatures_[0]; }
  const Vec& curvatures() const { return curvatures_; }
  const Vec& center() const { return center_; }

 private:
  PotentialComponent() = default;

  Kind kind_ = Kind::Zero;
  std::size_t dim_ = 0;
  double m_ = 0.0;
  double smooth_ = 0.0;
  Vec curvatures_;
  Vec center_;
};

/// f = sum_i f_i with equal-weight minibatch averaging. The aggregate
/// regularity is (min_i m_i, max_i M_i): each summand's gradient step
/// contracts individually, which is what coupled-chain arguments consume.
class FiniteSumPotential {
 public:
  explicit FiniteSumPotential(std::vector<PotentialComponent> components);

  std::size_t component_count() const { return components_.size(); }
  const PotentialComponent& component(std::size_t i) const { return components_[i]; }
  double strong_convexity() const { return m_; }
  double smoothness() const { return smooth_; }
  /// 0 if every component is dimension-free.
  std::size_t dim() const { return dim_; }

  /// (1/|batch|) * sum_{i in batch} grad f_i(x). Indices are 0-based.
  Vec minibatch_gradient(std::span<const std::size_t> batch, std::span<const double> x) const;

  /// grad of f = sum_i f_i (the unaveraged sum).
  Vec gradient_sum(std::span<const double> x) const;

  double value(std::span<const double> x) const;

 private:
  std::vector<PotentialComponent> components_;
  std::size_t dim_ = 0;
  double m_ = 0.0;
  double smooth_ = 0.0;
};

/// Lipschitz constant of the gradient-descent update x -> x - eta*grad f(x)
/// for an m-strongly convex, M-smooth f: c = max_{lambda in {m,M}} |1 - eta*lambda|.
/// Requires eta <= 2/M when M > 0; for M = 0 any eta is admissible and c = 1.
double contraction_coefficient(double m, double M, double eta);

/// x - eta * minibatch_gradient(potential, batch, x).
Vec gradient_step(const FiniteSumPotential& potential, std::span<const std::size_t> batch,
                  double eta, std::span<const double> x);

}  // namespace mixlab
