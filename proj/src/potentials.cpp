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

#include "potentials.hpp"

#include <algorithm>

namespace mixlab {

PotentialComponent PotentialComponent::zero() {
  PotentialComponent p;
  p.kind_ = Kind::Zero;
  return p;
}

PotentialComponent PotentialComponent::isotropic_quadratic(double curvature, Vec center) {
  require(curvature >= 0.0, ErrorCode::InvalidArgument,
          "isotropic_quadratic: curvature must be >= 0");
  require(!center.empty(), ErrorCode::InvalidArgument,
          "isotropic_quadratic: empty center");
  PotentialComponent p;
  p.kind_ = Kind::IsotropicQuadratic;
  p.dim_ = center.size();
  p.m_ = curvature;
  p.smooth_ = curvature;
  p.curvatures_ = {curvature};
  p.center_ = std::move(center);
  return p;
}

PotentialComponent PotentialComponent::diagonal_quadratic(Vec curvatures, Vec center) {
  require(!curvatures.empty() && curvatures.size() == center.size(),
          ErrorCode::InvalidArgument,
          "diagonal_quadratic: curvatures and center must be non-empty and of equal dimension");
  for (double c : curvatures)
    require(c >= 0.0, ErrorCode::InvalidArgument,
            "diagonal_quadratic: curvatures must be >= 0");
  PotentialComponent p;
  p.kind_ = Kind::DiagonalQuadratic;
  p.dim_ = center.size();
  p.m_ = *std::min_element(curvatures.begin(), curvatures.end());
  p.smooth_ = *std::max_element(curvatures.begin(), curvatures.end());
  p.curvatures_ = std::move(curvatures);
  p.center_ = std::move(center);
  return p;
}

double PotentialComponent::value(std::span<const double> x) const {
  if (kind_ == Kind::Zero) return 0.0;
  require(x.size() == dim_, ErrorCode::DimensionMismatch,
          "potential value: dimension mismatch");
  double v = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double c = kind_ == Kind::IsotropicQuadratic ? curvatures_[0] : curvatures_[i];
    const double d = x[i] - center_[i];
    v += 0.5 * c * d * d;
  }
  return v;
}

Vec PotentialComponent::gradient(std::span<const double> x) const {
  if (kind_ == Kind::Zero) return Vec(x.size(), 0.0);
  require(x.size() == dim_, ErrorCode::DimensionMismatch,
          "potential gradient: dimension mismatch");
  Vec g(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    const double c = kind_ == Kind::IsotropicQuadratic ? curvatures_[0] : curvatures_[i];
    g[i] = c * (x[i] - center_[i]);
  }
  return g;
}

FiniteSumPotential::FiniteSumPotential(std::vector<PotentialComponent> components)
    : components_(std::move(components)) {
  require(!components_.empty(), ErrorCode::InvalidArgument,
          "finite-sum potential needs at least one component");
  m_ = components_[0].strong_convexity();
  smooth_ = components_[0].smoothness();
  for (const auto& c : components_) {
    m_ = std::min(m_, c.strong_convexity());
    smooth_ = std::max(smooth_, c.smoothness());
    if (c.dim() != 0) {
      require(dim_ == 0 || dim_ == c.dim(), ErrorCode::DimensionMismatch,
              "finite-sum potential: components disagree on dimension");
      dim_ = c.dim();
    }
  }
}

Vec FiniteSumPotential::minibatch_gradient(std::span<const std::size_t> batch,
                                           std::span<const double> x) const {
  require(!batch.empty(), ErrorCode::InvalidArgument, "minibatch_gradient: empty batch");
  Vec g(x.size(), 0.0);
  for (std::size_t idx : batch) {
    require(idx < components_.size(), ErrorCode::InvalidArgument,
            "minibatch_gradient: component index out of range");
    const Vec gi = components_[idx].gradient(x);
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += gi[j];
  }
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  for (double& v : g) v *= inv_b;
  return g;
}

Vec FiniteSumPotential::gradient_sum(std::span<const double> x) const {
  Vec g(x.size(), 0.0);
  for (const auto& c : components_) {
    const Vec gi = c.gradient(x);
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += gi[j];
  }
  return g;
}

double FiniteSumPotential::value(std::span<const double> x) const {
  double v = 0.0;
  for (const auto& c : components_) v += c.value(x);
  return v;
}

double contraction_coefficient(double m, double M, double eta) {
  require(0.0 <= m && m <= M, ErrorCode::InvalidArgument,
          "contraction_coefficient: need 0 <= m <= M");
  require(eta > 0.0, ErrorCode::InvalidArgument, "contraction_coefficient: eta must be > 0");
  if (M == 0.0) return 1.0;
  require(eta <= 2.0 / M, ErrorCode::StepsizeTooLarge,
          "contraction_coefficient: eta exceeds 2/M");
  return std::max(std::abs(1.0 - eta * m), std::abs(1.0 - eta * M));
}

Vec gradient_step(const FiniteSumPotential& potential, std::span<const std::size_t> batch,
                  double eta, std::span<const double> x) {
  const Vec g = potential.minibatch_gradient(batch, x);
  Vec out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= eta * g[i];
  return out;
}

}  // namespace mixlab
