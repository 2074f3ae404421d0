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

#include <optional>

#include "common.hpp"

namespace mixlab {

/// Convex domains restricted to families with closed-form Euclidean
/// projections: the whole space, intervals, axis-aligned boxes, and balls.
class ConvexBody {
 public:
  enum class Kind { WholeSpace, Interval, Box, Ball };

  static ConvexBody whole_space(std::size_t dim);
  static ConvexBody interval(double lo, double hi);
  static ConvexBody box(Vec lo, Vec hi);
  static ConvexBody ball(Vec center, double radius);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }

  /// Nearest point of the body in Euclidean norm. Fixed point on members.
  Vec project(std::span<const double> x) const;

  /// sup distance between points of the body; empty for the whole space.
  /// Callers must treat the empty case as a tagged sentinel, never as a
  /// floating-point infinity inside arithmetic.
  std::optional<double> diameter() const;

  bool contains(std::span<const double> x, double tol = 0.0) const;

  /// Worst-case initialization point: lo endpoint/corner, or the -e1
  /// boundary point of a ball. Rejected for the whole space.
  Vec corner() const;

  /// Midpoint of interval/box, center of ball. Rejected for the whole space.
  Vec center() const;

  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }
  const Vec& ball_center() const { return center_; }
  double ball_radius() const { return radius_; }

 private:
  ConvexBody() = default;

  void check_dim(std::span<const double> x) const;

  Kind kind_ = Kind::WholeSpace;
  std::size_t dim_ = 0;
  Vec lo_, hi_;     // Interval/Box
  Vec center_;      // Ball
  double radius_ = 0.0;
};

}  // namespace mixlab
