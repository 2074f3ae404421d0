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

#include "geometry.hpp"

#include <algorithm>

namespace mixlab {

ConvexBody ConvexBody::whole_space(std::size_t dim) {
  require(dim >= 1, ErrorCode::InvalidArgument, "whole_space: dim must be >= 1");
  ConvexBody b;
  b.kind_ = Kind::WholeSpace;
  b.dim_ = dim;
  return b;
}

ConvexBody ConvexBody::interval(double lo, double hi) {
  require(lo <= hi, ErrorCode::InvalidArgument, "interval: lo must be <= hi");
  ConvexBody b;
  b.kind_ = Kind::Interval;
  b.dim_ = 1;
  b.lo_ = {lo};
  b.hi_ = {hi};
  return b;
}

ConvexBody ConvexBody::box(Vec lo, Vec hi) {
  require(!lo.empty() && lo.size() == hi.size(), ErrorCode::InvalidArgument,
          "box: lo and hi must be non-empty and of equal dimension");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    require(lo[i] <= hi[i], ErrorCode::InvalidArgument,
            "box: lo must be <= hi componentwise");
  }
  ConvexBody b;
  b.kind_ = Kind::Box;
  b.dim_ = lo.size();
  b.lo_ = std::move(lo);
  b.hi_ = std::move(hi);
  return b;
}

ConvexBody ConvexBody::ball(Vec center, double radius) {
  require(!center.empty(), ErrorCode::InvalidArgument, "ball: empty center");
  require(radius >= 0.0, ErrorCode::InvalidArgument, "ball: radius must be >= 0");
  ConvexBody b;
  b.kind_ = Kind::Ball;
  b.dim_ = center.size();
  b.center_ = std::move(center);
  b.radius_ = radius;
  return b;
}

void ConvexBody::check_dim(std::span<const double> x) const {
  require(x.size() == dim_, ErrorCode::DimensionMismatch,
          "point dimension does not match body dimension");
}

Vec ConvexBody::project(std::span<const double> x) const {
  check_dim(x);
  Vec out(x.begin(), x.end());
  switch (kind_) {
    case Kind::WholeSpace:
      break;
    case Kind::Interval:
    case Kind::Box:
      for (std::size_t i = 0; i < dim_; ++i)
        out[i] = std::clamp(out[i], lo_[i], hi_[i]);
      break;
    case Kind::Ball: {
      double r = dist(x, center_);
      // the slack keeps reprojection an exact fixed point: a freshly
      // projected point can land a few ulps outside the radius
      if (r > radius_ * (1.0 + 1e-14)) {
        const double scale = radius_ / r;
        for (std::size_t i = 0; i < dim_; ++i)
          out[i] = center_[i] + scale * (out[i] - center_[i]);
      }
      break;
    }
  }
  return out;
}

std::optional<double> ConvexBody::diameter() const {
  switch (kind_) {
    case Kind::WholeSpace:
      return std::nullopt;
    case Kind::Interval:
      return hi_[0] - lo_[0];
    case Kind::Box:
      return dist(hi_, lo_);
    case Kind::Ball:
      return 2.0 * radius_;
  }
  return std::nullopt;
}

bool ConvexBody::contains(std::span<const double> x, double tol) const {
  check_dim(x);
  switch (kind_) {
    case Kind::WholeSpace:
      return true;
    case Kind::Interval:
    case Kind::Box:
      for (std::size_t i = 0; i < dim_; ++i)
        if (x[i] < lo_[i] - tol || x[i] > hi_[i] + tol) return false;
      return true;
    case Kind::Ball:
      return dist(x, center_) <= radius_ + tol;
  }
  return false;
}

Vec ConvexBody::corner() const {
  switch (kind_) {
    case Kind::Interval:
    case Kind::Box:
      return lo_;
    case Kind::Ball: {
      Vec p = center_;
      p[0] -= radius_;
      return p;
    }
    case Kind::WholeSpace:
      fail(ErrorCode::UnboundedBody, "corner: whole space has no corner");
  }
  fail(ErrorCode::InvalidArgument, "corner: unreachable");
}

Vec ConvexBody::center() const {
  switch (kind_) {
    case Kind::Interval:
    case Kind::Box: {
      Vec p(dim_);
      for (std::size_t i = 0; i < dim_; ++i) p[i] = 0.5 * (lo_[i] + hi_[i]);
      return p;
    }
    case Kind::Ball:
      return center_;
    case Kind::WholeSpace:
      fail(ErrorCode::UnboundedBody, "center: whole space has no canonical center");
  }
  fail(ErrorCode::InvalidArgument, "center: unreachable");
}

}  // namespace mixlab
