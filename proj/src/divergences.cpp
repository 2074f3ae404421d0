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

#include "divergences.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

namespace mixlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Aligns two supports on their union; missing points carry weight 0.
struct MergedSupport {
  Vec points;
  Vec mu;
  Vec nu;
};

MergedSupport merge_supports(const DiscreteDist& a, const DiscreteDist& b) {
  MergedSupport m;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    double x;
    double wa = 0.0, wb = 0.0;
    if (j >= b.size() || (i < a.size() && a.support()[i] < b.support()[j])) {
      x = a.support()[i];
      wa = a.weights()[i];
      ++i;
    } else if (i >= a.size() || b.support()[j] < a.support()[i]) {
      x = b.support()[j];
      wb = b.weights()[j];
      ++j;
    } else {
      x = a.support()[i];
      wa = a.weights()[i];
      wb = b.weights()[j];
      ++i;
      ++j;
    }
    m.points.push_back(x);
    m.mu.push_back(wa);
    m.nu.push_back(wb);
  }
  return m;
}

}  // namespace

DiscreteDist::DiscreteDist(Vec support, Vec weights)
    : support_(std::move(support)), weights_(std::move(weights)) {
  require(!support_.empty(), ErrorCode::InvalidArgument, "discrete dist: empty support");
  require(support_.size() == weights_.size(), ErrorCode::InvalidArgument,
          "discrete dist: support/weights size mismatch");
  double total = 0.0;
  for (double w : weights_) {
    require(w >= 0.0, ErrorCode::InvalidArgument, "discrete dist: negative weight");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-12, ErrorCode::InvalidArgument,
          "discrete dist: weights must sum to 1");
  for (std::size_t i = 1; i < support_.size(); ++i)
    require(support_[i - 1] < support_[i], ErrorCode::InvalidArgument,
            "discrete dist: support must be strictly increasing");
}

DiscreteDist DiscreteDist::dirac(double x) { return DiscreteDist({x}, {1.0}); }

DiscreteDist DiscreteDist::normalized(Vec support, Vec weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  require(total > 0.0, ErrorCode::InvalidArgument, "discrete dist: zero total mass");
  for (double& w : weights) w /= total;
  return DiscreteDist(std::move(support), std::move(weights));
}

DiscreteDist DiscreteDist::pushforward_affine(double scale, double offset) const {
  if (scale == 0.0) return dirac(offset);
  Vec s(size()), w(size());
  if (scale > 0.0) {
    for (std::size_t i = 0; i < size(); ++i) {
      s[i] = scale * support_[i] + offset;
      w[i] = weights_[i];
    }
  } else {
    for (std::size_t i = 0; i < size(); ++i) {
      const std::size_t r = size() - 1 - i;
      s[i] = scale * support_[r] + offset;
      w[i] = weights_[r];
    }
  }
  return DiscreteDist(std::move(s), std::move(w));
}

std::string DivergenceValue::csv_row() const {
  const char* name = "kl";
  switch (kind) {
    case DivergenceKind::Renyi: name = "renyi"; break;
    case DivergenceKind::KL: name = "kl"; break;
    case DivergenceKind::TV: name = "tv"; break;
    case DivergenceKind::ChiSq: name = "chi2"; break;
    case DivergenceKind::Hellinger: name = "hellinger"; break;
    case DivergenceKind::HellingerAlpha: name = "hellinger_alpha"; break;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g", name, alpha, value);
  return buf;
}

double renyi_gaussian(double alpha, const Gaussian1D& g0, const Gaussian1D& g1) {
  require(alpha >= 1.0, ErrorCode::InvalidArgument, "renyi_gaussian: alpha must be >= 1");
  require(g0.variance >= 0.0 && g1.variance >= 0.0, ErrorCode::InvalidArgument,
          "renyi_gaussian: negative variance");
  require(g1.variance > 0.0, ErrorCode::DegenerateReference,
          "renyi_gaussian: reference must have positive variance");
  const double dm = g1.mean - g0.mean;
  if (g0.variance == 0.0) return kInf;  // point mass against a density
  if (alpha == 1.0) {
    const double r = g0.variance / g1.variance;
    return 0.5 * (r - 1.0 - std::log(r) + dm * dm / g1.variance);
  }
  const double sa2 = (1.0 - alpha) * g0.variance + alpha * g1.variance;
  require(sa2 > 0.0, ErrorCode::OrderTooLargeForVariancePair,
          "renyi_gaussian: (1-alpha) var0 + alpha var1 must be positive");
  const double log_term =
      0.5 * (std::log(sa2) / (1.0 - alpha) - std::log(g0.variance) -
             alpha / (1.0 - alpha) * std::log(g1.variance));
  return alpha * dm * dm / (2.0 * sa2) + log_term;
}

double renyi_discrete(double alpha, const DiscreteDist& mu, const DiscreteDist& nu) {
  require(alpha >= 1.0, ErrorCode::InvalidArgument, "renyi_discrete: alpha must be >= 1");
  const MergedSupport m = merge_supports(mu, nu);
  if (alpha == 1.0) {
    double kl = 0.0;
    for (std::size_t i = 0; i < m.points.size(); ++i) {
      if (m.mu[i] == 0.0) continue;  // 0 log(0/q) = 0
      if (m.nu[i] == 0.0) return kInf;
      kl += m.mu[i] * std::log(m.mu[i] / m.nu[i]);
    }
    return std::max(kl, 0.0);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    if (m.mu[i] == 0.0) continue;
    if (m.nu[i] == 0.0) return kInf;
    sum += std::pow(m.mu[i], alpha) * std::pow(m.nu[i], 1.0 - alpha);
  }
  return std::max(std::log(sum) / (alpha - 1.0), 0.0);
}

ComparisonBounds comparison_bounds(double kl, double d2) {
  require(kl >= 0.0 && d2 >= 0.0, ErrorCode::InvalidArgument,
          "comparison_bounds: inputs must be >= 0");
  return {std::sqrt(kl / 2.0), std::sqrt(kl), std::expm1(d2)};
}

double hellinger_alpha_from_renyi(double alpha, double d) {
  require(alpha > 1.0, ErrorCode::InvalidArgument, "hellinger_alpha: alpha must be > 1");
  return std::expm1((alpha - 1.0) * d) / (alpha - 1.0);
}

double renyi_from_hellinger_alpha(double alpha, double h) {
  require(alpha > 1.0, ErrorCode::InvalidArgument, "hellinger_alpha: alpha must be > 1");
  return std::log1p((alpha - 1.0) * h) / (alpha - 1.0);
}

double shifted_renyi_translation_bound(double alpha, const DiscreteDist& mu,
                                       const DiscreteDist& nu, double shift) {
  require(shift >= 0.0, ErrorCode::InvalidArgument, "shift must be >= 0");
  // Rigid translation matching the means as far as the shift allows.
  double mean_mu = 0.0, mean_nu = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) mean_mu += mu.weights()[i] * mu.support()[i];
  for (std::size_t i = 0; i < nu.size(); ++i) mean_nu += nu.weights()[i] * nu.support()[i];
  const double want = mean_nu - mean_mu;
  const double offset = std::clamp(want, -shift, shift);
  return renyi_discrete(alpha, mu.pushforward_affine(1.0, offset), nu);
}

double empirical_tv(std::span<const double> a, std::span<const double> b, std::size_t bins) {
  return empirical_tv_with_error(a, b, bins).tv;
}

EmpiricalTv empirical_tv_with_error(std::span<const double> a, std::span<const double> b,
                                    std::size_t bins) {
  require(!a.empty() && !b.empty(), ErrorCode::InvalidArgument,
          "empirical_tv: empty sample set");
  require(bins >= 2, ErrorCode::InvalidArgument, "empirical_tv: need at least 2 bins");
  double lo = a[0], hi = a[0];
  for (double v : a) { lo = std::min(lo, v); hi = std::max(hi, v); }
  for (double v : b) { lo = std::min(lo, v); hi = std::max(hi, v); }
  if (lo == hi) return {0.0, 0.0};  // all mass in one bin on both sides
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<double> pa(bins, 0.0), pb(bins, 0.0);
  auto bin_of = [&](double v) {
    const auto k = static_cast<std::ptrdiff_t>((v - lo) / width);
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(
        k, 0, static_cast<std::ptrdiff_t>(bins) - 1));
  };
  for (double v : a) pa[bin_of(v)] += 1.0 / static_cast<double>(a.size());
  for (double v : b) pb[bin_of(v)] += 1.0 / static_cast<double>(b.size());
  double tv = 0.0, var = 0.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  for (std::size_t k = 0; k < bins; ++k) {
    tv += std::abs(pa[k] - pb[k]);
    var += pa[k] * (1.0 - pa[k]) / na + pb[k] * (1.0 - pb[k]) / nb;
  }
  return {0.5 * tv, 0.5 * std::sqrt(var)};
}

double tv_discrete(const DiscreteDist& mu, const DiscreteDist& nu) {
  const MergedSupport m = merge_supports(mu, nu);
  double tv = 0.0;
  for (std::size_t i = 0; i < m.points.size(); ++i) tv += std::abs(m.mu[i] - m.nu[i]);
  return 0.5 * tv;
}

DiscreteDist merge_adjacent(const DiscreteDist& d, std::span<const std::size_t> group_sizes) {
  std::size_t total = 0;
  for (std::size_t g : group_sizes) {
    require(g >= 1, ErrorCode::InvalidArgument, "merge_adjacent: empty group");
    total += g;
  }
  require(total == d.size(), ErrorCode::InvalidArgument,
          "merge_adjacent: group sizes must cover the support");
  Vec s, w;
  std::size_t i = 0;
  for (std::size_t g : group_sizes) {
    double mass = 0.0;
    for (std::size_t k = 0; k < g; ++k) mass += d.weights()[i + k];
    s.push_back(d.support()[i]);
    w.push_back(mass);
    i += g;
  }
  return DiscreteDist::normalized(std::move(s), std::move(w));
}

DiscreteDist convolve(const DiscreteDist& a, const DiscreteDist& b, double merge_tol) {
  std::map<double, double> acc;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double x = a.support()[i] + b.support()[j];
      const double w = a.weights()[i] * b.weights()[j];
      // identify float-level duplicates of the same grid point
      auto it = acc.lower_bound(x - merge_tol);
      if (it != acc.end() && std::abs(it->first - x) <= merge_tol) {
        it->second += w;
      } else {
        acc[x] += w;
      }
    }
  Vec s, w;
  for (const auto& [x, mass] : acc) {
    s.push_back(x);
    w.push_back(mass);
  }
  return DiscreteDist::normalized(std::move(s), std::move(w));
}

}  // namespace mixlab
