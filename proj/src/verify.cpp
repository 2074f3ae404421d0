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

#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "chain.hpp"
#include "divergences.hpp"
#include "geometry.hpp"
#include "oracles.hpp"
#include "pabi.hpp"
#include "potentials.hpp"
#include "rng.hpp"

namespace mixlab {

namespace {

constexpr int kPairTrials = 10000;

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Vec random_point(RngStream& rng, std::size_t d, double scale) {
  Vec x(d);
  for (double& v : x) v = scale * (2.0 * rng.uniform01() - 1.0);
  return x;
}

ConvexBody random_body(RngStream& rng, int variant) {
  switch (variant) {
    case 0:
      return ConvexBody::interval(-1.0 - rng.uniform01(), 1.0 + rng.uniform01());
    case 1: {
      Vec lo = {-1.0 - rng.uniform01(), -2.0 * rng.uniform01()};
      Vec hi = {lo[0] + 1.0 + rng.uniform01(), lo[1] + 2.0 + rng.uniform01()};
      return ConvexBody::box(lo, hi);
    }
    case 2:
      return ConvexBody::ball(random_point(rng, 3, 0.5), 0.3 + rng.uniform01());
    default:
      return ConvexBody::whole_space(2);
  }
}

DiscreteDist random_discrete(RngStream& rng, std::size_t n, double span = 1.0) {
  Vec s(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = span * (static_cast<double>(i) + 0.2 * rng.uniform01()) / static_cast<double>(n);
    w[i] = 0.05 + rng.uniform01();
  }
  return DiscreteDist::normalized(std::move(s), std::move(w));
}

struct Suite {
  std::vector<CheckResult> results;
  std::uint64_t seed;

  void check(const std::string& name, bool pass, const std::string& detail = "",
             bool asserted = true) {
    results.push_back({name, pass, asserted, detail});
  }
};

void check_geometry(Suite& s) {
  double worst = 0.0;
  bool idempotent = true;
  for (int variant = 0; variant < 4; ++variant) {
    RngStream rng(s.seed, 100 + static_cast<std::uint64_t>(variant));
    const ConvexBody body = random_body(rng, variant);
    for (int t = 0; t < kPairTrials; ++t) {
      const Vec x = random_point(rng, body.dim(), 4.0);
      const Vec y = random_point(rng, body.dim(), 4.0);
      const Vec px = body.project(x);
      const Vec py = body.project(y);
      worst = std::max(worst, dist(px, py) - dist(x, y));
      const Vec ppx = body.project(px);
      if (ppx != px) idempotent = false;
    }
  }
  s.check("geometry.projection_nonexpansive", worst <= 1e-12,
          fmt("max expansion %.3g", worst));
  s.check("geometry.projection_idempotent", idempotent);
}

void check_potentials(Suite& s) {
  RngStream rng(s.seed, 200);
  double worst_contract = 0.0;
  double worst_reg = 0.0;
  double worst_tight = 0.0;
  for (int t = 0; t < kPairTrials; ++t) {
    const double m = rng.uniform01();
    const double M = m + rng.uniform01();
    const std::size_t d = 1 + static_cast<std::size_t>(rng.uniform_index(3));
    std::vector<PotentialComponent> comps;
    comps.push_back(PotentialComponent::isotropic_quadratic(m, random_point(rng, d, 1.0)));
    comps.push_back(PotentialComponent::isotropic_quadratic(M, random_point(rng, d, 1.0)));
    Vec curv(d);
    for (double& c : curv) c = m + (M - m) * rng.uniform01();
    comps.push_back(PotentialComponent::diagonal_quadratic(curv, random_point(rng, d, 1.0)));
    if (rng.uniform01() < 0.25) comps.push_back(PotentialComponent::zero());
    const FiniteSumPotential f(std::move(comps));
    const double eta = (0.1 + 1.85 * rng.uniform01()) / std::max(f.smoothness(), 1e-9);
    const double c = contraction_coefficient(f.strong_convexity(), f.smoothness(), eta);

    std::vector<std::size_t> batch;
    for (std::size_t i = 0; i < f.component_count(); ++i)
      if (batch.empty() || rng.uniform01() < 0.6) batch.push_back(i);
    const Vec x = random_point(rng, d, 2.0);
    const Vec y = random_point(rng, d, 2.0);
    const Vec gx = gradient_step(f, batch, eta, x);
    const Vec gy = gradient_step(f, batch, eta, y);
    worst_contract = std::max(worst_contract, dist(gx, gy) - c * dist(x, y));

    // Definition of strong convexity / smoothness on a random pair.
    for (const auto& comp :
         {f.component(0), f.component(1), f.component(2)}) {
      const double fx = comp.value(x), fy = comp.value(y);
      const Vec gyc = comp.gradient(y);
      double lin = fy;
      for (std::size_t i = 0; i < d; ++i) lin += gyc[i] * (x[i] - y[i]);
      const double q = 0.5 * squared_dist(x, y);
      worst_reg = std::max(worst_reg, lin + comp.strong_convexity() * q - fx);
      worst_reg = std::max(worst_reg, fx - (lin + comp.smoothness() * q));
    }
  }
  // Tightness witness: isotropic curvature at the binding end of {m, M}.
  {
    RngStream rng2(s.seed, 201);
    for (int t = 0; t < 100; ++t) {
      const double m = rng2.uniform01(), M = m + rng2.uniform01();
      const double eta = (0.1 + 1.8 * rng2.uniform01()) / M;
      const double c = contraction_coefficient(m, M, eta);
      const double lam = std::abs(1.0 - eta * m) >= std::abs(1.0 - eta * M) ? m : M;
      const FiniteSumPotential f({PotentialComponent::isotropic_quadratic(lam, {0.0})});
      const std::vector<std::size_t> batch = {0};
      const Vec x = {1.0 + rng2.uniform01()}, y = {-rng2.uniform01()};
      const double ratio =
          dist(gradient_step(f, batch, eta, x), gradient_step(f, batch, eta, y)) /
          dist(x, y);
      worst_tight = std::max(worst_tight, std::abs(ratio - c));
    }
  }
  s.check("potentials.gradient_step_contractive", worst_contract <= 1e-12,
          fmt("max excess %.3g", worst_contract));
  s.check("potentials.regularity_inequalities", worst_reg <= 1e-10,
          fmt("max violation %.3g", worst_reg));
  s.check("potentials.contraction_tightness", worst_tight <= 1e-12,
          fmt("max |ratio - c| %.3g", worst_tight));
}

void check_chain(Suite& s) {
  // Coupled auxiliary sequences: gap shrinks by c each step (shared noise).
  {
    RngStream rng(s.seed, 300);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      ChainConfig cfg{
          ConvexBody::interval(-1.0, 1.0),
          FiniteSumPotential({PotentialComponent::isotropic_quadratic(1.0, {0.0})}),
          0.1 + 0.5 * rng.uniform01(),
          1,
          40,
          Vec{0.0},
          s.seed + 7};
      const double c = contraction_coefficient(1.0, 1.0, cfg.eta);
      const Vec a = {2.0 * rng.uniform01() - 1.0};
      const Vec b = {2.0 * rng.uniform01() - 1.0};
      const Trajectory ta = run_auxiliary_cni(cfg, a, t);
      const Trajectory tb = run_auxiliary_cni(cfg, b, t);
      const double gap0 = dist(a, b);
      for (std::size_t k = 0; k < ta.auxiliary.size(); ++k) {
        const double bound = std::pow(c, static_cast<double>(k)) * gap0;
        worst = std::max(worst, dist(ta.auxiliary[k], tb.auxiliary[k]) - bound);
      }
    }
    s.check("chain.coupled_gap_contracts", worst <= 1e-12, fmt("max excess %.3g", worst));
  }
  // Determinism and auxiliary-vs-plain consistency on a projected chain.
  {
    ChainConfig cfg{ConvexBody::interval(-0.5, 0.5),
                    FiniteSumPotential({PotentialComponent::zero()}),
                    0.01,
                    1,
                    64,
                    Vec{0.25},
                    s.seed + 11};
    const Trajectory t1 = run_chain(cfg, 3);
    const Trajectory t2 = run_chain(cfg, 3);
    bool identical = t1.states == t2.states;
    const Trajectory aux = run_auxiliary_cni(cfg, Vec{0.25}, 3);
    bool marginal = aux.states == t1.states;
    bool projected = true;
    for (std::size_t k = 0; k < aux.states.size(); ++k)
      if (aux.states[k] != cfg.body.project(aux.auxiliary[k])) projected = false;
    s.check("chain.deterministic_replay", identical);
    s.check("chain.auxiliary_marginal_bitwise", marginal);
    s.check("chain.auxiliary_projection_identity", projected);
  }
  // Stationary variance of the 1-D quadratic chain.
  {
    const double eta = 0.1, lam = 1.0;
    const double c = 1.0 - eta * lam;
    const std::uint64_t chains = 100000;
    const std::size_t T = 160;
    ChainConfig cfg{ConvexBody::whole_space(1),
                    FiniteSumPotential({PotentialComponent::isotropic_quadratic(lam, {0.0})}),
                    eta,
                    1,
                    T,
                    Vec{0.0},
                    s.seed + 13};
    double sum = 0.0, sum2 = 0.0;
    for (std::uint64_t i = 0; i < chains; ++i) {
      const Trajectory t = run_chain(cfg, i);
      const double v = t.states.back()[0];
      sum += v;
      sum2 += v * v;
    }
    const double n = static_cast<double>(chains);
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    const double target = 2.0 * eta / (1.0 - c * c);
    const double se = target * std::sqrt(2.0 / (n - 1.0));
    s.check("chain.stationary_variance_smoke", std::abs(var - target) <= 3.0 * se,
            fmt("var %.6g target %.6g (3se %.2g)", var, target, 3.0 * se));
  }
}

void check_divergences(Suite& s) {
  RngStream rng(s.seed, 400);
  // Renyi monotone in alpha; data processing under coarsenings.
  {
    bool monotone = true;
    double worst_dp = 0.0;
    for (int t = 0; t < 300; ++t) {
      const std::size_t n = 4 + rng.uniform_index(5);
      const DiscreteDist mu = random_discrete(rng, n);
      DiscreteDist nu = random_discrete(rng, n);
      nu = DiscreteDist(mu.support(), nu.weights());  // shared support
      double prev = 0.0;
      bool first = true;
      for (double alpha : {1.0, 1.5, 2.0, 4.0}) {
        const double d = renyi_discrete(alpha, mu, nu);
        if (!first && d + 1e-12 < prev) monotone = false;
        prev = d;
        first = false;
      }
      std::vector<std::size_t> groups;
      std::size_t left = n;
      while (left > 0) {
        const std::size_t g = 1 + rng.uniform_index(std::min<std::uint64_t>(left, 3));
        groups.push_back(g);
        left -= g;
      }
      for (double alpha : {1.0, 2.0, 4.0}) {
        const double full = renyi_discrete(alpha, mu, nu);
        const double coarse = renyi_discrete(alpha, merge_adjacent(mu, groups),
                                             merge_adjacent(nu, groups));
        worst_dp = std::max(worst_dp, coarse - full);
      }
    }
    s.check("divergences.renyi_alpha_monotone", monotone);
    s.check("divergences.data_processing_coarsening", worst_dp <= 1e-10,
            fmt("max excess %.3g", worst_dp));
  }
  // Comparison inequalities against exact discrete values.
  {
    double worst = 0.0;
    for (int t = 0; t < 300; ++t) {
      const std::size_t n = 3 + rng.uniform_index(4);
      const DiscreteDist mu = random_discrete(rng, n);
      const DiscreteDist nu(mu.support(), random_discrete(rng, n).weights());
      const double kl = renyi_discrete(1.0, mu, nu);
      const double d2 = renyi_discrete(2.0, mu, nu);
      const auto cb = comparison_bounds(kl, d2);
      const double tv = tv_discrete(mu, nu);
      worst = std::max(worst, tv - cb.tv_bound);
      // chi2 identity at alpha = 2
      double chi2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double num = mu.weights()[i] - nu.weights()[i];
        chi2 += num * num / nu.weights()[i];
      }
      worst = std::max(worst, std::abs(chi2 - cb.chi2) - 1e-9 * (1.0 + chi2));
    }
    s.check("divergences.comparison_inequalities", worst <= 1e-10,
            fmt("max violation %.3g", worst));
  }
  // Shifted divergence: z = 0 identity, monotone in z, below unshifted.
  {
    double worst_id = 0.0, worst_mono = 0.0;
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 3 + rng.uniform_index(3);
      const DiscreteDist mu = random_discrete(rng, n);
      const DiscreteDist nu(mu.support(), random_discrete(rng, n).weights());
      for (double alpha : {1.0, 2.0}) {
        const double plain = renyi_discrete(alpha, mu, nu);
        const double z0 = shifted_renyi_discrete(alpha, mu, nu, 0.0);
        worst_id = std::max(worst_id, std::abs(z0 - plain));
        double prev = z0;
        for (double z : {0.05, 0.1, 0.3, 1.0}) {
          const double v = shifted_renyi_discrete(alpha, mu, nu, z);
          worst_mono = std::max(worst_mono, v - prev - 1e-8);
          prev = v;
        }
      }
    }
    s.check("divergences.shifted_z0_identity", worst_id <= 1e-8,
            fmt("max gap %.3g", worst_id));
    s.check("divergences.shifted_monotone_in_z", worst_mono <= 0.0,
            fmt("max increase %.3g", worst_mono));
  }
  // Dirac pair: shift covering the displacement kills the divergence.
  {
    const double v = shifted_renyi_discrete(1.0, DiscreteDist::dirac(0.3),
                                            DiscreteDist::dirac(0.3 + 0.125), 0.125);
    s.check("divergences.dirac_shift_zero", v <= 1e-10, fmt("value %.3g", v));
  }
  // Contraction-reduction on affine contractions of discrete grids.
  {
    double worst = 0.0;
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 3 + rng.uniform_index(3);
      const DiscreteDist mu = random_discrete(rng, n);
      const DiscreteDist nu(mu.support(), random_discrete(rng, n).weights());
      const double c = 0.2 + 0.8 * rng.uniform01();
      const double offset = rng.uniform01() - 0.5;
      const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
      const double z = 0.3 * rng.uniform01();
      for (double alpha : {1.0, 2.0}) {
        const double lhs = shifted_renyi_discrete(
            alpha, mu.pushforward_affine(sign * c, offset),
            nu.pushforward_affine(sign * c, offset), c * z);
        const double rhs = shifted_renyi_discrete(alpha, mu, nu, z);
        worst = std::max(worst, lhs - rhs);
      }
    }
    s.check("divergences.contraction_reduction", worst <= 1e-8,
            fmt("max excess %.3g", worst));
  }
  // Shift-reduction through a discretized Gaussian convolution. mu is a
  // point mass and nu straddles it, so the smoothed shifted divergence on
  // the left is genuinely positive and the supports stay at 12 points.
  {
    const double h = 1e-2;
    const double sigma = 1.5 * h;
    Vec xi_s, xi_w;
    for (int i = -4; i <= 4; ++i) {
      xi_s.push_back(h * i);
      xi_w.push_back(std::exp(-0.5 * (h * i) * (h * i) / (sigma * sigma)));
    }
    const DiscreteDist xi = DiscreteDist::normalized(xi_s, xi_w);
    const DiscreteDist mu = DiscreteDist::dirac(0.0);
    const DiscreteDist nu({0.0, 3.0 * h}, {0.5, 0.5});
    const double z = h, a = 2.0 * h;
    double worst = 0.0;
    std::string sides;
    for (double alpha : {1.0, 2.0}) {
      const double lhs = shifted_renyi_discrete(alpha, convolve(mu, xi), convolve(nu, xi), z);
      const double rhs = shifted_renyi_discrete(alpha, mu, nu, z + a) +
                         alpha * a * a / (2.0 * sigma * sigma);
      worst = std::max(worst, lhs - rhs);
      sides += fmt("alpha %.0f: lhs %.6g rhs %.6g; ", alpha, lhs, rhs);
    }
    s.check("divergences.shift_reduction", worst <= 5e-3, sides);
  }
  // Sum of independent pairs against the conditional decomposition.
  {
    double worst = 0.0;
    for (int t = 0; t < 60; ++t) {
      // joint law of (X, Y) on {0,1,2,3}^2, independent reference (X', Y')
      double joint[4][4];
      double total = 0.0;
      for (auto& row : joint)
        for (double& v : row) {
          v = 0.05 + rng.uniform01();
          total += v;
        }
      for (auto& row : joint)
        for (double& v : row) v /= total;
      const DiscreteDist xprime = random_discrete(rng, 4, 3.0);
      const DiscreteDist yprime = random_discrete(rng, 4, 3.0);
      const Vec pts = {0.0, 1.0, 2.0, 3.0};

      Vec xw(4, 0.0);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) xw[i] += joint[i][j];
      const DiscreteDist xdist(pts, xw);

      // law of X + Y on {0..6}
      Vec sw(7, 0.0);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) sw[i + j] += joint[i][j];
      Vec spts(7);
      for (int k = 0; k < 7; ++k) spts[k] = k;
      const DiscreteDist sum_xy = DiscreteDist::normalized(spts, sw);
      const DiscreteDist sum_ref =
          convolve(DiscreteDist(pts, xprime.weights()), DiscreteDist(pts, yprime.weights()));

      for (double alpha : {1.0, 1.5, 2.0}) {
        const double lhs = renyi_discrete(alpha, sum_xy, sum_ref);
        const double dx = renyi_discrete(alpha, xdist, DiscreteDist(pts, xprime.weights()));
        double worst_cond = 0.0;
        for (int i = 0; i < 4; ++i) {
          Vec cw(4);
          for (int j = 0; j < 4; ++j) cw[j] = joint[i][j] / xw[i];
          worst_cond = std::max(
              worst_cond, renyi_discrete(alpha, DiscreteDist(pts, cw),
                                         DiscreteDist(pts, yprime.weights())));
        }
        worst = std::max(worst, lhs - (dx + worst_cond));
      }
    }
    s.check("divergences.independent_sum_decomposition", worst <= 1e-10,
            fmt("max excess %.3g", worst));
  }
}

void check_pabi(Suite& s) {
  // Continuous mode never exceeds piecewise mode.
  {
    double worst = 0.0;
    for (double c : {0.0, 0.2, 0.5, 0.9, 0.99, 0.999999, 1.0})
      for (std::uint64_t T : {1ull, 2ull, 5ull, 20ull, 100ull})
        for (double alpha : {1.0, 2.0, 4.0}) {
          const BoundInputs in{alpha, 1.0, 0.02, c, T};
          worst = std::max(worst, pabi_divergence_bound(in, PabiMode::Continuous) -
                                      pabi_divergence_bound(in, PabiMode::Piecewise));
        }
    s.check("pabi.continuous_below_piecewise", worst <= 1e-12,
            fmt("max excess %.3g", worst));
  }
  // Allocation feasibility and objective identity with the continuous bound.
  {
    RngStream rng(s.seed, 500);
    double worst_feas = 0.0, worst_obj = 0.0;
    for (int t = 0; t < 200; ++t) {
      const double c = 0.3 + 0.7 * rng.uniform01();
      const double D = 0.5 + 2.0 * rng.uniform01();
      const std::uint64_t T = 1 + rng.uniform_index(30);
      const auto alloc = optimal_shift_allocation(c, D, T);
      double lhs = 0.0;
      for (std::uint64_t k = 1; k <= T; ++k)
        lhs += std::pow(c, -static_cast<double>(k)) * alloc.shifts[k - 1];
      worst_feas = std::max(worst_feas, std::abs(lhs - D));
      const double alpha = 1.0, sigma2 = 2.0 * 0.05;
      const BoundInputs in{alpha, D, sigma2, c, T};
      const double bound = pabi_divergence_bound(in, PabiMode::Continuous);
      worst_obj = std::max(
          worst_obj, std::abs(alpha / (2.0 * sigma2) * alloc.objective - bound) /
                         std::max(1.0, bound));
    }
    s.check("pabi.allocation_feasible", worst_feas <= 1e-10, fmt("max |sum - D| %.3g", worst_feas));
    s.check("pabi.allocation_objective_identity", worst_obj <= 1e-10,
            fmt("max rel gap %.3g", worst_obj));
  }
  // Upper bounds dominate lower bounds on grids.
  {
    bool ok = true;
    double worst_ratio = 0.0;
    for (double D : {0.5, 1.0, 3.0})
      for (double eta : {1e-4, 1e-3, 1e-2}) {
        const auto up = mixing_time_upper_convex(D, eta, 0.25, Metric::TV);
        const auto lo = mixing_time_lower_convex(D, eta);
        if (up < lo) ok = false;
        worst_ratio = std::max(worst_ratio,
                               static_cast<double>(up) / static_cast<double>(lo));
      }
    s.check("pabi.convex_upper_dominates_lower", ok && worst_ratio <= 200.0,
            fmt("max ratio %.4g", worst_ratio));
    bool sc_ok = true;
    for (double alpha : {1.0, 2.0})
      for (double eps : {1e-2, 1e-4})
        for (double m : {0.5, 1.0}) {
          const double M = m, eta = 0.1, D = 1.0;
          const double c = contraction_coefficient(m, M, eta);
          const auto up = mixing_time_upper_strongly_convex(D, eta, m, M, eps,
                                                            Metric::Renyi, alpha);
          const auto lo = mixing_time_lower_strongly_convex(alpha, c, eps);
          if (lo > up.iterations) sc_ok = false;
        }
    s.check("pabi.sc_lower_below_upper", sc_ok);
  }
}

void check_oracles(Suite& s) {
  // Stationary variance is the fixed point of v -> c^2 v + 2 eta.
  {
    double worst = 0.0;
    for (double lam : {0.5, 1.0, 1.9})
      for (double eta : {0.05, 0.1, 0.5}) {
        const QuadraticChainLaw q{lam, eta, QuadraticChainLaw::kStationary};
        if (q.contraction() >= 1.0) continue;
        const double v = exact_iterate_law(q).variance;
        const double c = q.contraction();
        worst = std::max(worst, std::abs(c * c * v + 2.0 * eta - v));
      }
    s.check("oracles.stationary_fixed_point", worst <= 1e-13, fmt("max drift %.3g", worst));
  }
  // Gap equals the Gaussian Renyi divergence of the exact laws.
  {
    double worst = 0.0;
    for (double alpha : {1.0, 2.0, 4.0})
      for (double c : {0.5, 0.9, 0.99})
        for (std::uint64_t T : {1ull, 5ull, 20ull}) {
          const double x = std::pow(c, 2.0 * static_cast<double>(T));
          const double direct =
              renyi_gaussian(alpha, {0.0, 1.0 - x}, {0.0, 1.0});
          worst = std::max(worst, std::abs(direct - exact_renyi_gap(alpha, c, T)));
        }
    s.check("oracles.gap_matches_gaussian_renyi", worst <= 1e-12,
            fmt("max gap %.3g", worst));
  }
  // Asymptotic ratio to the alpha c^{4T}/4 value. Provably inside [1,2] only
  // for alpha <= 2; the alpha = 4 slice is reported, not asserted, since the
  // exact value sits a few percent below the nominal lower bound there.
  {
    double lo12 = 10.0, hi12 = 0.0, lo4 = 10.0, hi4 = 0.0;
    for (double alpha : {1.0, 2.0, 4.0})
      for (double c : {0.5, 0.9, 0.99})
        for (std::uint64_t T = 1; T <= 50; ++T) {
          const double x = std::pow(c, 2.0 * static_cast<double>(T));
          if (x >= 0.1) continue;
          const double ratio =
              exact_renyi_gap(alpha, c, T) / sc_lower_bound_value(alpha, c, T);
          if (alpha <= 2.0) {
            lo12 = std::min(lo12, ratio);
            hi12 = std::max(hi12, ratio);
          } else {
            lo4 = std::min(lo4, ratio);
            hi4 = std::max(hi4, ratio);
          }
        }
    s.check("oracles.asymptotic_ratio_alpha_le_2", lo12 >= 1.0 && hi12 <= 2.0,
            fmt("range [%.4f, %.4f]", lo12, hi12));
    s.check("oracles.asymptotic_ratio_alpha_4_reported", true,
            fmt("range [%.4f, %.4f]; approaches 1 from below", lo4, hi4),
            /*asserted=*/false);
  }
  // Three-way sandwich on the quadratic chain, reported only: the upper side
  // needs a mass-capture diameter for the unbounded stationary law, supplied
  // here as the 99.9% two-sided quantile width.
  {
    std::string detail;
    int exact_below_upper = 0, lower_below_exact = 0, points = 0;
    for (double alpha : {1.0, 2.0, 4.0})
      for (double c : {0.5, 0.9, 0.99})
        for (std::uint64_t T = 1; T <= 50; ++T) {
          ++points;
          const double eta = 0.1;
          const double lam = (1.0 - c) / eta;  // c = 1 - eta*lambda
          const double stat_sd =
              std::sqrt(exact_iterate_law({lam, eta, QuadraticChainLaw::kStationary})
                            .variance);
          const double d_proxy = 2.0 * 3.29 * stat_sd;
          const BoundInputs in{alpha, d_proxy, 2.0 * eta, c, T};
          const double upper = pabi_divergence_bound(in, PabiMode::Continuous);
          const double exact = exact_renyi_gap(alpha, c, T);
          if (exact <= upper + 1e-12) ++exact_below_upper;
          if (sc_lower_bound_value(alpha, c, T) <= exact + 1e-12) ++lower_below_exact;
        }
    detail = fmt("exact<=proxy-upper at %.0f/%.0f points; ",
                 static_cast<double>(exact_below_upper), static_cast<double>(points)) +
             fmt("nominal-lower<=exact at %.0f/%.0f points (alpha>2 slices sit below)",
                 static_cast<double>(lower_below_exact), static_cast<double>(points));
    s.check("oracles.sandwich_reported", true, detail, /*asserted=*/false);
  }
  // Random-walk concentration over an (a, T) grid with a^2/(2T) >= 1, the
  // regime the reachability construction uses (its exponent is 25/16).
  {
    bool ok = true;
    std::string detail;
    const std::pair<double, std::uint64_t> grid[] = {{2.0, 2}, {3.0, 2}, {3.0, 4}, {4.0, 8}};
    for (const auto& [a, T] : grid) {
      const auto r = random_walk_sup_tail(a, T, 100000, s.seed + 17);
      if (!r.within_bound) ok = false;
      detail += fmt("a=%.1f T=%.0f: ", a, static_cast<double>(T)) +
                fmt("mc %.4f bound %.4f; ", r.estimate, r.bound);
    }
    s.check("oracles.sup_walk_concentration", ok, detail);
  }
}

}  // namespace

std::vector<CheckResult> run_verify_suite(std::uint64_t master_seed) {
  Suite s;
  s.seed = master_seed;
  check_geometry(s);
  check_potentials(s);
  check_chain(s);
  check_divergences(s);
  check_pabi(s);
  check_oracles(s);
  return s.results;
}

}  // namespace mixlab
