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

#include "transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mixlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTinyMass = 1e-300;

// Flattened coupling over the allowed entries only.
struct Coupling {
  const TransportProblem* prob;
  std::vector<Vec> rows;  // rows[i][k] = mass sent from i to allowed[i][k]

  Vec col_marginal() const {
    Vec s(prob->col_ref.size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t k = 0; k < rows[i].size(); ++k)
        s[prob->allowed[i][k]] += rows[i][k];
    return s;
  }
};

// Objective on the column marginal. alpha = 1: KL(s||nu). alpha = 2: the
// chi-square-like mass sum_j s_j^2/nu_j, whose log is D_2; minimizing the sum
// minimizes D_2 since log is increasing.
double objective(double alpha, const Vec& s, const Vec& ref) {
  double f = 0.0;
  if (alpha == 1.0) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s[j] <= 0.0) continue;
      f += s[j] * std::log(s[j] / ref[j]);
    }
  } else {
    for (std::size_t j = 0; j < s.size(); ++j) f += s[j] * s[j] / ref[j];
  }
  return f;
}

Vec col_gradient(double alpha, const Vec& s, const Vec& ref) {
  Vec g(s.size());
  if (alpha == 1.0) {
    for (std::size_t j = 0; j < s.size(); ++j)
      g[j] = std::log(std::max(s[j], kTinyMass) / ref[j]) + 1.0;
  } else {
    for (std::size_t j = 0; j < s.size(); ++j) g[j] = 2.0 * s[j] / ref[j];
  }
  return g;
}

// Euclidean projection of v onto {w >= 0 : sum w = mass}.
void project_scaled_simplex(Vec& v, double mass) {
  const std::size_t n = v.size();
  if (mass <= 0.0) {
    std::fill(v.begin(), v.end(), 0.0);
    return;
  }
  if (n == 1) {
    v[0] = mass;
    return;
  }
  Vec u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, tau = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    cum += u[k];
    const double t = (cum - mass) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) tau = t;
  }
  for (double& x : v) x = std::max(x - tau, 0.0);
  // restore the exact row mass lost to clipping
  double total = 0.0;
  for (double x : v) total += x;
  if (total > 0.0 && total != mass) {
    const double scale = mass / total;
    for (double& x : v) x *= scale;
  }
}

// Frank-Wolfe linear minimizer: all of each row's mass onto its cheapest
// column. Returns the duality gap <grad, P - S>.
double fw_vertex(const Coupling& P, const Vec& grad_cols, std::vector<Vec>* vertex) {
  const auto& prob = *P.prob;
  double gap = 0.0;
  vertex->assign(P.rows.size(), {});
  for (std::size_t i = 0; i < P.rows.size(); ++i) {
    const auto& cols = prob.allowed[i];
    (*vertex)[i].assign(cols.size(), 0.0);
    if (cols.empty()) continue;
    std::size_t best = 0;
    for (std::size_t k = 1; k < cols.size(); ++k)
      if (grad_cols[cols[k]] < grad_cols[cols[best]]) best = k;
    (*vertex)[i][best] = prob.row_mass[i];
    for (std::size_t k = 0; k < cols.size(); ++k)
      gap += grad_cols[cols[k]] * (P.rows[i][k] - (*vertex)[i][k]);
  }
  return gap;
}

}  // namespace

TransportProblem TransportProblem::build(const DiscreteDist& mu, const DiscreteDist& nu,
                                         double shift) {
  TransportProblem prob;
  prob.row_mass = mu.weights();
  prob.col_ref = nu.weights();
  prob.allowed.resize(mu.size());
  const double slack = 1e-12 * (1.0 + std::abs(shift));
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = 0; j < nu.size(); ++j) {
      // columns with no reference mass are divergence-infinite destinations
      if (nu.weights()[j] <= 0.0) continue;
      if (std::abs(mu.support()[i] - nu.support()[j]) <= shift + slack)
        prob.allowed[i].push_back(j);
    }
    if (prob.allowed[i].empty() && prob.row_mass[i] > 0.0) prob.feasible = false;
  }
  return prob;
}

double solve_min_divergence(const TransportProblem& prob, double alpha) {
  if (!prob.feasible) return kInf;

  Coupling P;
  P.prob = &prob;
  P.rows.resize(prob.row_mass.size());
  for (std::size_t i = 0; i < P.rows.size(); ++i) {
    const std::size_t k = prob.allowed[i].size();
    P.rows[i].assign(k, k == 0 ? 0.0 : prob.row_mass[i] / static_cast<double>(k));
  }

  Vec s = P.col_marginal();
  double f = objective(alpha, s, prob.col_ref);
  double step = 1.0;
  int flat_iters = 0;
  std::vector<Vec> scratch, vertex;

  const int max_iters = 200000;
  for (int iter = 0; iter < max_iters; ++iter) {
    const Vec grad = col_gradient(alpha, s, prob.col_ref);
    const double gap = fw_vertex(P, grad, &vertex);
    if (gap <= 1e-10 * std::max(1.0, std::abs(f))) break;

    // projected gradient trial with Armijo backtracking
    bool moved = false;
    double trial_step = step;
    for (int bt = 0; bt < 60; ++bt) {
      scratch = P.rows;
      for (std::size_t i = 0; i < scratch.size(); ++i) {
        if (scratch[i].empty()) continue;
        for (std::size_t k = 0; k < scratch[i].size(); ++k)
          scratch[i][k] -= trial_step * grad[prob.allowed[i][k]];
        project_scaled_simplex(scratch[i], prob.row_mass[i]);
      }
      Coupling cand{&prob, scratch};
      const Vec s_cand = cand.col_marginal();
      const double f_cand = objective(alpha, s_cand, prob.col_ref);
      double move2 = 0.0;
      for (std::size_t i = 0; i < scratch.size(); ++i)
        for (std::size_t k = 0; k < scratch[i].size(); ++k) {
          const double d = scratch[i][k] - P.rows[i][k];
          move2 += d * d;
        }
      if (f_cand <= f - 1e-4 * move2 / std::max(trial_step, 1e-300)) {
        const double f_prev = f;
        P.rows.swap(scratch);
        s = s_cand;
        f = f_cand;
        step = trial_step * 1.25;
        moved = true;
        flat_iters = std::abs(f_prev - f) <= 1e-10 * std::max(1.0, std::abs(f))
                         ? flat_iters + 1
                         : 0;
        break;
      }
      trial_step *= 0.5;
    }

    if (!moved) {
      // Frank-Wolfe fallback with exact line search along P + g(V - P)
      double lo = 0.0, hi = 1.0;
      auto f_at = [&](double g) {
        Vec sg(s.size());
        Coupling mix{&prob, P.rows};
        double fg;
        for (std::size_t i = 0; i < P.rows.size(); ++i)
          for (std::size_t k = 0; k < P.rows[i].size(); ++k)
            mix.rows[i][k] = P.rows[i][k] + g * (vertex[i][k] - P.rows[i][k]);
        sg = mix.col_marginal();
        fg = objective(alpha, sg, prob.col_ref);
        return fg;
      };
      for (int it = 0; it < 80; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (f_at(m1) <= f_at(m2)) hi = m2; else lo = m1;
      }
      const double g = 0.5 * (lo + hi);
      if (g <= 0.0) break;
      const double f_prev = f;
      for (std::size_t i = 0; i < P.rows.size(); ++i)
        for (std::size_t k = 0; k < P.rows[i].size(); ++k)
          P.rows[i][k] += g * (vertex[i][k] - P.rows[i][k]);
      s = P.col_marginal();
      f = objective(alpha, s, prob.col_ref);
      flat_iters = std::abs(f_prev - f) <= 1e-10 * std::max(1.0, std::abs(f))
                       ? flat_iters + 1
                       : 0;
    }
    if (flat_iters >= 8) break;
  }

  if (alpha == 1.0) return std::max(f, 0.0);
  return std::max(std::log(f), 0.0);  // D_2 = log sum s^2/nu
}

double shifted_renyi_discrete(double alpha, const DiscreteDist& mu, const DiscreteDist& nu,
                              double shift) {
  require(alpha == 1.0 || alpha == 2.0, ErrorCode::InvalidArgument,
          "shifted divergence oracle supports alpha in {1, 2}");
  require(shift >= 0.0, ErrorCode::InvalidArgument, "shift must be >= 0");
  require(mu.size() <= 16 && nu.size() <= 16, ErrorCode::OracleScaleExceeded,
          "shifted divergence oracle supports at most 16 support points");
  return solve_min_divergence(TransportProblem::build(mu, nu, shift), alpha);
}

}  // namespace mixlab
