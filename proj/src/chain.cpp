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

#include "chain.hpp"

#include <cstdio>
#include <ostream>

#include "pabi.hpp"

namespace mixlab {

namespace {

std::size_t effective_dim(const ChainConfig& cfg) { return cfg.body.dim(); }

// x - eta * meanGrad + z, shared by the plain and the lifted iteration so the
// floating-point op order is identical.
Vec drift_plus_noise(const ChainConfig& cfg, std::span<const double> x,
                     std::span<const double> noise, std::span<const std::size_t> batch) {
  Vec y = gradient_step(cfg.potential, batch, cfg.eta, x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += noise[i];
  return y;
}

}  // namespace

void ChainConfig::validate() const {
  const std::size_t n = potential.component_count();
  require(batch_size >= 1 && batch_size <= n, ErrorCode::InvalidArgument,
          "chain config: batch size must lie in [1, n]");
  require(eta > 0.0, ErrorCode::InvalidArgument, "chain config: eta must be > 0");
  const double M = potential.smoothness();
  if (M > 0.0)
    require(eta <= 2.0 / M, ErrorCode::StepsizeTooLarge,
            "chain config: eta exceeds 2/M");
  if (potential.dim() != 0)
    require(potential.dim() == body.dim(), ErrorCode::DimensionMismatch,
            "chain config: potential and body dimension disagree");
  if (const Vec* p = std::get_if<Vec>(&init)) {
    require(p->size() == body.dim(), ErrorCode::DimensionMismatch,
            "chain config: init dimension mismatch");
    require(body.contains(*p, 1e-12), ErrorCode::InvalidArgument,
            "chain config: init must lie in the body");
  } else {
    require(body.diameter().has_value(), ErrorCode::UnboundedBody,
            "chain config: stationary proxy needs a bounded body");
  }
}

std::size_t ChainConfig::burn_in_steps() const {
  if (std::holds_alternative<Vec>(init)) return 0;
  const double D = *body.diameter();
  const double m = potential.strong_convexity();
  const double M = potential.smoothness();
  const std::uint64_t upper =
      m > 0.0 ? mixing_time_upper_strongly_convex(D, eta, m, M, 0.25, Metric::TV).iterations
              : mixing_time_upper_convex(D, eta, 0.25, Metric::TV);
  return static_cast<std::size_t>(4 * upper);
}

Vec ChainConfig::start_point() const {
  if (const Vec* p = std::get_if<Vec>(&init)) return *p;
  return body.center();
}

Vec chain_step(const ChainConfig& cfg, std::span<const double> x,
               std::span<const double> noise, std::span<const std::size_t> batch) {
  return cfg.body.project(drift_plus_noise(cfg, x, noise, batch));
}

Trajectory run_chain(const ChainConfig& cfg, std::uint64_t chain_index) {
  cfg.validate();
  const std::size_t burn = cfg.burn_in_steps();
  const std::size_t steps = burn + cfg.horizon;
  const auto tape = NoiseAndBatchTape::generate(steps, effective_dim(cfg), cfg.eta,
                                                cfg.potential.component_count(),
                                                cfg.batch_size, cfg.master_seed, chain_index);
  Vec x = cfg.start_point();
  for (std::size_t t = 0; t < burn; ++t)
    x = chain_step(cfg, x, tape.noise[t], tape.batches[t]);

  Trajectory traj;
  traj.states.reserve(cfg.horizon + 1);
  traj.states.push_back(x);
  for (std::size_t t = burn; t < steps; ++t) {
    x = chain_step(cfg, x, tape.noise[t], tape.batches[t]);
    traj.states.push_back(x);
  }
  return traj;
}

std::pair<Trajectory, Trajectory> run_coupled_pair(const ChainConfig& cfg, const Vec& init_a,
                                                   const Vec& init_b,
                                                   std::uint64_t chain_index) {
  cfg.validate();
  require(cfg.body.contains(init_a, 1e-12) && cfg.body.contains(init_b, 1e-12),
          ErrorCode::InvalidArgument, "coupled pair: both inits must lie in the body");
  const auto tape = NoiseAndBatchTape::generate(cfg.horizon, effective_dim(cfg), cfg.eta,
                                                cfg.potential.component_count(),
                                                cfg.batch_size, cfg.master_seed, chain_index);
  Trajectory a, b;
  a.states.push_back(init_a);
  b.states.push_back(init_b);
  Vec xa = init_a, xb = init_b;
  for (std::size_t t = 0; t < cfg.horizon; ++t) {
    xa = chain_step(cfg, xa, tape.noise[t], tape.batches[t]);
    xb = chain_step(cfg, xb, tape.noise[t], tape.batches[t]);
    a.states.push_back(xa);
    b.states.push_back(xb);
  }
  return {std::move(a), std::move(b)};
}

Trajectory run_auxiliary_cni(const ChainConfig& cfg, const Vec& init,
                             std::uint64_t chain_index) {
  cfg.validate();
  require(cfg.body.contains(init, 1e-12), ErrorCode::InvalidArgument,
          "auxiliary run: init must lie in the body");
  const auto tape = NoiseAndBatchTape::generate(cfg.horizon, effective_dim(cfg), cfg.eta,
                                                cfg.potential.component_count(),
                                                cfg.batch_size, cfg.master_seed, chain_index);
  Trajectory traj;
  Vec y = init;
  traj.auxiliary.push_back(y);
  traj.states.push_back(cfg.body.project(y));
  for (std::size_t t = 0; t < cfg.horizon; ++t) {
    // Y_{t+1} = phi_{t+1}(Y_t) + Z_t, with the projection folded into phi so
    // the drift acts on X_t = project(Y_t).
    const Vec x = cfg.body.project(y);
    y = drift_plus_noise(cfg, x, tape.noise[t], tape.batches[t]);
    traj.auxiliary.push_back(y);
    traj.states.push_back(cfg.body.project(y));
  }
  return traj;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, std::uint64_t chain_id,
                          bool header) {
  const std::size_t d = traj.dim();
  if (header) {
    os << "chain_id,t";
    for (std::size_t i = 0; i < d; ++i) os << ",x_" << i;
    os << "\n";
  }
  char buf[32];
  for (std::size_t t = 0; t < traj.states.size(); ++t) {
    os << chain_id << ',' << t;
    for (double v : traj.states[t]) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << ',' << buf;
    }
    os << "\n";
  }
}

}  // namespace mixlab
