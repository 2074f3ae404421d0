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

#include <iosfwd>
#include <utility>
#include <variant>

#include "geometry.hpp"
#include "potentials.hpp"
#include "rng.hpp"

namespace mixlab {

/// Marker init: burn the chain in for 4x the applicable TV-1/4 upper bound
/// before recording, so that X_0 is (approximately) stationary.
struct StationaryProxyInit {};

using ChainInit = std::variant<Vec, StationaryProxyInit>;

struct ChainConfig {
  ConvexBody body;
  FiniteSumPotential potential;
  double eta = 0.0;
  std::size_t batch_size = 1;
  std::size_t horizon = 0;
  ChainInit init;
  std::uint64_t master_seed = 0;

  void validate() const;

  /// 0 for an explicit init; 4x the TV-1/4 mixing-time upper bound for the
  /// stationary proxy.
  std::size_t burn_in_steps() const;

  /// Explicit init, or the body center for the stationary proxy.
  Vec start_point() const;
};

struct Trajectory {
  std::vector<Vec> states;     // X_0..X_T, all inside the body
  std::vector<Vec> auxiliary;  // Y_0..Y_T when recorded; X_t = project(Y_t)

  std::size_t dim() const { return states.empty() ? 0 : states.front().size(); }
};

/// One update: project(body, x - eta * mean_{i in batch} grad f_i(x) + noise).
Vec chain_step(const ChainConfig& cfg, std::span<const double> x,
               std::span<const double> noise, std::span<const std::size_t> batch);

/// Runs T steps on the tape derived from (master_seed, chain_index).
/// Deterministic; independent runs with equal arguments are bitwise equal.
Trajectory run_chain(const ChainConfig& cfg, std::uint64_t chain_index = 0);

/// Two chains sharing one noise-and-batch tape. Marginally each is a
/// faithful chain for its own initialization.
std::pair<Trajectory, Trajectory> run_coupled_pair(const ChainConfig& cfg, const Vec& init_a,
                                                   const Vec& init_b,
                                                   std::uint64_t chain_index = 0);

/// Lifted iteration Y_{t+1} = phi(Y_t) + Z_t with
/// phi(y) = gradient_step(project(y)); records both Y_t and X_t = project(Y_t).
/// The X-marginal equals run_chain on the same tape bit for bit.
Trajectory run_auxiliary_cni(const ChainConfig& cfg, const Vec& init,
                             std::uint64_t chain_index = 0);

/// CSV rows `chain_id,t,x_0..x_{d-1}` (header included when `header` is set).
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, std::uint64_t chain_id,
                          bool header);

}  // namespace mixlab
