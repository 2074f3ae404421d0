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

#include <limits>
#include <optional>

#include "chain.hpp"
#include "pabi.hpp"

namespace mixlab {

enum class ExperimentKind { Bound, Simulate, Lower, Verify };

struct ConfigIssue {
  std::string field;
  std::string message;
};

/// Full description of one seeded run. Serializes to/from canonical JSON;
/// `parse(serialize(cfg))` reproduces the config exactly.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Verify;
  std::optional<ConvexBody> body;
  std::optional<FiniteSumPotential> potential;
  double eta = 0.0;
  std::size_t batch_size = 1;
  std::vector<std::uint64_t> t_grid;  // empty selects the default grid
  std::vector<double> alphas = {1.0, 2.0, 4.0};
  double eps = 0.25;
  std::uint64_t chains = 0;
  std::uint64_t trials = 100000;
  std::size_t bins = 64;
  std::string init = "corner";  // "corner" | "stationary_proxy" | "point"
  std::optional<Vec> init_point;
  std::optional<double> d_proxy;
  std::vector<Metric> metrics = {Metric::TV, Metric::KL, Metric::Renyi,
                                 Metric::ChiSq, Metric::Hellinger};
  std::uint64_t master_seed = 0;
  std::size_t trajectory_sample = 0;

  static ExperimentConfig from_json_text(const std::string& text);
  std::string to_json_text() const;

  /// Field-level validation against module preconditions; empty means valid.
  std::vector<ConfigIssue> validate() const;

  ChainConfig chain_config() const;  // requires body/potential/eta populated
};

struct ResultRow {
  std::string experiment;
  std::string params;  // compact json echo of the row's parameters
  std::string metric;
  double alpha = 1.0;
  double theoretical = std::numeric_limits<double>::quiet_NaN();
  double empirical = std::numeric_limits<double>::quiet_NaN();
  double std_error = std::numeric_limits<double>::quiet_NaN();
  int pass = -1;  // -1 when no tolerance is attached
};

struct ExperimentOutput {
  std::vector<ResultRow> rows;
  bool all_passed = true;
};

/// Runs the configured experiment, writes results.csv, a results.json sidecar
/// (config echo, seed, provenance hash) and the kind-specific CSV under
/// out_dir. Output bytes are a function of (config, seed) only - worker count
/// never changes them. Invalid configs write error_report.json and throw.
ExperimentOutput run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                                int workers);

/// States of `chain_count` chains at the requested times;
/// snapshots[k][i] = chain (index_offset + i) at time record_at[k].
/// record_at must be sorted; bitwise identical to run_chain per chain.
std::vector<std::vector<Vec>> run_ensemble(const ChainConfig& cfg, std::uint64_t chain_count,
                                           std::span<const std::uint64_t> record_at,
                                           std::uint64_t index_offset, int workers);

struct CurvePoint {
  std::uint64_t horizon;
  double tv;
  double std_error;
};

/// Empirical TV between the time-T ensemble (worst-case corner init unless
/// the config overrides) and a stationary-proxy ensemble, per grid point.
std::vector<CurvePoint> estimate_mixing_curve(const ExperimentConfig& cfg, int workers);

/// 12 log-spaced integers spanning [lo, hi], deduplicated.
std::vector<std::uint64_t> default_t_grid(std::uint64_t lo, std::uint64_t hi);

}  // namespace mixlab
