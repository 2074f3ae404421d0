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

#include <cstdint>
#include <random>

#include "common.hpp"

namespace mixlab {

/// splitmix64 finalizer; used to derive per-chain seeds by counter splitting
/// so results do not depend on scheduling or worker count.
std::uint64_t mix64(std::uint64_t z);

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t chain_index);

/// Per-chain random stream. All draws for one chain come from one stream,
/// fully determined by (master_seed, chain_index).
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t chain_index)
      : engine_(derive_stream_seed(master_seed, chain_index)) {}

  double normal(double stddev) {
    return stddev * normal_(engine_);
  }

  /// Uniform draw from {0, ..., bound-1}.
  std::uint64_t uniform_index(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  double uniform01() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Uniform b-subset of {0..n-1} without replacement (partial Fisher-Yates),
/// returned sorted.
std::vector<std::size_t> sample_batch(std::size_t n, std::size_t b, RngStream& stream);

/// Allocation-free variant for hot loops; consumes the stream identically.
void sample_batch_into(std::size_t n, std::size_t b, RngStream& stream,
                       std::vector<std::size_t>& scratch, std::vector<std::size_t>& out);

/// Pre-drawn randomness of one chain: per-step Gaussian vectors with
/// per-coordinate variance 2*eta and per-step batch index-sets. Coupled
/// chains replay the same tape.
struct NoiseAndBatchTape {
  std::vector<Vec> noise;
  std::vector<std::vector<std::size_t>> batches;

  std::size_t steps() const { return noise.size(); }

  static NoiseAndBatchTape generate(std::size_t steps, std::size_t dim, double eta,
                                    std::size_t n_components, std::size_t batch_size,
                                    std::uint64_t master_seed, std::uint64_t chain_index);
};

}  // namespace mixlab
