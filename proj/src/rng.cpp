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

#include "rng.hpp"

#include <algorithm>
#include <numeric>

namespace mixlab {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t chain_index) {
  return mix64(master_seed ^ mix64(chain_index));
}

std::vector<std::size_t> sample_batch(std::size_t n, std::size_t b, RngStream& stream) {
  std::vector<std::size_t> scratch, out;
  sample_batch_into(n, b, stream, scratch, out);
  return out;
}

void sample_batch_into(std::size_t n, std::size_t b, RngStream& stream,
                       std::vector<std::size_t>& scratch, std::vector<std::size_t>& out) {
  require(b >= 1, ErrorCode::InvalidArgument, "sample_batch: batch size must be >= 1");
  require(b <= n, ErrorCode::InvalidArgument, "sample_batch: batch size exceeds n");
  scratch.resize(n);
  std::iota(scratch.begin(), scratch.end(), std::size_t{0});
  for (std::size_t i = 0; i < b; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(stream.uniform_index(n - i));
    std::swap(scratch[i], scratch[j]);
  }
  out.assign(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(b));
  std::sort(out.begin(), out.end());
}

NoiseAndBatchTape NoiseAndBatchTape::generate(std::size_t steps, std::size_t dim, double eta,
                                              std::size_t n_components, std::size_t batch_size,
                                              std::uint64_t master_seed,
                                              std::uint64_t chain_index) {
  require(eta > 0.0, ErrorCode::InvalidArgument, "tape: eta must be > 0");
  RngStream stream(master_seed, chain_index);
  const double stddev = std::sqrt(2.0 * eta);
  NoiseAndBatchTape tape;
  tape.noise.resize(steps);
  tape.batches.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    Vec z(dim);
    for (std::size_t i = 0; i < dim; ++i) z[i] = stream.normal(stddev);
    tape.noise[t] = std::move(z);
    tape.batches[t] = sample_batch(n_components, batch_size, stream);
  }
  return tape;
}

}  // namespace mixlab
