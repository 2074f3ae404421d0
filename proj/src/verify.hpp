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
#include <string>
#include <vector>

namespace mixlab {

struct CheckResult {
  std::string name;
  bool pass = false;
  bool asserted = true;  // reported-only checks never fail the suite
  std::string detail;
};

/// Property suite over every module: contractivity and projection laws,
/// divergence order/processing/shift inequalities, bound-calculator
/// consistency, and the Monte Carlo smoke tests. Deterministic for a fixed
/// seed.
std::vector<CheckResult> run_verify_suite(std::uint64_t master_seed);

}  // namespace mixlab
