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

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mixlab.h"

namespace {

// The config names its own kind; refuse to run it under the wrong subcommand.
bool kind_matches(const std::string& path, const std::string& kind, std::string* found) {
  std::ifstream is(path, std::ios::binary);
  if (!is.good()) {
    *found = "<unreadable>";
    return false;
  }
  std::ostringstream ss;
  ss << is.rdbuf();
  try {
    const auto j = nlohmann::json::parse(ss.str());
    *found = j.value("kind", kind);
  } catch (const std::exception&) {
    *found = "<invalid json>";
  }
  return *found == kind;
}

int run_kind(const std::string& kind, const std::string& config, std::uint64_t seed,
             const std::string& out_dir, int workers) {
  std::string found;
  if (!kind_matches(config, kind, &found)) {
    std::fprintf(stderr, "mixlab %s: config %s declares kind \"%s\"\n", kind.c_str(),
                 config.c_str(), found.c_str());
    return 2;
  }
  int all_passed = 0;
  const mixlab_status st =
      mixlab_run_experiment_file(config.c_str(), seed, out_dir.c_str(), workers, &all_passed);
  if (st != MIXLAB_OK) {
    std::fprintf(stderr, "mixlab %s: %s: %s\n", kind.c_str(), mixlab_status_name(st),
                 mixlab_last_error());
    return 2;
  }
  std::printf("mixlab %s: results written to %s (%s)\n", kind.c_str(), out_dir.c_str(),
              all_passed ? "all asserted tolerances passed" : "TOLERANCE FAILURES");
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Langevin chain mixing workbench"};
  app.require_subcommand(1);

  struct Args {
    std::string config;
    std::uint64_t seed = 0;
    std::string out = "out";
    int workers = 0;  // 0 = hardware default
  };

  const std::array<std::string, 4> kinds = {"bound", "simulate", "lower", "verify"};
  std::array<Args, 4> args;
  std::array<CLI::App*, 4> subs{};
  const std::array<std::string, 4> blurbs = {
      "Mixing-time bound calculators (upper and lower), written as bounds.csv",
      "Seeded mixing-curve estimation against a stationary proxy ensemble",
      "Monte Carlo lower-bound constructions and their analytic ceilings",
      "Run the library's full invariant suite"};
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    auto* sub = app.add_subcommand(kinds[k], blurbs[k]);
    sub->add_option("--config", args[k].config, "JSON experiment config")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", args[k].seed, "master seed (64-bit)")->required();
    sub->add_option("--out", args[k].out, "output directory")->required();
    sub->add_option("--workers", args[k].workers, "worker threads (default: hardware)");
    subs[k] = sub;
  }

  CLI11_PARSE(app, argc, argv);

  for (std::size_t k = 0; k < kinds.size(); ++k)
    if (subs[k]->parsed())
      return run_kind(kinds[k], args[k].config, args[k].seed, args[k].out, args[k].workers);
  return 2;
}
