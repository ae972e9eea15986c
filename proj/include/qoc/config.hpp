/* Copyright 2026 The qoc Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef QOC_CONFIG_HPP
#define QOC_CONFIG_HPP

#include "qoc/igrape.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace qoc {

/// Segment budgets for one system size.
struct SizeBudget {
  int grape_segments = 0;
  std::vector<int> igrape_budgets;  // one per Step
};

struct PlatformSettings {
  double dt = 0.0;  // seconds (NMR) or ns (superconducting)
  std::map<int, SizeBudget> sizes;
};

/// Everything a run or benchmark needs besides the sample and target.
/// JSON documents overlay the embedded defaults key by key.
struct RunConfig {
  double tolerance = 3e-3;
  int max_iterations = 1000;
  int memory = 10;
  std::string optimizer = "lbfgs";
  double learning_rate = 0.1;
  int max_retries = 5;
  int threads = 0;                         // 0: QOC_THREADS or hardware
  std::string frame = "zero-offsets";      // or "sample": shifts/frequencies as listed
  double initial_fraction = 0.1;
  double amplitude_bound = 0.0;            // <= 0: platform default
  std::string strategy = "balanced-bisection";
  std::vector<std::vector<ExplicitSplit>> explicit_splits;
  std::uint64_t seed = 0;

  PlatformSettings nmr;
  PlatformSettings sc;

  std::vector<int> sizes;                  // benchmark sweep
  int seeds = 20;
  std::vector<std::string> algorithms = {"grape", "igrape"};
  int run_threads = 1;                     // concurrent benchmark runs

  static RunConfig defaults();
  static RunConfig from_json(const nlohmann::json& j);  // overlays defaults
  static RunConfig load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  void validate() const;
  int thread_count() const;
  OptimizerConfig optimizer_config() const;
  const PlatformSettings& platform(Platform p) const;
  /// Budget entry for a size; std::invalid_argument when missing.
  const SizeBudget& budget(Platform p, int size) const;
  PartitionPlan partition_plan(Platform p, int size) const;
  IGrapeConfig igrape_config(std::uint64_t run_seed) const;
};

/// FNV-1a 64-bit hash of the compact JSON text, as 16 hex digits.
std::string config_hash(const nlohmann::json& j);

/// First `qubits` sites of the sample (all when <= 0), moved into the
/// configured frame.
Sample prepare_sample(const Sample& sample, int qubits, const std::string& frame);

}  // namespace qoc

#endif  // QOC_CONFIG_HPP
