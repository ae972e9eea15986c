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

#ifndef QOC_BUNDLE_HPP
#define QOC_BUNDLE_HPP

#include "qoc/benchmark.hpp"

#include <json.hpp>

#include <filesystem>

namespace qoc {

// A bundle is a directory:
//   manifest.json         algorithm, sample (as used), blocks, fidelity, ...
//   target.txt            target amplitudes (index real imag)
//   block_NN_<label>.pulse   pulse blocks in time order
//   block_NN_<label>.rot     rotation blocks: "site k" then two rows of
//                            "re im re im"

struct Bundle {
  std::string algorithm;
  Sample sample;
  StateVector target;
  Program program;
  double fidelity = 0.0;
  double tolerance = 3e-3;
  bool converged = false;
  std::uint64_t seed = 0;
  std::string config_hash;
  nlohmann::json config;   // effective run config
  nlohmann::json extra;    // partition tree, per-Step reports, cost traces
};

Bundle make_bundle(const RunOutcome& outcome, const Sample& sample, const StateVector& target,
                   const RunConfig& config, std::uint64_t seed);

void write_bundle(const std::filesystem::path& dir, const Bundle& bundle);
/// std::invalid_argument on missing or malformed content.
Bundle read_bundle(const std::filesystem::path& dir);

/// Re-simulates the bundled program against the bundled target.
double verify_bundle(const Bundle& bundle);

}  // namespace qoc

#endif  // QOC_BUNDLE_HPP
