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

#ifndef QOC_SAMPLE_REGISTRY_HPP
#define QOC_SAMPLE_REGISTRY_HPP

#include "qoc/hamiltonian.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace qoc {

// Sample description documents are JSON:
//
//   {"platform": "nmr", "name": "...",
//    "spins": [{"label": "C", "shift_hz": 1.0e8, "t1_s": 2.9, "t2_s": 1.1}, ...],
//    "couplings": [{"a": "C", "b": "H", "j_hz": 160.7}, ...]}
//
//   {"platform": "sc", "name": "...", "levels": 2,
//    "qubits": [{"label": "Q1", "omega_ghz": 4.978, "eta_mhz": -248,
//                "t1_us": 40.1, "t2_us": 7.9}, ...],
//    "couplings_mhz": [20.0, ...]}
//
// Unlisted NMR couplings are zero.

Sample sample_from_json(const nlohmann::json& doc);
nlohmann::json sample_to_json(const Sample& sample);
Sample load_sample_file(const std::filesystem::path& path);

/// Catalogue of the embedded samples; read-only after first use.
class SampleRegistry {
 public:
  static const SampleRegistry& instance();

  const Sample& find(const std::string& name) const;  // throws NotFoundError
  const NmrSample& nmr(const std::string& name) const;
  const ScSample& sc(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  SampleRegistry();
  std::vector<Sample> samples_;
};

inline const SampleRegistry& sample_registry() { return SampleRegistry::instance(); }

/// Raw embedded documents (one JSON object per sample).
const std::vector<const char*>& embedded_sample_documents();

}  // namespace qoc

#endif  // QOC_SAMPLE_REGISTRY_HPP
