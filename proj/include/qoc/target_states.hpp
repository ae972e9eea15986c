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

#ifndef QOC_TARGET_STATES_HPP
#define QOC_TARGET_STATES_HPP

#include "qoc/quantum_core.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace qoc {

/// (|0...0> + |1...1>)/sqrt(2) on n qubits.
StateVector ghz(int n);

/// Equal superposition of the n single-excitation basis states.
StateVector w_state(int n);

/// ((cos(t/2), -e^{il} sin(t/2)), (-e^{ip} sin(t/2), -e^{i(l+p)} cos(t/2))).
Matrix u_gate(double theta, double phi, double lambda);

/// CNOT on a qubit register (control, target), applied in place.
void apply_cnot(Vector& amplitudes, int num_qubits, int control, int target);

struct GateParameters {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2pi]
  double lambda = 0.0; // [0, 2pi]
};

/// Layered circuit: every layer applies u_gate on each qubit; every layer
/// after the first is preceded by a CNOT sweep along the chain
/// (0->1, 1->2, ...). Layer 1 therefore yields a product state.
struct PqcSpec {
  int qubits = 0;
  int layers = 0;
  std::vector<std::vector<GateParameters>> parameters;  // [layer][qubit]
  bool entanglers = true;

  /// Parameters drawn uniformly from their ranges with a seeded generator.
  static PqcSpec random(int qubits, int layers, std::uint64_t seed);
  void validate() const;
};

StateVector pqc_state(const PqcSpec& spec);

/// Schmidt coefficients and entropy across keep | rest.
SchmidtProfile entanglement_profile(const StateVector& state, const SiteSet& keep, LogBase base = LogBase::Two);

/// One line per amplitude: index, real part, imaginary part (round-trip precision).
void write_state(std::ostream& out, const StateVector& state);
/// Reads the layout of write_state; all sites are qubits unless `site_dims`
/// is given. Missing indices are zero.
StateVector read_state(std::istream& in, std::vector<int> site_dims = {});
void write_state_file(const std::filesystem::path& path, const StateVector& state);
StateVector read_state_file(const std::filesystem::path& path, std::vector<int> site_dims = {});

}  // namespace qoc

#endif  // QOC_TARGET_STATES_HPP
