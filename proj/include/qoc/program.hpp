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

#ifndef QOC_PROGRAM_HPP
#define QOC_PROGRAM_HPP

#include "qoc/pulse.hpp"

#include <string>
#include <vector>

namespace qoc {

/// One time-ordered piece of a physical program: either ideal local
/// rotations (one 2x2 unitary per site) or a full-system pulse sequence.
struct ProgramBlock {
  enum class Kind { Rotations, Pulses };

  Kind kind = Kind::Pulses;
  std::string label;
  std::vector<Matrix> rotations;     // Rotations: one per site
  PulseSequence pulses;              // Pulses: full-system channels
  std::vector<bool> coupling_mask;   // Pulses on superconducting chains
};

struct Program {
  int num_sites = 0;
  Platform platform = Platform::Nmr;
  std::vector<ProgramBlock> blocks;  // time order

  bool empty() const { return blocks.empty(); }
  int total_segments() const;
};

/// Applies a single-site operator in place.
void apply_local(Vector& amplitudes, const std::vector<int>& site_dims, int site, const Matrix& op);

/// Runs every block on `initial` using the full-system model of `sample`
/// (each pulse block with its own coupling mask).
StateVector simulate(const Program& program, const Sample& sample, const StateVector& initial);

/// |<target| program |0...0>|^2.
double verify_program(const Program& program, const Sample& sample, const StateVector& target);

/// Program implementing the adjoint: blocks in reverse order, pulses
/// segment-reversed with the opposite sign, rotations conjugate-transposed.
Program invert(const Program& program);

}  // namespace qoc

#endif  // QOC_PROGRAM_HPP
