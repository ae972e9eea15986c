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

#include "qoc/program.hpp"

#include <algorithm>
#include <map>

namespace qoc {

int Program::total_segments() const {
  int k = 0;
  for (const auto& b : blocks)
    if (b.kind == ProgramBlock::Kind::Pulses) k += b.pulses.segments();
  return k;
}

void apply_local(Vector& v, const std::vector<int>& dims, int site, const Matrix& op) {
  const auto su = static_cast<std::size_t>(site);
  if (su >= dims.size()) throw std::invalid_argument("apply_local: site out of range");
  const Eigen::Index d = dims[su];
  if (op.rows() != d || op.cols() != d) throw std::invalid_argument("apply_local: operator dimension mismatch");
  Eigen::Index inner = 1;
  for (std::size_t s = su + 1; s < dims.size(); ++s) inner *= dims[s];
  const Eigen::Index outer = v.size() / (inner * d);
  Vector tmp(d);
  for (Eigen::Index o = 0; o < outer; ++o)
    for (Eigen::Index i = 0; i < inner; ++i) {
      const Eigen::Index base = o * d * inner + i;
      for (Eigen::Index a = 0; a < d; ++a) tmp(a) = v(base + a * inner);
      tmp = op * tmp;
      for (Eigen::Index a = 0; a < d; ++a) v(base + a * inner) = tmp(a);
    }
}

StateVector simulate(const Program& program, const Sample& sample, const StateVector& initial) {
  if (sample_size(sample) != program.num_sites)
    throw std::invalid_argument("program and sample have different site counts");
  if (initial.num_sites() != program.num_sites)
    throw std::invalid_argument("initial state has the wrong number of sites");
  std::map<std::vector<bool>, SystemModel> models;
  StateVector psi = initial;
  for (const auto& b : program.blocks) {
    if (b.kind == ProgramBlock::Kind::Rotations) {
      if (static_cast<int>(b.rotations.size()) != program.num_sites)
        throw std::invalid_argument("rotation block '" + b.label + "' needs one unitary per site");
      for (int s = 0; s < program.num_sites; ++s)
        apply_local(psi.amplitudes(), psi.site_dims(), s, b.rotations[static_cast<std::size_t>(s)]);
      continue;
    }
    auto it = models.find(b.coupling_mask);
    if (it == models.end()) it = models.emplace(b.coupling_mask, full_model(sample, b.coupling_mask)).first;
    psi = evolve(it->second, b.pulses, psi);
  }
  return psi;
}

double verify_program(const Program& program, const Sample& sample, const StateVector& target) {
  const StateVector zero = StateVector::zero(target.site_dims());
  return overlap_probability(target, simulate(program, sample, zero));
}

Program invert(const Program& program) {
  Program out = program;
  std::reverse(out.blocks.begin(), out.blocks.end());
  for (auto& b : out.blocks) {
    if (b.kind == ProgramBlock::Kind::Rotations) {
      for (auto& r : b.rotations) r = r.adjoint().eval();
    } else {
      b.pulses = b.pulses.inverted();
    }
    b.label += "^-1";
  }
  return out;
}

}  // namespace qoc
