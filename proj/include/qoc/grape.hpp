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

#ifndef QOC_GRAPE_HPP
#define QOC_GRAPE_HPP

#include "qoc/optimizer.hpp"
#include "qoc/pulse.hpp"

#include <cstdint>

namespace qoc {

/// One pulse optimization: minimize `cost` over the amplitudes of a grid,
/// starting from `initial`.
struct PulseProblem {
  SystemModel model;
  StateVector initial;
  CostSpec cost;
  PulseGrid grid;
  Sign sign = Sign::Forward;
  Eigen::VectorXd lower;  // per channel; empty = platform default box
  Eigen::VectorXd upper;
  OptimizerConfig optimizer;
  std::uint64_t seed = 0;
  double initial_fraction = 0.1;  // random start uniform in this fraction of the box
};

struct PulseSolution {
  PulseSequence pulses;
  OptimizationReport report;
  StateVector final;
  double cost = 1.0;  // recomputed from a fresh simulation of `pulses`
  bool converged = false;
};

/// Optimizes in amplitudes scaled by each channel's bound. If the all-zero
/// pulse already meets the tolerance it is returned without iterating.
PulseSolution optimize_pulses(const PulseProblem& problem);

struct GrapeProblem {
  SystemModel model;
  StateVector target;
  StateVector initial;  // empty = |0...0>
  PulseGrid grid;
  OptimizerConfig optimizer;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::uint64_t seed = 0;
  double initial_fraction = 0.1;
};

struct GrapeResult {
  PulseSequence pulses;  // forward sign
  OptimizationReport report;
  double fidelity = 0.0;  // 1 - Lg of the re-simulated pulses
  bool converged = false;
};

/// Forward-sign transfer |0...0> -> target minimizing Lg. Non-convergence is
/// reported through `converged`, never thrown.
GrapeResult run_grape(const GrapeProblem& problem);

}  // namespace qoc

#endif  // QOC_GRAPE_HPP
