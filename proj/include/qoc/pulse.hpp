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

#ifndef QOC_PULSE_HPP
#define QOC_PULSE_HPP

#include "qoc/hamiltonian.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qoc {

/// Uniform time grid: K segments of length dt (seconds for NMR, ns for
/// superconducting models).
struct PulseGrid {
  double dt = 0.0;
  int segments = 0;

  double duration() const { return dt * segments; }
  void validate() const;  // dt > 0, K >= 1
};

/// Forward segments evolve with exp(-i dt H); reversed ones with exp(+i dt H).
enum class Sign { Forward, Reversed };

const char* sign_name(Sign s);
Sign parse_sign(const std::string& s);

/// Piecewise-constant amplitudes u(k, alpha), one row per segment.
struct PulseSequence {
  PulseGrid grid;
  Eigen::MatrixXd amplitudes;        // K x A
  std::vector<std::string> labels;   // A channel labels
  Sign sign = Sign::Forward;
  Eigen::VectorXd lower;             // per channel
  Eigen::VectorXd upper;

  int segments() const { return static_cast<int>(amplitudes.rows()); }
  int channels() const { return static_cast<int>(amplitudes.cols()); }

  static PulseSequence zeros(const PulseGrid& grid, const SystemModel& model, Sign sign,
                             const Eigen::VectorXd& lower, const Eigen::VectorXd& upper);

  /// Shape, label and bounds checks; throws std::invalid_argument.
  void validate() const;
  bool within_bounds() const;

  /// Segments in reverse order with the opposite sign: the physical
  /// implementation of the adjoint propagator.
  PulseSequence inverted() const;
};

/// Default amplitude box per channel: +-20 kHz for NMR, +-2pi*50 MHz
/// (rad/ns) for superconducting channels.
double default_amplitude_bound(Platform p);
Eigen::VectorXd uniform_bounds(int channels, double bound);

/// Forward states and cached segment eigensystems of one propagation.
struct GradientWorkspace {
  Sign sign = Sign::Forward;
  double dt = 0.0;
  std::vector<Vector> states;                     // states[k]: after k segments, k = 0..K
  std::vector<HermitianEigensystem> propagators;  // one per segment

  /// U_k v (k zero-based) or its adjoint.
  Vector apply(int k, const Vector& v, bool adjoint = false) const;
};

struct Propagation {
  StateVector final;
  GradientWorkspace workspace;
};

/// Hamiltonian of segment k: drift + sum_alpha u(k, alpha) H_alpha.
Matrix segment_hamiltonian(const SystemModel& model, const PulseSequence& pulses, int k);

Propagation propagate(const SystemModel& model, const PulseSequence& pulses, const StateVector& initial);

/// Final state only; same arithmetic as propagate().
StateVector evolve(const SystemModel& model, const PulseSequence& pulses, const StateVector& initial);

// --- costs ---------------------------------------------------------------

/// 1 - |<target|state>|^2.
double cost_Lg(const StateVector& state, const StateVector& target);
/// 1 - tr(rho_keep^2).
double cost_Lt(const StateVector& state, const SiteSet& keep);
/// 1 - <0|rho_frozen|0>.
double cost_Lf(const StateVector& state, const SiteSet& frozen);

/// (rho_keep (x) I)|phi>.
Vector lambda_vector(const StateVector& phi, const SiteSet& keep);
/// (|0><0|_frozen (x) I)|phi>.
Vector eta_vector(const StateVector& phi, const SiteSet& frozen);

enum class CostKind { Lg, Lt, Lf };

/// Which cost to evaluate: the target state for Lg, the site set for Lt
/// (kept block) and Lf (frozen block).
struct CostSpec {
  CostKind kind = CostKind::Lg;
  StateVector target;
  SiteSet sites;

  static CostSpec transfer(StateVector target) { return {CostKind::Lg, std::move(target), {}}; }
  static CostSpec purity(SiteSet keep) { return {CostKind::Lt, {}, std::move(keep)}; }
  static CostSpec freeze(SiteSet frozen) { return {CostKind::Lf, {}, std::move(frozen)}; }
};

const char* cost_name(CostKind k);

double cost_value(const StateVector& state, const CostSpec& spec);

struct CostEvaluation {
  double cost = 0.0;
  Eigen::MatrixXd gradient;  // K x A
  StateVector final;
};

/// Cost and first-order analytic gradient from one forward and one backward
/// sweep. Lg requires forward-sign pulses, Lt and Lf reversed-sign pulses
/// (ContractError otherwise).
CostEvaluation evaluate_cost(const SystemModel& model, const PulseSequence& pulses,
                             const StateVector& initial, const CostSpec& spec);

Eigen::MatrixXd grad_Lg(const SystemModel& model, const PulseSequence& pulses, const StateVector& initial,
                        const StateVector& target);
Eigen::MatrixXd grad_Lt(const SystemModel& model, const PulseSequence& pulses, const StateVector& initial,
                        const SiteSet& keep);
Eigen::MatrixXd grad_Lf(const SystemModel& model, const PulseSequence& pulses, const StateVector& initial,
                        const SiteSet& frozen);

/// Central differences (c(u + h e) - c(u - h e)) / 2h over every amplitude.
Eigen::MatrixXd finite_difference_gradient(const std::function<double(const PulseSequence&)>& cost,
                                           const PulseSequence& pulses, double h);

}  // namespace qoc

#endif  // QOC_PULSE_HPP
