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

#include "qoc/pulse.hpp"

#include "qoc/errors.hpp"

#include <cmath>
#include <numbers>

namespace qoc {

void PulseGrid::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("pulse grid: dt must be positive");
  if (segments < 1) throw std::invalid_argument("pulse grid: need at least one segment");
}

const char* sign_name(Sign s) { return s == Sign::Forward ? "forward" : "reversed"; }

Sign parse_sign(const std::string& s) {
  if (s == "forward") return Sign::Forward;
  if (s == "reversed") return Sign::Reversed;
  throw std::invalid_argument("unknown sign convention '" + s + "'");
}

PulseSequence PulseSequence::zeros(const PulseGrid& grid, const SystemModel& model, Sign sign,
                                   const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
  grid.validate();
  PulseSequence p;
  p.grid = grid;
  p.amplitudes = Eigen::MatrixXd::Zero(grid.segments, model.num_controls());
  p.labels = model.channel_labels();
  p.sign = sign;
  p.lower = lower;
  p.upper = upper;
  p.validate();
  return p;
}

void PulseSequence::validate() const {
  grid.validate();
  if (amplitudes.rows() != grid.segments)
    throw std::invalid_argument("pulse sequence: row count differs from segment count");
  const auto a = amplitudes.cols();
  if (static_cast<Eigen::Index>(labels.size()) != a || lower.size() != a || upper.size() != a)
    throw std::invalid_argument("pulse sequence: channel count mismatch between amplitudes, labels and bounds");
  if ((lower.array() > upper.array()).any()) throw std::invalid_argument("pulse sequence: lower bound above upper");
  if (!amplitudes.allFinite()) throw std::invalid_argument("pulse sequence: non-finite amplitude");
}

bool PulseSequence::within_bounds() const {
  for (Eigen::Index k = 0; k < amplitudes.rows(); ++k)
    if ((amplitudes.row(k).transpose().array() < lower.array()).any() ||
        (amplitudes.row(k).transpose().array() > upper.array()).any())
      return false;
  return true;
}

PulseSequence PulseSequence::inverted() const {
  PulseSequence p = *this;
  p.amplitudes = amplitudes.colwise().reverse();
  p.sign = sign == Sign::Forward ? Sign::Reversed : Sign::Forward;
  return p;
}

double default_amplitude_bound(Platform p) {
  return p == Platform::Nmr ? 2.0e4 : 2.0 * std::numbers::pi * 0.05;
}

Eigen::VectorXd uniform_bounds(int channels, double bound) { return Eigen::VectorXd::Constant(channels, bound); }

// --- propagation ----------------------------------------------------------------

Vector GradientWorkspace::apply(int k, const Vector& v, bool adjoint) const {
  const auto& es = propagators[static_cast<std::size_t>(k)];
  double scale = sign == Sign::Forward ? -dt : dt;
  if (adjoint) scale = -scale;
  const Vector phases = (es.values().cast<cplx>() * cplx(0.0, scale)).array().exp();
  Vector w = es.vectors().adjoint() * v;
  w.array() *= phases.array();
  return es.vectors() * w;
}

namespace {

void check_dims(const SystemModel& model, const PulseSequence& pulses, const StateVector& initial) {
  pulses.validate();
  if (pulses.channels() != model.num_controls())
    throw std::invalid_argument("pulse channel count does not match the model's controls");
  if (initial.dim() != model.dim()) throw std::invalid_argument("initial state dimension does not match the model");
}

}  // namespace

Matrix segment_hamiltonian(const SystemModel& model, const PulseSequence& pulses, int k) {
  Matrix h = model.drift.matrix();
  for (int a = 0; a < model.num_controls(); ++a) {
    const double u = pulses.amplitudes(k, a);
    if (u != 0.0) h += cplx(u, 0.0) * model.controls[static_cast<std::size_t>(a)].sparse;
  }
  return h;
}

Propagation propagate(const SystemModel& model, const PulseSequence& pulses, const StateVector& initial) {
  check_dims(model, pulses, initial);
  GradientWorkspace ws;
  ws.sign = pulses.sign;
  ws.dt = pulses.grid.dt;
  const int K = pulses.segments();
  ws.states.reserve(static_cast<std::size_t>(K) + 1);
  ws.propagators.reserve(static_cast<std::size_t>(K));
  ws.states.push_back(initial.amplitudes());
  for (int k = 0; k < K; ++k) {
    ws.propagators.emplace_back(segment_hamiltonian(model, pulses, k));
    ws.states.push_back(ws.apply(k, ws.states.back()));
  }
  StateVector final(ws.states.back(), initial.site_dims());
  return {std::move(final), std::move(ws)};
}

StateVector evolve(const SystemModel& model, const PulseSequence& pulses, const StateVector& initial) {
  check_dims(model, pulses, initial);
  GradientWorkspace ws;
  ws.sign = pulses.sign;
  ws.dt = pulses.grid.dt;
  Vector v = initial.amplitudes();
  for (int k = 0; k < pulses.segments(); ++k) {
    ws.propagators.clear();
    ws.propagators.emplace_back(segment_hamiltonian(model, pulses, k));
    v = ws.apply(0, v);
  }
  return StateVector(std::move(v), initial.site_dims());
}

// --- costs ------------------------------------------------------------------------

double cost_Lg(const StateVector& state, const StateVector& target) {
  return 1.0 - overlap_probability(target, state);
}

double cost_Lt(const StateVector& state, const SiteSet& keep) { return 1.0 - purity(partial_trace(state, keep)); }

double cost_Lf(const StateVector& state, const SiteSet& frozen) {
  const Matrix m = bipartition_matrix(state, frozen);
  return 1.0 - m.row(0).squaredNorm();
}

Vector lambda_vector(const StateVector& phi, const SiteSet& keep) {
  const Matrix m = bipartition_matrix(phi, keep);
  const Matrix lam = (m * m.adjoint()) * m;
  return from_bipartition_matrix(lam, phi.site_dims(), keep).amplitudes();
}

Vector eta_vector(const StateVector& phi, const SiteSet& frozen) {
  const Matrix m = bipartition_matrix(phi, frozen);
  Matrix eta = Matrix::Zero(m.rows(), m.cols());
  eta.row(0) = m.row(0);
  return from_bipartition_matrix(eta, phi.site_dims(), frozen).amplitudes();
}

const char* cost_name(CostKind k) {
  switch (k) {
    case CostKind::Lg: return "Lg";
    case CostKind::Lt: return "Lt";
    case CostKind::Lf: return "Lf";
  }
  return "?";
}

double cost_value(const StateVector& state, const CostSpec& spec) {
  switch (spec.kind) {
    case CostKind::Lg: return cost_Lg(state, spec.target);
    case CostKind::Lt: return cost_Lt(state, spec.sites);
    case CostKind::Lf: return cost_Lf(state, spec.sites);
  }
  throw std::logic_error("unhandled cost kind");
}

CostEvaluation evaluate_cost(const SystemModel& model, const PulseSequence& pulses, const StateVector& initial,
                             const CostSpec& spec) {
  const Sign required = spec.kind == CostKind::Lg ? Sign::Forward : Sign::Reversed;
  if (pulses.sign != required)
    throw ContractError(std::string("cost ") + cost_name(spec.kind) + " needs " + sign_name(required) +
                        "-sign pulses");
  if (spec.kind == CostKind::Lg && spec.target.dim() != model.dim())
    throw std::invalid_argument("target dimension does not match the model");

  Propagation prop = propagate(model, pulses, initial);
  const StateVector& phi = prop.final;

  // dL/du(k,a) = coeff * Re(s i dt <chi_k| H_a |psi_k>), chi_k the adjoint
  // vector carried back to just after segment k.
  Vector chi;
  double coeff = -2.0;
  switch (spec.kind) {
    case CostKind::Lg: chi = spec.target.amplitudes().dot(phi.amplitudes()) * spec.target.amplitudes(); break;
    case CostKind::Lt: chi = lambda_vector(phi, spec.sites); coeff = -4.0; break;
    case CostKind::Lf: chi = eta_vector(phi, spec.sites); break;
  }
  const double s = pulses.sign == Sign::Reversed ? 1.0 : -1.0;
  const double dt = pulses.grid.dt;
  const int K = pulses.segments();
  const int A = pulses.channels();

  CostEvaluation out;
  out.cost = cost_value(phi, spec);
  out.gradient.resize(K, A);
  const GradientWorkspace& ws = prop.workspace;
  for (int k = K - 1; k >= 0; --k) {
    const Vector& psi = ws.states[static_cast<std::size_t>(k) + 1];
    for (int a = 0; a < A; ++a) {
      const cplx z = chi.dot(model.controls[static_cast<std::size_t>(a)].sparse * psi);
      // Re(s i dt z) = -s dt Im z
      out.gradient(k, a) = -coeff * s * dt * z.imag();
    }
    if (k > 0) chi = ws.apply(k, chi, true);
  }
  if (!std::isfinite(out.cost) || !out.gradient.allFinite())
    throw NumericalError("cost or gradient is not finite");
  out.final = std::move(prop.final);
  return out;
}

Eigen::MatrixXd grad_Lg(const SystemModel& model, const PulseSequence& pulses, const StateVector& initial,
                        const StateVector& target) {
  return evaluate_cost(model, pulses, initial, CostSpec::transfer(target)).gradient;
}

Eigen::MatrixXd grad_Lt(const SystemModel& model, const PulseSequence& pulses, const StateVector& initial,
                        const SiteSet& keep) {
  return evaluate_cost(model, pulses, initial, CostSpec::purity(keep)).gradient;
}

Eigen::MatrixXd grad_Lf(const SystemModel& model, const PulseSequence& pulses, const StateVector& initial,
                        const SiteSet& frozen) {
  return evaluate_cost(model, pulses, initial, CostSpec::freeze(frozen)).gradient;
}

Eigen::MatrixXd finite_difference_gradient(const std::function<double(const PulseSequence&)>& cost,
                                           const PulseSequence& pulses, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite difference step must be positive");
  Eigen::MatrixXd g(pulses.segments(), pulses.channels());
  PulseSequence p = pulses;
  for (int k = 0; k < pulses.segments(); ++k)
    for (int a = 0; a < pulses.channels(); ++a) {
      const double u = pulses.amplitudes(k, a);
      p.amplitudes(k, a) = u + h;
      const double plus = cost(p);
      p.amplitudes(k, a) = u - h;
      const double minus = cost(p);
      p.amplitudes(k, a) = u;
      g(k, a) = (plus - minus) / (2.0 * h);
    }
  return g;
}

}  // namespace qoc
