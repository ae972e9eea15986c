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

#include "qoc/grape.hpp"

#include <random>

namespace qoc {

PulseSolution optimize_pulses(const PulseProblem& pb) {
  const int A = pb.model.num_controls();
  const int K = pb.grid.segments;
  pb.grid.validate();
  const double b = default_amplitude_bound(pb.model.platform);
  const Eigen::VectorXd lower = pb.lower.size() ? pb.lower : uniform_bounds(A, -b);
  const Eigen::VectorXd upper = pb.upper.size() ? pb.upper : uniform_bounds(A, b);

  PulseSequence pulses = PulseSequence::zeros(pb.grid, pb.model, pb.sign, lower, upper);
  const StateVector initial = pb.initial.dim() ? pb.initial : StateVector::zero(pb.model.site_dims);

  // x(k*A + a) = u(k, a) / scale(a)
  Eigen::VectorXd scale(A);
  for (int a = 0; a < A; ++a) {
    scale(a) = std::max(std::abs(lower(a)), std::abs(upper(a)));
    if (scale(a) == 0.0) scale(a) = 1.0;
  }
  const Eigen::Index n = static_cast<Eigen::Index>(K) * A;
  auto to_pulses = [&](const Eigen::VectorXd& x, PulseSequence& p) {
    for (int k = 0; k < K; ++k)
      for (int a = 0; a < A; ++a) p.amplitudes(k, a) = x(k * A + a) * scale(a);
  };

  OptimizerConfig oc = pb.optimizer;
  oc.lower.resize(n);
  oc.upper.resize(n);
  for (int k = 0; k < K; ++k)
    for (int a = 0; a < A; ++a) {
      oc.lower(k * A + a) = lower(a) / scale(a);
      oc.upper(k * A + a) = upper(a) / scale(a);
    }

  PulseSolution out;
  {
    // zero pulse first: already-solved subproblems stay untouched
    const StateVector f0 = evolve(pb.model, pulses, initial);
    const double c0 = cost_value(f0, pb.cost);
    if (c0 < oc.tolerance) {
      out.pulses = pulses;
      out.final = f0;
      out.cost = c0;
      out.converged = true;
      out.report.cost_trace = {c0};
      out.report.gradient_norm_trace = {0.0};
      out.report.evaluations = 1;
      out.report.reason = TerminationReason::Tolerance;
      return out;
    }
  }

  std::mt19937_64 rng(pb.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd x0(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lo = pb.initial_fraction * oc.lower(i), hi = pb.initial_fraction * oc.upper(i);
    x0(i) = lo + (hi - lo) * unit(rng);
  }

  PulseSequence work = pulses;
  const CostFunction f = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    to_pulses(x, work);
    const CostEvaluation ev = evaluate_cost(pb.model, work, initial, pb.cost);
    for (int k = 0; k < K; ++k)
      for (int a = 0; a < A; ++a) g(k * A + a) = ev.gradient(k, a) * scale(a);
    return ev.cost;
  };

  OptimizationResult r;
  try {
    r = minimize(f, std::move(x0), oc);
  } catch (const NonFiniteError& e) {
    throw NonFiniteError(std::string(cost_name(pb.cost.kind)) + " optimization over " + std::to_string(K) +
                             " segments x " + std::to_string(A) + " channels (seed " + std::to_string(pb.seed) +
                             "): " + e.what(),
                         e.iterate());
  }
  to_pulses(r.x, pulses);
  out.pulses = std::move(pulses);
  out.report = std::move(r.report);
  out.final = evolve(pb.model, out.pulses, initial);
  out.cost = cost_value(out.final, pb.cost);
  out.converged = out.report.converged() && out.cost < oc.tolerance;
  return out;
}

GrapeResult run_grape(const GrapeProblem& problem) {
  if (problem.target.dim() != problem.model.dim())
    throw std::invalid_argument("GRAPE target dimension does not match the model");
  PulseProblem pb;
  pb.model = problem.model;
  pb.initial = problem.initial;
  pb.cost = CostSpec::transfer(StateVector(problem.target).normalize());
  pb.grid = problem.grid;
  pb.sign = Sign::Forward;
  pb.lower = problem.lower;
  pb.upper = problem.upper;
  pb.optimizer = problem.optimizer;
  pb.seed = problem.seed;
  pb.initial_fraction = problem.initial_fraction;
  PulseSolution s = optimize_pulses(pb);
  GrapeResult out;
  out.pulses = std::move(s.pulses);
  out.report = std::move(s.report);
  out.fidelity = 1.0 - s.cost;
  out.converged = s.converged;
  return out;
}

}  // namespace qoc
