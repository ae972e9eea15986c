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

#ifndef QOC_OPTIMIZER_HPP
#define QOC_OPTIMIZER_HPP

#include "qoc/errors.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qoc {

enum class OptimizerMethod { Lbfgs, ProjectedGradient };

enum class TerminationReason {
  Tolerance,          // cost dropped below the tolerance
  Stationary,         // projected gradient or relative progress vanished
  MaxIterations,
  LineSearchFailure,  // no decrease even after a steepest-descent restart
};

const char* termination_name(TerminationReason r);
OptimizerMethod parse_optimizer_method(const std::string& s);

struct OptimizerConfig {
  OptimizerMethod method = OptimizerMethod::Lbfgs;
  double tolerance = 3e-3;           // stop once cost < tolerance
  int max_iterations = 1000;
  int memory = 10;                   // stored (s, y) pairs
  double c1 = 1e-4;                  // sufficient decrease
  double c2 = 0.9;                   // curvature
  int max_line_search = 30;
  double gradient_tolerance = 1e-10; // infinity norm of the projected gradient
  double relative_decrease = 1e-12;  // stop when one step gains less than this
  double learning_rate = 0.1;        // projected-gradient method only
  Eigen::VectorXd lower;             // empty = unbounded
  Eigen::VectorXd upper;

  void validate(Eigen::Index n) const;
};

struct OptimizationReport {
  std::vector<double> cost_trace;           // initial cost, then every accepted iterate
  std::vector<double> gradient_norm_trace;  // projected gradient 2-norm at the same points
  int iterations = 0;
  int evaluations = 0;
  double wall_time_s = 0.0;
  TerminationReason reason = TerminationReason::MaxIterations;

  bool converged() const { return reason == TerminationReason::Tolerance; }
  double final_cost() const { return cost_trace.empty() ? 1.0 : cost_trace.back(); }
};

struct OptimizationResult {
  Eigen::VectorXd x;
  OptimizationReport report;
};

/// Thrown when the cost or gradient turns NaN/Inf; keeps the offending point.
class NonFiniteError : public NumericalError {
 public:
  NonFiniteError(const std::string& what, Eigen::VectorXd iterate)
      : NumericalError(what), iterate_(std::move(iterate)) {}
  const Eigen::VectorXd& iterate() const { return iterate_; }

 private:
  Eigen::VectorXd iterate_;
};

/// Returns f(x) and writes the gradient into `grad` (already sized).
using CostFunction = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

/// Box-constrained minimization. `x0` is clipped into the box first.
OptimizationResult minimize(const CostFunction& f, Eigen::VectorXd x0, const OptimizerConfig& config);

/// clip(x - omega * grad, [lower, upper]); empty bounds mean unbounded.
Eigen::VectorXd projected_gradient_step(const Eigen::VectorXd& x, const Eigen::VectorXd& grad, double omega,
                                        const Eigen::VectorXd& lower, const Eigen::VectorXd& upper);

}  // namespace qoc

#endif  // QOC_OPTIMIZER_HPP
