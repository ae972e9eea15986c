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

#include "qoc/optimizer.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace qoc;
using Eigen::VectorXd;

namespace {

// Runs to a tight stationarity certificate instead of a cost threshold.
OptimizerConfig exact_config(OptimizerMethod method = OptimizerMethod::Lbfgs) {
  OptimizerConfig c;
  c.method = method;
  c.tolerance = std::numeric_limits<double>::min();
  c.gradient_tolerance = 1e-10;
  c.relative_decrease = 0.0;
  c.max_iterations = 5000;
  return c;
}

double rosenbrock(const VectorXd& x, VectorXd& g) {
  const double a = x(1) - x(0) * x(0), b = 1.0 - x(0);
  g(0) = -400.0 * x(0) * a - 2.0 * b;
  g(1) = 200.0 * a;
  return 100.0 * a * a + b * b;
}

}  // namespace

TEST_CASE("unbounded quadratic") {
  auto f = [](const VectorXd& x, VectorXd& g) {
    g = 2.0 * (x.array() - 1.0).matrix();
    return (x.array() - 1.0).square().sum();
  };
  for (auto method : {OptimizerMethod::Lbfgs, OptimizerMethod::ProjectedGradient}) {
    OptimizerConfig c = exact_config(method);
    c.learning_rate = 0.25;
    OptimizationResult r = minimize(f, VectorXd::Zero(6), c);
    CHECK((r.x.array() - 1.0).abs().maxCoeff() < 1e-8);
    CHECK(r.report.reason == TerminationReason::Stationary);
  }
}

TEST_CASE("active lower bound") {
  auto f = [](const VectorXd& x, VectorXd& g) {
    g = 2.0 * x;
    return x.squaredNorm();
  };
  OptimizerConfig c = exact_config();
  c.lower = VectorXd::Constant(1, 1.0);
  c.upper = VectorXd::Constant(1, 2.0);
  OptimizationResult r = minimize(f, VectorXd::Constant(1, 1.7), c);
  CHECK(r.x(0) == 1.0);
  // a start outside the box is clipped first
  r = minimize(f, VectorXd::Constant(1, -5.0), c);
  CHECK(r.x(0) == 1.0);
}

TEST_CASE("Rosenbrock from the classic start") {
  OptimizationResult r = minimize(rosenbrock, (VectorXd(2) << -1.2, 1.0).finished(), exact_config());
  VectorXd g(2);
  rosenbrock(r.x, g);
  CHECK(g.norm() <= 1e-8);
  CHECK(std::abs(r.x(0) - 1.0) < 1e-6);
  CHECK(std::abs(r.x(1) - 1.0) < 1e-6);
}

TEST_CASE("projected gradient step") {
  VectorXd lo = VectorXd::Constant(1, -1.0), hi = VectorXd::Constant(1, 1.0);
  VectorXd x = VectorXd::Constant(1, 0.3);
  CHECK(projected_gradient_step(x, VectorXd::Zero(1), 0.1, lo, hi) == x);
  CHECK(projected_gradient_step(VectorXd::Zero(1), VectorXd::Ones(1), 0.1, lo, hi)(0) == doctest::Approx(-0.1));
  CHECK(projected_gradient_step(VectorXd::Constant(1, -0.95), VectorXd::Ones(1), 0.1, lo, hi)(0) == -1.0);
  CHECK(projected_gradient_step(VectorXd::Constant(1, 5.0), VectorXd::Ones(1), 0.1, {}, {})(0) ==
        doctest::Approx(4.9));
}

TEST_CASE("accepted iterates never increase the cost and stay in the box") {
  std::mt19937_64 rng(101);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 5;
    // random non-convex smooth function: sum of shifted cosines over a quadratic bowl
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
    VectorXd shift(n);
    for (int i = 0; i < n; ++i) shift(i) = gauss(rng);
    auto f = [&](const VectorXd& x, VectorXd& g) {
      VectorXd y = a * x + shift;
      double v = 0.05 * x.squaredNorm();
      g = 0.1 * x;
      for (int i = 0; i < n; ++i) {
        v += 1.0 - std::cos(y(i));
        g += std::sin(y(i)) * a.row(i).transpose();
      }
      return v;
    };
    for (auto method : {OptimizerMethod::Lbfgs, OptimizerMethod::ProjectedGradient}) {
      OptimizerConfig c;
      c.method = method;
      c.tolerance = 1e-6;
      c.max_iterations = 200;
      c.learning_rate = 0.05;
      c.lower = VectorXd::Constant(n, -0.8);
      c.upper = VectorXd::Constant(n, 0.8);
      VectorXd x0(n);
      for (int i = 0; i < n; ++i) x0(i) = gauss(rng);
      OptimizationResult r = minimize(f, x0, c);
      const auto& t = r.report.cost_trace;
      REQUIRE(t.size() == static_cast<std::size_t>(r.report.iterations) + 1);
      for (std::size_t k = 1; k < t.size(); ++k) CHECK(t[k] <= t[k - 1]);
      CHECK((r.x.array() >= -0.8).all());
      CHECK((r.x.array() <= 0.8).all());
      CHECK(r.report.gradient_norm_trace.size() == t.size());
    }
  }
}

TEST_CASE("identical inputs give identical runs") {
  auto run = [] {
    OptimizerConfig c = exact_config();
    c.max_iterations = 40;
    return minimize(rosenbrock, (VectorXd(2) << -1.2, 1.0).finished(), c);
  };
  OptimizationResult a = run(), b = run();
  CHECK(a.x == b.x);
  CHECK(a.report.cost_trace == b.report.cost_trace);
  CHECK(a.report.iterations == b.report.iterations);
}

TEST_CASE("cost threshold and iteration cap") {
  OptimizerConfig c;
  c.tolerance = 1e-3;
  OptimizationResult r = minimize(rosenbrock, (VectorXd(2) << -1.2, 1.0).finished(), c);
  CHECK(r.report.reason == TerminationReason::Tolerance);
  CHECK(r.report.converged());
  CHECK(r.report.final_cost() < 1e-3);

  c = exact_config();
  c.max_iterations = 3;
  r = minimize(rosenbrock, (VectorXd(2) << -1.2, 1.0).finished(), c);
  CHECK(r.report.reason == TerminationReason::MaxIterations);
  CHECK(r.report.iterations == 3);
  CHECK_FALSE(r.report.converged());
}

TEST_CASE("non-finite cost is reported with the offending iterate") {
  auto f = [](const VectorXd& x, VectorXd& g) {
    g = VectorXd::Ones(x.size());
    return x(0) < -0.5 ? std::numeric_limits<double>::quiet_NaN() : 10.0 + x.sum();
  };
  OptimizerConfig c;
  try {
    minimize(f, VectorXd::Zero(2), c);
    FAIL("expected NonFiniteError");
  } catch (const NonFiniteError& e) {
    CHECK(e.iterate().size() == 2);
    CHECK(e.iterate()(0) < -0.5);
  }
}

TEST_CASE("configuration checks") {
  auto f = [](const VectorXd& x, VectorXd& g) {
    g = x;
    return 0.5 * x.squaredNorm();
  };
  OptimizerConfig c;
  c.lower = VectorXd::Constant(2, 1.0);
  c.upper = VectorXd::Constant(2, 0.0);
  CHECK_THROWS_AS(minimize(f, VectorXd::Zero(2), c), std::invalid_argument);
  c = OptimizerConfig{};
  c.lower = VectorXd::Constant(3, -1.0);
  c.upper = VectorXd::Constant(3, 1.0);
  CHECK_THROWS_AS(minimize(f, VectorXd::Zero(2), c), std::invalid_argument);
  CHECK(parse_optimizer_method("l-bfgs-b") == OptimizerMethod::Lbfgs);
  CHECK(parse_optimizer_method("projected-gradient") == OptimizerMethod::ProjectedGradient);
  CHECK_THROWS_AS(parse_optimizer_method("adam"), std::invalid_argument);
}
