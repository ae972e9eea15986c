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

#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace qoc {

const char* termination_name(TerminationReason r) {
  switch (r) {
    case TerminationReason::Tolerance: return "tolerance";
    case TerminationReason::Stationary: return "stationary";
    case TerminationReason::MaxIterations: return "max-iterations";
    case TerminationReason::LineSearchFailure: return "line-search-failure";
  }
  return "?";
}

OptimizerMethod parse_optimizer_method(const std::string& s) {
  if (s == "lbfgs" || s == "l-bfgs-b") return OptimizerMethod::Lbfgs;
  if (s == "projected-gradient" || s == "gradient") return OptimizerMethod::ProjectedGradient;
  throw std::invalid_argument("unknown optimizer method '" + s + "'");
}

void OptimizerConfig::validate(Eigen::Index n) const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("optimizer: tolerance must be positive");
  if (max_iterations < 0) throw std::invalid_argument("optimizer: max_iterations must be non-negative");
  if (memory < 1) throw std::invalid_argument("optimizer: memory must be at least 1");
  if (!(0.0 < c1 && c1 < c2 && c2 < 1.0)) throw std::invalid_argument("optimizer: need 0 < c1 < c2 < 1");
  if (max_line_search < 1) throw std::invalid_argument("optimizer: max_line_search must be positive");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("optimizer: learning rate must be positive");
  if (lower.size() != upper.size()) throw std::invalid_argument("optimizer: lower/upper size mismatch");
  if (lower.size() != 0 && lower.size() != n) throw std::invalid_argument("optimizer: bounds size mismatch");
  if (lower.size() != 0 && (lower.array() > upper.array()).any())
    throw std::invalid_argument("optimizer: lower bound above upper bound");
}

Eigen::VectorXd projected_gradient_step(const Eigen::VectorXd& x, const Eigen::VectorXd& grad, double omega,
                                        const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
  Eigen::VectorXd y = x - omega * grad;
  if (lower.size() != 0) y = y.cwiseMax(lower).cwiseMin(upper);
  return y;
}

namespace {

using Eigen::VectorXd;

class Problem {
 public:
  Problem(const CostFunction& f, const OptimizerConfig& c, Eigen::Index n) : f_(f), c_(c), n_(n) {
    if (c.lower.size() == 0) {
      lo_ = VectorXd::Constant(n, -std::numeric_limits<double>::infinity());
      hi_ = VectorXd::Constant(n, std::numeric_limits<double>::infinity());
    } else {
      lo_ = c.lower;
      hi_ = c.upper;
    }
  }

  double eval(const VectorXd& x, VectorXd& g) {
    g.setZero(n_);
    const double v = f_(x, g);
    ++evaluations;
    if (!std::isfinite(v) || !g.allFinite()) {
      std::ostringstream os;
      os << "non-finite " << (std::isfinite(v) ? "gradient" : "cost") << " at iterate (n=" << x.size()
         << ", |x|=" << x.norm() << ", evaluation " << evaluations << ")";
      throw NonFiniteError(os.str(), x);
    }
    return v;
  }

  VectorXd clip(const VectorXd& x) const { return x.cwiseMax(lo_).cwiseMin(hi_); }

  // Zero where the variable sits on a bound and the gradient pushes outward.
  VectorXd projected_gradient(const VectorXd& x, const VectorXd& g) const {
    VectorXd pg = g;
    for (Eigen::Index i = 0; i < n_; ++i)
      if ((x(i) <= lo_(i) && g(i) > 0.0) || (x(i) >= hi_(i) && g(i) < 0.0)) pg(i) = 0.0;
    return pg;
  }

  // Drops direction components that would leave the box immediately.
  void trim_direction(const VectorXd& x, VectorXd& d) const {
    for (Eigen::Index i = 0; i < n_; ++i)
      if ((x(i) <= lo_(i) && d(i) < 0.0) || (x(i) >= hi_(i) && d(i) > 0.0)) d(i) = 0.0;
  }

  bool inside(Eigen::Index i, double v) const { return lo_(i) < v && v < hi_(i); }

  int evaluations = 0;

 private:
  const CostFunction& f_;
  const OptimizerConfig& c_;
  Eigen::Index n_;
  VectorXd lo_, hi_;
};

struct Trial {
  VectorXd x, g;
  double f = 0.0;
};

// Weak Wolfe search along the projected path P(x + a d), bracketing by
// bisection and expanding by doubling. Falls back to the best point that
// passed sufficient decrease.
bool line_search(Problem& p, const OptimizerConfig& c, const VectorXd& x, double fx, const VectorXd& g,
                 const VectorXd& d, double alpha, Trial& out) {
  const double dphi0 = g.dot(d);
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  bool have_best = false;
  Trial t;
  for (int it = 0; it < c.max_line_search; ++it) {
    t.x = p.clip(x + alpha * d);
    if ((t.x - x).lpNorm<Eigen::Infinity>() == 0.0) break;
    t.f = p.eval(t.x, t.g);
    const bool armijo = t.f < fx && t.f <= fx + c.c1 * g.dot(t.x - x);
    if (!armijo) {
      hi = alpha;
    } else {
      if (!have_best || t.f < out.f) {
        out = t;
        have_best = true;
      }
      double dphi = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i)
        if (p.inside(i, x(i) + alpha * d(i))) dphi += t.g(i) * d(i);
      if (dphi >= c.c2 * dphi0) {
        out = t;
        return true;
      }
      lo = alpha;
    }
    alpha = std::isinf(hi) ? 2.0 * alpha : 0.5 * (lo + hi);
    if (alpha < 1e-30) break;
  }
  return have_best;
}

OptimizationResult run_lbfgs(Problem& p, const OptimizerConfig& c, VectorXd x, OptimizationReport& rep) {
  const Eigen::Index n = x.size();
  VectorXd g;
  double fx = p.eval(x, g);
  std::deque<VectorXd> S, Y;

  auto record = [&](const VectorXd& pg) {
    rep.cost_trace.push_back(fx);
    rep.gradient_norm_trace.push_back(pg.norm());
  };
  VectorXd pg = p.projected_gradient(x, g);
  record(pg);

  for (;;) {
    if (fx < c.tolerance) { rep.reason = TerminationReason::Tolerance; break; }
    if (pg.lpNorm<Eigen::Infinity>() < c.gradient_tolerance) { rep.reason = TerminationReason::Stationary; break; }
    if (rep.iterations >= c.max_iterations) { rep.reason = TerminationReason::MaxIterations; break; }

    // two-loop recursion restricted to the free variables
    VectorXd mask(n);
    for (Eigen::Index i = 0; i < n; ++i) mask(i) = pg(i) == 0.0 && g(i) != 0.0 ? 0.0 : 1.0;
    VectorXd q = pg;
    const std::size_t m = S.size();
    std::vector<double> rho(m, 0.0), a(m, 0.0);
    std::vector<VectorXd> sm(m), ym(m);
    double gamma = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      sm[i] = S[i].cwiseProduct(mask);
      ym[i] = Y[i].cwiseProduct(mask);
      const double sy = sm[i].dot(ym[i]);
      if (sy > 1e-12 * sm[i].norm() * ym[i].norm()) {
        rho[i] = 1.0 / sy;
        gamma = sy / ym[i].squaredNorm();
      }
    }
    for (std::size_t j = m; j-- > 0;) {
      if (rho[j] == 0.0) continue;
      a[j] = rho[j] * sm[j].dot(q);
      q -= a[j] * ym[j];
    }
    const bool steepest = gamma == 0.0;
    VectorXd r = steepest ? q : VectorXd(gamma * q);
    for (std::size_t j = 0; j < m; ++j) {
      if (rho[j] == 0.0) continue;
      const double b = rho[j] * ym[j].dot(r);
      r += sm[j] * (a[j] - b);
    }
    VectorXd d = -r.cwiseProduct(mask);
    p.trim_direction(x, d);
    const double pgn = pg.norm();
    double alpha0 = steepest ? std::min(1.0, 1.0 / pgn) : 1.0;
    if (!(g.dot(d) < 0.0)) {
      d = -pg;
      alpha0 = std::min(1.0, 1.0 / pgn);
      S.clear();
      Y.clear();
    }

    Trial t;
    bool ok = line_search(p, c, x, fx, g, d, alpha0, t);
    if (!ok && !(d + pg).isZero(0.0)) {
      // one steepest-descent restart
      S.clear();
      Y.clear();
      ok = line_search(p, c, x, fx, g, -pg, std::min(1.0, 1.0 / pgn), t);
    }
    if (!ok) { rep.reason = TerminationReason::LineSearchFailure; break; }

    const VectorXd s = t.x - x;
    const VectorXd y = t.g - g;
    if (s.dot(y) > 1e-10 * s.norm() * y.norm()) {
      S.push_back(s);
      Y.push_back(y);
      if (static_cast<int>(S.size()) > c.memory) {
        S.pop_front();
        Y.pop_front();
      }
    }
    const double gain = fx - t.f;
    const double scale = std::max({1.0, std::abs(fx), std::abs(t.f)});
    x = std::move(t.x);
    g = std::move(t.g);
    fx = t.f;
    ++rep.iterations;
    pg = p.projected_gradient(x, g);
    record(pg);
    if (fx >= c.tolerance && gain <= c.relative_decrease * scale) {
      rep.reason = TerminationReason::Stationary;
      break;
    }
  }
  return {std::move(x), rep};
}

OptimizationResult run_projected_gradient(Problem& p, const OptimizerConfig& c, VectorXd x,
                                          OptimizationReport& rep) {
  VectorXd g;
  double fx = p.eval(x, g);
  VectorXd pg = p.projected_gradient(x, g);
  rep.cost_trace.push_back(fx);
  rep.gradient_norm_trace.push_back(pg.norm());
  for (;;) {
    if (fx < c.tolerance) { rep.reason = TerminationReason::Tolerance; break; }
    if (pg.lpNorm<Eigen::Infinity>() < c.gradient_tolerance) { rep.reason = TerminationReason::Stationary; break; }
    if (rep.iterations >= c.max_iterations) { rep.reason = TerminationReason::MaxIterations; break; }
    double omega = c.learning_rate;
    bool accepted = false;
    Trial t;
    for (int it = 0; it < c.max_line_search && !accepted; ++it, omega *= 0.5) {
      t.x = p.clip(x - omega * g);
      if ((t.x - x).lpNorm<Eigen::Infinity>() == 0.0) break;
      t.f = p.eval(t.x, t.g);
      accepted = t.f < fx;
    }
    if (!accepted) { rep.reason = TerminationReason::LineSearchFailure; break; }
    const double gain = fx - t.f;
    const double scale = std::max({1.0, std::abs(fx), std::abs(t.f)});
    x = std::move(t.x);
    g = std::move(t.g);
    fx = t.f;
    ++rep.iterations;
    pg = p.projected_gradient(x, g);
    rep.cost_trace.push_back(fx);
    rep.gradient_norm_trace.push_back(pg.norm());
    if (fx >= c.tolerance && gain <= c.relative_decrease * scale) {
      rep.reason = TerminationReason::Stationary;
      break;
    }
  }
  return {std::move(x), rep};
}

}  // namespace

OptimizationResult minimize(const CostFunction& f, Eigen::VectorXd x0, const OptimizerConfig& config) {
  config.validate(x0.size());
  const auto start = std::chrono::steady_clock::now();
  Problem p(f, config, x0.size());
  OptimizationReport rep;
  x0 = p.clip(x0);
  OptimizationResult out = config.method == OptimizerMethod::Lbfgs ? run_lbfgs(p, config, std::move(x0), rep)
                                                                   : run_projected_gradient(p, config, std::move(x0), rep);
  out.report.evaluations = p.evaluations;
  out.report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace qoc
