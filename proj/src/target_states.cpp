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

#include "qoc/target_states.hpp"

#include "qoc/program.hpp"
#include "qoc/pulse_io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace qoc {

StateVector ghz(int n) {
  if (n < 1) throw std::invalid_argument("ghz needs at least one qubit");
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
  return StateVector::qubits(n, std::move(v));
}

StateVector w_state(int n) {
  if (n < 1) throw std::invalid_argument("w_state needs at least one qubit");
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  for (int q = 0; q < n; ++q) v(Eigen::Index{1} << q) = 1.0 / std::sqrt(static_cast<double>(n));
  return StateVector::qubits(n, std::move(v));
}

Matrix u_gate(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const cplx i(0.0, 1.0);
  Matrix u(2, 2);
  u << c, -std::exp(i * lambda) * s, -std::exp(i * phi) * s, -std::exp(i * (lambda + phi)) * c;
  return u;
}

void apply_cnot(Vector& v, int n, int control, int target) {
  if (control == target || control < 0 || target < 0 || control >= n || target >= n)
    throw std::invalid_argument("apply_cnot: bad qubit indices");
  const Eigen::Index cbit = Eigen::Index{1} << (n - 1 - control);
  const Eigen::Index tbit = Eigen::Index{1} << (n - 1 - target);
  for (Eigen::Index x = 0; x < v.size(); ++x)
    if ((x & cbit) && !(x & tbit)) std::swap(v(x), v(x | tbit));
}

PqcSpec PqcSpec::random(int qubits, int layers, std::uint64_t seed) {
  PqcSpec spec;
  spec.qubits = qubits;
  spec.layers = layers;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> theta(0.0, std::numbers::pi), angle(0.0, 2.0 * std::numbers::pi);
  spec.parameters.resize(static_cast<std::size_t>(std::max(0, layers)));
  for (auto& layer : spec.parameters)
    for (int q = 0; q < qubits; ++q) {
      GateParameters g;
      g.theta = theta(rng);
      g.phi = angle(rng);
      g.lambda = angle(rng);
      layer.push_back(g);
    }
  spec.validate();
  return spec;
}

void PqcSpec::validate() const {
  if (qubits < 1) throw std::invalid_argument("PQC needs at least one qubit");
  if (layers < 0) throw std::invalid_argument("PQC layer count must be non-negative");
  if (static_cast<int>(parameters.size()) != layers) throw std::invalid_argument("PQC parameters must cover every layer");
  for (const auto& layer : parameters) {
    if (static_cast<int>(layer.size()) != qubits) throw std::invalid_argument("PQC layer must cover every qubit");
    for (const auto& g : layer)
      if (g.theta < 0.0 || g.theta > std::numbers::pi || g.phi < 0.0 || g.phi > 2.0 * std::numbers::pi ||
          g.lambda < 0.0 || g.lambda > 2.0 * std::numbers::pi)
        throw std::invalid_argument("PQC gate parameter out of range");
  }
}

StateVector pqc_state(const PqcSpec& spec) {
  spec.validate();
  const int n = spec.qubits;
  StateVector psi = StateVector::zero(std::vector<int>(static_cast<std::size_t>(n), 2));
  for (int l = 0; l < spec.layers; ++l) {
    if (l > 0 && spec.entanglers)
      for (int q = 0; q + 1 < n; ++q) apply_cnot(psi.amplitudes(), n, q, q + 1);
    for (int q = 0; q < n; ++q) {
      const auto& g = spec.parameters[static_cast<std::size_t>(l)][static_cast<std::size_t>(q)];
      apply_local(psi.amplitudes(), psi.site_dims(), q, u_gate(g.theta, g.phi, g.lambda));
    }
  }
  psi.normalize();
  return psi;
}

SchmidtProfile entanglement_profile(const StateVector& state, const SiteSet& keep, LogBase base) {
  return schmidt(state, keep, base);
}

void write_state(std::ostream& out, const StateVector& state) {
  for (Eigen::Index i = 0; i < state.dim(); ++i)
    out << i << ' ' << format_double(state.amplitudes()(i).real()) << ' '
        << format_double(state.amplitudes()(i).imag()) << '\n';
}

StateVector read_state(std::istream& in, std::vector<int> site_dims) {
  std::vector<std::pair<long long, cplx>> entries;
  long long max_index = -1;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream is(line);
    std::string idx, re, im, extra;
    if (!(is >> idx)) continue;
    if (idx.front() == '#') continue;
    if (!(is >> re >> im) || (is >> extra)) throw std::invalid_argument("state file: expected 'index real imag'");
    const long long k = std::stoll(idx);
    if (k < 0) throw std::invalid_argument("state file: negative index");
    entries.emplace_back(k, cplx(parse_double(re), parse_double(im)));
    max_index = std::max(max_index, k);
  }
  if (entries.empty()) throw std::invalid_argument("state file: no amplitudes");
  if (site_dims.empty()) {
    int n = 0;
    while ((1LL << n) <= max_index) ++n;
    site_dims.assign(static_cast<std::size_t>(std::max(n, 1)), 2);
  }
  Vector v = Vector::Zero(total_dim(site_dims));
  for (const auto& [k, a] : entries) {
    if (k >= v.size()) throw std::invalid_argument("state file: index beyond the state dimension");
    v(k) = a;
  }
  return StateVector(std::move(v), std::move(site_dims));
}

void write_state_file(const std::filesystem::path& path, const StateVector& state) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write state file " + path.string());
  write_state(out, state);
}

StateVector read_state_file(const std::filesystem::path& path, std::vector<int> site_dims) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file " + path.string());
  return read_state(in, std::move(site_dims));
}

}  // namespace qoc
