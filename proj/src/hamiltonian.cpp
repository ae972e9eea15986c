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

#include "qoc/hamiltonian.hpp"

#include "qoc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qoc {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

const char* platform_name(Platform p) {
  return p == Platform::Nmr ? "nmr" : "sc";
}

Platform parse_platform(const std::string& s) {
  if (s == "nmr") return Platform::Nmr;
  if (s == "sc" || s == "superconducting") return Platform::Superconducting;
  throw std::invalid_argument("unknown platform '" + s + "' (expected nmr or sc)");
}

// --- NmrSample ----------------------------------------------------------------

int NmrSample::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (spins[static_cast<std::size_t>(i)].label == label) return i;
  throw NotFoundError("sample '" + name + "' has no spin '" + label + "'");
}

double NmrSample::coupling(const std::string& a, const std::string& b) const {
  return couplings_hz(index_of(a), index_of(b));
}

std::string NmrSample::species(int spin) const {
  std::string s = spins.at(static_cast<std::size_t>(spin)).label;
  while (!s.empty() && std::isdigit(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

void NmrSample::validate() const {
  const int n = size();
  if (couplings_hz.rows() != n || couplings_hz.cols() != n)
    throw std::invalid_argument("sample '" + name + "': coupling table must be " +
                                std::to_string(n) + "x" + std::to_string(n));
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(spins[static_cast<std::size_t>(i)].shift_hz))
      throw std::invalid_argument("sample '" + name + "': non-finite chemical shift");
    if (couplings_hz(i, i) != 0.0)
      throw std::invalid_argument("sample '" + name + "': self-coupling on spin " + std::to_string(i));
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(couplings_hz(i, j)))
        throw std::invalid_argument("sample '" + name + "': non-finite coupling");
      if (couplings_hz(i, j) != couplings_hz(j, i))
        throw std::invalid_argument("sample '" + name + "': coupling table not symmetric");
    }
  }
}

NmrSample NmrSample::subset(const SiteSet& sel) const {
  const SiteSet s = normalize_sites(sel, size());
  NmrSample out;
  out.name = name;
  const auto m = static_cast<Eigen::Index>(s.size());
  out.couplings_hz = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    out.spins.push_back(spins[static_cast<std::size_t>(s[static_cast<std::size_t>(a)])]);
    for (Eigen::Index b = 0; b < m; ++b)
      out.couplings_hz(a, b) = couplings_hz(s[static_cast<std::size_t>(a)], s[static_cast<std::size_t>(b)]);
  }
  return out;
}

NmrSample NmrSample::with_uniform_offsets(double offset_hz) const {
  NmrSample out = *this;
  for (auto& spin : out.spins) spin.shift_hz = offset_hz;
  return out;
}

// --- ScSample ----------------------------------------------------------------

void ScSample::validate() const {
  if (levels < 2) throw std::invalid_argument("sample '" + name + "': truncation levels must be >= 2");
  if (!qubits.empty() && coupling_mhz.size() != qubits.size() - 1)
    throw std::invalid_argument("sample '" + name + "': chain needs exactly qubits-1 couplings");
  for (const auto& q : qubits)
    if (!std::isfinite(q.omega_ghz) || !std::isfinite(q.eta_mhz))
      throw std::invalid_argument("sample '" + name + "': non-finite qubit parameter");
  for (double g : coupling_mhz)
    if (!std::isfinite(g)) throw std::invalid_argument("sample '" + name + "': non-finite coupling");
}

ScSample ScSample::subset(const SiteSet& sel) const {
  const SiteSet s = normalize_sites(sel, size());
  ScSample out;
  out.name = name;
  out.levels = levels;
  for (std::size_t a = 0; a < s.size(); ++a) {
    out.qubits.push_back(qubits[static_cast<std::size_t>(s[a])]);
    if (a + 1 < s.size())
      out.coupling_mhz.push_back(s[a + 1] == s[a] + 1 ? coupling_mhz[static_cast<std::size_t>(s[a])] : 0.0);
  }
  return out;
}

ScSample ScSample::with_uniform_frequency(double omega_ghz) const {
  ScSample out = *this;
  for (auto& q : out.qubits) q.omega_ghz = omega_ghz;
  return out;
}

Platform platform_of(const Sample& s) {
  return std::holds_alternative<NmrSample>(s) ? Platform::Nmr : Platform::Superconducting;
}

int sample_size(const Sample& s) {
  return std::visit([](const auto& x) { return x.size(); }, s);
}

const std::string& sample_name(const Sample& s) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, s);
}

Sample sample_subset(const Sample& s, const SiteSet& sites) {
  return std::visit([&](const auto& x) -> Sample { return x.subset(sites); }, s);
}

std::vector<std::string> SystemModel::channel_labels() const {
  std::vector<std::string> out;
  out.reserve(controls.size());
  for (const auto& c : controls) out.push_back(c.label);
  return out;
}

// --- operators -----------------------------------------------------------------

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix annihilation(int levels) {
  Matrix a = Matrix::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix embed_local(const Matrix& op, int site, const std::vector<int>& dims) {
  Matrix out = Matrix::Identity(1, 1);
  for (int s = 0; s < static_cast<int>(dims.size()); ++s)
    out = kron(out, s == site ? op : Matrix::Identity(dims[static_cast<std::size_t>(s)], dims[static_cast<std::size_t>(s)]));
  return out;
}

namespace {

ControlChannel make_channel(std::string label, int site, Matrix op) {
  ControlChannel c;
  c.label = std::move(label);
  c.site = site;
  c.sparse = op.sparseView(0.0, 0.0);
  c.op = HermitianOperator(std::move(op));
  return c;
}

// Diagonal of Z_i on an n-qubit register: +1 when bit i is 0.
double z_sign(Eigen::Index index, int site, int n) {
  return ((index >> (n - 1 - site)) & 1) ? -1.0 : 1.0;
}

}  // namespace

SystemModel frozen_subsystem_hamiltonian(const NmrSample& sample, const SiteSet& frozen_in,
                                         const SiteSet& active_in) {
  sample.validate();
  const SiteSet frozen = normalize_sites(frozen_in, sample.size());
  const SiteSet active = normalize_sites(active_in, sample.size());
  if (active.empty()) throw std::invalid_argument("active spin set must be non-empty");
  for (int f : frozen)
    if (std::binary_search(active.begin(), active.end(), f))
      throw std::invalid_argument("frozen and active spin sets overlap at spin " + std::to_string(f));

  const int n = static_cast<int>(active.size());
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  for (int a = 0; a < n; ++a) {
    const int i = active[static_cast<std::size_t>(a)];
    double shift = sample.spins[static_cast<std::size_t>(i)].shift_hz;
    for (int p : frozen) shift += 0.5 * sample.couplings_hz(p, i);
    for (Eigen::Index x = 0; x < dim; ++x) diag(x) += kPi * shift * z_sign(x, a, n);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const double j = sample.couplings_hz(active[static_cast<std::size_t>(a)], active[static_cast<std::size_t>(b)]);
      if (j == 0.0) continue;
      for (Eigen::Index x = 0; x < dim; ++x) diag(x) += 0.5 * kPi * j * z_sign(x, a, n) * z_sign(x, b, n);
    }

  SystemModel model;
  model.platform = Platform::Nmr;
  model.site_dims.assign(static_cast<std::size_t>(n), 2);
  model.drift = HermitianOperator(diag.cast<cplx>().asDiagonal().toDenseMatrix());
  for (int a = 0; a < n; ++a) {
    const std::string& label = sample.spins[static_cast<std::size_t>(active[static_cast<std::size_t>(a)])].label;
    model.controls.push_back(make_channel(label + ".x", a, kPi * embed_local(pauli_x(), a, model.site_dims)));
    model.controls.push_back(make_channel(label + ".y", a, kPi * embed_local(pauli_y(), a, model.site_dims)));
  }
  return model;
}

SystemModel build_nmr(const NmrSample& sample, const SiteSet& active_spins) {
  return frozen_subsystem_hamiltonian(sample, {}, active_spins);
}

SystemModel build_sc(const ScSample& sample, const std::vector<bool>& coupling_mask) {
  sample.validate();
  const int n = sample.size();
  if (n < 1) throw std::invalid_argument("superconducting sample has no qubits");
  if (static_cast<int>(coupling_mask.size()) != n - 1)
    throw std::invalid_argument("coupling mask must have one entry per chain boundary (" +
                                std::to_string(n - 1) + ")");
  const int d = sample.levels;
  SystemModel model;
  model.platform = Platform::Superconducting;
  model.site_dims.assign(static_cast<std::size_t>(n), d);
  model.coupling_mask = coupling_mask;

  const Matrix a = annihilation(d);
  const Matrix ad = a.adjoint();
  const Matrix num = ad * a;
  const Matrix id = Matrix::Identity(d, d);
  const Matrix anharm = num * (num - id);

  const Eigen::Index dim = total_dim(model.site_dims);
  Matrix drift = Matrix::Zero(dim, dim);
  std::vector<Matrix> a_full;
  for (int j = 0; j < n; ++j) {
    const auto& q = sample.qubits[static_cast<std::size_t>(j)];
    const double omega = kTwoPi * q.omega_ghz;          // rad/ns
    const double eta = kTwoPi * q.eta_mhz * 1e-3;      // rad/ns
    drift += embed_local(omega * num + 0.5 * eta * anharm, j, model.site_dims);
    a_full.push_back(embed_local(a, j, model.site_dims));
  }
  for (int j = 0; j + 1 < n; ++j) {
    if (!coupling_mask[static_cast<std::size_t>(j)]) continue;
    const double g = kTwoPi * sample.coupling_mhz[static_cast<std::size_t>(j)] * 1e-3;
    const Matrix hop = a_full[static_cast<std::size_t>(j)].adjoint() * a_full[static_cast<std::size_t>(j + 1)];
    drift += g * (hop + hop.adjoint());
  }
  model.drift = HermitianOperator(std::move(drift));
  for (int j = 0; j < n; ++j) {
    const std::string& label = sample.qubits[static_cast<std::size_t>(j)].label;
    const Matrix& aj = a_full[static_cast<std::size_t>(j)];
    model.controls.push_back(make_channel(label + ".x", j, aj + aj.adjoint()));
    model.controls.push_back(make_channel(label + ".y", j, cplx(0, 1) * (aj - aj.adjoint())));
  }
  return model;
}

SystemModel subsystem_model(const Sample& sample, const SiteSet& active, const SiteSet& frozen) {
  if (const auto* nmr = std::get_if<NmrSample>(&sample)) return frozen_subsystem_hamiltonian(*nmr, frozen, active);
  if (!frozen.empty())
    throw std::invalid_argument("frozen subsystems are only defined for always-on (NMR) couplings");
  const ScSample sub = std::get<ScSample>(sample).subset(active);
  return build_sc(sub, std::vector<bool>(static_cast<std::size_t>(std::max(0, sub.size() - 1)), true));
}

SystemModel full_model(const Sample& sample, const std::vector<bool>& coupling_mask) {
  const int n = sample_size(sample);
  SiteSet all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  if (const auto* nmr = std::get_if<NmrSample>(&sample)) return build_nmr(*nmr, all);
  std::vector<bool> mask = coupling_mask;
  if (mask.empty()) mask.assign(static_cast<std::size_t>(std::max(0, n - 1)), true);
  return build_sc(std::get<ScSample>(sample), mask);
}

}  // namespace qoc
