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

#ifndef QOC_HAMILTONIAN_HPP
#define QOC_HAMILTONIAN_HPP

#include "qoc/quantum_core.hpp"

#include <Eigen/Sparse>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qoc {

enum class Platform { Nmr, Superconducting };

const char* platform_name(Platform p);
Platform parse_platform(const std::string& s);

/// Spin system with always-on ZZ couplings. Shifts and couplings in Hz,
/// relaxation times in seconds (metadata only).
struct NmrSpin {
  std::string label;
  double shift_hz = 0.0;
  std::optional<double> t1_s;
  std::optional<double> t2_s;
};

struct NmrSample {
  std::string name;
  std::vector<NmrSpin> spins;
  Eigen::MatrixXd couplings_hz;  // symmetric, zero diagonal

  int size() const { return static_cast<int>(spins.size()); }
  int index_of(const std::string& label) const;
  double coupling(const std::string& a, const std::string& b) const;
  /// Label with trailing digits removed ("C1" -> "C").
  std::string species(int spin) const;

  /// Throws std::invalid_argument when couplings are asymmetric, self-coupled
  /// or non-finite.
  void validate() const;

  NmrSample subset(const SiteSet& spins) const;
  /// Copy with every chemical shift replaced by `offset_hz` (rotating frame).
  NmrSample with_uniform_offsets(double offset_hz = 0.0) const;
};

/// Transmon chain: frequency in GHz, anharmonicity in MHz, T1/T2* in us.
struct ScQubit {
  std::string label;
  double omega_ghz = 0.0;
  double eta_mhz = 0.0;
  std::optional<double> t1_us;
  std::optional<double> t2_us;
};

struct ScSample {
  std::string name;
  std::vector<ScQubit> qubits;
  std::vector<double> coupling_mhz;  // g_j between qubit j and j+1
  int levels = 2;

  int size() const { return static_cast<int>(qubits.size()); }
  void validate() const;

  /// Qubits at the listed indices. A coupling survives only between
  /// consecutive chain neighbours that are both selected.
  ScSample subset(const SiteSet& sites) const;
  /// Copy with every idle frequency set to `omega_ghz` (common rotating frame).
  ScSample with_uniform_frequency(double omega_ghz = 0.0) const;
};

using Sample = std::variant<NmrSample, ScSample>;

Platform platform_of(const Sample& s);
int sample_size(const Sample& s);
const std::string& sample_name(const Sample& s);
Sample sample_subset(const Sample& s, const SiteSet& sites);

struct ControlChannel {
  std::string label;
  int site = 0;
  HermitianOperator op;
  Eigen::SparseMatrix<cplx> sparse;
};

/// Drift plus control operators, in angular units (rad/s for NMR, rad/ns for
/// superconducting).
struct SystemModel {
  HermitianOperator drift;
  std::vector<ControlChannel> controls;
  std::vector<int> site_dims;
  Platform platform = Platform::Nmr;
  std::vector<bool> coupling_mask;  // superconducting only

  Eigen::Index dim() const { return drift.dim(); }
  int num_sites() const { return static_cast<int>(site_dims.size()); }
  int num_controls() const { return static_cast<int>(controls.size()); }
  std::vector<std::string> channel_labels() const;
};

/// Embeds a single-site operator at `site` of a product space.
Matrix embed_local(const Matrix& op, int site, const std::vector<int>& dims);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix annihilation(int levels);

/// Drift sum pi*nu_j Z_j + (pi/2) J_ij Z_i Z_j over `active_spins`; controls
/// pi X_j, pi Y_j per active spin.
SystemModel build_nmr(const NmrSample& sample, const SiteSet& active_spins);

/// Drift and controls of the reduced problem on `active` when the spins in
/// `frozen` sit in |0>: each frozen neighbour p shifts spin i by
/// (pi/2) J_pi Z_i.
SystemModel frozen_subsystem_hamiltonian(const NmrSample& sample, const SiteSet& frozen,
                                         const SiteSet& active);

/// Chain Hamiltonian with the given coupling mask (size = qubits - 1).
SystemModel build_sc(const ScSample& sample, const std::vector<bool>& coupling_mask);

/// Model for `active` sites: frozen-subsystem form for NMR, a masked chain
/// subset for superconducting samples (`frozen` must be empty there).
SystemModel subsystem_model(const Sample& sample, const SiteSet& active, const SiteSet& frozen = {});

/// Full-system model; `coupling_mask` is ignored for NMR.
SystemModel full_model(const Sample& sample, const std::vector<bool>& coupling_mask = {});

}  // namespace qoc

#endif  // QOC_HAMILTONIAN_HPP
