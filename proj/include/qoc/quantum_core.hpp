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

#ifndef QOC_QUANTUM_CORE_HPP
#define QOC_QUANTUM_CORE_HPP

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace qoc {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Site indices of a tensor-product space; always kept sorted and unique.
using SiteSet = std::vector<int>;

/// Product of the dimensions of the listed sites (all sites when empty span
/// is passed through `total_dim`).
int total_dim(std::span<const int> site_dims);

/// Sites in [0, n) that are not in `sites`.
SiteSet complement(const SiteSet& sites, int n);

/// Sorts, de-duplicates and range-checks a site list against n sites.
/// Throws std::invalid_argument on an out-of-range index.
SiteSet normalize_sites(SiteSet sites, int n);

// ---------------------------------------------------------------------------

/// Pure state over a tensor-product space. Site 0 is the most significant
/// digit of the amplitude index.
class StateVector {
 public:
  StateVector() = default;
  StateVector(Vector amplitudes, std::vector<int> site_dims);

  /// |0...0> on the given sites.
  static StateVector zero(std::vector<int> site_dims);
  static StateVector basis(std::vector<int> site_dims, Eigen::Index index);
  static StateVector qubits(int n, Vector amplitudes);

  const Vector& amplitudes() const { return amplitudes_; }
  Vector& amplitudes() { return amplitudes_; }
  const std::vector<int>& site_dims() const { return site_dims_; }
  int num_sites() const { return static_cast<int>(site_dims_.size()); }
  Eigen::Index dim() const { return amplitudes_.size(); }

  double norm() const { return amplitudes_.norm(); }
  StateVector& normalize();

 private:
  Vector amplitudes_;
  std::vector<int> site_dims_;
};

/// Square matrix checked Hermitian on construction (entrywise, relative to the
/// largest entry, 1e-12).
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(Matrix matrix);

  const Matrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  Matrix matrix_;
};

/// Reduced or full density matrix together with its site dimensions.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(Matrix matrix, std::vector<int> site_dims);

  static DensityMatrix pure(const StateVector& psi);

  const Matrix& matrix() const { return matrix_; }
  const std::vector<int>& site_dims() const { return site_dims_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  Matrix matrix_;
  std::vector<int> site_dims_;
};

enum class LogBase { Two, E };

struct SchmidtProfile {
  std::vector<double> singular_values;  // descending
  double entropy = 0.0;
  LogBase log_base = LogBase::Two;
};

// ---------------------------------------------------------------------------

Matrix kron(const Matrix& a, const Matrix& b);
StateVector kron(const StateVector& a, const StateVector& b);

/// Eigendecomposition of a Hermitian matrix, kept so that exp(i*s*H) can be
/// applied to vectors without forming the exponential.
class HermitianEigensystem {
 public:
  explicit HermitianEigensystem(const Matrix& h);

  const Eigen::VectorXd& values() const { return values_; }
  const Matrix& vectors() const { return vectors_; }

  /// exp(i * scale * H) as a dense matrix.
  Matrix exp_i(double scale) const;

 private:
  Eigen::VectorXd values_;
  Matrix vectors_;
};

/// exp(i * scale * H). Scale carries the sign: -dt for physical forward
/// evolution, +dt for the reversed convention.
Matrix expm_hermitian(const HermitianOperator& h, double scale);

/// Amplitudes rearranged as a d_keep x d_rest matrix (row = keep index).
Matrix bipartition_matrix(const StateVector& psi, const SiteSet& keep);

/// Inverse of bipartition_matrix.
StateVector from_bipartition_matrix(const Matrix& m, std::vector<int> site_dims, const SiteSet& keep);

/// |a>_keep (x) |b>_rest placed back on the interleaved site order.
StateVector product_state(const StateVector& a, const StateVector& b, std::vector<int> site_dims,
                          const SiteSet& keep);

DensityMatrix partial_trace(const StateVector& psi, const SiteSet& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const SiteSet& keep);

/// tr(rho^2).
double purity(const DensityMatrix& rho);

/// <psi|rho|psi>.
double fidelity(const StateVector& psi, const DensityMatrix& rho);

/// |<a|b>|^2, global phase dropped.
double overlap_probability(const StateVector& a, const StateVector& b);

SchmidtProfile schmidt(const StateVector& psi, const SiteSet& keep,
                       LogBase base = LogBase::Two);

/// -sum p log p over the given probabilities, with 0 log 0 = 0.
double shannon_entropy(std::span<const double> probabilities, LogBase base);

/// Leading Schmidt pair: normalized states on `keep` and on its complement,
/// plus the weight (largest squared singular value).
struct SchmidtPair {
  StateVector left;
  StateVector right;
  double weight = 0.0;
};
SchmidtPair dominant_schmidt_pair(const StateVector& psi, const SiteSet& keep);

/// Dimensions of the listed sites, in order.
std::vector<int> dims_of(const std::vector<int>& site_dims, const SiteSet& sites);

}  // namespace qoc

#endif  // QOC_QUANTUM_CORE_HPP
