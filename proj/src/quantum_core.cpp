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

#include "qoc/quantum_core.hpp"

#include "qoc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qoc {

int total_dim(std::span<const int> site_dims) {
  int d = 1;
  for (int s : site_dims) d *= s;
  return d;
}

SiteSet complement(const SiteSet& sites, int n) {
  SiteSet out;
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(sites.begin(), sites.end(), i)) out.push_back(i);
  return out;
}

SiteSet normalize_sites(SiteSet sites, int n) {
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  for (int s : sites)
    if (s < 0 || s >= n)
      throw std::invalid_argument("site index " + std::to_string(s) +
                                  " out of range for " + std::to_string(n) + " sites");
  return sites;
}

std::vector<int> dims_of(const std::vector<int>& site_dims, const SiteSet& sites) {
  std::vector<int> out;
  out.reserve(sites.size());
  for (int s : sites) out.push_back(site_dims.at(static_cast<std::size_t>(s)));
  return out;
}

// --- StateVector ------------------------------------------------------------

StateVector::StateVector(Vector amplitudes, std::vector<int> site_dims)
    : amplitudes_(std::move(amplitudes)), site_dims_(std::move(site_dims)) {
  for (int d : site_dims_)
    if (d < 1) throw std::invalid_argument("site dimension must be >= 1");
  if (amplitudes_.size() != total_dim(site_dims_))
    throw std::invalid_argument("amplitude count " + std::to_string(amplitudes_.size()) +
                                " does not match product of site dims " +
                                std::to_string(total_dim(site_dims_)));
}

StateVector StateVector::zero(std::vector<int> site_dims) {
  return basis(std::move(site_dims), 0);
}

StateVector StateVector::basis(std::vector<int> site_dims, Eigen::Index index) {
  Vector v = Vector::Zero(total_dim(site_dims));
  if (index < 0 || index >= v.size()) throw std::invalid_argument("basis index out of range");
  v(index) = 1.0;
  return StateVector(std::move(v), std::move(site_dims));
}

StateVector StateVector::qubits(int n, Vector amplitudes) {
  return StateVector(std::move(amplitudes), std::vector<int>(static_cast<std::size_t>(n), 2));
}

StateVector& StateVector::normalize() {
  const double n = amplitudes_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("cannot normalize a zero state");
  amplitudes_ /= n;
  return *this;
}

// --- HermitianOperator / DensityMatrix --------------------------------------

HermitianOperator::HermitianOperator(Matrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("operator must be square");
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    std::ostringstream os;
    os << "operator is not Hermitian (max |H - H^dagger| = " << asym << ")";
    throw std::invalid_argument(os.str());
  }
}

DensityMatrix::DensityMatrix(Matrix matrix, std::vector<int> site_dims)
    : matrix_(std::move(matrix)), site_dims_(std::move(site_dims)) {
  if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("density matrix must be square");
  if (matrix_.rows() != total_dim(site_dims_))
    throw std::invalid_argument("density matrix size does not match site dims");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.site_dims());
}

// --- kron ---------------------------------------------------------------------

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

StateVector kron(const StateVector& a, const StateVector& b) {
  Vector v(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    v.segment(i * b.dim(), b.dim()) = a.amplitudes()(i) * b.amplitudes();
  std::vector<int> dims = a.site_dims();
  dims.insert(dims.end(), b.site_dims().begin(), b.site_dims().end());
  return StateVector(std::move(v), std::move(dims));
}

// --- exponentials -------------------------------------------------------------

HermitianEigensystem::HermitianEigensystem(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) {
    std::ostringstream os;
    os << "Hermitian eigendecomposition failed (dim " << h.rows() << ")";
    if (es.eigenvectors().size() == h.size()) {
      const Matrix residual = h * es.eigenvectors() -
                              es.eigenvectors() * es.eigenvalues().cast<cplx>().asDiagonal();
      os << ", residual " << residual.norm();
    }
    throw NumericalError(os.str());
  }
  values_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

Matrix HermitianEigensystem::exp_i(double scale) const {
  const Vector phases = (values_.cast<cplx>() * cplx(0.0, scale)).array().exp();
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

Matrix expm_hermitian(const HermitianOperator& h, double scale) {
  return HermitianEigensystem(h.matrix()).exp_i(scale);
}

// --- partial trace and friends -----------------------------------------------

namespace {

void check_bipartition(const std::vector<int>& dims, const SiteSet& keep) {
  const int n = static_cast<int>(dims.size());
  if (keep.empty() || static_cast<int>(keep.size()) >= n)
    throw std::invalid_argument("keep set must be a non-empty proper subset of the sites");
  if (normalize_sites(keep, n) != keep)
    throw std::invalid_argument("keep set must be sorted and unique");
}

// For every full index, the (keep, rest) index pair.
struct SplitIndex {
  std::vector<Eigen::Index> keep;
  std::vector<Eigen::Index> rest;
  Eigen::Index keep_dim = 1;
  Eigen::Index rest_dim = 1;
};

SplitIndex split_index(const std::vector<int>& dims, const SiteSet& keep) {
  const int n = static_cast<int>(dims.size());
  std::vector<bool> is_keep(static_cast<std::size_t>(n), false);
  for (int s : keep) is_keep[static_cast<std::size_t>(s)] = true;
  SplitIndex out;
  for (int s = 0; s < n; ++s) (is_keep[static_cast<std::size_t>(s)] ? out.keep_dim : out.rest_dim) *= dims[static_cast<std::size_t>(s)];
  const Eigen::Index total = out.keep_dim * out.rest_dim;
  out.keep.resize(static_cast<std::size_t>(total));
  out.rest.resize(static_cast<std::size_t>(total));
  std::vector<int> digit(static_cast<std::size_t>(n), 0);
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    Eigen::Index k = 0, r = 0;
    for (int s = 0; s < n; ++s) {
      const auto su = static_cast<std::size_t>(s);
      if (is_keep[su]) k = k * dims[su] + digit[su];
      else r = r * dims[su] + digit[su];
    }
    out.keep[static_cast<std::size_t>(idx)] = k;
    out.rest[static_cast<std::size_t>(idx)] = r;
    for (int s = n - 1; s >= 0; --s) {
      const auto su = static_cast<std::size_t>(s);
      if (++digit[su] < dims[su]) break;
      digit[su] = 0;
    }
  }
  return out;
}

}  // namespace

Matrix bipartition_matrix(const StateVector& psi, const SiteSet& keep) {
  check_bipartition(psi.site_dims(), keep);
  const SplitIndex ix = split_index(psi.site_dims(), keep);
  Matrix m(ix.keep_dim, ix.rest_dim);
  for (std::size_t i = 0; i < ix.keep.size(); ++i)
    m(ix.keep[i], ix.rest[i]) = psi.amplitudes()(static_cast<Eigen::Index>(i));
  return m;
}

StateVector from_bipartition_matrix(const Matrix& m, std::vector<int> site_dims, const SiteSet& keep) {
  check_bipartition(site_dims, keep);
  const SplitIndex ix = split_index(site_dims, keep);
  if (m.rows() != ix.keep_dim || m.cols() != ix.rest_dim)
    throw std::invalid_argument("from_bipartition_matrix: shape mismatch");
  Vector v(static_cast<Eigen::Index>(ix.keep.size()));
  for (std::size_t i = 0; i < ix.keep.size(); ++i) v(static_cast<Eigen::Index>(i)) = m(ix.keep[i], ix.rest[i]);
  return StateVector(std::move(v), std::move(site_dims));
}

StateVector product_state(const StateVector& a, const StateVector& b, std::vector<int> site_dims,
                          const SiteSet& keep) {
  const Matrix m = a.amplitudes() * b.amplitudes().transpose();
  return from_bipartition_matrix(m, std::move(site_dims), keep);
}

DensityMatrix partial_trace(const StateVector& psi, const SiteSet& keep) {
  const Matrix m = bipartition_matrix(psi, keep);
  return DensityMatrix(m * m.adjoint(), dims_of(psi.site_dims(), keep));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const SiteSet& keep) {
  check_bipartition(rho.site_dims(), keep);
  const SplitIndex ix = split_index(rho.site_dims(), keep);
  Matrix out = Matrix::Zero(ix.keep_dim, ix.keep_dim);
  const auto total = ix.keep.size();
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j)
      if (ix.rest[i] == ix.rest[j])
        out(ix.keep[i], ix.keep[j]) += rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return DensityMatrix(std::move(out), dims_of(rho.site_dims(), keep));
}

double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  return rho.matrix().squaredNorm();
}

double fidelity(const StateVector& psi, const DensityMatrix& rho) {
  if (psi.dim() != rho.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  return psi.amplitudes().dot(rho.matrix() * psi.amplitudes()).real();
}

double overlap_probability(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("overlap: dimension mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double shannon_entropy(std::span<const double> probabilities, LogBase base) {
  double s = 0.0;
  for (double p : probabilities)
    if (p > 0.0) s -= p * std::log(p);
  return base == LogBase::Two ? s / std::log(2.0) : s;
}

SchmidtProfile schmidt(const StateVector& psi, const SiteSet& keep, LogBase base) {
  const Matrix m = bipartition_matrix(psi, keep);
  Eigen::JacobiSVD<Matrix> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  if (!s.allFinite()) throw NumericalError("Schmidt decomposition produced non-finite singular values");
  SchmidtProfile out;
  out.log_base = base;
  out.singular_values.assign(s.data(), s.data() + s.size());
  std::sort(out.singular_values.begin(), out.singular_values.end(), std::greater<>());
  std::vector<double> p;
  p.reserve(out.singular_values.size());
  for (double v : out.singular_values) p.push_back(v * v);
  out.entropy = shannon_entropy(p, base);
  return out;
}

SchmidtPair dominant_schmidt_pair(const StateVector& psi, const SiteSet& keep) {
  const Matrix m = bipartition_matrix(psi, keep);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // JacobiSVD sorts singular values in decreasing order
  const double s0 = svd.singularValues()(0);
  Vector left = svd.matrixU().col(0);
  Vector right = svd.matrixV().col(0).conjugate();
  const SiteSet rest = complement(keep, psi.num_sites());
  SchmidtPair out{StateVector(std::move(left), dims_of(psi.site_dims(), keep)),
                  StateVector(std::move(right), dims_of(psi.site_dims(), rest)), s0 * s0};
  return out;
}

}  // namespace qoc
