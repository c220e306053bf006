// Copyright 2026 The nsbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nsbox/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

namespace nsbox {

namespace {

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

Eigen::Index product(std::span<const Eigen::Index> dims) {
  return std::accumulate(dims.begin(), dims.end(), Eigen::Index{1},
                         std::multiplies<>());
}

// Mixed-radix digits of a flat index, most significant factor first.
void digits(Eigen::Index flat, std::span<const Eigen::Index> dims,
            std::vector<Eigen::Index>& out) {
  out.resize(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = flat % dims[k];
    flat /= dims[k];
  }
}

std::vector<Eigen::Index> permutation_map(std::span<const Eigen::Index> dims,
                                          std::span<const int> perm) {
  if (perm.size() != dims.size())
    throw DimensionError("permute_subsystems: permutation length mismatch");
  std::vector<int> seen(dims.size(), 0);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= dims.size() || seen[p]++)
      throw DimensionError("permute_subsystems: not a permutation");
  }
  const Eigen::Index total = product(dims);
  std::vector<Eigen::Index> map(total);
  std::vector<Eigen::Index> d;
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    digits(flat, dims, d);
    Eigen::Index out = 0;
    for (int p : perm) out = out * dims[p] + d[p];
    map[flat] = out;
  }
  return map;
}

}  // namespace

PureState::PureState(Vector amplitudes, double tol)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DimensionError("PureState: empty vector");
  if (!all_finite(amplitudes_))
    throw std::invalid_argument("PureState: non-finite amplitude");
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > tol)
    throw std::invalid_argument("PureState: vector is not normalized");
}

DensityMatrix::DensityMatrix(Matrix m, double tol) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0)
    throw DimensionError("DensityMatrix: matrix must be square");
  if (!all_finite(matrix_))
    throw std::invalid_argument("DensityMatrix: non-finite entry");
  if (!is_hermitian(matrix_))
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  if (std::abs(matrix_.trace().real() - 1.0) > kTolTrace)
    throw std::invalid_argument("DensityMatrix: trace differs from one");
  if (min_eigenvalue(matrix_) < -tol)
    throw std::invalid_argument("DensityMatrix: matrix is not positive");
}

DensityMatrix::DensityMatrix(const PureState& psi)
    : matrix_(psi.projector()) {}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index d) {
  return DensityMatrix(identity(d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::basis(Eigen::Index d, Eigen::Index k) {
  return DensityMatrix(PureState(basis_vector(d, k)));
}

Matrix identity(Eigen::Index d) { return Matrix::Identity(d, d); }

Matrix pauli(int index) {
  Matrix s = Matrix::Zero(2, 2);
  switch (index) {
    case 0:
      s(0, 0) = 1.0;
      s(1, 1) = 1.0;
      break;
    case 1:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case 2:
      s(0, 1) = Complex(0.0, -1.0);
      s(1, 0) = Complex(0.0, 1.0);
      break;
    case 3:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
    default:
      throw std::out_of_range("pauli: index must be 0..3");
  }
  return s;
}

Vector basis_vector(Eigen::Index d, Eigen::Index k) {
  if (k < 0 || k >= d) throw std::out_of_range("basis_vector: index");
  Vector v = Vector::Zero(d);
  v(k) = 1.0;
  return v;
}

Vector max_entangled(Eigen::Index d) {
  Vector v = Vector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index i = 0; i < d; ++i) v(i * d + i) = amp;
  return v;
}

Matrix swap_operator(Eigen::Index dA, Eigen::Index dB) {
  Matrix s = Matrix::Zero(dA * dB, dA * dB);
  for (Eigen::Index a = 0; a < dA; ++a)
    for (Eigen::Index b = 0; b < dB; ++b) s(b * dA + a, a * dB + b) = 1.0;
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Vector kron(const Vector& a, const Vector& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix partial_trace(const Matrix& m, Eigen::Index d1, Eigen::Index d2,
                     Subsystem keep) {
  const std::array<Eigen::Index, 2> dims{d1, d2};
  const std::array<int, 1> kept{keep == Subsystem::First ? 0 : 1};
  return partial_trace(m, dims, kept);
}

Matrix partial_trace(const Matrix& m, std::span<const Eigen::Index> dims,
                     std::span<const int> keep) {
  const Eigen::Index total = product(dims);
  if (m.rows() != total || m.cols() != total)
    throw DimensionError("partial_trace: matrix does not match dimensions");
  std::vector<bool> kept(dims.size(), false);
  for (int k : keep) {
    if (k < 0 || static_cast<std::size_t>(k) >= dims.size() || kept[k])
      throw DimensionError("partial_trace: invalid subsystem selector");
    kept[k] = true;
  }
  // Flat index -> (kept index, traced index).
  std::vector<Eigen::Index> kidx(total), tidx(total), d;
  Eigen::Index dkeep = 1;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (kept[k]) dkeep *= dims[k];
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    digits(flat, dims, d);
    Eigen::Index ki = 0, ti = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (kept[k])
        ki = ki * dims[k] + d[k];
      else
        ti = ti * dims[k] + d[k];
    }
    kidx[flat] = ki;
    tidx[flat] = ti;
  }
  Matrix out = Matrix::Zero(dkeep, dkeep);
  for (Eigen::Index j = 0; j < total; ++j)
    for (Eigen::Index i = 0; i < total; ++i)
      if (tidx[i] == tidx[j]) out(kidx[i], kidx[j]) += m(i, j);
  return out;
}

Matrix permute_subsystems(const Matrix& m, std::span<const Eigen::Index> dims,
                          std::span<const int> perm) {
  const auto map = permutation_map(dims, perm);
  const auto total = static_cast<Eigen::Index>(map.size());
  if (m.rows() != total || m.cols() != total)
    throw DimensionError("permute_subsystems: matrix does not match dims");
  Matrix out(total, total);
  for (Eigen::Index j = 0; j < total; ++j)
    for (Eigen::Index i = 0; i < total; ++i) out(map[i], map[j]) = m(i, j);
  return out;
}

Vector permute_subsystems(const Vector& v, std::span<const Eigen::Index> dims,
                          std::span<const int> perm) {
  const auto map = permutation_map(dims, perm);
  if (v.size() != static_cast<Eigen::Index>(map.size()))
    throw DimensionError("permute_subsystems: vector does not match dims");
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(map[i]) = v(i);
  return out;
}

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

HermitianEigen eig_hermitian(const Matrix& m, double tol) {
  if (!is_hermitian(m, tol))
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: solver did not converge");
  const Eigen::Index n = h.rows();
  HermitianEigen out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

double min_eigenvalue(const Matrix& m, double tol) {
  if (!is_hermitian(m, tol))
    throw std::invalid_argument("min_eigenvalue: matrix is not Hermitian");
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

bool is_psd(const Matrix& m, double tol) { return min_eigenvalue(m) >= -tol; }

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

bool is_unitary(const Matrix& u, double tol) {
  return u.rows() == u.cols() &&
         max_abs(u.adjoint() * u - identity(u.rows())) <= tol;
}

namespace {

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix z(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  return z;
}

}  // namespace

PureState haar_state(Eigen::Index d, Rng& rng) {
  if (d < 1) throw DimensionError("haar_state: dimension must be >= 1");
  Vector v = gaussian_matrix(d, 1, rng).col(0);
  v /= v.norm();
  return PureState(std::move(v));
}

Matrix haar_unitary(Eigen::Index d, Rng& rng) {
  if (d < 1) throw DimensionError("haar_unitary: dimension must be >= 1");
  const Matrix z = gaussian_matrix(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * identity(d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return q;
}

DensityMatrix random_density_matrix(Eigen::Index d, Eigen::Index rank,
                                    Rng& rng) {
  const PureState psi = haar_state(d * rank, rng);
  return DensityMatrix(
      partial_trace(psi.projector(), d, rank, Subsystem::First));
}

Eigen::Index numerical_rank(const Matrix& hermitian, double tol) {
  const HermitianEigen e = eig_hermitian(hermitian);
  return (e.values.array() > tol).count();
}

PureState purify(const DensityMatrix& rho, double tol) {
  const HermitianEigen e = eig_hermitian(rho.matrix());
  const Eigen::Index d = rho.dim();
  const Eigen::Index rank = std::max<Eigen::Index>(
      1, (e.values.array() > tol).count());
  Vector psi = Vector::Zero(d * rank);
  for (Eigen::Index k = 0; k < rank; ++k) {
    const double w = std::sqrt(std::max(0.0, e.values(k)));
    psi += w * kron(Vector(e.vectors.col(k)), basis_vector(rank, k));
  }
  // Dropped eigenvalues carry at most rank * tol of weight.
  psi /= psi.norm();
  return PureState(std::move(psi));
}

}  // namespace nsbox
