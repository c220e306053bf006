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

#pragma once

// Dense complex linear algebra for small Hilbert spaces.
//
// Index convention: a composite space H_1 ⊗ H_2 ⊗ ... ⊗ H_n is always
// indexed with the leftmost factor most significant, i.e. the basis vector
// |i_1 i_2 ... i_n> sits at position ((i_1 * d_2 + i_2) * d_3 + ...) + i_n.
// Every routine in the library (kron, partial traces, Choi matrices) uses
// this ordering.

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nsbox {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Seeded random stream. Parallel callers must each own one.
using Rng = std::mt19937_64;

inline constexpr double kTolHerm = 1e-9;
inline constexpr double kTolTrace = 1e-9;
inline constexpr double kTolPsd = 1e-9;
inline constexpr double kTolRecon = 1e-10;

/// Raised when an input is mathematically valid but outside the domain of
/// an operation (non-PSD Choi matrix, signalling map where a semicausal one
/// is required, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on inconsistent dimensions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unit-norm state vector.
class PureState {
 public:
  explicit PureState(Vector amplitudes, double tol = kTolTrace);

  [[nodiscard]] Eigen::Index dim() const { return amplitudes_.size(); }
  [[nodiscard]] const Vector& amplitudes() const { return amplitudes_; }
  [[nodiscard]] Matrix projector() const {
    return amplitudes_ * amplitudes_.adjoint();
  }

 private:
  Vector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m, double tol = kTolPsd);
  explicit DensityMatrix(const PureState& psi);

  [[nodiscard]] Eigen::Index dim() const { return matrix_.rows(); }
  [[nodiscard]] const Matrix& matrix() const { return matrix_; }

  static DensityMatrix maximally_mixed(Eigen::Index d);
  static DensityMatrix basis(Eigen::Index d, Eigen::Index k);

 private:
  Matrix matrix_;
};

// --- basic constructors -----------------------------------------------------

Matrix identity(Eigen::Index d);
/// Pauli matrices, index 0..3 = I, X, Y, Z.
Matrix pauli(int index);
Vector basis_vector(Eigen::Index d, Eigen::Index k);
/// (1/sqrt(d)) sum_i |i>|i>.
Vector max_entangled(Eigen::Index d);
/// Permutation operator H_A ⊗ H_B -> H_B ⊗ H_A.
Matrix swap_operator(Eigen::Index dA, Eigen::Index dB);

// --- products and traces ----------------------------------------------------

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

enum class Subsystem { First, Second };

/// Partial trace over a bipartite space d1 ⊗ d2 keeping one factor.
Matrix partial_trace(const Matrix& m, Eigen::Index d1, Eigen::Index d2,
                     Subsystem keep);

/// Partial trace over an arbitrary tensor product. `keep` lists the factor
/// indices to retain; the result keeps them in the order they appear in
/// `dims`.
Matrix partial_trace(const Matrix& m, std::span<const Eigen::Index> dims,
                     std::span<const int> keep);

/// Reorders tensor factors: output factor k is input factor perm[k].
Matrix permute_subsystems(const Matrix& m, std::span<const Eigen::Index> dims,
                          std::span<const int> perm);
Vector permute_subsystems(const Vector& v, std::span<const Eigen::Index> dims,
                          std::span<const int> perm);

// --- spectra ----------------------------------------------------------------

struct HermitianEigen {
  RealVector values;  // descending
  Matrix vectors;     // orthonormal columns, vectors.col(k) <-> values(k)
};

bool is_hermitian(const Matrix& m, double tol = kTolHerm);
HermitianEigen eig_hermitian(const Matrix& m, double tol = kTolHerm);
double min_eigenvalue(const Matrix& m, double tol = kTolHerm);
bool is_psd(const Matrix& m, double tol = kTolPsd);

/// Largest absolute entry.
double max_abs(const Matrix& m);
/// Schatten 1-norm (sum of singular values).
double trace_norm(const Matrix& m);
bool is_unitary(const Matrix& u, double tol = kTolTrace);

// --- sampling ---------------------------------------------------------------

/// Haar-distributed pure state: normalized vector of i.i.d. complex Gaussians.
PureState haar_state(Eigen::Index d, Rng& rng);
/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal absorbed into Q.
Matrix haar_unitary(Eigen::Index d, Rng& rng);
/// Random density matrix of the given rank (partial trace of a Haar state).
DensityMatrix random_density_matrix(Eigen::Index d, Eigen::Index rank,
                                    Rng& rng);

// --- purification -----------------------------------------------------------

/// Spectral purification sum_k sqrt(p_k) |e_k>|k> on d ⊗ rank(rho). Tracing
/// out the second factor recovers rho.
PureState purify(const DensityMatrix& rho, double tol = kTolPsd);

/// Number of eigenvalues above tol.
Eigen::Index numerical_rank(const Matrix& hermitian, double tol = kTolPsd);

}  // namespace nsbox
