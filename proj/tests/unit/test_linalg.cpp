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

#include <doctest.h>

#include <array>
#include <cmath>

#include "nsbox/linalg.hpp"

using namespace nsbox;

namespace {
Matrix bell_psi1() {
  Vector v = Vector::Zero(4);
  v(1) = v(2) = 1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}
}  // namespace

TEST_CASE("kron follows the leftmost-most-significant convention") {
  CHECK(max_abs(kron(identity(2), identity(2)) - identity(4)) == 0.0);
  const Matrix xx = kron(pauli(1), pauli(1));
  CHECK(max_abs(Matrix(xx * basis_vector(4, 0)) - Matrix(basis_vector(4, 3))) ==
        0.0);
  const Matrix a = Matrix::Ones(2, 3), b = Matrix::Ones(4, 5);
  const Matrix k = kron(a, b);
  CHECK(k.rows() == 8);
  CHECK(k.cols() == 15);
}

TEST_CASE("partial traces of product and entangled states") {
  Rng rng(7);
  const Matrix rho = random_density_matrix(2, 2, rng).matrix();
  const Matrix sigma = 0.5 * random_density_matrix(3, 3, rng).matrix();
  CHECK(max_abs(partial_trace(kron(rho, sigma), 2, 3, Subsystem::First) -
                sigma.trace() * rho) < 1e-14);
  const Vector phi = max_entangled(2);
  const Matrix p = phi * phi.adjoint();
  CHECK(max_abs(partial_trace(p, 2, 2, Subsystem::Second) - identity(2) / 2.0) <
        1e-15);
  CHECK(max_abs(partial_trace(bell_psi1(), 2, 2, Subsystem::First) -
                identity(2) / 2.0) < 1e-15);
}

TEST_CASE("multi-factor partial trace and permutation agree with kron") {
  Rng rng(3);
  const Matrix a = random_density_matrix(2, 2, rng).matrix();
  const Matrix b = random_density_matrix(3, 2, rng).matrix();
  const Matrix c = random_density_matrix(2, 1, rng).matrix();
  const Matrix abc = kron(kron(a, b), c);
  const std::array<Eigen::Index, 3> dims{2, 3, 2};
  CHECK(max_abs(partial_trace(abc, dims, std::array{0, 2}) - kron(a, c)) <
        1e-14);
  CHECK(max_abs(permute_subsystems(abc, dims, std::array{2, 0, 1}) -
                kron(kron(c, a), b)) < 1e-14);
  const Vector u = haar_state(2, rng).amplitudes();
  const Vector v = haar_state(3, rng).amplitudes();
  const std::array<Eigen::Index, 2> d2{2, 3};
  CHECK((permute_subsystems(kron(u, v), d2, std::array{1, 0}) - kron(v, u))
            .norm() < 1e-14);
}

TEST_CASE("Hermitian spectra") {
  const HermitianEigen z = eig_hermitian(pauli(3));
  CHECK(z.values(0) == doctest::Approx(1.0));
  CHECK(z.values(1) == doctest::Approx(-1.0));
  const HermitianEigen m = eig_hermitian(identity(4) / 4.0);
  for (int i = 0; i < 4; ++i) CHECK(m.values(i) == doctest::Approx(0.25));
  // SWAP/4 has eigenvalues {1/4 x3, -1/4}.
  const HermitianEigen s = eig_hermitian(swap_operator(2, 2) / 4.0);
  CHECK(s.values(0) == doctest::Approx(0.25));
  CHECK(s.values(2) == doctest::Approx(0.25));
  CHECK(s.values(3) == doctest::Approx(-0.25));
  CHECK_THROWS_AS(eig_hermitian(Matrix(pauli(1) * Complex(0, 1) + pauli(3))),
                  std::invalid_argument);
}

TEST_CASE("positivity tests") {
  CHECK(is_psd(identity(2)));
  CHECK_FALSE(is_psd(pauli(3)));
  const Vector phi = max_entangled(2);
  const Matrix shifted = phi * phi.adjoint() - 0.3 * identity(4);
  CHECK(min_eigenvalue(shifted) == doctest::Approx(-0.3));
  CHECK_FALSE(is_psd(shifted, 1e-9));
}

TEST_CASE("density matrix validation") {
  CHECK_THROWS_AS(DensityMatrix(pauli(3)), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(Matrix(identity(2))), std::invalid_argument);
  CHECK_THROWS_AS(PureState(Vector::Ones(2)), std::invalid_argument);
  CHECK(DensityMatrix::maximally_mixed(3).matrix().trace().real() ==
        doctest::Approx(1.0));
}

TEST_CASE("Haar sampling") {
  Rng rng(11);
  CHECK(haar_state(1, rng).amplitudes().norm() == doctest::Approx(1.0));
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const Matrix p = haar_state(2, rng).projector();
    for (int k = 0; k < 3; ++k)
      mean(k) += (pauli(k + 1) * p).trace().real();
  }
  CHECK((mean / n).norm() < 0.02);
  Rng r1(5), r2(5);
  CHECK((haar_state(4, r1).amplitudes() - haar_state(4, r2).amplitudes())
            .norm() == 0.0);
  CHECK(is_unitary(haar_unitary(5, rng)));
}

TEST_CASE("purification") {
  const PureState p0 = purify(DensityMatrix::basis(2, 0));
  CHECK(p0.dim() == 2);
  CHECK(std::abs(p0.amplitudes()(0)) == doctest::Approx(1.0));
  const PureState mixed = purify(DensityMatrix::maximally_mixed(2));
  const Matrix marginal =
      partial_trace(mixed.projector(), 2, 2, Subsystem::First);
  CHECK(max_abs(marginal - identity(2) / 2.0) < 1e-14);
  // Maximally entangled: the other marginal is maximally mixed too.
  CHECK(max_abs(partial_trace(mixed.projector(), 2, 2, Subsystem::Second) -
                identity(2) / 2.0) < 1e-14);
  Rng rng(2);
  const DensityMatrix rho = random_density_matrix(4, 3, rng);
  const PureState psi = purify(rho);
  CHECK(psi.dim() == 12);
  CHECK(max_abs(partial_trace(psi.projector(), 4, 3, Subsystem::First) -
                rho.matrix()) < 1e-10);
}

TEST_CASE("norms") {
  CHECK(trace_norm(pauli(3)) == doctest::Approx(2.0));
  CHECK(max_abs(pauli(2)) == doctest::Approx(1.0));
}
