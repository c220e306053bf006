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

#include "nsbox/boxes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace nsbox {

namespace {

using Index = Eigen::Index;

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument(
        fmt::format("alpha must lie in [0, 1], got {}", alpha));
}

Matrix dephase(const Matrix& m) { return Matrix(m.diagonal().asDiagonal()); }

// Two-outcome EBT box on 2⊗2: outcome |11> prepares `hit`, else `miss`.
BipartiteChannel two_outcome_box(const Matrix& hit, const Matrix& miss,
                                 Index k) {
  const Vector v11 = basis_vector(4, 3);
  const Matrix p11 = v11 * v11.adjoint();
  const Povm povm({p11, Matrix(identity(4) - p11)});
  const std::vector<DensityMatrix> outs{DensityMatrix(hit),
                                        DensityMatrix(miss)};
  return ebt_channel(povm, outs, {2, 2}, {k, k});
}

}  // namespace

ClassicalBox::ClassicalBox(int n_x, int n_y, int n_a, int n_b,
                           std::vector<double> p, double tol)
    : n_x_(n_x), n_y_(n_y), n_a_(n_a), n_b_(n_b), p_(std::move(p)) {
  if (n_x < 1 || n_y < 1 || n_a < 1 || n_b < 1)
    throw std::invalid_argument("ClassicalBox: alphabet sizes must be >= 1");
  if (p_.size() != static_cast<std::size_t>(n_x) * n_y * n_a * n_b)
    throw std::invalid_argument("ClassicalBox: tensor size mismatch");
  for (double v : p_)
    if (!(v >= -tol && v <= 1.0 + tol))
      throw std::invalid_argument(
          fmt::format("ClassicalBox: entry {} outside [0, 1]", v));
  for (int x = 0; x < n_x; ++x)
    for (int y = 0; y < n_y; ++y) {
      double s = 0.0;
      for (int a = 0; a < n_a; ++a)
        for (int b = 0; b < n_b; ++b) s += p_[index(a, b, x, y)];
      if (std::abs(s - 1.0) > tol)
        throw std::invalid_argument(fmt::format(
            "ClassicalBox: p(.|{},{}) sums to {:.17g}", x, y, s));
    }
}

bool is_nonsignalling_box(const ClassicalBox& b, double tol) {
  for (int x = 0; x < b.n_x(); ++x)
    for (int a = 0; a < b.n_a(); ++a) {
      double ref = 0.0;
      for (int y = 0; y < b.n_y(); ++y) {
        double m = 0.0;
        for (int bb = 0; bb < b.n_b(); ++bb) m += b(a, bb, x, y);
        if (y == 0)
          ref = m;
        else if (std::abs(m - ref) > tol)
          return false;
      }
    }
  for (int y = 0; y < b.n_y(); ++y)
    for (int bb = 0; bb < b.n_b(); ++bb) {
      double ref = 0.0;
      for (int x = 0; x < b.n_x(); ++x) {
        double m = 0.0;
        for (int a = 0; a < b.n_a(); ++a) m += b(a, bb, x, y);
        if (x == 0)
          ref = m;
        else if (std::abs(m - ref) > tol)
          return false;
      }
    }
  return true;
}

ClassicalBox pr_extreme(int k, int d_a, int d_b) {
  if (k < 2 || k > std::min(d_a, d_b))
    throw std::invalid_argument(fmt::format(
        "pr_extreme: need 2 <= k <= min(dA, dB), got k = {}", k));
  std::vector<double> p(4 * static_cast<std::size_t>(d_a) * d_b, 0.0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < k; ++a) {
        const int b = (a + x * y) % k;
        p[((static_cast<std::size_t>(x) * 2 + y) * d_a + a) * d_b + b] =
            1.0 / k;
      }
  return ClassicalBox(2, 2, d_a, d_b, std::move(p));
}

ClassicalBox measure_box(const BipartiteChannel& ch) {
  if (ch.in() != Factorization{2, 2})
    throw DimensionError("measure_box: input must be 2⊗2");
  const int na = static_cast<int>(ch.out().a);
  const int nb = static_cast<int>(ch.out().b);
  std::vector<double> p(4 * static_cast<std::size_t>(na) * nb);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const Vector in = basis_vector(4, 2 * x + y);
      const Matrix out = ch.apply(Matrix(in * in.adjoint()));
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b)
          p[((static_cast<std::size_t>(x) * 2 + y) * na + a) * nb + b] =
              std::clamp(out(a * nb + b, a * nb + b).real(), 0.0, 1.0);
    }
  return ClassicalBox(2, 2, na, nb, std::move(p));
}

Vector max_entangled_k(int k) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  Vector v = Vector::Zero(static_cast<Index>(k) * k);
  for (int i = 0; i < k; ++i) v(i * k + i) = 1.0 / std::sqrt(double(k));
  return v;
}

Matrix cyclic_shift(int k) {
  Matrix s = Matrix::Zero(k, k);
  for (int b = 0; b < k; ++b) s((b + 1) % k, b) = 1.0;
  return s;
}

BipartiteChannel lambda_k(int k) {
  const Vector psi = max_entangled_k(k);
  const Vector shifted = kron(identity(k), cyclic_shift(k)) * psi;
  return two_outcome_box(shifted * shifted.adjoint(), psi * psi.adjoint(), k);
}

BipartiteChannel lambda_k_dilation(int k) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  // Register order (a, b, x, y).
  const Index kk = static_cast<Index>(k) * k;
  Matrix u = Matrix::Zero(kk * 4, kk * 4);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          const int b2 = (b + x * y) % k;
          u(((a * k + b2) * 2 + x) * 2 + y, ((a * k + b) * 2 + x) * 2 + y) = 1;
        }
  const Matrix prep = kron(Matrix(max_entangled_k(k)), identity(4));
  std::vector<Matrix> kraus;
  for (Index j = 0; j < 4; ++j) {
    const Matrix project =
        kron(identity(kk), Matrix(basis_vector(4, j).adjoint()));
    kraus.push_back(project * u * prep);
  }
  return BipartiteChannel(Channel(4, kk, std::move(kraus)), {2, 2}, {k, k});
}

BipartiteChannel lambda_k_prime(int k) {
  const Vector psi = max_entangled_k(k);
  const Matrix shift = kron(identity(k), cyclic_shift(k));
  Matrix rho = Matrix::Zero(static_cast<Index>(k) * k, static_cast<Index>(k) * k);
  for (int i = 0; i < k; ++i) rho(i * k + i, i * k + i) = 1.0 / k;
  return two_outcome_box(shift * rho * shift.adjoint(), psi * psi.adjoint(),
                         k);
}

Vector psi0() { return max_entangled_k(2); }

Vector psi1() {
  Vector v = Vector::Zero(4);
  v(1) = v(2) = 1.0 / std::sqrt(2.0);
  return v;
}

BipartiteChannel lambda_alpha(double alpha) {
  check_alpha(alpha);
  const Matrix p0 = psi0() * psi0().adjoint();
  const Matrix p1 = psi1() * psi1().adjoint();
  return two_outcome_box((1.0 - alpha) * p0 + alpha * p1, p0, 2);
}

BipartiteChannel lambda_alpha_prime(double alpha) {
  check_alpha(alpha);
  const Matrix p0 = dephase(psi0() * psi0().adjoint());
  const Matrix p1 = dephase(psi1() * psi1().adjoint());
  return two_outcome_box((1.0 - alpha) * p0 + alpha * p1, p0, 2);
}

BipartiteChannel lambda_nl() { return lambda_alpha(1.0); }
BipartiteChannel lambda_nl_prime() { return lambda_alpha_prime(1.0); }

BipartiteChannel box_channel(const QuantumBoxFamily& family) {
  if (family.k < 2) throw std::invalid_argument("k must be >= 2");
  if (family.k == 2)
    return family.coherent ? lambda_alpha(family.alpha)
                           : lambda_alpha_prime(family.alpha);
  return family.coherent ? lambda_k(family.k) : lambda_k_prime(family.k);
}

}  // namespace nsbox
