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

// Random instances shared by the unit and acceptance tests.

#include <vector>

#include "nsbox/boxes.hpp"
#include "nsbox/causality.hpp"
#include "nsbox/channel.hpp"
#include "nsbox/linalg.hpp"

namespace nsbox::testing {

inline Matrix cnot() {
  Matrix u = Matrix::Zero(4, 4);
  u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
  return u;
}

/// n-outcome POVM on C^d from a Haar isometry.
inline Povm random_povm(Eigen::Index d, Eigen::Index outcomes, Rng& rng) {
  const Matrix u = haar_unitary(d * outcomes, rng);
  const Matrix v = u.leftCols(d);
  std::vector<Matrix> effects;
  for (Eigen::Index i = 0; i < outcomes; ++i) {
    const Matrix block = v.middleRows(i * d, d);
    effects.push_back(block.adjoint() * block);
  }
  return Povm(std::move(effects));
}

inline Matrix conj_by(const Matrix& u, const Matrix& rho) {
  return u * rho * u.adjoint();
}

/// EBT map with product POVM F_i ⊗ G_j and outputs
/// (V_i ⊗ W_j) σ (V_i ⊗ W_j)†. Each output marginal depends on one
/// outcome only, so the map is causal.
inline BipartiteChannel random_causal_ebt(Rng& rng) {
  const Povm f = random_povm(2, 2, rng), g = random_povm(2, 2, rng);
  const Matrix sigma = random_density_matrix(4, 4, rng).matrix();
  const std::vector<Matrix> v{haar_unitary(2, rng), haar_unitary(2, rng)};
  const std::vector<Matrix> w{haar_unitary(2, rng), haar_unitary(2, rng)};
  std::vector<Matrix> effects;
  std::vector<DensityMatrix> outs;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      effects.push_back(kron(f.effects()[i], g.effects()[j]));
      outs.emplace_back(conj_by(kron(v[i], w[j]), sigma));
    }
  return ebt_channel(Povm(effects), outs, {2, 2}, {2, 2});
}

/// A↛B semicausal EBT map: Bob's output marginal depends on his outcome
/// only, Alice's on both.
inline BipartiteChannel random_semicausal_ebt(Rng& rng) {
  const Povm f = random_povm(2, 2, rng), g = random_povm(2, 2, rng);
  const Matrix sigma = random_density_matrix(4, 4, rng).matrix();
  const std::vector<Matrix> w{haar_unitary(2, rng), haar_unitary(2, rng)};
  std::vector<Matrix> effects;
  std::vector<DensityMatrix> outs;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      effects.push_back(kron(f.effects()[i], g.effects()[j]));
      outs.emplace_back(conj_by(kron(haar_unitary(2, rng), w[j]), sigma));
    }
  return ebt_channel(Povm(effects), outs, {2, 2}, {2, 2});
}

inline Matrix random_product_unitary(Rng& rng) {
  return kron(haar_unitary(2, rng), haar_unitary(2, rng));
}

inline BipartiteChannel random_product_channel(Rng& rng) {
  std::uniform_int_distribution<Eigen::Index> rank(1, 4);
  return tensor_bipartite(random_channel(2, 2, rank(rng), rng),
                          random_channel(2, 2, rank(rng), rng));
}

/// Action deviation on all matrix units.
inline double action_distance(const Channel& a, const Channel& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.d_in(); ++i)
    for (Eigen::Index j = 0; j < a.d_in(); ++j) {
      Matrix e = Matrix::Zero(a.d_in(), a.d_in());
      e(i, j) = 1.0;
      worst = std::max(worst, max_abs(a.apply(e) - b.apply(e)));
    }
  return worst;
}

/// Smallest eigenvalue of the partial transpose on the second qubit.
inline double ppt_min_eigenvalue(const Matrix& rho) {
  Matrix pt = rho;
  for (int a = 0; a < 2; ++a)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b = 0; b < 2; ++b)
        for (int b2 = 0; b2 < 2; ++b2)
          pt(a * 2 + b, a2 * 2 + b2) = rho(a * 2 + b2, a2 * 2 + b);
  return min_eigenvalue(pt);
}

}  // namespace nsbox::testing
