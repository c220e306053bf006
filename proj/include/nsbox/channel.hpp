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

// Quantum channels in Kraus and Choi form.
//
// Choi convention: for a map Λ with input dimension d_in the Choi state is
//   C(Λ) = (id ⊗ Λ)[|ψ+><ψ+|],   |ψ+> = d_in^{-1/2} sum_i |i>|i>,
// with the reference copy of the input as the first factor and the output as
// the second. For bipartite maps this gives the factor order
// (A_ref, B_ref, A_out, B_out). A trace-preserving CP map has a Choi state
// that is positive, has unit trace and reference marginal I/d_in.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nsbox/linalg.hpp"

namespace nsbox {

inline constexpr double kTolTp = 1e-9;

/// Dimensions of the A|B split of a bipartite space.
struct Factorization {
  Eigen::Index a = 1;
  Eigen::Index b = 1;

  [[nodiscard]] Eigen::Index total() const { return a * b; }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Completely positive trace-preserving map in Kraus form.
class Channel {
 public:
  Channel(Eigen::Index d_in, Eigen::Index d_out, std::vector<Matrix> kraus,
          double tol = kTolTp);

  [[nodiscard]] Eigen::Index d_in() const { return d_in_; }
  [[nodiscard]] Eigen::Index d_out() const { return d_out_; }
  [[nodiscard]] const std::vector<Matrix>& kraus() const { return kraus_; }

  /// Linear action on an arbitrary d_in x d_in operator.
  [[nodiscard]] Matrix apply(const Matrix& x) const;
  [[nodiscard]] DensityMatrix apply(const DensityMatrix& rho) const;

 private:
  Eigen::Index d_in_;
  Eigen::Index d_out_;
  std::vector<Matrix> kraus_;
};

/// Channel on A ⊗ B with known factorization of input and output.
class BipartiteChannel {
 public:
  BipartiteChannel(Channel base, Factorization in, Factorization out);

  [[nodiscard]] const Channel& base() const { return base_; }
  [[nodiscard]] Factorization in() const { return in_; }
  [[nodiscard]] Factorization out() const { return out_; }

  [[nodiscard]] Matrix apply(const Matrix& x) const { return base_.apply(x); }
  [[nodiscard]] DensityMatrix apply(const DensityMatrix& rho) const {
    return base_.apply(rho);
  }

 private:
  Channel base_;
  Factorization in_;
  Factorization out_;
};

/// Choi matrix of a Hermiticity-preserving linear map. Need not be positive.
class LinearMapChoi {
 public:
  LinearMapChoi(Eigen::Index d_in, Eigen::Index d_out, Matrix matrix,
                double tol = kTolHerm);

  [[nodiscard]] Eigen::Index d_in() const { return d_in_; }
  [[nodiscard]] Eigen::Index d_out() const { return d_out_; }
  [[nodiscard]] const Matrix& matrix() const { return matrix_; }

  /// Λ(X) = d_in Tr_ref[(X^T ⊗ I) C].
  [[nodiscard]] Matrix apply(const Matrix& x) const;
  [[nodiscard]] double min_eigenvalue() const;

 private:
  Eigen::Index d_in_;
  Eigen::Index d_out_;
  Matrix matrix_;
};

/// Choi state of a CPTP map: PSD, unit trace, reference marginal I/d_in.
class ChoiState {
 public:
  ChoiState(Eigen::Index d_in, Eigen::Index d_out, Matrix matrix,
            double tol = kTolPsd);

  [[nodiscard]] Eigen::Index d_in() const { return map_.d_in(); }
  [[nodiscard]] Eigen::Index d_out() const { return map_.d_out(); }
  [[nodiscard]] const Matrix& matrix() const { return map_.matrix(); }
  [[nodiscard]] const LinearMapChoi& as_linear_map() const { return map_; }
  [[nodiscard]] Matrix apply(const Matrix& x) const { return map_.apply(x); }

 private:
  LinearMapChoi map_;
};

/// Positive operator-valued measure.
class Povm {
 public:
  explicit Povm(std::vector<Matrix> effects, double tol = kTolTp);

  [[nodiscard]] const std::vector<Matrix>& effects() const { return effects_; }
  [[nodiscard]] Eigen::Index dim() const { return effects_.front().rows(); }
  [[nodiscard]] std::size_t size() const { return effects_.size(); }

 private:
  std::vector<Matrix> effects_;
};

// --- Kraus <-> Choi ---------------------------------------------------------

ChoiState kraus_to_choi(const Channel& ch);
/// Choi matrix of any linear map given by its action on matrix units.
LinearMapChoi choi_of_linear_map(Eigen::Index d_in, Eigen::Index d_out,
                                 const std::function<Matrix(const Matrix&)>& f);
/// Spectral Kraus decomposition. Eigenvalues with |λ| < tol are dropped; any
/// eigenvalue below -tol raises DomainError (the map is not CP).
Channel choi_to_kraus(const LinearMapChoi& c, double tol = kTolPsd);
Channel choi_to_kraus(const ChoiState& c, double tol = kTolPsd);

/// Reduces the Kraus list to the Choi rank.
Channel canonical_kraus(const Channel& ch);

// --- composition ------------------------------------------------------------

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho);
/// f ∘ g: g acts first.
Channel compose(const Channel& f, const Channel& g);
BipartiteChannel compose(const BipartiteChannel& f, const BipartiteChannel& g);
Channel tensor(const Channel& f, const Channel& g);
BipartiteChannel tensor_bipartite(const Channel& a, const Channel& b);
/// p·first + (1-p)·second.
Channel mixture(double p, const Channel& first, const Channel& second);
BipartiteChannel mixture(double p, const BipartiteChannel& first,
                         const BipartiteChannel& second);
/// Exchanges the roles of A and B on both input and output.
BipartiteChannel swap_parties(const BipartiteChannel& ch);

// --- standard channels ------------------------------------------------------

Channel identity_channel(Eigen::Index d);
Channel unitary_channel(const Matrix& u);
BipartiteChannel unitary_channel(const Matrix& u, Factorization f);
/// D[X] = Tr(X) I/d.
Channel depolarizing(Eigen::Index d);
/// Replace-with-σ map.
Channel constant_channel(Eigen::Index d_in, const DensityMatrix& sigma);
/// Tr over the first (Subsystem::First) or second factor.
Channel partial_trace_channel(Factorization f, Subsystem traced);
/// Haar-random channel with `rank` Kraus operators (Stinespring isometry
/// drawn from a Haar unitary).
Channel random_channel(Eigen::Index d_in, Eigen::Index d_out,
                       Eigen::Index rank, Rng& rng);

/// The d² unitaries L^k F^l, k,l = 1..d, with L|j> = |j+1 mod d> and
/// F|j> = exp(2πij/d)|j>. Their uniform conjugation mixture is D.
std::vector<Matrix> shift_clock_unitaries(Eigen::Index d);

// --- positive maps and structural mixtures ----------------------------------

enum class PositiveMapKind { Transpose, Reflection, PauliXi };

/// Choi matrix of a positive, not completely positive map on dimension d.
/// PauliXi is defined on two qubits only (d == 4) and flips the sign of every
/// σ_α⊗σ_β component with α, β ≠ 0.
LinearMapChoi positive_map(PositiveMapKind kind, Eigen::Index d);

/// Largest p in [0, 1] such that p·C + (1-p)·I/(d_in d_out) is PSD:
/// 1/(1 - D λ_min) when λ_min < 0, else 1.
double max_cp_mixing(const LinearMapChoi& m);
/// p·Λ_P + (1-p)·D as a channel. DomainError when the mixture is not CP.
Channel mix_with_depolarizing(const LinearMapChoi& m, double p,
                              double tol = kTolPsd);
LinearMapChoi mix_with_depolarizing_choi(const LinearMapChoi& m, double p);

// --- entanglement-breaking channels -----------------------------------------

/// Λ[ρ] = sum_i Tr(F_i ρ) σ_i.
BipartiteChannel ebt_channel(const Povm& povm,
                             std::span<const DensityMatrix> outputs,
                             Factorization in, Factorization out);
Channel ebt_channel(const Povm& povm, std::span<const DensityMatrix> outputs);

}  // namespace nsbox
