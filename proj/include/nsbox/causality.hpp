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

// Causality analysis of bipartite channels.
//
// A map is A↛B semicausal when nothing Alice does to her input before the
// map changes Bob's output marginal. On the Choi state
// ρ = C(Λ) with factors (A_ref, B_ref, A_out, B_out) this is equivalent to
//
//   Tr_{A_out} ρ = I/d_A ⊗ Tr_{A_ref A_out} ρ.
//
// Residual conventions: verdict residuals are max-norm (largest absolute
// entry) deviations from that equality. Witness distinguishability is the
// trace norm ||ρ_0 - ρ_1||_1 of the two receiver marginals, which ranges
// over [0, 2].

#include <optional>
#include <variant>
#include <vector>

#include "nsbox/channel.hpp"

namespace nsbox {

inline constexpr double kTolCausal = 1e-9;
inline constexpr double kTolSemilocal = 1e-8;
inline constexpr double kTolUnitaryForm = 1e-8;

enum class Direction { AtoB, BtoA };
enum class Party { A, B };

struct SemicausalityResult {
  bool holds = false;
  double residual = 0.0;
};

struct CausalityVerdict {
  bool semicausal_a_to_b = false;
  bool semicausal_b_to_a = false;
  bool causal = false;
  double residual_a_to_b = 0.0;
  double residual_b_to_a = 0.0;
};

struct SignallingWitness {
  Direction direction = Direction::AtoB;
  Vector sender_state;    // local input of the signalling party
  Vector receiver_state;  // local input of the receiving party
  PureState input;        // product input in A ⊗ B order
  double distinguishability = 0.0;
};

// --- verdicts ---------------------------------------------------------------

/// Max-norm violation of the Choi-reduction criterion for an arbitrary
/// linear map with the given factorizations.
double semicausality_residual(const LinearMapChoi& choi, Factorization in,
                              Factorization out, Direction direction);

SemicausalityResult is_semicausal(const BipartiteChannel& ch,
                                  Direction direction,
                                  double tol = kTolCausal);
SemicausalityResult is_semicausal_a_to_b(const BipartiteChannel& ch,
                                         double tol = kTolCausal);
CausalityVerdict is_causal(const BipartiteChannel& ch, double tol = kTolCausal);
CausalityVerdict is_causal(const LinearMapChoi& choi, Factorization in,
                           Factorization out, double tol = kTolCausal);

/// Superoperator form of the criterion: compares the Choi matrices of
/// Tr_A∘Λ∘(D_A⊗id) and Tr_A∘Λ (or the B-side analogue).
double superoperator_semicausality_residual(const BipartiteChannel& ch,
                                            Direction direction);

/// Samples input states and local sender channels Γ straight from the
/// definition and returns the largest receiver-marginal deviation seen.
double definitional_semicausality_probe(const BipartiteChannel& ch,
                                        Direction direction, int trials,
                                        Rng& rng);

/// Product input that best distinguishes "sender does nothing" from "sender
/// depolarizes". Searches the product-projector basis grid first, then
/// refines locally. Throws DomainError when the map does not signal in the
/// requested direction.
SignallingWitness signalling_witness(const BipartiteChannel& ch,
                                     Direction direction,
                                     double tol = kTolCausal);

// --- reduced maps -----------------------------------------------------------

/// Λ_A[ρ_A] = Tr_B Λ[ρ_A ⊗ I/d_B] (side A, requires B↛A semicausality) or
/// Λ_B[ρ_B] = Tr_A Λ[I/d_A ⊗ ρ_B] (side B, requires A↛B semicausality).
Channel reduced_map(const BipartiteChannel& ch, Party side,
                    double tol = kTolCausal);

/// True iff both causal maps have the same reduced maps on A and on B.
bool same_reduced_class(const BipartiteChannel& first,
                        const BipartiteChannel& second,
                        double tol = kTolCausal);

// --- semilocalization -------------------------------------------------------

/// One-way (B -> A) realization of an A↛B semicausal map: Bob applies the
/// Stinespring isometry of his reduced map into an ancilla C, then Alice
/// applies a unitary on A ⊗ C.
struct Semilocalization {
  Factorization in;
  Factorization out;
  Eigen::Index d_e = 0;  // Stinespring environment (Choi rank of Λ_B)
  Eigen::Index d_c = 0;  // ancilla handed from Bob to Alice
  Matrix v_be;           // isometry B -> B_out ⊗ E, shape (d_Bout d_E) x d_B
  Matrix u_ac;           // unitary on A ⊗ C
  double reconstruction_error = 0.0;
};

Semilocalization semilocalize(const BipartiteChannel& ch,
                              double tol = kTolCausal);

/// Choi state of the map realized by the semilocal circuit.
Matrix semilocal_choi(const Semilocalization& s);

// --- unitaries --------------------------------------------------------------

struct ProductForm {
  Matrix u_a;
  Matrix u_b;
};
/// u = (v ⊗ w)·SWAP, i.e. u|ψ_A ψ_B> = v|ψ_B> ⊗ w|ψ_A>.
struct SwapProductForm {
  Matrix v;
  Matrix w;
};
struct EntanglingForm {};

using UnitaryForm = std::variant<ProductForm, SwapProductForm, EntanglingForm>;

UnitaryForm unitary_form(const Matrix& u, Eigen::Index dA, Eigen::Index dB,
                         double tol = kTolUnitaryForm);
bool unitary_is_signalling(const Matrix& u, Eigen::Index dA, Eigen::Index dB);

// --- assignment tables ------------------------------------------------------

/// The d² states |k>, (|l>+|k>)/√2, (|l>+i|k>)/√2 (l < k) whose projectors
/// span the operators on C^d.
std::vector<PureState> product_projector_basis(Eigen::Index d);

/// Images ρ^{ij} = Λ[P^A_i ⊗ P^B_j] of a product operator basis.
struct AssignmentTable {
  std::vector<PureState> basis_a;
  std::vector<PureState> basis_b;
  Factorization out;
  std::vector<DensityMatrix> cells;  // row-major: i * |basis_b| + j

  [[nodiscard]] const DensityMatrix& cell(std::size_t i, std::size_t j) const {
    return cells.at(i * basis_b.size() + j);
  }
  /// Max-norm spread of row (Tr_B) and column (Tr_A) marginals.
  [[nodiscard]] double marginal_inconsistency() const;
};

AssignmentTable tabulate(const BipartiteChannel& ch);

struct TableChannel {
  LinearMapChoi choi;
  double min_eigenvalue = 0.0;
  std::optional<BipartiteChannel> channel;  // set iff the Choi is PSD
};

/// Unique linear extension of a table. Throws std::invalid_argument when the
/// row/column marginals are inconsistent.
TableChannel channel_from_table(const AssignmentTable& table,
                                double tol = kTolCausal);

}  // namespace nsbox
