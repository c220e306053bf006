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

#include "nsbox/causality.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "minimize.hpp"

namespace nsbox {

namespace {

using Index = Eigen::Index;

const char* name(Direction d) { return d == Direction::AtoB ? "A->B" : "B->A"; }

SignallingWitness flip(SignallingWitness w) {
  w.direction = w.direction == Direction::AtoB ? Direction::BtoA
                                               : Direction::AtoB;
  w.input = PureState(kron(w.receiver_state, w.sender_state));
  return w;
}

// Receiver marginal under "do nothing" minus under "sender depolarizes",
// for the A -> B direction.
Matrix marginal_gap(const BipartiteChannel& ch, const Vector& a,
                    const Vector& b) {
  const Index dA = ch.in().a;
  const Matrix pb = b * b.adjoint();
  const Matrix kept = ch.apply(kron(Matrix(a * a.adjoint()), pb));
  const Matrix dep = ch.apply(kron(identity(dA) / static_cast<double>(dA), pb));
  return partial_trace(kept - dep, ch.out().a, ch.out().b, Subsystem::Second);
}

Vector unpack(std::span<const double> x, std::size_t offset, Index d) {
  Vector v(d);
  for (Index k = 0; k < d; ++k)
    v(k) = Complex(x[offset + 2 * k], x[offset + 2 * k + 1]);
  const double n = v.norm();
  return n > 0.0 ? Vector(v / n) : basis_vector(d, 0);
}

SignallingWitness witness_a_to_b(const BipartiteChannel& ch) {
  const Index dA = ch.in().a, dB = ch.in().b;
  const auto grid_a = product_projector_basis(std::max<Index>(dA, 2));
  const auto grid_b = product_projector_basis(std::max<Index>(dB, 2));
  auto local = [](const PureState& s, Index d) {
    return Vector(s.amplitudes().head(d) / s.amplitudes().head(d).norm());
  };

  double best = -1.0;
  Vector best_a, best_b;
  for (const auto& sa : grid_a) {
    if (sa.amplitudes().head(dA).norm() < 0.5) continue;
    const Vector a = local(sa, dA);
    for (const auto& sb : grid_b) {
      if (sb.amplitudes().head(dB).norm() < 0.5) continue;
      const Vector b = local(sb, dB);
      const double v = trace_norm(marginal_gap(ch, a, b));
      if (v > best + 1e-12) {
        best = v;
        best_a = a;
        best_b = b;
      }
    }
  }

  std::vector<double> start;
  for (Index k = 0; k < dA; ++k) {
    start.push_back(best_a(k).real());
    start.push_back(best_a(k).imag());
  }
  for (Index k = 0; k < dB; ++k) {
    start.push_back(best_b(k).real());
    start.push_back(best_b(k).imag());
  }
  const detail::Objective objective = [&](std::span<const double> x) {
    return -trace_norm(
        marginal_gap(ch, unpack(x, 0, dA), unpack(x, 2 * dA, dB)));
  };
  const auto refined = detail::nelder_mead(objective, start, 0.1, 1e-9, 2000);
  if (-refined.value > best + 1e-12) {
    best = -refined.value;
    best_a = unpack(refined.x, 0, dA);
    best_b = unpack(refined.x, 2 * dA, dB);
  }
  return SignallingWitness{Direction::AtoB, best_a, best_b,
                           PureState(kron(best_a, best_b)), best};
}

}  // namespace

double semicausality_residual(const LinearMapChoi& choi, Factorization in,
                              Factorization out, Direction direction) {
  if (choi.d_in() != in.total() || choi.d_out() != out.total())
    throw DimensionError("semicausality_residual: factorization mismatch");
  const std::array<Index, 4> dims{in.a, in.b, out.a, out.b};
  const Matrix& c = choi.matrix();
  if (direction == Direction::AtoB) {
    const Matrix lhs = partial_trace(c, dims, std::array{0, 1, 3});
    const Matrix bb = partial_trace(c, dims, std::array{1, 3});
    const Matrix rhs = kron(identity(in.a) / static_cast<double>(in.a), bb);
    return max_abs(lhs - rhs);
  }
  const Matrix lhs = partial_trace(c, dims, std::array{0, 1, 2});
  const Matrix aa = partial_trace(c, dims, std::array{0, 2});
  // (A_ref, A_out, B_ref) -> (A_ref, B_ref, A_out)
  const std::array<Index, 3> sub{in.a, out.a, in.b};
  const Matrix rhs = permute_subsystems(
      kron(aa, identity(in.b) / static_cast<double>(in.b)), sub,
      std::array{0, 2, 1});
  return max_abs(lhs - rhs);
}

SemicausalityResult is_semicausal(const BipartiteChannel& ch,
                                  Direction direction, double tol) {
  const ChoiState choi = kraus_to_choi(ch.base());
  const double r =
      semicausality_residual(choi.as_linear_map(), ch.in(), ch.out(), direction);
  return {r <= tol, r};
}

SemicausalityResult is_semicausal_a_to_b(const BipartiteChannel& ch,
                                         double tol) {
  return is_semicausal(ch, Direction::AtoB, tol);
}

CausalityVerdict is_causal(const LinearMapChoi& choi, Factorization in,
                           Factorization out, double tol) {
  CausalityVerdict v;
  v.residual_a_to_b = semicausality_residual(choi, in, out, Direction::AtoB);
  v.residual_b_to_a = semicausality_residual(choi, in, out, Direction::BtoA);
  v.semicausal_a_to_b = v.residual_a_to_b <= tol;
  v.semicausal_b_to_a = v.residual_b_to_a <= tol;
  v.causal = v.semicausal_a_to_b && v.semicausal_b_to_a;
  return v;
}

CausalityVerdict is_causal(const BipartiteChannel& ch, double tol) {
  return is_causal(kraus_to_choi(ch.base()).as_linear_map(), ch.in(), ch.out(),
                   tol);
}

double superoperator_semicausality_residual(const BipartiteChannel& ch,
                                            Direction direction) {
  if (direction == Direction::BtoA)
    return superoperator_semicausality_residual(swap_parties(ch),
                                                Direction::AtoB);
  const Channel dep_a =
      tensor(depolarizing(ch.in().a), identity_channel(ch.in().b));
  const Channel trace_a = partial_trace_channel(ch.out(), Subsystem::First);
  const Channel lhs = compose(trace_a, compose(ch.base(), dep_a));
  const Channel rhs = compose(trace_a, ch.base());
  return max_abs(kraus_to_choi(lhs).matrix() - kraus_to_choi(rhs).matrix());
}

double definitional_semicausality_probe(const BipartiteChannel& ch,
                                        Direction direction, int trials,
                                        Rng& rng) {
  if (direction == Direction::BtoA)
    return definitional_semicausality_probe(swap_parties(ch), Direction::AtoB,
                                            trials, rng);
  const Index dA = ch.in().a, dB = ch.in().b;
  std::uniform_int_distribution<Index> rank_dist(1, dA * dA);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Matrix rho;
    switch (t % 3) {
      case 0:  // pure product
        rho = kron(haar_state(dA, rng).projector(),
                   haar_state(dB, rng).projector());
        break;
      case 1:  // pure, generically entangled
        rho = haar_state(dA * dB, rng).projector();
        break;
      default:  // mixed
        rho = random_density_matrix(dA * dB, 2, rng).matrix();
        break;
    }
    const Channel gamma = random_channel(dA, dA, rank_dist(rng), rng);
    const Matrix moved =
        tensor(gamma, identity_channel(dB)).apply(rho);
    const Matrix gap = ch.apply(rho) - ch.apply(moved);
    worst = std::max(
        worst,
        max_abs(partial_trace(gap, ch.out().a, ch.out().b, Subsystem::Second)));
  }
  return worst;
}

SignallingWitness signalling_witness(const BipartiteChannel& ch,
                                     Direction direction, double tol) {
  const SemicausalityResult check = is_semicausal(ch, direction, tol);
  if (check.holds)
    throw DomainError(fmt::format(
        "signalling_witness: map does not signal {} (residual {:.3g})",
        name(direction), check.residual));
  SignallingWitness w = direction == Direction::AtoB
                            ? witness_a_to_b(ch)
                            : flip(witness_a_to_b(swap_parties(ch)));
  if (!(w.distinguishability > tol))
    throw DomainError("signalling_witness: search found no distinguishing input");
  return w;
}

Channel reduced_map(const BipartiteChannel& ch, Party side, double tol) {
  const Direction needed =
      side == Party::A ? Direction::BtoA : Direction::AtoB;
  const SemicausalityResult check = is_semicausal(ch, needed, tol);
  if (!check.holds)
    throw DomainError(fmt::format(
        "reduced_map: side {} needs {} semicausality (residual {:.3g})",
        side == Party::A ? 'A' : 'B', name(needed), check.residual));

  const Index dA = ch.in().a, dB = ch.in().b;
  std::vector<Matrix> append;
  if (side == Party::A) {
    const double w = 1.0 / std::sqrt(static_cast<double>(dB));
    for (Index j = 0; j < dB; ++j)
      append.push_back(w * kron(identity(dA), Matrix(basis_vector(dB, j))));
    const Channel prepare(dA, dA * dB, std::move(append));
    return canonical_kraus(compose(
        partial_trace_channel(ch.out(), Subsystem::Second),
        compose(ch.base(), prepare)));
  }
  const double w = 1.0 / std::sqrt(static_cast<double>(dA));
  for (Index i = 0; i < dA; ++i)
    append.push_back(w * kron(Matrix(basis_vector(dA, i)), identity(dB)));
  const Channel prepare(dB, dA * dB, std::move(append));
  return canonical_kraus(compose(
      partial_trace_channel(ch.out(), Subsystem::First),
      compose(ch.base(), prepare)));
}

bool same_reduced_class(const BipartiteChannel& first,
                        const BipartiteChannel& second, double tol) {
  for (const auto* ch : {&first, &second})
    if (!is_causal(*ch, tol).causal)
      throw DomainError(
          "same_reduced_class: reduced-map classes are defined for causal "
          "maps only");
  for (Party side : {Party::A, Party::B}) {
    const Channel r1 = reduced_map(first, side, tol);
    const Channel r2 = reduced_map(second, side, tol);
    if (r1.d_in() != r2.d_in() || r1.d_out() != r2.d_out()) return false;
    if (max_abs(kraus_to_choi(r1).matrix() - kraus_to_choi(r2).matrix()) > tol)
      return false;
  }
  return true;
}

// Factor order of the circuit register: (A', B', A, B, C). B holds B_in
// before Bob's isometry and B_out after it.
Semilocalization semilocalize(const BipartiteChannel& ch, double tol) {
  const SemicausalityResult check = is_semicausal(ch, Direction::AtoB, tol);
  if (!check.holds)
    throw DomainError(fmt::format(
        "semilocalize: map is not A->B semicausal (residual {:.3g})",
        check.residual));
  if (ch.in().a != ch.out().a)
    throw DimensionError(
        "semilocalize: Alice's input and output dimensions must agree");

  const Index dA = ch.in().a, dB = ch.in().b, dBo = ch.out().b;
  const Channel reduced_b = reduced_map(ch, Party::B, tol);
  const Index dE = static_cast<Index>(reduced_b.kraus().size());

  const ChoiState choi = kraus_to_choi(ch.base());
  const DensityMatrix rho(choi.matrix());
  const PureState target = purify(rho);
  const Index rank = target.dim() / rho.dim();
  const Index dC = std::max(dA * dE, rank);

  Semilocalization s;
  s.in = ch.in();
  s.out = ch.out();
  s.d_e = dE;
  s.d_c = dC;
  s.v_be = Matrix::Zero(dBo * dE, dB);
  for (Index e = 0; e < dE; ++e)
    for (Index r = 0; r < dBo; ++r)
      for (Index b = 0; b < dB; ++b)
        s.v_be(r * dE + e, b) = reduced_b.kraus()[e](r, b);

  // Reference purification: Bob's isometry applied to P+ ⊗ P+ ⊗ |0_C>.
  const Vector reference = [&] {
    const Index total = dA * dB * dA * dBo * dC;
    Vector v = Vector::Zero(total);
    const double amp = 1.0 / std::sqrt(static_cast<double>(dA * dB));
    for (Index a = 0; a < dA; ++a)
      for (Index b = 0; b < dB; ++b)
        for (Index r = 0; r < dBo; ++r)
          for (Index e = 0; e < dE; ++e)
            v((((a * dB + b) * dA + a) * dBo + r) * dC + e) =
                amp * s.v_be(r * dE + e, b);
    return v;
  }();

  // Actual Choi purification, purifier padded into C.
  Vector actual = Vector::Zero(dA * dB * dA * dBo * dC);
  for (Index i = 0; i < rho.dim(); ++i)
    for (Index k = 0; k < rank; ++k)
      actual(i * dC + k) = target.amplitudes()(i * rank + k);

  // Both purify the (A', B', B_out) marginal; regroup as S x P with
  // S = (A', B', B_out) and P = (A, C).
  const std::array<Index, 5> dims{dA, dB, dA, dBo, dC};
  const std::array<int, 5> to_sp{0, 1, 3, 2, 4};
  const Index nS = dA * dB * dBo, nP = dA * dC;
  auto as_matrix = [&](const Vector& v) {
    const Vector p = permute_subsystems(v, dims, to_sp);
    Matrix m(nS, nP);
    for (Index si = 0; si < nS; ++si)
      for (Index pi = 0; pi < nP; ++pi) m(si, pi) = p(si * nP + pi);
    return m;
  };
  const Matrix m_ref = as_matrix(reference);
  const Matrix m_act = as_matrix(actual);

  // Shared eigenbasis of the common marginal aligns degenerate eigenspaces.
  const HermitianEigen sigma = eig_hermitian(m_ref * m_ref.adjoint());
  Index r = 0;
  while (r < sigma.values.size() && sigma.values(r) > 1e-13) ++r;
  Matrix a1(nP, r), a2(nP, r);
  for (Index k = 0; k < r; ++k) {
    const double inv = 1.0 / std::sqrt(sigma.values(k));
    const Vector w = sigma.vectors.col(k);
    a1.col(k) = (inv * (w.adjoint() * m_ref)).transpose();
    a2.col(k) = (inv * (w.adjoint() * m_act)).transpose();
  }
  // Orthonormal completions of the two column spaces.
  auto complement = [nP, r](const Matrix& a) {
    Eigen::HouseholderQR<Matrix> qr(a);
    const Matrix q = qr.householderQ() * identity(nP);
    return Matrix(q.rightCols(nP - r));
  };
  const Matrix b1 = complement(a1);
  const Matrix b2 = complement(a2);
  s.u_ac = a2 * a1.adjoint() + b2 * b1.adjoint();
  // Polar projection onto the nearest unitary.
  Eigen::JacobiSVD<Matrix> svd(s.u_ac, Eigen::ComputeFullU | Eigen::ComputeFullV);
  s.u_ac = svd.matrixU() * svd.matrixV().adjoint();

  s.reconstruction_error = max_abs(semilocal_choi(s) - choi.matrix());
  return s;
}

Matrix semilocal_choi(const Semilocalization& s) {
  const Index dA = s.in.a, dB = s.in.b, dBo = s.out.b, dC = s.d_c,
              dE = s.d_e;
  if (s.v_be.rows() != dBo * dE || s.v_be.cols() != dB ||
      s.u_ac.rows() != dA * dC || s.u_ac.cols() != dA * dC || dC < dE)
    throw DimensionError("semilocal_choi: inconsistent semilocalization");

  // |ψ+>_{A'A} |ψ+>_{B'B} |0>_C in (A', B', A, B_in, C) order.
  Vector state = Vector::Zero(dA * dB * dA * dB * dC);
  const double amp = 1.0 / std::sqrt(static_cast<double>(dA * dB));
  for (Index a = 0; a < dA; ++a)
    for (Index b = 0; b < dB; ++b)
      state((((a * dB + b) * dA + a) * dB + b) * dC) = amp;

  // Bob: |b>|0_C> -> sum_{r,e} V[(r,e), b] |r>|e>.
  Matrix v_bc = Matrix::Zero(dBo * dC, dB * dC);
  for (Index b = 0; b < dB; ++b)
    for (Index r = 0; r < dBo; ++r)
      for (Index e = 0; e < dE; ++e)
        v_bc(r * dC + e, b * dC) = s.v_be(r * dE + e, b);
  state = kron(identity(dA * dB * dA), v_bc) * state;

  // Alice: unitary on (A, C); move them to the end first.
  const std::array<Index, 5> dims{dA, dB, dA, dBo, dC};
  Vector moved = permute_subsystems(state, dims, std::array{0, 1, 3, 2, 4});
  moved = kron(identity(dA * dB * dBo), s.u_ac) * moved;
  const std::array<Index, 5> moved_dims{dA, dB, dBo, dA, dC};
  state = permute_subsystems(moved, moved_dims, std::array{0, 1, 3, 2, 4});

  const Matrix full = state * state.adjoint();
  return partial_trace(full, dims, std::array{0, 1, 2, 3});
}

namespace {

struct OperatorSchmidt {
  double leading_weight = 0.0;  // s_0^2 with sum_k s_k^2 = 1
  Matrix u_a;
  Matrix u_b;
};

// Operator-Schmidt split of u across A|B via its Choi vector.
OperatorSchmidt operator_schmidt(const Matrix& u, Index dA, Index dB) {
  const Index d = dA * dB;
  Matrix m(dA * dA, dB * dB);
  for (Index ai = 0; ai < dA; ++ai)
    for (Index bi = 0; bi < dB; ++bi)
      for (Index ao = 0; ao < dA; ++ao)
        for (Index bo = 0; bo < dB; ++bo)
          m(ao * dA + ai, bo * dB + bi) = u(ao * dB + bo, ai * dB + bi);
  m /= std::sqrt(static_cast<double>(d));
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  OperatorSchmidt out;
  out.leading_weight = sv(0) * sv(0) / sv.squaredNorm();
  out.u_a = Matrix(dA, dA);
  out.u_b = Matrix(dB, dB);
  const Vector left = svd.matrixU().col(0);
  const Vector right = svd.matrixV().col(0).conjugate();
  for (Index ao = 0; ao < dA; ++ao)
    for (Index ai = 0; ai < dA; ++ai)
      out.u_a(ao, ai) = left(ao * dA + ai) * std::sqrt(static_cast<double>(dA));
  for (Index bo = 0; bo < dB; ++bo)
    for (Index bi = 0; bi < dB; ++bi)
      out.u_b(bo, bi) = right(bo * dB + bi) * std::sqrt(static_cast<double>(dB));
  return out;
}

}  // namespace

UnitaryForm unitary_form(const Matrix& u, Index dA, Index dB, double tol) {
  if (u.rows() != dA * dB || u.cols() != dA * dB)
    throw DimensionError("unitary_form: matrix does not match dA * dB");
  if (!is_unitary(u, kTolTp))
    throw std::invalid_argument("unitary_form: matrix is not unitary");

  const OperatorSchmidt direct = operator_schmidt(u, dA, dB);
  if (1.0 - direct.leading_weight < tol)
    return ProductForm{direct.u_a, direct.u_b};
  if (dA == dB) {
    const OperatorSchmidt swapped =
        operator_schmidt(u * swap_operator(dA, dB), dA, dB);
    if (1.0 - swapped.leading_weight < tol)
      return SwapProductForm{swapped.u_a, swapped.u_b};
  }
  return EntanglingForm{};
}

bool unitary_is_signalling(const Matrix& u, Index dA, Index dB) {
  return !std::holds_alternative<ProductForm>(unitary_form(u, dA, dB));
}

std::vector<PureState> product_projector_basis(Index d) {
  if (d < 2) throw DimensionError("product_projector_basis: d must be >= 2");
  std::vector<PureState> out;
  out.reserve(d * d);
  for (Index k = 0; k < d; ++k) out.emplace_back(basis_vector(d, k));
  const double h = 1.0 / std::numbers::sqrt2;
  for (Index k = 1; k < d; ++k)
    for (Index l = 0; l < k; ++l) {
      out.emplace_back(Vector(h * (basis_vector(d, l) + basis_vector(d, k))));
      out.emplace_back(Vector(
          h * (basis_vector(d, l) + Complex(0.0, 1.0) * basis_vector(d, k))));
    }
  return out;
}

double AssignmentTable::marginal_inconsistency() const {
  double worst = 0.0;
  const std::size_t na = basis_a.size(), nb = basis_b.size();
  for (std::size_t i = 0; i < na; ++i) {
    const Matrix ref =
        partial_trace(cell(i, 0).matrix(), out.a, out.b, Subsystem::First);
    for (std::size_t j = 1; j < nb; ++j)
      worst = std::max(worst, max_abs(partial_trace(cell(i, j).matrix(), out.a,
                                                    out.b, Subsystem::First) -
                                      ref));
  }
  for (std::size_t j = 0; j < nb; ++j) {
    const Matrix ref =
        partial_trace(cell(0, j).matrix(), out.a, out.b, Subsystem::Second);
    for (std::size_t i = 1; i < na; ++i)
      worst = std::max(worst, max_abs(partial_trace(cell(i, j).matrix(), out.a,
                                                    out.b, Subsystem::Second) -
                                      ref));
  }
  return worst;
}

AssignmentTable tabulate(const BipartiteChannel& ch) {
  AssignmentTable t{product_projector_basis(ch.in().a),
                    product_projector_basis(ch.in().b), ch.out(), {}};
  for (const auto& pa : t.basis_a)
    for (const auto& pb : t.basis_b)
      t.cells.push_back(
          ch.apply(DensityMatrix(PureState(kron(pa.amplitudes(), pb.amplitudes())))));
  return t;
}

namespace {

// Column c of the result holds the coefficients of the matrix unit with
// column-major index c in the projector basis.
Matrix expansion_coefficients(const std::vector<PureState>& basis) {
  const Index d = basis.front().dim();
  if (static_cast<Index>(basis.size()) != d * d)
    throw DimensionError("channel_from_table: basis must have d^2 elements");
  Matrix vecs(d * d, d * d);
  for (Index i = 0; i < d * d; ++i) {
    const Matrix p = basis[i].projector();
    vecs.col(i) = Eigen::Map<const Vector>(p.data(), d * d);
  }
  Eigen::FullPivLU<Matrix> lu(vecs);
  if (lu.rank() != d * d)
    throw std::invalid_argument("channel_from_table: basis is not spanning");
  return lu.inverse();
}

}  // namespace

TableChannel channel_from_table(const AssignmentTable& table, double tol) {
  const std::size_t na = table.basis_a.size(), nb = table.basis_b.size();
  if (na == 0 || nb == 0 || table.cells.size() != na * nb)
    throw DimensionError("channel_from_table: table shape mismatch");
  for (const auto& c : table.cells)
    if (c.dim() != table.out.total())
      throw DimensionError("channel_from_table: cell dimension mismatch");
  const double spread = table.marginal_inconsistency();
  if (spread > tol)
    throw std::invalid_argument(fmt::format(
        "channel_from_table: inconsistent marginals (spread {:.3g})", spread));

  const Index dA = table.basis_a.front().dim();
  const Index dB = table.basis_b.front().dim();
  const Index din = dA * dB, dout = table.out.total();
  const Matrix ca = expansion_coefficients(table.basis_a);
  const Matrix cb = expansion_coefficients(table.basis_b);

  Matrix choi = Matrix::Zero(din * dout, din * dout);
  for (Index a = 0; a < dA; ++a)
    for (Index a2 = 0; a2 < dA; ++a2)
      for (Index b = 0; b < dB; ++b)
        for (Index b2 = 0; b2 < dB; ++b2) {
          Matrix image = Matrix::Zero(dout, dout);
          for (std::size_t i = 0; i < na; ++i) {
            const Complex wa = ca(i, a + a2 * dA);
            if (wa == Complex(0.0)) continue;
            for (std::size_t j = 0; j < nb; ++j) {
              const Complex wb = cb(j, b + b2 * dB);
              if (wb == Complex(0.0)) continue;
              image += wa * wb * table.cell(i, j).matrix();
            }
          }
          choi.block((a * dB + b) * dout, (a2 * dB + b2) * dout, dout, dout) =
              image;
        }
  choi /= static_cast<double>(din);
  choi = 0.5 * (choi + choi.adjoint());

  TableChannel out{LinearMapChoi(din, dout, choi), 0.0, std::nullopt};
  out.min_eigenvalue = out.choi.min_eigenvalue();
  if (out.min_eigenvalue >= -tol)
    out.channel = BipartiteChannel(choi_to_kraus(out.choi, tol),
                                   {dA, dB}, table.out);
  return out;
}

}  // namespace nsbox
