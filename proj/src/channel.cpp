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

#include "nsbox/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <fmt/format.h>

namespace nsbox {

namespace {

// Eigenvalues below this are treated as exact zeros when re-deriving Kraus
// operators from an already valid channel.
constexpr double kCanonicalDrop = 1e-14;

Matrix unit(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
  Matrix e = Matrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

// Eigen-decomposition of a PSD operator as weighted rank-one terms.
std::vector<std::pair<double, Vector>> spectral_terms(const Matrix& m) {
  const HermitianEigen e = eig_hermitian(m);
  std::vector<std::pair<double, Vector>> terms;
  for (Eigen::Index k = 0; k < e.values.size(); ++k)
    if (e.values(k) > kCanonicalDrop)
      terms.emplace_back(e.values(k), e.vectors.col(k));
  return terms;
}

}  // namespace

Channel::Channel(Eigen::Index d_in, Eigen::Index d_out,
                 std::vector<Matrix> kraus, double tol)
    : d_in_(d_in), d_out_(d_out), kraus_(std::move(kraus)) {
  if (d_in < 1 || d_out < 1) throw DimensionError("Channel: dimensions < 1");
  if (kraus_.empty()) throw std::invalid_argument("Channel: no Kraus operators");
  Matrix sum = Matrix::Zero(d_in, d_in);
  for (const Matrix& k : kraus_) {
    if (k.rows() != d_out || k.cols() != d_in)
      throw DimensionError("Channel: Kraus operator has wrong shape");
    sum += k.adjoint() * k;
  }
  const double dev = max_abs(sum - identity(d_in));
  if (!(dev <= tol))
    throw std::invalid_argument(
        fmt::format("Channel: not trace preserving (deviation {:.3g})", dev));
}

Matrix Channel::apply(const Matrix& x) const {
  if (x.rows() != d_in_ || x.cols() != d_in_)
    throw DimensionError("Channel::apply: input dimension mismatch");
  Matrix out = Matrix::Zero(d_out_, d_out_);
  for (const Matrix& k : kraus_) out.noalias() += k * x * k.adjoint();
  return out;
}

DensityMatrix Channel::apply(const DensityMatrix& rho) const {
  Matrix out = apply(rho.matrix());
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(std::move(out));
}

BipartiteChannel::BipartiteChannel(Channel base, Factorization in,
                                   Factorization out)
    : base_(std::move(base)), in_(in), out_(out) {
  if (in_.total() != base_.d_in() || out_.total() != base_.d_out())
    throw DimensionError("BipartiteChannel: factorization inconsistent");
}

LinearMapChoi::LinearMapChoi(Eigen::Index d_in, Eigen::Index d_out,
                             Matrix matrix, double tol)
    : d_in_(d_in), d_out_(d_out), matrix_(std::move(matrix)) {
  if (matrix_.rows() != d_in * d_out || matrix_.cols() != d_in * d_out)
    throw DimensionError("LinearMapChoi: matrix does not match dimensions");
  if (!is_hermitian(matrix_, tol))
    throw std::invalid_argument("LinearMapChoi: matrix is not Hermitian");
}

Matrix LinearMapChoi::apply(const Matrix& x) const {
  if (x.rows() != d_in_ || x.cols() != d_in_)
    throw DimensionError("LinearMapChoi::apply: input dimension mismatch");
  Matrix out = Matrix::Zero(d_out_, d_out_);
  for (Eigen::Index j = 0; j < d_in_; ++j)
    for (Eigen::Index i = 0; i < d_in_; ++i)
      if (x(i, j) != Complex(0.0))
        out += x(i, j) * matrix_.block(i * d_out_, j * d_out_, d_out_, d_out_);
  return static_cast<double>(d_in_) * out;
}

double LinearMapChoi::min_eigenvalue() const {
  return nsbox::min_eigenvalue(matrix_);
}

ChoiState::ChoiState(Eigen::Index d_in, Eigen::Index d_out, Matrix matrix,
                     double tol)
    : map_(d_in, d_out, std::move(matrix)) {
  const Matrix& c = map_.matrix();
  if (std::abs(c.trace().real() - 1.0) > kTolTrace)
    throw std::invalid_argument("ChoiState: trace differs from one");
  const double lmin = map_.min_eigenvalue();
  if (lmin < -tol)
    throw DomainError(fmt::format(
        "ChoiState: not positive (min eigenvalue {:.17g})", lmin));
  const Matrix ref = partial_trace(c, d_in, d_out, Subsystem::First);
  if (max_abs(ref - identity(d_in) / static_cast<double>(d_in)) > kTolTp)
    throw std::invalid_argument("ChoiState: map is not trace preserving");
}

Povm::Povm(std::vector<Matrix> effects, double tol)
    : effects_(std::move(effects)) {
  if (effects_.empty()) throw std::invalid_argument("Povm: no effects");
  const Eigen::Index d = effects_.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& f : effects_) {
    if (f.rows() != d || f.cols() != d)
      throw DimensionError("Povm: effects have inconsistent dimensions");
    if (!is_psd(f, tol)) throw std::invalid_argument("Povm: effect not PSD");
    sum += f;
  }
  if (max_abs(sum - identity(d)) > tol)
    throw std::invalid_argument("Povm: effects do not sum to identity");
}

ChoiState kraus_to_choi(const Channel& ch) {
  const Eigen::Index din = ch.d_in(), dout = ch.d_out();
  const double scale = 1.0 / std::sqrt(static_cast<double>(din));
  Matrix c = Matrix::Zero(din * dout, din * dout);
  Vector v(din * dout);
  for (const Matrix& k : ch.kraus()) {
    for (Eigen::Index i = 0; i < din; ++i)
      for (Eigen::Index r = 0; r < dout; ++r) v(i * dout + r) = k(r, i) * scale;
    c.noalias() += v * v.adjoint();
  }
  return ChoiState(din, dout, std::move(c));
}

LinearMapChoi choi_of_linear_map(
    Eigen::Index d_in, Eigen::Index d_out,
    const std::function<Matrix(const Matrix&)>& f) {
  Matrix c = Matrix::Zero(d_in * d_out, d_in * d_out);
  for (Eigen::Index i = 0; i < d_in; ++i)
    for (Eigen::Index j = 0; j < d_in; ++j) {
      const Matrix img = f(unit(d_in, i, j));
      if (img.rows() != d_out || img.cols() != d_out)
        throw DimensionError("choi_of_linear_map: image has wrong shape");
      c.block(i * d_out, j * d_out, d_out, d_out) = img;
    }
  c /= static_cast<double>(d_in);
  return LinearMapChoi(d_in, d_out, std::move(c));
}

Channel choi_to_kraus(const LinearMapChoi& c, double tol) {
  const Eigen::Index din = c.d_in(), dout = c.d_out();
  const HermitianEigen e = eig_hermitian(c.matrix());
  const double lmin = e.values(e.values.size() - 1);
  if (lmin < -tol)
    throw DomainError(fmt::format(
        "choi_to_kraus: map is not completely positive (min eigenvalue "
        "{:.17g})",
        lmin));
  std::vector<Matrix> kraus;
  for (Eigen::Index k = 0; k < e.values.size(); ++k) {
    if (std::abs(e.values(k)) < tol || e.values(k) < 0.0) continue;
    const double w = std::sqrt(e.values(k) * static_cast<double>(din));
    Matrix op(dout, din);
    for (Eigen::Index i = 0; i < din; ++i)
      for (Eigen::Index r = 0; r < dout; ++r)
        op(r, i) = w * e.vectors(i * dout + r, k);
    kraus.push_back(std::move(op));
  }
  return Channel(din, dout, std::move(kraus));
}

Channel choi_to_kraus(const ChoiState& c, double tol) {
  return choi_to_kraus(c.as_linear_map(), tol);
}

Channel canonical_kraus(const Channel& ch) {
  return choi_to_kraus(kraus_to_choi(ch), kCanonicalDrop);
}

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho) {
  return ch.apply(rho);
}

Channel compose(const Channel& f, const Channel& g) {
  if (g.d_out() != f.d_in())
    throw DimensionError("compose: inner output does not match outer input");
  std::vector<Matrix> kraus;
  kraus.reserve(f.kraus().size() * g.kraus().size());
  for (const Matrix& a : f.kraus())
    for (const Matrix& b : g.kraus()) kraus.push_back(a * b);
  Channel out(g.d_in(), f.d_out(), std::move(kraus));
  if (static_cast<Eigen::Index>(out.kraus().size()) > out.d_in() * out.d_out())
    return canonical_kraus(out);
  return out;
}

BipartiteChannel compose(const BipartiteChannel& f,
                         const BipartiteChannel& g) {
  if (!(g.out() == f.in()))
    throw DimensionError("compose: factorizations do not match");
  return BipartiteChannel(compose(f.base(), g.base()), g.in(), f.out());
}

Channel tensor(const Channel& f, const Channel& g) {
  std::vector<Matrix> kraus;
  kraus.reserve(f.kraus().size() * g.kraus().size());
  for (const Matrix& a : f.kraus())
    for (const Matrix& b : g.kraus()) kraus.push_back(kron(a, b));
  return Channel(f.d_in() * g.d_in(), f.d_out() * g.d_out(), std::move(kraus));
}

BipartiteChannel tensor_bipartite(const Channel& a, const Channel& b) {
  return BipartiteChannel(tensor(a, b), {a.d_in(), b.d_in()},
                          {a.d_out(), b.d_out()});
}

Channel mixture(double p, const Channel& first, const Channel& second) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("mixture: weight must lie in [0, 1]");
  if (first.d_in() != second.d_in() || first.d_out() != second.d_out())
    throw DimensionError("mixture: channel dimensions differ");
  std::vector<Matrix> kraus;
  if (p > 0.0)
    for (const Matrix& k : first.kraus()) kraus.push_back(std::sqrt(p) * k);
  if (p < 1.0)
    for (const Matrix& k : second.kraus())
      kraus.push_back(std::sqrt(1.0 - p) * k);
  return Channel(first.d_in(), first.d_out(), std::move(kraus));
}

BipartiteChannel mixture(double p, const BipartiteChannel& first,
                         const BipartiteChannel& second) {
  if (!(first.in() == second.in()) || !(first.out() == second.out()))
    throw DimensionError("mixture: factorizations differ");
  return BipartiteChannel(mixture(p, first.base(), second.base()), first.in(),
                          first.out());
}

BipartiteChannel swap_parties(const BipartiteChannel& ch) {
  const Matrix s_in = swap_operator(ch.in().a, ch.in().b);
  const Matrix s_out = swap_operator(ch.out().a, ch.out().b);
  std::vector<Matrix> kraus;
  for (const Matrix& k : ch.base().kraus())
    kraus.push_back(s_out * k * s_in.adjoint());
  return BipartiteChannel(
      Channel(ch.base().d_in(), ch.base().d_out(), std::move(kraus)),
      {ch.in().b, ch.in().a}, {ch.out().b, ch.out().a});
}

Channel identity_channel(Eigen::Index d) {
  return Channel(d, d, {identity(d)});
}

Channel unitary_channel(const Matrix& u) {
  if (!is_unitary(u)) throw std::invalid_argument("unitary_channel: not unitary");
  return Channel(u.cols(), u.rows(), {u});
}

BipartiteChannel unitary_channel(const Matrix& u, Factorization f) {
  return BipartiteChannel(unitary_channel(u), f, f);
}

Channel depolarizing(Eigen::Index d) {
  if (d < 1) throw DimensionError("depolarizing: dimension must be >= 1");
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Matrix> kraus;
  kraus.reserve(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) kraus.push_back(w * unit(d, i, j));
  return Channel(d, d, std::move(kraus));
}

Channel constant_channel(Eigen::Index d_in, const DensityMatrix& sigma) {
  std::vector<Matrix> kraus;
  for (const auto& [w, s] : spectral_terms(sigma.matrix()))
    for (Eigen::Index j = 0; j < d_in; ++j)
      kraus.push_back(std::sqrt(w) * s * basis_vector(d_in, j).adjoint());
  return Channel(d_in, sigma.dim(), std::move(kraus));
}

Channel partial_trace_channel(Factorization f, Subsystem traced) {
  std::vector<Matrix> kraus;
  if (traced == Subsystem::First) {
    for (Eigen::Index a = 0; a < f.a; ++a)
      kraus.push_back(kron(Matrix(basis_vector(f.a, a).adjoint()), identity(f.b)));
    return Channel(f.total(), f.b, std::move(kraus));
  }
  for (Eigen::Index b = 0; b < f.b; ++b)
    kraus.push_back(kron(identity(f.a), Matrix(basis_vector(f.b, b).adjoint())));
  return Channel(f.total(), f.a, std::move(kraus));
}

Channel random_channel(Eigen::Index d_in, Eigen::Index d_out,
                       Eigen::Index rank, Rng& rng) {
  if (d_out * rank < d_in)
    throw DimensionError("random_channel: rank too small for an isometry");
  const Matrix u = haar_unitary(d_out * rank, rng);
  std::vector<Matrix> kraus;
  for (Eigen::Index k = 0; k < rank; ++k) {
    Matrix op(d_out, d_in);
    for (Eigen::Index r = 0; r < d_out; ++r)
      for (Eigen::Index i = 0; i < d_in; ++i) op(r, i) = u(r * rank + k, i);
    kraus.push_back(std::move(op));
  }
  return Channel(d_in, d_out, std::move(kraus));
}

std::vector<Matrix> shift_clock_unitaries(Eigen::Index d) {
  if (d < 2) throw DimensionError("shift_clock_unitaries: d must be >= 2");
  Matrix shift = Matrix::Zero(d, d);
  Matrix clock = Matrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    shift((j + 1) % d, j) = 1.0;
    clock(j, j) = std::polar(1.0, 2.0 * std::numbers::pi *
                                      static_cast<double>(j) /
                                      static_cast<double>(d));
  }
  std::vector<Matrix> out;
  out.reserve(d * d);
  Matrix lk = identity(d);
  for (Eigen::Index k = 1; k <= d; ++k) {
    lk = shift * lk;
    Matrix fl = identity(d);
    for (Eigen::Index l = 1; l <= d; ++l) {
      fl = clock * fl;
      out.push_back(lk * fl);
    }
  }
  return out;
}

LinearMapChoi positive_map(PositiveMapKind kind, Eigen::Index d) {
  if (d < 1) throw DimensionError("positive_map: dimension must be >= 1");
  switch (kind) {
    case PositiveMapKind::Transpose:
      return choi_of_linear_map(d, d,
                                [](const Matrix& x) { return Matrix(x.transpose()); });
    case PositiveMapKind::Reflection:
      return choi_of_linear_map(d, d, [](const Matrix& x) { return Matrix(-x); });
    case PositiveMapKind::PauliXi: {
      if (d != 4)
        throw DimensionError("positive_map: pauli_xi is defined for two qubits (d = 4)");
      std::vector<Matrix> basis;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) basis.push_back(kron(pauli(a), pauli(b)));
      return choi_of_linear_map(4, 4, [basis](const Matrix& x) {
        Matrix out = Matrix::Zero(4, 4);
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            const Matrix& s = basis[a * 4 + b];
            const Complex coeff = (s * x).trace() / 4.0;
            const double xi = (a != 0 && b != 0) ? -1.0 : 1.0;
            out += xi * coeff * s;
          }
        return out;
      });
    }
  }
  throw std::invalid_argument("positive_map: unknown kind");
}

double max_cp_mixing(const LinearMapChoi& m) {
  const double lmin = m.min_eigenvalue();
  if (lmin >= 0.0) return 1.0;
  const double dim = static_cast<double>(m.d_in() * m.d_out());
  return 1.0 / (1.0 - dim * lmin);
}

LinearMapChoi mix_with_depolarizing_choi(const LinearMapChoi& m, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("mix_with_depolarizing: p must lie in [0, 1]");
  const Eigen::Index dim = m.d_in() * m.d_out();
  Matrix c = p * m.matrix() +
             (1.0 - p) * identity(dim) / static_cast<double>(dim);
  return LinearMapChoi(m.d_in(), m.d_out(), std::move(c));
}

Channel mix_with_depolarizing(const LinearMapChoi& m, double p, double tol) {
  const LinearMapChoi mixed = mix_with_depolarizing_choi(m, p);
  const double lmin = mixed.min_eigenvalue();
  if (lmin < -tol)
    throw DomainError(fmt::format(
        "mix_with_depolarizing: p = {:.17g} exceeds the CP threshold "
        "{:.17g} (min Choi eigenvalue {:.17g})",
        p, max_cp_mixing(m), lmin));
  return choi_to_kraus(mixed, tol);
}

Channel ebt_channel(const Povm& povm, std::span<const DensityMatrix> outputs) {
  if (outputs.size() != povm.size())
    throw std::invalid_argument("ebt_channel: need one output per effect");
  const Eigen::Index d_out = outputs.front().dim();
  std::vector<Matrix> kraus;
  for (std::size_t i = 0; i < povm.size(); ++i) {
    if (outputs[i].dim() != d_out)
      throw DimensionError("ebt_channel: outputs have different dimensions");
    const auto effect = spectral_terms(povm.effects()[i]);
    const auto state = spectral_terms(outputs[i].matrix());
    for (const auto& [mu, f] : effect)
      for (const auto& [nu, s] : state)
        kraus.push_back(std::sqrt(mu * nu) * s * f.adjoint());
  }
  return Channel(povm.dim(), d_out, std::move(kraus));
}

BipartiteChannel ebt_channel(const Povm& povm,
                             std::span<const DensityMatrix> outputs,
                             Factorization in, Factorization out) {
  return BipartiteChannel(ebt_channel(povm, outputs), in, out);
}

}  // namespace nsbox
