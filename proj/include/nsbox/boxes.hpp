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

// Classical non-signalling boxes and their quantum counterparts.

#include <vector>

#include "nsbox/channel.hpp"

namespace nsbox {

inline constexpr double kTolBox = 1e-12;

/// Conditional distribution p(a,b|x,y), stored densely.
class ClassicalBox {
 public:
  ClassicalBox(int n_x, int n_y, int n_a, int n_b, std::vector<double> p,
               double tol = kTolBox);

  [[nodiscard]] int n_x() const { return n_x_; }
  [[nodiscard]] int n_y() const { return n_y_; }
  [[nodiscard]] int n_a() const { return n_a_; }
  [[nodiscard]] int n_b() const { return n_b_; }
  [[nodiscard]] double operator()(int a, int b, int x, int y) const {
    return p_[index(a, b, x, y)];
  }
  [[nodiscard]] const std::vector<double>& data() const { return p_; }

  /// Flat layout: ((x * n_y + y) * n_a + a) * n_b + b.
  [[nodiscard]] std::size_t index(int a, int b, int x, int y) const {
    return ((static_cast<std::size_t>(x) * n_y_ + y) * n_a_ + a) * n_b_ + b;
  }

 private:
  int n_x_, n_y_, n_a_, n_b_;
  std::vector<double> p_;
};

bool is_nonsignalling_box(const ClassicalBox& b, double tol = kTolBox);

/// p(a,b|x,y) = 1/k iff (b - a) mod k = x·y and a, b < k.
ClassicalBox pr_extreme(int k, int d_a, int d_b);

/// p(a,b|x,y) = <ab| Λ[|xy><xy|] |ab> for a channel 2⊗2 -> k⊗k.
ClassicalBox measure_box(const BipartiteChannel& ch);

/// (|00> + ... + |k-1,k-1>)/√k.
Vector max_entangled_k(int k);
/// Cyclic shift Σ|b> = |b+1 mod k>.
Matrix cyclic_shift(int k);

/// Coherent box: (1-p)|ψ+_k><ψ+_k| + p (1⊗Σ)|ψ+_k><ψ+_k|(1⊗Σ†),
/// p = <11|ρ|11>.
BipartiteChannel lambda_k(int k);
/// Same map built from the controlled-shift dilation U|a,b,x,y> =
/// |a, b+xy mod k, x, y> acting on |ψ+_k> and tracing out the inputs.
BipartiteChannel lambda_k_dilation(int k);
/// (1-p)|ψ+_k><ψ+_k| + p (1⊗Σ)ρ_k(1⊗Σ†), ρ_k = (1/k) Σ_i |ii><ii|.
BipartiteChannel lambda_k_prime(int k);

/// Bell states |ψ0> = (|00>+|11>)/√2 and |ψ1> = (|01>+|10>)/√2.
Vector psi0();
Vector psi1();

/// Λ_α[ρ] = (1-αp)|ψ0><ψ0| + αp|ψ1><ψ1|.
BipartiteChannel lambda_alpha(double alpha);
/// Λ'_α: as Λ_α with each Bell state replaced by its computational-basis
/// dephasing.
BipartiteChannel lambda_alpha_prime(double alpha);
BipartiteChannel lambda_nl();
BipartiteChannel lambda_nl_prime();

struct QuantumBoxFamily {
  double alpha = 1.0;
  bool coherent = true;
  int k = 2;
};

/// Λ_α or Λ'_α for k = 2, Λ_k or Λ'_k otherwise (alpha unused).
BipartiteChannel box_channel(const QuantumBoxFamily& family);

}  // namespace nsbox
