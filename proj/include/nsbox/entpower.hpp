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

// Entangling power of the Λ_α family and its trade-off with CHSH violation.

#include <cstddef>
#include <vector>

#include "nsbox/linalg.hpp"

namespace nsbox {

/// Binary entropy in bits; H(0) = H(1) = 0.
double shannon_h(double x);

/// Relative entropy of entanglement of a rank-two Bell-diagonal state with
/// largest eigenvalue λ: 1 - H(λ) for λ > 1/2, else 0.
double e_r_bell_diag(double lambda_max);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // |Q(2n) - Q(n)|
};

/// E_pow(Λ_α) = 1 + (1/α) ∫∫_[0,√α]² g(uv) du dv, g(t) = t log t +
/// (1-t) log(1-t), by tensor Gauss-Legendre quadrature with `nodes` points
/// per axis. α = 0 returns the limit 1.
QuadratureResult e_pow_quadrature(double alpha, int nodes = 64);

/// Same quantity integrated directly over the polar Bloch angles:
/// 1 - (1/4) ∫∫ sin θ1 sin θ2 H(α sin²(θ1/2) sin²(θ2/2)) dθ1 dθ2.
double e_pow_bloch_quadrature(double alpha, int nodes = 64);

/// E_R(Λ_α[ρ]) for a two-qubit input: 1 - H(αp) with p = <11|ρ|11>,
/// computed from the output spectrum.
double e_r_lambda_alpha(double alpha, const Matrix& rho_in);

struct MonteCarloResult {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

/// Average of 1 - H(α sin²(θ1/2) sin²(θ2/2)) over uniformly random pure
/// product inputs. Samples are split into fixed chunks with their own
/// seeded streams.
MonteCarloResult e_pow_monte_carlo(double alpha, std::size_t samples,
                                   Rng& rng);

struct TradeoffPoint {
  double alpha = 0.0;
  double i_m = 0.0;
  double e_pow = 0.0;
  double quadrature_error_estimate = 0.0;
};

std::vector<TradeoffPoint> tradeoff_curve(const std::vector<double>& alphas,
                                          int nodes = 64);

}  // namespace nsbox
