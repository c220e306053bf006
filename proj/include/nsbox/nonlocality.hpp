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

// CHSH evaluation for classical boxes and for the quantum box experiment.

#include <array>
#include <functional>

#include <Eigen/Dense>

#include "nsbox/boxes.hpp"

namespace nsbox {

using Bloch = Eigen::Vector3d;

/// Observables a_x·σ, b_y·σ and input overlaps p = |<1|input>|².
/// Alice prepares √(1-p)|0> + √p|1> for each of her two inputs.
struct CHSHSettings {
  Bloch a0 = Bloch::UnitZ();
  Bloch a1 = Bloch::UnitZ();
  Bloch b0 = Bloch::UnitZ();
  Bloch b1 = Bloch::UnitZ();
  double pA0 = 0.0;
  double pB0 = 0.0;
  double pA1 = 1.0;
  double pB1 = 1.0;

  /// Throws std::invalid_argument on non-unit vectors or overlaps outside
  /// [0, 1].
  void validate(double tol = 1e-12) const;
};

struct CHSHResult {
  double value = 0.0;
  CHSHSettings settings;
  std::array<double, 4> correlators{};  // E(0,0), E(0,1), E(1,0), E(1,1)
};

/// I = E(0,0) + E(0,1) + E(1,0) - E(1,1) for outcome signs s_A(a), s_B(b).
double chsh_box(const ClassicalBox& b, const std::function<int(int)>& sign_a,
                const std::function<int(int)>& sign_b);
/// Signs (-1)^a and (-1)^b.
double chsh_box(const ClassicalBox& b);

/// Correlation tensor T_ij = Tr[(σ_i ⊗ σ_j) ρ] of a two-qubit operator.
Eigen::Matrix3d correlation_tensor(const Matrix& rho);

CHSHResult chsh_experiment(const QuantumBoxFamily& family,
                           const CHSHSettings& s);

double phi_opt(double alpha);
double i_m_analytic(double alpha);
double i_m_prime_analytic(double alpha);

struct CHSHOptimizeOptions {
  bool full_sphere = false;  // default restricts observables to the xz-plane
  int grid_angles = 8;
  int refine_starts = 4;
};

/// Grid search over observable angles and overlap endpoints, then local
/// refinement with continuous overlaps.
CHSHResult chsh_optimize(const QuantumBoxFamily& family,
                         const CHSHOptimizeOptions& options = {});

}  // namespace nsbox
