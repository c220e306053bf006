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

#include <cmath>
#include <numbers>

#include "nsbox/nonlocality.hpp"

using namespace nsbox;

TEST_CASE("CHSH of classical boxes") {
  CHECK(chsh_box(pr_extreme(2, 2, 2)) == doctest::Approx(4.0));
  CHECK(chsh_box(ClassicalBox(2, 2, 2, 2, std::vector<double>(16, 0.25))) ==
        doctest::Approx(0.0));
  // All 16 deterministic local boxes.
  for (int fa = 0; fa < 4; ++fa)
    for (int fb = 0; fb < 4; ++fb) {
      std::vector<double> p(16, 0.0);
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          const int a = (fa >> x) & 1, b = (fb >> y) & 1;
          p[((x * 2 + y) * 2 + a) * 2 + b] = 1.0;
        }
      CHECK(std::abs(chsh_box(ClassicalBox(2, 2, 2, 2, p))) <= 2.0 + 1e-12);
    }
  CHECK_THROWS_AS(chsh_box(ClassicalBox(3, 2, 1, 1, std::vector<double>(6, 1.0))),
                  std::invalid_argument);
}

TEST_CASE("correlation tensors of the two Bell states") {
  const Eigen::Matrix3d t0 = correlation_tensor(psi0() * psi0().adjoint());
  const Eigen::Matrix3d t1 = correlation_tensor(psi1() * psi1().adjoint());
  CHECK((t0 - Eigen::Vector3d(1, -1, 1).asDiagonal().toDenseMatrix()).norm() <
        1e-14);
  CHECK((t1 - Eigen::Vector3d(1, 1, -1).asDiagonal().toDenseMatrix()).norm() <
        1e-14);
}

TEST_CASE("CHSH experiment") {
  CHSHSettings x;
  x.a0 = x.a1 = x.b0 = x.b1 = Bloch::UnitX();
  // Both Bell states have <σx⊗σx> = +1, so every correlator is +1.
  CHECK(chsh_experiment({1.0, true, 2}, x).value == doctest::Approx(2.0));
  CHSHSettings z;
  CHECK(chsh_experiment({1.0, true, 2}, z).value ==
        doctest::Approx(4.0).epsilon(1e-14));
  CHECK(chsh_experiment({0.25, false, 2}, z).value == doctest::Approx(2.5));

  // Tsirelson settings at alpha = 0 (constant |ψ0> output).
  const double q = std::numbers::pi / 4;
  CHSHSettings t;
  t.a0 = Bloch::UnitZ();
  t.a1 = Bloch::UnitX();
  t.b0 = Bloch(std::sin(q), 0, std::cos(q));
  t.b1 = Bloch(-std::sin(q), 0, std::cos(q));
  CHECK(chsh_experiment({0.0, true, 2}, t).value ==
        doctest::Approx(2.0 * std::sqrt(2.0)));

  CHSHSettings bad;
  bad.a0 = Bloch(1, 1, 0);
  CHECK_THROWS_AS(chsh_experiment({1.0, true, 2}, bad), std::invalid_argument);
  CHSHSettings badp;
  badp.pA0 = 1.5;
  CHECK_THROWS_AS(chsh_experiment({1.0, true, 2}, badp), std::invalid_argument);
}

TEST_CASE("analytic optimum") {
  CHECK(phi_opt(0.0) == doctest::Approx(std::numbers::pi / 4));
  CHECK(phi_opt(0.9) == 0.0);
  CHECK(i_m_analytic(0.0) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
  const double two_thirds = 2.0 / 3.0;
  const double left = std::sqrt(std::pow(4.0 / 3.0, 3) / (1.0 / 3.0)) + two_thirds;
  CHECK(left == doctest::Approx(10.0 / 3.0).epsilon(1e-14));
  CHECK(i_m_analytic(two_thirds) == doctest::Approx(10.0 / 3.0).epsilon(1e-14));
  CHECK(i_m_prime_analytic(1.0) == 4.0);
  CHECK(i_m_analytic(0.5) ==
        doctest::Approx(3.09807621135331594).epsilon(1e-15));
  for (int i = 0; i <= 20; ++i) {
    const double a = i / 20.0;
    CHECK(i_m_analytic(a) >= i_m_prime_analytic(a) - 1e-12);
  }
  CHECK_THROWS_AS(i_m_analytic(1.1), std::invalid_argument);
}

TEST_CASE("numerical optimizer") {
  const CHSHResult c = chsh_optimize({0.5, true, 2});
  CHECK(c.value == doctest::Approx(3.09807621135331594).epsilon(1e-8));
  const CHSHResult one = chsh_optimize({1.0, true, 2});
  CHECK(one.value == doctest::Approx(4.0).epsilon(1e-10));
  const CHSHResult inc = chsh_optimize({0.5, false, 2});
  CHECK(inc.value == doctest::Approx(3.0).epsilon(1e-8));
  for (const CHSHResult* r : {&c, &one, &inc}) {
    const auto& s = r->settings;
    for (double p : {s.pA0, s.pA1, s.pB0, s.pB1})
      CHECK(std::min(p, 1.0 - p) < 1e-4);
    const auto& e = r->correlators;
    CHECK(r->value == doctest::Approx(e[0] + e[1] + e[2] - e[3]).epsilon(1e-12));
  }
}

TEST_CASE("full-sphere search finds nothing beyond the xz-plane") {
  CHSHOptimizeOptions opts;
  opts.full_sphere = true;
  opts.refine_starts = 2;
  for (double a : {0.3, 0.8}) {
    const CHSHResult r = chsh_optimize({a, true, 2}, opts);
    CHECK(r.value <= i_m_analytic(a) + 1e-9);
    CHECK(r.value >= i_m_analytic(a) - 1e-6);
  }
}
