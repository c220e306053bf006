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

#include "nsbox/nonlocality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "minimize.hpp"

namespace nsbox {

namespace {

using Index = Eigen::Index;

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument(
        fmt::format("alpha must lie in [0, 1], got {}", alpha));
}

Vector input_state(double p) {
  Vector v(2);
  v << std::sqrt(1.0 - p), std::sqrt(p);
  return v;
}

// Correlation tensors of Λ(E_ij) for the 16 two-qubit matrix units, so
// that T(Λ(ρ)) = Σ ρ_ij T_ij.
struct LinearCorrelations {
  std::array<Eigen::Matrix3cd, 16> unit;

  explicit LinearCorrelations(const BipartiteChannel& ch) {
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 4; ++j) {
        Matrix e = Matrix::Zero(4, 4);
        e(i, j) = 1.0;
        const Matrix out = ch.apply(e);
        Eigen::Matrix3cd t;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            t(a, b) = (kron(pauli(a + 1), pauli(b + 1)) * out).trace();
        unit[i * 4 + j] = t;
      }
  }

  [[nodiscard]] Eigen::Matrix3d operator()(const Vector& in) const {
    Eigen::Matrix3cd t = Eigen::Matrix3cd::Zero();
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 4; ++j) {
        const Complex c = in(i) * std::conj(in(j));
        if (c != Complex(0.0)) t += c * unit[i * 4 + j];
      }
    return t.real();
  }
};

struct Evaluation {
  double value;
  std::array<double, 4> e;
};

Evaluation evaluate(const LinearCorrelations& lc, const CHSHSettings& s) {
  const std::array<Vector, 2> xa{input_state(s.pA0), input_state(s.pA1)};
  const std::array<Vector, 2> yb{input_state(s.pB0), input_state(s.pB1)};
  const std::array<const Bloch*, 2> a{&s.a0, &s.a1};
  const std::array<const Bloch*, 2> b{&s.b0, &s.b1};
  Evaluation ev{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const Eigen::Matrix3d t = lc(kron(xa[x], yb[y]));
      ev.e[2 * x + y] = a[x]->dot(t * *b[y]);
    }
  ev.value = ev.e[0] + ev.e[1] + ev.e[2] - ev.e[3];
  return ev;
}

Bloch direction(double theta, double phi) {
  return Bloch(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
               std::cos(theta));
}

struct Candidate {
  double value;
  std::array<double, 4> theta;
  std::array<double, 4> p;
};

}  // namespace

void CHSHSettings::validate(double tol) const {
  for (const Bloch* v : {&a0, &a1, &b0, &b1})
    if (std::abs(v->norm() - 1.0) > tol)
      throw std::invalid_argument("CHSHSettings: Bloch vectors must be unit");
  for (double p : {pA0, pA1, pB0, pB1})
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("CHSHSettings: overlaps must lie in [0, 1]");
}

double chsh_box(const ClassicalBox& b, const std::function<int(int)>& sign_a,
                const std::function<int(int)>& sign_b) {
  if (b.n_x() != 2 || b.n_y() != 2)
    throw std::invalid_argument("chsh_box: inputs must be binary");
  std::array<double, 4> e{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < b.n_a(); ++a)
        for (int bb = 0; bb < b.n_b(); ++bb)
          e[2 * x + y] += sign_a(a) * sign_b(bb) * b(a, bb, x, y);
  return e[0] + e[1] + e[2] - e[3];
}

double chsh_box(const ClassicalBox& b) {
  const auto parity = [](int v) { return v % 2 == 0 ? 1 : -1; };
  return chsh_box(b, parity, parity);
}

Eigen::Matrix3d correlation_tensor(const Matrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw DimensionError("correlation_tensor: expected a two-qubit operator");
  Eigen::Matrix3d t;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      t(a, b) = (kron(pauli(a + 1), pauli(b + 1)) * rho).trace().real();
  return t;
}

CHSHResult chsh_experiment(const QuantumBoxFamily& family,
                           const CHSHSettings& s) {
  s.validate();
  if (family.k != 2)
    throw std::invalid_argument("chsh_experiment: qubit boxes only (k = 2)");
  const BipartiteChannel ch = box_channel(family);
  const std::array<Vector, 2> xa{input_state(s.pA0), input_state(s.pA1)};
  const std::array<Vector, 2> yb{input_state(s.pB0), input_state(s.pB1)};
  const std::array<const Bloch*, 2> a{&s.a0, &s.a1};
  const std::array<const Bloch*, 2> b{&s.b0, &s.b1};
  CHSHResult r;
  r.settings = s;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const Vector in = kron(xa[x], yb[y]);
      const Matrix out = ch.apply(Matrix(in * in.adjoint()));
      r.correlators[2 * x + y] =
          a[x]->dot(correlation_tensor(out) * *b[y]);
    }
  r.value = r.correlators[0] + r.correlators[1] + r.correlators[2] -
            r.correlators[3];
  return r;
}

double phi_opt(double alpha) {
  check_alpha(alpha);
  if (alpha > 2.0 / 3.0) return 0.0;
  return std::asin(std::sqrt((2.0 - 3.0 * alpha) / (4.0 * (1.0 - alpha))));
}

double i_m_analytic(double alpha) {
  check_alpha(alpha);
  if (alpha > 2.0 / 3.0) return 2.0 * (1.0 + alpha);
  return std::sqrt(std::pow(2.0 - alpha, 3) / (1.0 - alpha)) + alpha;
}

double i_m_prime_analytic(double alpha) {
  check_alpha(alpha);
  return 2.0 * (1.0 + alpha);
}

CHSHResult chsh_optimize(const QuantumBoxFamily& family,
                         const CHSHOptimizeOptions& options) {
  if (family.k != 2)
    throw std::invalid_argument("chsh_optimize: qubit boxes only (k = 2)");
  if (options.grid_angles < 1 || options.refine_starts < 1)
    throw std::invalid_argument("chsh_optimize: empty search");
  const LinearCorrelations lc(box_channel(family));
  const int g = options.grid_angles;
  const double step = 2.0 * std::numbers::pi / g;

  // Grid: xz-plane angles x overlap endpoints. T is cached per overlap
  // pattern, so each cell costs four bilinear forms.
  std::vector<Candidate> best;
  std::vector<Bloch> dirs(g);
  for (int i = 0; i < g; ++i) dirs[i] = direction(i * step, 0.0);
  for (int mask = 0; mask < 16; ++mask) {
    const std::array<double, 4> p{double(mask >> 3 & 1), double(mask >> 2 & 1),
                                  double(mask >> 1 & 1), double(mask & 1)};
    std::array<Eigen::Matrix3d, 4> t;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        t[2 * x + y] = lc(kron(input_state(p[2 * x]), input_state(p[2 * y + 1])));
    for (int i0 = 0; i0 < g; ++i0)
      for (int i1 = 0; i1 < g; ++i1)
        for (int j0 = 0; j0 < g; ++j0)
          for (int j1 = 0; j1 < g; ++j1) {
            const double v = dirs[i0].dot(t[0] * dirs[j0]) +
                             dirs[i0].dot(t[1] * dirs[j1]) +
                             dirs[i1].dot(t[2] * dirs[j0]) -
                             dirs[i1].dot(t[3] * dirs[j1]);
            // Strict improvement keeps the lowest grid index on ties.
            if (static_cast<int>(best.size()) < options.refine_starts ||
                v > best.back().value + 1e-12) {
              Candidate c{v, {i0 * step, i1 * step, j0 * step, j1 * step}, p};
              auto pos = std::find_if(best.begin(), best.end(),
                                      [v](const Candidate& o) {
                                        return v > o.value + 1e-12;
                                      });
              best.insert(pos, c);
              if (static_cast<int>(best.size()) > options.refine_starts)
                best.pop_back();
            }
          }
  }

  // Parameters: 4 polar angles, [4 azimuths,] 4 overlap angles with
  // p = sin²(u).
  const bool sphere = options.full_sphere;
  const std::size_t n_angle = sphere ? 8 : 4;
  auto settings_of = [&](std::span<const double> x) {
    CHSHSettings s;
    std::array<Bloch, 4> v;
    for (int i = 0; i < 4; ++i)
      v[i] = direction(x[i], sphere ? x[4 + i] : 0.0);
    s.a0 = v[0];
    s.a1 = v[1];
    s.b0 = v[2];
    s.b1 = v[3];
    auto sq = [](double u) { return std::pow(std::sin(u), 2); };
    s.pA0 = sq(x[n_angle + 0]);
    s.pB0 = sq(x[n_angle + 1]);
    s.pA1 = sq(x[n_angle + 2]);
    s.pB1 = sq(x[n_angle + 3]);
    return s;
  };
  const detail::Objective objective = [&](std::span<const double> x) {
    return -evaluate(lc, settings_of(x)).value;
  };

  double best_value = -1e300;
  std::vector<double> best_x;
  for (const Candidate& c : best) {
    std::vector<double> x(c.theta.begin(), c.theta.end());
    if (sphere) x.insert(x.end(), 4, 0.0);
    // Candidate p layout is (pA0, pB0, pA1, pB1).
    for (double p : c.p) x.push_back(p > 0.5 ? std::numbers::pi / 2 : 0.0);
    double prev = -1e300;
    for (int round = 0; round < 6; ++round) {
      const auto r = detail::nelder_mead(objective, x, round == 0 ? 0.2 : 0.02,
                                         1e-10, 20000);
      x = r.x;
      if (-r.value - prev < 1e-12 && round > 0) {
        prev = std::max(prev, -r.value);
        break;
      }
      prev = -r.value;
    }
    if (prev > best_value + 1e-12) {
      best_value = prev;
      best_x = x;
    }
  }

  CHSHSettings s = settings_of(best_x);
  for (Bloch* v : {&s.a0, &s.a1, &s.b0, &s.b1}) v->normalize();
  return chsh_experiment(family, s);
}

}  // namespace nsbox
