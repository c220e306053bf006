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

#include "nsbox/entpower.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>
#include <gsl/gsl_integration.h>

#include "nsbox/boxes.hpp"
#include "nsbox/nonlocality.hpp"

namespace nsbox {

namespace {

constexpr std::size_t kChunks = 16;

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument(
        fmt::format("{}: argument must lie in [0, 1], got {}", what, x));
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

struct GlTable {
  struct Deleter {
    void operator()(gsl_integration_glfixed_table* t) const {
      gsl_integration_glfixed_table_free(t);
    }
  };
  std::vector<double> x, w;  // nodes and weights on [0, 1]

  explicit GlTable(int n) : x(n), w(n) {
    std::unique_ptr<gsl_integration_glfixed_table, Deleter> t(
        gsl_integration_glfixed_table_alloc(n));
    if (!t) throw std::runtime_error("Gauss-Legendre table allocation failed");
    for (int i = 0; i < n; ++i)
      gsl_integration_glfixed_point(0.0, 1.0, i, &x[i], &w[i], t.get());
  }
};

// ∫∫_[0,√α]² g(uv) du dv with u = √α s²(3 - 2s); the substitution flattens
// the logarithmic endpoint behaviour.
double substituted_integral(double alpha, int n) {
  const GlTable gl(n);
  const double r = std::sqrt(alpha);
  std::vector<double> u(n), du(n);
  for (int i = 0; i < n; ++i) {
    const double s = gl.x[i];
    u[i] = r * s * s * (3.0 - 2.0 * s);
    du[i] = r * 6.0 * s * (1.0 - s) * gl.w[i];
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double t = u[i] * u[j];
      row += du[j] * (xlog2x(t) + xlog2x(1.0 - t));
    }
    total += du[i] * row;
  }
  return total;
}

}  // namespace

double shannon_h(double x) {
  check_unit(x, "shannon_h");
  return -xlog2x(x) - xlog2x(1.0 - x);
}

double e_r_bell_diag(double lambda_max) {
  check_unit(lambda_max, "e_r_bell_diag");
  return lambda_max > 0.5 ? 1.0 - shannon_h(lambda_max) : 0.0;
}

QuadratureResult e_pow_quadrature(double alpha, int nodes) {
  check_unit(alpha, "e_pow_quadrature");
  if (nodes < 8) throw std::invalid_argument("e_pow_quadrature: nodes >= 8");
  if (alpha == 0.0) return {1.0, 0.0};
  const double coarse = substituted_integral(alpha, nodes);
  const double fine = substituted_integral(alpha, 2 * nodes);
  return {1.0 + fine / alpha, std::abs(fine - coarse) / alpha};
}

double e_pow_bloch_quadrature(double alpha, int nodes) {
  check_unit(alpha, "e_pow_bloch_quadrature");
  if (nodes < 8)
    throw std::invalid_argument("e_pow_bloch_quadrature: nodes >= 8");
  const GlTable gl(nodes);
  const double pi = std::numbers::pi;
  std::vector<double> q(nodes), w(nodes);
  for (int i = 0; i < nodes; ++i) {
    const double theta = pi * gl.x[i];
    q[i] = std::pow(std::sin(theta / 2.0), 2);
    w[i] = pi * gl.w[i] * std::sin(theta);
  }
  double total = 0.0;
  for (int i = 0; i < nodes; ++i)
    for (int j = 0; j < nodes; ++j)
      total += w[i] * w[j] * shannon_h(alpha * q[i] * q[j]);
  return 1.0 - total / 4.0;
}

double e_r_lambda_alpha(double alpha, const Matrix& rho_in) {
  const Matrix out = lambda_alpha(alpha).apply(rho_in);
  const HermitianEigen eig = eig_hermitian(out);
  return e_r_bell_diag(std::clamp(eig.values(0), 0.0, 1.0));
}

MonteCarloResult e_pow_monte_carlo(double alpha, std::size_t samples,
                                   Rng& rng) {
  check_unit(alpha, "e_pow_monte_carlo");
  if (samples < 1000)
    throw std::invalid_argument("e_pow_monte_carlo: samples >= 1000");

  struct Moments {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
  };
  std::array<std::uint64_t, kChunks> seeds;
  for (auto& s : seeds) s = rng();

  Moments total;
  for (std::size_t c = 0; c < kChunks; ++c) {
    const std::size_t n =
        samples / kChunks + (c < samples % kChunks ? 1 : 0);
    Rng local(seeds[c]);
    std::uniform_real_distribution<double> cos_theta(-1.0, 1.0);
    std::uniform_real_distribution<double> azimuth(0.0, 2.0 * std::numbers::pi);
    Moments m;
    for (std::size_t i = 0; i < n; ++i) {
      const double t1 = std::acos(cos_theta(local));
      [[maybe_unused]] const double f1 = azimuth(local);
      const double t2 = std::acos(cos_theta(local));
      [[maybe_unused]] const double f2 = azimuth(local);
      const double p = alpha * std::pow(std::sin(t1 / 2.0), 2) *
                       std::pow(std::sin(t2 / 2.0), 2);
      const double v = 1.0 - shannon_h(std::min(p, 1.0));
      ++m.n;
      const double d = v - m.mean;
      m.mean += d / static_cast<double>(m.n);
      m.m2 += d * (v - m.mean);
    }
    // Chan et al. pairwise merge.
    if (m.n == 0) continue;
    const double na = static_cast<double>(total.n);
    const double nb = static_cast<double>(m.n);
    const double d = m.mean - total.mean;
    const double nt = na + nb;
    total.mean += d * nb / nt;
    total.m2 += m.m2 + d * d * na * nb / nt;
    total.n += m.n;
  }
  const double var = total.m2 / static_cast<double>(total.n - 1);
  return {total.mean, std::sqrt(var / static_cast<double>(total.n)), total.n};
}

std::vector<TradeoffPoint> tradeoff_curve(const std::vector<double>& alphas,
                                          int nodes) {
  std::vector<TradeoffPoint> out;
  out.reserve(alphas.size());
  for (double a : alphas) {
    const QuadratureResult q = e_pow_quadrature(a, nodes);
    out.push_back({a, i_m_analytic(a), q.value, q.error_estimate});
  }
  return out;
}

}  // namespace nsbox
