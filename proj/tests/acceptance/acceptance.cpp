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

// Acceptance suite. Each criterion prints one PASS/FAIL line; details go to
// indented lines above it.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nsbox/boxes.hpp"
#include "nsbox/causality.hpp"
#include "nsbox/channel.hpp"
#include "nsbox/entpower.hpp"
#include "nsbox/nonlocality.hpp"
#include "nsbox/vandam.hpp"
#include "support/fixtures.hpp"

using namespace nsbox;
namespace fx = nsbox::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      fmt::print("    failed: {}\n", what);
    }
  }
  void note(const std::string& what) const { fmt::print("    {}\n", what); }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

BipartiteChannel conj(const Matrix& u) { return unitary_channel(u, {2, 2}); }

std::vector<double> grid(int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = double(i) / (n - 1);
  return out;
}

// Receiver-marginal gap recomputed from scratch for a reported witness.
double witness_gap(const BipartiteChannel& ch, const SignallingWitness& w) {
  const BipartiteChannel c =
      w.direction == Direction::AtoB ? ch : swap_parties(ch);
  const auto dA = c.in().a;
  const Matrix pb = w.receiver_state * w.receiver_state.adjoint();
  const Matrix pa = w.sender_state * w.sender_state.adjoint();
  const Matrix gap = c.apply(kron(pa, pb)) -
                     c.apply(kron(Matrix(identity(dA) / double(dA)), pb));
  return trace_norm(partial_trace(gap, c.out().a, c.out().b, Subsystem::Second));
}

bool valid_witness(const BipartiteChannel& ch, const SignallingWitness& w,
                   Check& c, const std::string& name) {
  const bool unit = std::abs(w.sender_state.norm() - 1.0) < 1e-12 &&
                    std::abs(w.receiver_state.norm() - 1.0) < 1e-12;
  const Vector product = w.direction == Direction::AtoB
                             ? kron(w.sender_state, w.receiver_state)
                             : kron(w.receiver_state, w.sender_state);
  const bool consistent = (w.input.amplitudes() - product).norm() < 1e-12;
  const double gap = witness_gap(ch, w);
  c.note(fmt::format("{} witness ({}): distinguishability {:.17g}", name,
                     w.direction == Direction::AtoB ? "A->B" : "B->A",
                     w.distinguishability));
  c.expect(unit && consistent, name + ": witness is a normalized product state");
  c.expect(std::abs(gap - w.distinguishability) < 1e-10 && gap > 1e-6,
           name + ": witness gap reproduces");
  return unit && consistent;
}

// 1 ------------------------------------------------------------------------
bool criterion_1() {
  Check c;
  const auto t0 = Clock::now();
  struct Case {
    const char* name;
    PositiveMapKind kind;
    double expected;
  };
  for (const Case& k :
       {Case{"transpose", PositiveMapKind::Transpose, 1.0 / 5.0},
        Case{"reflection", PositiveMapKind::Reflection, 1.0 / 17.0},
        Case{"pauli_xi", PositiveMapKind::PauliXi, 1.0 / 3.0}}) {
    const LinearMapChoi m = positive_map(k.kind, 4);
    const double p = max_cp_mixing(m);
    const double at = mix_with_depolarizing_choi(m, p).min_eigenvalue();
    const double above =
        mix_with_depolarizing_choi(m, p + 1e-6).min_eigenvalue();
    c.note(fmt::format("{}: p_max {:.17g} (expected {:.17g}), lambda_min at "
                       "p_max {:.3e}, at p_max+1e-6 {:.3e}",
                       k.name, p, k.expected, at, above));
    c.expect(std::abs(p - k.expected) <= 4 * 2.220446049250313e-16 * k.expected,
             fmt::format("{} p_max to machine precision", k.name));
    c.expect(at >= -kTolPsd, fmt::format("{} PSD at p_max", k.name));
    c.expect(above < -kTolPsd, fmt::format("{} not PSD above p_max", k.name));
  }
  const double t = seconds_since(t0);
  c.expect(t < 1.0, fmt::format("runtime {:.3f} s < 1 s", t));
  return c.ok;
}

// 2 ------------------------------------------------------------------------
bool criterion_2() {
  Check c;
  CHSHSettings s;
  s.a0 = s.a1 = s.b0 = s.b1 = Bloch::UnitX();
  s.pA0 = s.pB0 = 0.0;
  s.pA1 = s.pB1 = 1.0;
  const CHSHResult r = chsh_experiment({1.0, true, 2}, s);
  c.note(fmt::format("a = b = (1,0,0), overlaps (0,0,1,1): I = {:.17g}, "
                     "E = ({:.3g}, {:.3g}, {:.3g}, {:.3g})",
                     r.value, r.correlators[0], r.correlators[1],
                     r.correlators[2], r.correlators[3]));
  CHSHSettings z = s;
  z.a0 = z.a1 = z.b0 = z.b1 = Bloch::UnitZ();
  c.note(fmt::format("info: a = b = (0,0,1), same overlaps: I = {:.17g}",
                     chsh_experiment({1.0, true, 2}, z).value));
  c.expect(std::abs(r.value - 4.0) <= 1e-12, "I = 4 within 1e-12");
  return c.ok;
}

// 3 ------------------------------------------------------------------------
bool criterion_3() {
  Check c;
  const auto t0 = Clock::now();
  double worst = 0.0, worst_prime = 0.0;
  for (double a : grid(21)) {
    const double num = chsh_optimize({a, true, 2}).value;
    const double num_p = chsh_optimize({a, false, 2}).value;
    worst = std::max(worst, std::abs(num - i_m_analytic(a)));
    worst_prime = std::max(worst_prime, std::abs(num_p - i_m_prime_analytic(a)));
  }
  c.note(fmt::format("max |numeric - I_M| = {:.3e}, max |numeric - I'_M| = "
                     "{:.3e}",
                     worst, worst_prime));
  c.expect(worst <= 1e-6, "coherent optimizer within 1e-6");
  c.expect(worst_prime <= 1e-6, "incoherent optimizer within 1e-6");
  const double a = 2.0 / 3.0;
  const double left = std::sqrt(std::pow(2.0 - a, 3) / (1.0 - a)) + a;
  const double right = 2.0 * (1.0 + a);
  c.note(fmt::format("I_M(2/3): left branch {:.17g}, right branch {:.17g}",
                     left, right));
  c.expect(std::abs(left - 10.0 / 3.0) < 1e-12 &&
               std::abs(right - 10.0 / 3.0) < 1e-12 &&
               std::abs(i_m_analytic(a) - 10.0 / 3.0) < 1e-12,
           "continuity at 2/3");
  const double t = seconds_since(t0);
  c.note(fmt::format("runtime {:.2f} s", t));
  c.expect(t < 30.0, "runtime < 30 s");
  return c.ok;
}

// 4 ------------------------------------------------------------------------
bool criterion_4() {
  Check c;
  c.expect(std::abs(i_m_analytic(0.0) - 2.0 * std::numbers::sqrt2) <= 1e-12,
           "I_M(0) = 2 sqrt 2");
  std::vector<double> alphas = grid(301);
  alphas.push_back(2.0 / 3.0);
  int equal_above = 0, strict_below = 0;
  for (double a : alphas) {
    const double gap = i_m_analytic(a) - i_m_prime_analytic(a);
    c.expect(gap >= -1e-9, fmt::format("I_M >= I'_M at {}", a));
    if (a >= 2.0 / 3.0) {
      c.expect(std::abs(gap) <= 1e-9, fmt::format("equality at {}", a));
      ++equal_above;
    } else {
      c.expect(gap > 1e-9, fmt::format("strict inequality at {}", a));
      ++strict_below;
    }
  }
  c.note(fmt::format("{} grid points with equality, {} with strict excess",
                     equal_above, strict_below));
  return c.ok;
}

// 5 ------------------------------------------------------------------------
bool criterion_5() {
  Check c;
  const auto t0 = Clock::now();
  const QuadratureResult small = e_pow_quadrature(1e-6);
  c.note(fmt::format("E_pow(1e-6) = {:.17g}, 1 - E_pow = {:.3e}", small.value,
                     1.0 - small.value));
  c.expect(std::abs(small.value - 1.0) <= 1e-6, "E_pow(1e-6) within 1e-6 of 1");

  Rng rng(20260101);
  for (double a : {0.25, 0.5, 1.0}) {
    const QuadratureResult q = e_pow_quadrature(a);
    const MonteCarloResult m = e_pow_monte_carlo(a, 1000000, rng);
    const double z = (m.mean - q.value) / m.standard_error;
    c.note(fmt::format("alpha {}: quadrature {:.12f}, Monte Carlo {:.6f} +- "
                       "{:.1e} ({:+.2f} se)",
                       a, q.value, m.mean, m.standard_error, z));
    c.expect(std::abs(z) <= 3.0, fmt::format("agreement at alpha {}", a));
  }
  const auto curve = tradeoff_curve(grid(21));
  bool decreasing = true, inverse = true;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    decreasing = decreasing && curve[i].e_pow < curve[i - 1].e_pow;
    inverse = inverse && curve[i].i_m > curve[i - 1].i_m &&
              curve[i].e_pow < curve[i - 1].e_pow;
  }
  c.expect(decreasing, "E_pow strictly decreasing on 21 points");
  c.expect(inverse, "(I_M, E_pow) inversely ordered");
  const double t = seconds_since(t0);
  c.note(fmt::format("runtime {:.2f} s", t));
  c.expect(t < 60.0, "runtime < 60 s");
  return c.ok;
}

// 6 ------------------------------------------------------------------------
bool criterion_6() {
  Check c;
  const auto t0 = Clock::now();
  c.expect(is_causal(BipartiteChannel(depolarizing(4), {2, 2}, {2, 2})).causal,
           "D_AB causal");
  for (double a : grid(21)) {
    c.expect(is_causal(lambda_alpha(a)).causal,
             fmt::format("Lambda_alpha({}) causal", a));
    c.expect(is_causal(lambda_alpha_prime(a)).causal,
             fmt::format("Lambda'_alpha({}) causal", a));
  }
  for (const auto& [name, u] :
       {std::pair{"CNOT", fx::cnot()}, std::pair{"SWAP", swap_operator(2, 2)}}) {
    const BipartiteChannel ch = conj(u);
    const CausalityVerdict v = is_causal(ch);
    c.expect(!v.causal, std::string(name) + " not causal");
    const Direction dir =
        v.semicausal_a_to_b ? Direction::BtoA : Direction::AtoB;
    valid_witness(ch, signalling_witness(ch, dir), c, name);
  }

  Rng rng(6);
  int entangling = 0, failing = 0;
  for (int t = 0; t < 100; ++t) {
    const Matrix u = haar_unitary(4, rng);
    if (std::holds_alternative<EntanglingForm>(unitary_form(u, 2, 2)))
      ++entangling;
    if (!is_causal(conj(u)).causal) ++failing;
  }
  c.note(fmt::format("Haar unitaries: {}/100 entangling, {}/100 not causal",
                     entangling, failing));
  c.expect(entangling == 100 && failing == 100, "Haar unitaries");
  int product_ok = 0;
  for (int t = 0; t < 20; ++t) {
    const Matrix u = fx::random_product_unitary(rng);
    if (is_causal(conj(u)).causal &&
        std::holds_alternative<ProductForm>(unitary_form(u, 2, 2)))
      ++product_ok;
  }
  c.expect(product_ok == 20, "20 product unitaries causal");

  int agree = 0, semicausal = 0;
  for (int t = 0; t < 50; ++t) {
    const BipartiteChannel ch =
        t % 3 == 0   ? fx::random_semicausal_ebt(rng)
        : t % 3 == 1 ? fx::random_product_channel(rng)
                     : BipartiteChannel(random_channel(4, 4, 1 + t % 4, rng),
                                        {2, 2}, {2, 2});
    bool same = true;
    for (Direction dir : {Direction::AtoB, Direction::BtoA}) {
      const bool choi = is_semicausal(ch, dir).holds;
      const bool super = superoperator_semicausality_residual(ch, dir) <= kTolCausal;
      const bool probe =
          definitional_semicausality_probe(ch, dir, 200, rng) <= 1e-8;
      same = same && choi == super && choi == probe;
      semicausal += choi;
    }
    agree += same;
  }
  c.note(fmt::format("criteria agree on {}/50 channels ({} semicausal "
                     "directions)",
                     agree, semicausal));
  c.expect(agree == 50, "three criteria agree");
  const double t = seconds_since(t0);
  c.note(fmt::format("runtime {:.2f} s", t));
  c.expect(t < 120.0, "runtime < 120 s");
  return c.ok;
}

// 7 ------------------------------------------------------------------------
bool criterion_7() {
  Check c;
  Rng rng(7);
  int mixtures = 0, failing = 0;
  for (int t = 0; t < 20; ++t) {
    const Matrix u = t == 0 ? fx::cnot() : haar_unitary(4, rng);
    const BipartiteChannel sig = conj(u);
    const BipartiteChannel causal = t % 2 ? fx::random_causal_ebt(rng)
                                          : fx::random_product_channel(rng);
    for (double p : {0.01, 0.1, 0.5}) {
      ++mixtures;
      if (!is_causal(mixture(p, sig, causal)).causal) ++failing;
    }
  }
  c.note(fmt::format("{}/{} mixtures fail causality", failing, mixtures));
  c.expect(failing == mixtures, "every mixture signals");
  int closed = 0;
  for (int t = 0; t < 20; ++t) {
    const BipartiteChannel a = fx::random_semicausal_ebt(rng);
    const BipartiteChannel b = fx::random_semicausal_ebt(rng);
    if (is_semicausal_a_to_b(a).holds && is_semicausal_a_to_b(b).holds &&
        is_semicausal_a_to_b(compose(a, b)).holds)
      ++closed;
  }
  c.note(fmt::format("{}/20 compositions stay A->B semicausal", closed));
  c.expect(closed == 20, "semigroup property");
  return c.ok;
}

// 8 ------------------------------------------------------------------------
bool criterion_8() {
  Check c;
  for (int k : {2, 3}) {
    const ClassicalBox m = measure_box(lambda_k(k));
    const ClassicalBox pr = pr_extreme(k, k, k);
    double dev = 0.0;
    for (std::size_t i = 0; i < pr.data().size(); ++i)
      dev = std::max(dev, std::abs(m.data()[i] - pr.data()[i]));
    c.note(fmt::format("k = {}: max entry deviation {:.3e}", k, dev));
    c.expect(dev <= 1e-12, fmt::format("measure_box(Lambda_{}) entrywise", k));
    c.expect(is_nonsignalling_box(pr), fmt::format("PR_{} non-signalling", k));
    double marg = 0.0;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < k; ++a) {
          double ma = 0.0, mb = 0.0;
          for (int b = 0; b < k; ++b) {
            ma += pr(a, b, x, y);
            mb += pr(b, a, x, y);
          }
          marg = std::max({marg, std::abs(ma - 1.0 / k), std::abs(mb - 1.0 / k)});
        }
    c.expect(marg <= 1e-12, fmt::format("PR_{} marginals uniform", k));
  }
  return c.ok;
}

// 9 ------------------------------------------------------------------------
bool criterion_9() {
  Check c;
  Rng rng(9);
  double worst_product = 0.0, worst_ebt = 0.0;
  for (int t = 0; t < 10; ++t)
    worst_product = std::max(
        worst_product,
        semilocalize(conj(fx::random_product_unitary(rng))).reconstruction_error);
  const double nlp = semilocalize(lambda_nl_prime()).reconstruction_error;
  for (int t = 0; t < 20; ++t)
    worst_ebt = std::max(
        worst_ebt, semilocalize(fx::random_causal_ebt(rng)).reconstruction_error);
  c.note(fmt::format("product unitaries {:.3e}, Lambda'_NL {:.3e}, causal EBT "
                     "{:.3e}",
                     worst_product, nlp, worst_ebt));
  c.expect(worst_product < 1e-8, "product unitaries");
  c.expect(nlp < 1e-8, "Lambda'_NL");
  c.expect(worst_ebt < 1e-8, "random causal EBT");
  return c.ok;
}

// 10 -----------------------------------------------------------------------
bool criterion_10() {
  Check c;
  const auto t0 = Clock::now();
  const BooleanFunction ip = BooleanFunction::inner_product(4);
  std::size_t runs = 0, wrong = 0, extra_bits = 0, box_mismatch = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    PrBoxNet net(4, seed);
    for (std::uint32_t x = 0; x < 16; ++x)
      for (std::uint32_t y = 0; y < 16; ++y) {
        const ProtocolRun r =
            inner_product_protocol(to_bits(x, 4), to_bits(y, 4), net);
        ++runs;
        wrong += r.result != ip(x, y);
        extra_bits += r.transcript.bits_sent() != 1;
        box_mismatch += r.boxes_used != 4;
      }
  }
  c.note(fmt::format("inner product: {} runs, {} wrong", runs, wrong));
  c.expect(wrong == 0 && extra_bits == 0 && box_mismatch == 0,
           "inner product protocol");
  Rng gen(10);
  std::size_t gruns = 0, gwrong = 0, gbits = 0, max_boxes = 0;
  for (int f = 0; f < 10; ++f) {
    const BooleanFunction fn = BooleanFunction::random(3, gen);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Rng rng(seed);
      for (std::uint32_t x = 0; x < 8; ++x)
        for (std::uint32_t y = 0; y < 8; ++y) {
          const ProtocolRun r = general_protocol(fn, x, y, rng);
          ++gruns;
          gwrong += r.result != fn(x, y);
          gbits += r.transcript.bits_sent() != 1;
          max_boxes = std::max(max_boxes, r.boxes_used);
        }
    }
  }
  c.note(fmt::format("general: {} runs, {} wrong, up to {} boxes", gruns,
                     gwrong, max_boxes));
  c.expect(gwrong == 0 && gbits == 0, "general protocol");
  const double t = seconds_since(t0);
  c.expect(t < 30.0, fmt::format("runtime {:.2f} s < 30 s", t));
  return c.ok;
}

// 11 -----------------------------------------------------------------------
bool criterion_11() {
  Check c;
  const TableChannel nl = channel_from_table(tabulate(lambda_nl()));
  const double dev =
      nl.channel ? fx::action_distance(nl.channel->base(), lambda_nl().base())
                 : 1.0;
  c.note(fmt::format("Lambda_NL round trip deviation {:.3e}", dev));
  c.expect(dev <= 1e-10, "Lambda_NL round trip");

  // Cells mix a causal EBT map with a pure output state, a locally rotated
  // Lambda_NL, and on odd instances a fraction q of cells
  // (V_i ⊗ W_j)|psi0><psi0|(V_i ⊗ W_j)^†. Marginals stay consistent.
  Rng rng(11);
  int psd = 0, psd_entangled = 0, causal = 0, linear_causal = 0;
  const int instances = 40;
  const auto basis = product_projector_basis(2);
  const Matrix p0 = psi0() * psi0().adjoint();
  for (int t = 0; t < instances; ++t) {
    const Povm f = fx::random_povm(2, 2, rng), g = fx::random_povm(2, 2, rng);
    const Vector s = haar_unitary(4, rng).col(0);
    std::vector<Matrix> effects;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        effects.push_back(kron(f.effects()[i], g.effects()[j]));
    std::vector<DensityMatrix> outs;
    const std::vector<Matrix> va{haar_unitary(2, rng), haar_unitary(2, rng)};
    const std::vector<Matrix> wb{haar_unitary(2, rng), haar_unitary(2, rng)};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        outs.emplace_back(fx::conj_by(kron(va[i], wb[j]), s * s.adjoint()));
    const AssignmentTable base =
        tabulate(ebt_channel(Povm(effects), outs, {2, 2}, {2, 2}));
    const BipartiteChannel rotated_nl = compose(
        conj(fx::random_product_unitary(rng)),
        compose(lambda_nl(), conj(fx::random_product_unitary(rng))));
    const AssignmentTable nl_cells = tabulate(rotated_nl);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = unit(rng);
    const double q = t % 2 ? 0.05 * unit(rng) : 0.0;
    std::vector<Matrix> v, w;
    for (int i = 0; i < 4; ++i) {
      v.push_back(haar_unitary(2, rng));
      w.push_back(haar_unitary(2, rng));
    }
    AssignmentTable table{basis, basis, {2, 2}, {}};
    bool any_entangled = false;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const Matrix vw = kron(v[i], w[j]);
        const Matrix cell = (1.0 - q - r + q * r) * base.cell(i, j).matrix() +
                            r * (1.0 - q) * nl_cells.cell(i, j).matrix() +
                            q * vw * p0 * vw.adjoint();
        any_entangled = any_entangled || fx::ppt_min_eigenvalue(cell) < -1e-9;
        table.cells.emplace_back(cell);
      }
    const TableChannel tc = channel_from_table(table);
    linear_causal += is_causal(tc.choi, {2, 2}, {2, 2}).causal;
    if (tc.channel) {
      ++psd;
      psd_entangled += any_entangled;
      causal += is_causal(*tc.channel).causal;
    }
  }
  c.note(fmt::format("{} tables: {} PSD ({} with entangled cells), {} of the "
                     "PSD ones causal",
                     instances, psd, psd_entangled, causal));
  c.expect(psd_entangled > 0, "at least one PSD table with entangled cells");
  c.expect(causal == psd, "every PSD rebuilt table is causal");
  c.expect(linear_causal == instances, "rebuilt linear maps satisfy the criterion");
  return c.ok;
}

const std::vector<std::pair<std::string, std::function<bool()>>> kCriteria{
    {"structural-approximation thresholds", criterion_1},
    {"CHSH value 4 at a = b = (1,0,0)", criterion_2},
    {"numeric CHSH optimum vs closed forms", criterion_3},
    {"Tsirelson endpoint and I_M >= I'_M", criterion_4},
    {"entangling power", criterion_5},
    {"causality checker", criterion_6},
    {"mixtures and semigroup", criterion_7},
    {"measured quantum boxes", criterion_8},
    {"semilocalization", criterion_9},
    {"PR-box protocols", criterion_10},
    {"assignment tables", criterion_11},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-11)")
      ->check(CLI::Range(1, static_cast<int>(kCriteria.size())));
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (std::size_t i = 0; i < kCriteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    const auto t0 = Clock::now();
    bool ok = false;
    try {
      ok = kCriteria[i].second();
    } catch (const std::exception& e) {
      fmt::print("    exception: {}\n", e.what());
    }
    fmt::print("criterion {:>2}: {} {} ({:.2f} s)\n", i + 1,
               ok ? "PASS" : "FAIL", kCriteria[i].first, seconds_since(t0));
    std::cout.flush();
    failed += !ok;
  }
  return failed == 0 ? 0 : 1;
}
