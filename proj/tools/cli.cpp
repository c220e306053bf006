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

#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nsbox/boxes.hpp"
#include "nsbox/causality.hpp"
#include "nsbox/entpower.hpp"
#include "nsbox/nonlocality.hpp"
#include "nsbox/serialize.hpp"
#include "nsbox/vandam.hpp"

namespace nsbox::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> alpha_grid(int steps) {
  if (steps < 2) throw UsageError("--steps must be at least 2");
  std::vector<double> out(steps);
  for (int i = 0; i < steps; ++i) out[i] = double(i) / (steps - 1);
  return out;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::invalid_argument(fmt::format("cannot write {}", path));
  f << text;
}

Matrix cnot() {
  Matrix u = Matrix::Zero(4, 4);
  u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
  return u;
}

BipartiteChannel named_channel(const std::string& name, double alpha) {
  if (name == "cnot") return unitary_channel(cnot(), {2, 2});
  if (name == "swap") return unitary_channel(swap_operator(2, 2), {2, 2});
  if (name == "depolarizing")
    return BipartiteChannel(depolarizing(4), {2, 2}, {2, 2});
  if (name == "identity")
    return BipartiteChannel(identity_channel(4), {2, 2}, {2, 2});
  if (name == "lambda_nl") return lambda_nl();
  if (name == "lambda_nl_prime") return lambda_nl_prime();
  if (name == "lambda_alpha") return lambda_alpha(alpha);
  if (name == "lambda_alpha_prime") return lambda_alpha_prime(alpha);
  throw UsageError(fmt::format("unknown channel '{}'", name));
}

BooleanFunction named_function(const std::string& name, int n,
                               std::uint64_t seed) {
  if (name == "ip") return BooleanFunction::inner_product(n);
  if (name == "and") return BooleanFunction::conjunction(n);
  if (name == "const0") return BooleanFunction::constant(n, 0);
  if (name == "const1") return BooleanFunction::constant(n, 1);
  if (name == "random") {
    Rng rng(seed);
    return BooleanFunction::random(n, rng);
  }
  throw UsageError(fmt::format("unknown function '{}'", name));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Causality analysis of bipartite quantum channels", "nsbox"};
  app.require_subcommand(1);

  std::string channel_path;
  double tol = kTolCausal;
  auto* check = app.add_subcommand("check", "causality verdict for a channel");
  check->add_option("--channel", channel_path, "channel JSON")->required();
  check->add_option("--tol", tol, "verdict tolerance");

  std::string side;
  auto* reduce = app.add_subcommand("reduce", "reduced map on one side");
  reduce->add_option("--channel", channel_path, "channel JSON")->required();
  reduce->add_option("--side", side, "A or B")
      ->required()
      ->check(CLI::IsMember({"A", "B"}));
  reduce->add_option("--tol", tol, "semicausality tolerance");

  auto* semiloc =
      app.add_subcommand("semilocalize", "one-way realization of a map");
  semiloc->add_option("--channel", channel_path, "channel JSON")->required();
  semiloc->add_option("--tol", tol, "semicausality tolerance");

  std::string map_name;
  int dim = 4;
  auto* spa = app.add_subcommand("spa", "structural mixing threshold");
  spa->add_option("--map", map_name, "transpose, reflection or pauli_xi")
      ->required()
      ->check(CLI::IsMember({"transpose", "reflection", "pauli_xi"}));
  spa->add_option("--d", dim, "dimension")->check(CLI::PositiveNumber);

  int k = 2;
  bool measure = false;
  auto* box = app.add_subcommand("box", "PR extreme point as CSV");
  box->add_option("--k", k, "output alphabet size")->check(CLI::Range(2, 8));
  box->add_flag("--measure", measure, "measure the quantum box instead");

  int steps = 21;
  int nodes = 64;
  std::string out_path;
  auto* chsh = app.add_subcommand("chsh-sweep", "analytic vs numeric CHSH");
  chsh->add_option("--steps", steps, "alpha grid size");
  chsh->add_option("--out", out_path, "output CSV");

  auto* ep = app.add_subcommand("entpower-sweep", "entangling power sweep");
  ep->add_option("--steps", steps, "alpha grid size");
  ep->add_option("--nodes", nodes, "quadrature nodes per axis");
  ep->add_option("--out", out_path, "output CSV");

  auto* trade = app.add_subcommand("tradeoff", "CHSH vs entangling power");
  trade->add_option("--steps", steps, "alpha grid size");
  trade->add_option("--nodes", nodes, "quadrature nodes per axis");
  trade->add_option("--out", out_path, "output CSV");

  std::string fn = "ip";
  int n = 4;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  auto* vd = app.add_subcommand("vandam", "PR-box protocol demo");
  vd->add_option("--fn", fn, "ip, and, const0, const1 or random");
  vd->add_option("--n", n, "input bits per party")->check(CLI::Range(1, 8));
  vd->add_option("--trials", trials, "random inputs to test");
  vd->add_option("--seed", seed, "random seed");

  std::string export_name;
  double alpha = 1.0;
  auto* exp = app.add_subcommand("export", "write a standard channel as JSON");
  exp->add_option("--name", export_name,
                  "cnot, swap, depolarizing, identity, lambda_nl, "
                  "lambda_nl_prime, lambda_alpha, lambda_alpha_prime")
      ->required();
  exp->add_option("--alpha", alpha, "alpha for the lambda_alpha families");
  exp->add_option("--out", out_path, "output JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*check) {
      const BipartiteChannel ch = read_channel_file(channel_path).bipartite();
      const CausalityVerdict v = is_causal(ch, tol);
      std::optional<SignallingWitness> w;
      if (!v.semicausal_a_to_b)
        w = signalling_witness(ch, Direction::AtoB, tol);
      else if (!v.semicausal_b_to_a)
        w = signalling_witness(ch, Direction::BtoA, tol);
      out << to_json(v, w) << "\n";
    } else if (*reduce) {
      const BipartiteChannel ch = read_channel_file(channel_path).bipartite();
      out << to_json(reduced_map(ch, side == "A" ? Party::A : Party::B, tol))
          << "\n";
    } else if (*semiloc) {
      const BipartiteChannel ch = read_channel_file(channel_path).bipartite();
      out << to_json(semilocalize(ch, tol)) << "\n";
    } else if (*spa) {
      const std::map<std::string, PositiveMapKind> kinds{
          {"transpose", PositiveMapKind::Transpose},
          {"reflection", PositiveMapKind::Reflection},
          {"pauli_xi", PositiveMapKind::PauliXi}};
      const LinearMapChoi m = positive_map(kinds.at(map_name), dim);
      const double p = max_cp_mixing(m);
      const double above = std::min(1.0, p + 1e-6);
      out << fmt::format(
          "{{\"map\":\"{}\",\"d\":{},\"p_max\":{},\"choi_min_eigenvalue\":{},"
          "\"mixture_min_eigenvalue\":{},\"mixture_min_eigenvalue_above\":{}}}"
          "\n",
          map_name, dim, format_number(p), format_number(m.min_eigenvalue()),
          format_number(mix_with_depolarizing_choi(m, p).min_eigenvalue()),
          format_number(mix_with_depolarizing_choi(m, above).min_eigenvalue()));
    } else if (*box) {
      out << to_csv(measure ? measure_box(lambda_k(k)) : pr_extreme(k, k, k));
    } else if (*chsh) {
      std::vector<ChshSweepRow> rows;
      for (double a : alpha_grid(steps))
        rows.push_back({a, i_m_analytic(a), chsh_optimize({a, true, 2}).value,
                        i_m_prime_analytic(a),
                        chsh_optimize({a, false, 2}).value});
      emit(to_csv(rows), out_path, out);
    } else if (*ep) {
      std::vector<EntpowerRow> rows;
      for (double a : alpha_grid(steps)) {
        const QuadratureResult q = e_pow_quadrature(a, nodes);
        rows.push_back({a, q.value, q.error_estimate});
      }
      emit(to_csv(rows), out_path, out);
    } else if (*trade) {
      emit(to_csv(tradeoff_curve(alpha_grid(steps), nodes)), out_path, out);
    } else if (*vd) {
      const BooleanFunction f = named_function(fn, n, seed);
      out << to_json(run_vandam(f, trials, seed)) << "\n";
    } else if (*exp) {
      emit(to_json(named_channel(export_name, alpha)) + "\n", out_path, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace nsbox::cli
