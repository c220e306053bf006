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

#include "nsbox/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace nsbox {

namespace {

using Index = Eigen::Index;
using nlohmann::json;

std::string complex_array(const Vector& v) {
  std::string s = "[";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += fmt::format("[{},{}]", format_number(v(i).real()),
                     format_number(v(i).imag()));
  }
  return s + "]";
}

std::string factor_pair(Factorization f) {
  return fmt::format("[{},{}]", f.a, f.b);
}

Factorization square_split(Index d) {
  const auto r = static_cast<Index>(std::llround(std::sqrt(double(d))));
  if (r * r != d)
    throw std::invalid_argument(fmt::format(
        "no factorization given and dimension {} is not a square", d));
  return {r, r};
}

std::optional<Factorization> read_factors(const json& doc, const char* key,
                                          Index total) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  const auto& f = doc[key];
  if (!f.is_array() || f.size() != 2)
    throw std::invalid_argument(fmt::format("'{}' must be [dA, dB]", key));
  const Factorization out{f[0].get<Index>(), f[1].get<Index>()};
  if (out.a < 1 || out.b < 1 || out.total() != total)
    throw std::invalid_argument(
        fmt::format("'{}' does not multiply to the dimension", key));
  return out;
}

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x))
    throw std::invalid_argument("cannot serialize a non-finite number");
  return fmt::format("{:.17g}", x);
}

LinearMapChoi ChannelDocument::linear_map() const {
  return LinearMapChoi(d_in, d_out, choi);
}

Channel ChannelDocument::channel(double tol) const {
  return choi_to_kraus(ChoiState(d_in, d_out, choi, tol), tol);
}

Factorization ChannelDocument::input_factors() const {
  return factor_in ? *factor_in : square_split(d_in);
}

Factorization ChannelDocument::output_factors() const {
  return factor_out ? *factor_out : square_split(d_out);
}

BipartiteChannel ChannelDocument::bipartite(double tol) const {
  return BipartiteChannel(channel(tol), input_factors(), output_factors());
}

ChannelDocument parse_channel_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(fmt::format("malformed JSON: {}", e.what()));
  }
  try {
    ChannelDocument out;
    out.d_in = doc.at("d_in").get<Index>();
    out.d_out = doc.at("d_out").get<Index>();
    if (out.d_in < 1 || out.d_out < 1)
      throw std::invalid_argument("dimensions must be positive");
    out.factor_in = read_factors(doc, "factor_in", out.d_in);
    out.factor_out = read_factors(doc, "factor_out", out.d_out);
    const auto& entries = doc.at("choi");
    const Index n = out.d_in * out.d_out;
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(n * n))
      throw std::invalid_argument(
          fmt::format("'choi' must hold {} entries", n * n));
    out.choi.resize(n, n);
    for (Index k = 0; k < n * n; ++k) {
      const auto& e = entries[k];
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("'choi' entries must be [re, im]");
      out.choi(k / n, k % n) = Complex(e[0].get<double>(), e[1].get<double>());
    }
    return out;
  } catch (const json::exception& e) {
    throw std::invalid_argument(fmt::format("malformed channel: {}", e.what()));
  }
}

ChannelDocument read_channel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(fmt::format("cannot open {}", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_channel_json(ss.str());
}

std::string to_json(const LinearMapChoi& choi, std::optional<Factorization> in,
                    std::optional<Factorization> out) {
  std::string s = fmt::format("{{\"d_in\":{},\"d_out\":{}", choi.d_in(),
                              choi.d_out());
  if (in) s += ",\"factor_in\":" + factor_pair(*in);
  if (out) s += ",\"factor_out\":" + factor_pair(*out);
  const Matrix& m = choi.matrix();
  Vector flat(m.size());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) flat(r * m.cols() + c) = m(r, c);
  return s + ",\"choi\":" + complex_array(flat) + "}";
}

std::string to_json(const Channel& ch) {
  return to_json(kraus_to_choi(ch).as_linear_map());
}

std::string to_json(const BipartiteChannel& ch) {
  return to_json(kraus_to_choi(ch.base()).as_linear_map(), ch.in(), ch.out());
}

std::string to_json(const SignallingWitness& w) {
  return fmt::format(
      "{{\"direction\":\"{}\",\"sender_state\":{},\"receiver_state\":{},"
      "\"input\":{},\"distinguishability\":{}}}",
      w.direction == Direction::AtoB ? "A->B" : "B->A",
      complex_array(w.sender_state), complex_array(w.receiver_state),
      complex_array(w.input.amplitudes()),
      format_number(w.distinguishability));
}

std::string to_json(const CausalityVerdict& v,
                    const std::optional<SignallingWitness>& witness) {
  std::string s = fmt::format(
      "{{\"semicausal_ab\":{},\"semicausal_ba\":{},\"causal\":{},"
      "\"residual_ab\":{},\"residual_ba\":{}",
      v.semicausal_a_to_b, v.semicausal_b_to_a, v.causal,
      format_number(v.residual_a_to_b), format_number(v.residual_b_to_a));
  if (witness) s += ",\"witness\":" + to_json(*witness);
  return s + "}";
}

std::string to_json(const Semilocalization& s) {
  return fmt::format(
      "{{\"reconstruction_error\":{},\"factor_in\":{},\"factor_out\":{},"
      "\"d_e\":{},\"d_c\":{}}}",
      format_number(s.reconstruction_error), factor_pair(s.in),
      factor_pair(s.out), s.d_e, s.d_c);
}

std::string to_json(const VanDamReport& r) {
  return fmt::format(
      "{{\"f\":{},\"n\":{},\"boxes_used\":{},\"bits_sent\":{},\"trials\":{},"
      "\"errors\":{},\"seed\":{}}}",
      json(r.f).dump(), r.n, r.boxes_used, r.bits_sent, r.trials, r.errors,
      r.seed);
}

std::string to_csv(const ClassicalBox& b) {
  std::string s = "x,y,a,b,p\n";
  for (int x = 0; x < b.n_x(); ++x)
    for (int y = 0; y < b.n_y(); ++y)
      for (int a = 0; a < b.n_a(); ++a)
        for (int bb = 0; bb < b.n_b(); ++bb)
          s += fmt::format("{},{},{},{},{}\n", x, y, a, bb,
                           format_number(b(a, bb, x, y)));
  return s;
}

std::string to_csv(const std::vector<ChshSweepRow>& rows) {
  std::string s =
      "alpha,I_coherent_analytic,I_coherent_numeric,I_incoherent_analytic,"
      "I_incoherent_numeric\n";
  for (const auto& r : rows)
    s += fmt::format("{},{},{},{},{}\n", format_number(r.alpha),
                     format_number(r.coherent_analytic),
                     format_number(r.coherent_numeric),
                     format_number(r.incoherent_analytic),
                     format_number(r.incoherent_numeric));
  return s;
}

std::string to_csv(const std::vector<EntpowerRow>& rows) {
  std::string s = "alpha,e_pow,err_estimate\n";
  for (const auto& r : rows)
    s += fmt::format("{},{},{}\n", format_number(r.alpha),
                     format_number(r.e_pow), format_number(r.err_estimate));
  return s;
}

std::string to_csv(const std::vector<TradeoffPoint>& rows) {
  std::string s = "alpha,i_m,e_pow,err_estimate\n";
  for (const auto& r : rows)
    s += fmt::format("{},{},{},{}\n", format_number(r.alpha),
                     format_number(r.i_m), format_number(r.e_pow),
                     format_number(r.quadrature_error_estimate));
  return s;
}

}  // namespace nsbox
