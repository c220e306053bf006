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

#include "nsbox/vandam.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include <fmt/format.h>

namespace nsbox {

namespace {

int parity(const Bits& bits) {
  int p = 0;
  for (auto b : bits) p ^= b & 1;
  return p;
}

int monomial(std::uint32_t word, std::uint32_t mask) {
  return (word & mask) == mask ? 1 : 0;
}

// Alice sees only her input and her box outputs.
int alice_message(const Bits& a) { return parity(a); }

// Bob sees only his box outputs and the received bit.
int bob_output(const Bits& b, int message) { return message ^ parity(b); }

}  // namespace

std::pair<int, int> pr_sample(int x, int y, Rng& rng) {
  if ((x & ~1) != 0 || (y & ~1) != 0)
    throw std::invalid_argument("pr_sample: inputs must be bits");
  const int a = static_cast<int>(rng() >> 63);
  return {a, a ^ (x & y)};
}

PrBoxNet::PrBoxNet(std::size_t n_boxes, std::uint64_t seed)
    : n_boxes_(n_boxes), rng_(seed) {}

PrBoxNet::Outputs PrBoxNet::use(const Bits& x, const Bits& y) {
  if (x.size() != n_boxes_ || y.size() != n_boxes_)
    throw std::invalid_argument(fmt::format(
        "PrBoxNet: expected {} inputs per party, got {} and {}", n_boxes_,
        x.size(), y.size()));
  Outputs out{Bits(n_boxes_), Bits(n_boxes_)};
  for (std::size_t i = 0; i < n_boxes_; ++i) {
    const auto [a, b] = pr_sample(x[i], y[i], rng_);
    out.alice[i] = static_cast<std::uint8_t>(a);
    out.bob[i] = static_cast<std::uint8_t>(b);
  }
  return out;
}

ProtocolRun inner_product_protocol(const Bits& x, const Bits& y,
                                   PrBoxNet& net) {
  const auto boxes = net.use(x, y);
  ProtocolRun run;
  const int message = alice_message(boxes.alice);
  run.transcript.log.emplace_back(Sender::Alice, message);
  run.result = bob_output(boxes.bob, message);
  run.boxes_used = net.n_boxes();
  return run;
}

void BooleanFunction::check_arity(int n) {
  if (n < 1 || n > 8)
    throw std::invalid_argument(
        fmt::format("BooleanFunction: n must lie in [1, 8], got {}", n));
}

BooleanFunction BooleanFunction::inner_product(int n) {
  auto f = from("ip", n, [](std::uint32_t x, std::uint32_t y) {
    return std::popcount(x & y) & 1;
  });
  std::vector<MonomialPair> d;
  for (int i = 0; i < n; ++i) d.push_back({1u << i, 1u << i});
  f.decomposition = std::move(d);
  return f;
}

BooleanFunction BooleanFunction::conjunction(int n) {
  const std::uint32_t all = (1u << n) - 1;
  return from("and", n, [all](std::uint32_t x, std::uint32_t y) {
    return x == all && y == all ? 1 : 0;
  });
}

BooleanFunction BooleanFunction::constant(int n, int value) {
  return from(fmt::format("const{}", value & 1), n,
              [value](std::uint32_t, std::uint32_t) { return value; });
}

BooleanFunction BooleanFunction::random(int n, Rng& rng) {
  return from("random", n,
              [&rng](std::uint32_t, std::uint32_t) {
                return static_cast<int>(rng() >> 63);
              });
}

std::vector<MonomialPair> gf2_decompose(const BooleanFunction& f) {
  const std::size_t size = std::size_t{1} << (2 * f.n);
  if (f.table.size() != size)
    throw std::invalid_argument("gf2_decompose: truth table size mismatch");
  std::vector<std::uint8_t> anf = f.table;
  for (std::size_t bit = 1; bit < size; bit <<= 1)
    for (std::size_t i = 0; i < size; ++i)
      if (i & bit) anf[i] ^= anf[i ^ bit];
  const std::uint32_t low = (1u << f.n) - 1;
  std::vector<MonomialPair> out;
  for (std::size_t m = 0; m < size; ++m)
    if (anf[m])
      out.push_back({static_cast<std::uint32_t>(m >> f.n),
                     static_cast<std::uint32_t>(m) & low});
  return out;
}

int evaluate_decomposition(const std::vector<MonomialPair>& d,
                           std::uint32_t x, std::uint32_t y) {
  int v = 0;
  for (const auto& p : d) v ^= monomial(x, p.x_mask) & monomial(y, p.y_mask);
  return v;
}

ProtocolRun general_protocol(const BooleanFunction& f, std::uint32_t x,
                             std::uint32_t y, Rng& rng) {
  const std::vector<MonomialPair> d =
      f.decomposition ? *f.decomposition : gf2_decompose(f);
  // Local box inputs: Alice evaluates the x-monomials, Bob the y-monomials.
  Bits u(d.size()), v(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) {
    u[j] = static_cast<std::uint8_t>(monomial(x, d[j].x_mask));
    v[j] = static_cast<std::uint8_t>(monomial(y, d[j].y_mask));
  }
  PrBoxNet net(d.size(), rng());
  const auto boxes = net.use(u, v);
  ProtocolRun run;
  const int message = alice_message(boxes.alice);
  run.transcript.log.emplace_back(Sender::Alice, message);
  run.result = bob_output(boxes.bob, message);
  run.boxes_used = d.size();
  return run;
}

int naive_cost(const BooleanFunction& f) {
  for (std::uint32_t y = 0; y < (1u << f.n); ++y)
    for (std::uint32_t x = 1; x < (1u << f.n); ++x)
      if (f(x, y) != f(0, y)) return f.n;
  return 0;
}

Bits to_bits(std::uint32_t word, int n) {
  Bits b(n);
  for (int i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>(word >> i & 1);
  return b;
}

VanDamReport run_vandam(const BooleanFunction& f, std::size_t trials,
                        std::uint64_t seed) {
  VanDamReport r{f.name, f.n, 0, 0, trials, 0, seed};
  Rng rng(seed);
  std::uniform_int_distribution<std::uint32_t> word(0, (1u << f.n) - 1);
  PrBoxNet net(static_cast<std::size_t>(f.n), rng());
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint32_t x = word(rng), y = word(rng);
    const ProtocolRun run =
        f.name == "ip"
            ? inner_product_protocol(to_bits(x, f.n), to_bits(y, f.n), net)
            : general_protocol(f, x, y, rng);
    if (run.result != f(x, y)) ++r.errors;
    r.boxes_used = std::max(r.boxes_used, run.boxes_used);
    r.bits_sent = std::max(r.bits_sent, run.transcript.bits_sent());
  }
  return r;
}

}  // namespace nsbox
