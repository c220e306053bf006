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

// PR-box networks and one-bit distributed evaluation of boolean functions.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsbox/linalg.hpp"

namespace nsbox {

using Bits = std::vector<std::uint8_t>;

/// Outputs (a, b) of one PR-box use: a uniform, a ⊕ b = x·y.
std::pair<int, int> pr_sample(int x, int y, Rng& rng);

/// A bank of PR boxes. Each use draws fresh randomness. The outputs are
/// returned split by party.
class PrBoxNet {
 public:
  PrBoxNet(std::size_t n_boxes, std::uint64_t seed);

  [[nodiscard]] std::size_t n_boxes() const { return n_boxes_; }

  struct Outputs {
    Bits alice;
    Bits bob;
  };
  /// Feeds x_i, y_i into box i for every box.
  Outputs use(const Bits& x, const Bits& y);

 private:
  std::size_t n_boxes_;
  Rng rng_;
};

enum class Sender { Alice, Bob };

struct Transcript {
  std::vector<std::pair<Sender, int>> log;
  [[nodiscard]] std::size_t bits_sent() const { return log.size(); }
};

struct ProtocolRun {
  int result = 0;
  Transcript transcript;
  std::size_t boxes_used = 0;
};

/// ⊕_i x_i y_i with one box per position and one bit from Alice to Bob.
ProtocolRun inner_product_protocol(const Bits& x, const Bits& y,
                                   PrBoxNet& net);

/// Monomial pair: u(x) = ∏_{i in x_mask} x_i and v(y) = ∏_{i in y_mask} y_i.
struct MonomialPair {
  std::uint32_t x_mask = 0;
  std::uint32_t y_mask = 0;
  friend bool operator==(const MonomialPair&, const MonomialPair&) = default;
};

/// f : {0,1}^n × {0,1}^n -> {0,1}. Bit i of an input word is x_i; the
/// truth table is indexed by (x << n) | y.
struct BooleanFunction {
  std::string name;
  int n = 0;
  std::vector<std::uint8_t> table;
  std::optional<std::vector<MonomialPair>> decomposition;

  [[nodiscard]] int operator()(std::uint32_t x, std::uint32_t y) const {
    return table.at((static_cast<std::size_t>(x) << n) | y);
  }

  static BooleanFunction inner_product(int n);
  static BooleanFunction conjunction(int n);  // ∧ of all 2n bits
  static BooleanFunction constant(int n, int value);
  static BooleanFunction random(int n, Rng& rng);
  template <class F>
  static BooleanFunction from(std::string name, int n, F&& f) {
    BooleanFunction out{std::move(name), n, {}, std::nullopt};
    check_arity(n);
    out.table.resize(std::size_t{1} << (2 * n));
    for (std::uint32_t x = 0; x < (1u << n); ++x)
      for (std::uint32_t y = 0; y < (1u << n); ++y)
        out.table[(static_cast<std::size_t>(x) << n) | y] =
            static_cast<std::uint8_t>(f(x, y) & 1);
    return out;
  }

 private:
  static void check_arity(int n);
};

/// Algebraic normal form over GF(2), one pair per monomial.
std::vector<MonomialPair> gf2_decompose(const BooleanFunction& f);

/// Evaluates ⊕_j u_j(x) v_j(y).
int evaluate_decomposition(const std::vector<MonomialPair>& d,
                           std::uint32_t x, std::uint32_t y);

/// One PR box per decomposition pair, then Alice sends the parity of her
/// box outputs. Decomposes on demand when f carries none.
ProtocolRun general_protocol(const BooleanFunction& f, std::uint32_t x,
                             std::uint32_t y, Rng& rng);

/// Trivial upper bound: n bits, or 0 when f does not depend on x.
int naive_cost(const BooleanFunction& f);

struct VanDamReport {
  std::string f;
  int n = 0;
  std::size_t boxes_used = 0;
  std::size_t bits_sent = 0;
  std::size_t trials = 0;
  std::size_t errors = 0;
  std::uint64_t seed = 0;
};

/// Runs the protocol on `trials` random inputs and counts mismatches
/// against the truth table. "ip" uses the inner-product protocol.
VanDamReport run_vandam(const BooleanFunction& f, std::size_t trials,
                        std::uint64_t seed);

Bits to_bits(std::uint32_t word, int n);

}  // namespace nsbox
