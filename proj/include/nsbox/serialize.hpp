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

// JSON and CSV interchange. Numbers are written with 17 significant digits.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nsbox/boxes.hpp"
#include "nsbox/causality.hpp"
#include "nsbox/entpower.hpp"
#include "nsbox/vandam.hpp"

namespace nsbox {

/// { "d_in", "d_out", "factor_in"?, "factor_out"?, "choi": [[re, im], ...] }
/// with the Choi matrix in row-major order.
struct ChannelDocument {
  Eigen::Index d_in = 0;
  Eigen::Index d_out = 0;
  std::optional<Factorization> factor_in;
  std::optional<Factorization> factor_out;
  Matrix choi;

  [[nodiscard]] LinearMapChoi linear_map() const;
  /// Kraus form; DomainError when the Choi matrix is not PSD.
  [[nodiscard]] Channel channel(double tol = kTolPsd) const;
  /// Uses the stored factorizations, or √d ⊗ √d when d is a square.
  [[nodiscard]] Factorization input_factors() const;
  [[nodiscard]] Factorization output_factors() const;
  [[nodiscard]] BipartiteChannel bipartite(double tol = kTolPsd) const;
};

/// Throws std::invalid_argument on malformed documents.
ChannelDocument parse_channel_json(std::string_view text);
ChannelDocument read_channel_file(const std::string& path);

std::string to_json(const LinearMapChoi& choi,
                    std::optional<Factorization> in = std::nullopt,
                    std::optional<Factorization> out = std::nullopt);
std::string to_json(const Channel& ch);
std::string to_json(const BipartiteChannel& ch);

std::string to_json(const CausalityVerdict& v,
                    const std::optional<SignallingWitness>& witness);
std::string to_json(const SignallingWitness& w);
std::string to_json(const Semilocalization& s);
std::string to_json(const VanDamReport& r);

std::string to_csv(const ClassicalBox& b);

struct ChshSweepRow {
  double alpha;
  double coherent_analytic;
  double coherent_numeric;
  double incoherent_analytic;
  double incoherent_numeric;
};
std::string to_csv(const std::vector<ChshSweepRow>& rows);

struct EntpowerRow {
  double alpha;
  double e_pow;
  double err_estimate;
};
std::string to_csv(const std::vector<EntpowerRow>& rows);
std::string to_csv(const std::vector<TradeoffPoint>& rows);

/// 17 significant digits, round-trip exact.
std::string format_number(double x);

}  // namespace nsbox
