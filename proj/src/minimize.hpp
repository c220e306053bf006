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

// Derivative-free local minimization (GSL nmsimplex2).

#include <functional>
#include <span>
#include <vector>

namespace nsbox::detail {

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes `f` from `start` with initial simplex edge `step`. Stops when
/// the simplex characteristic size drops below `size_tol` or after
/// `max_iter` iterations.
MinimizeResult nelder_mead(const Objective& f, std::vector<double> start,
                           double step, double size_tol, int max_iter);

}  // namespace nsbox::detail
