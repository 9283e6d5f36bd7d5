// Copyright 2026 The ctqd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Derivative-free minimization: Nelder-Mead simplex with seeded restarts.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace ctqd {

using Objective = std::function<double(std::span<const double>)>;

struct SimplexOptions {
  int max_evals = 20000;
  /// Stop when the objective spread over the simplex drops below ftol
  /// and the simplex diameter below xtol.
  double ftol = 1e-16;
  double xtol = 1e-11;
  double initial_step = 0.5;
  /// Number of times the simplex is rebuilt around the best vertex after
  /// it collapses. Rebuilding lets a stalled simplex escape.
  int rebuilds = 3;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int evals = 0;
};

/// Adaptive-coefficient Nelder-Mead starting from a right-angled simplex
/// around x0.
SimplexResult nelder_mead(const Objective& f, std::vector<double> x0,
                          const SimplexOptions& opts = {});

struct MultiStartOptions {
  int restarts = 32;
  std::uint64_t seed = 42;
  /// Starting points are drawn uniformly from [lo, hi] per coordinate.
  double lo = -3.141592653589793;
  double hi = 3.141592653589793;
  /// A restart counts as converged when its objective is below this.
  double accept = 1e-12;
  /// Worker threads; results do not depend on it.
  int workers = 1;
  SimplexOptions simplex;
};

struct MultiStartResult {
  SimplexResult best;
  int best_restart = -1;
  int converged = 0;
  /// Every restart's result, in restart order.
  std::vector<SimplexResult> runs;
};

/// Runs `restarts` independent simplex searches. Restart k draws its
/// start from an mt19937_64 seeded with seed + k. The winner is the lowest
/// objective, ties going to the lowest restart index.
MultiStartResult multi_start(const Objective& f, int dim, const MultiStartOptions& opts = {});

/// CTQD_SEED from the environment when set and parseable, else `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback = 42);

}  // namespace ctqd
