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


#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "ctqd/simplex.hpp"

namespace ctqd {
namespace {

double rosenbrock(std::span<const double> x) {
  return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
}

TEST(NelderMead, FindsRosenbrockMinimum) {
  const SimplexResult r = nelder_mead(rosenbrock, {-1.2, 1.0});
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_NEAR(r.x[1], 1.0, 1e-6);
  EXPECT_LT(r.value, 1e-12);
  EXPECT_LE(r.evals, SimplexOptions{}.max_evals);
}

TEST(NelderMead, RespectsEvaluationBudget) {
  SimplexOptions o;
  o.max_evals = 50;
  const SimplexResult r = nelder_mead(rosenbrock, {-1.2, 1.0}, o);
  EXPECT_LE(r.evals, 50 + 3);
}

TEST(MultiStart, ResultIndependentOfWorkerCount) {
  const Objective f = [](std::span<const double> x) {
    return std::pow(std::sin(x[0]) - 0.3, 2) + std::pow(std::cos(x[1] + x[0]), 2);
  };
  MultiStartOptions a;
  a.restarts = 12;
  MultiStartOptions b = a;
  b.workers = 4;
  const MultiStartResult ra = multi_start(f, 2, a);
  const MultiStartResult rb = multi_start(f, 2, b);
  EXPECT_EQ(ra.best.x, rb.best.x);
  EXPECT_EQ(ra.best_restart, rb.best_restart);
  ASSERT_EQ(ra.runs.size(), 12u);
  for (std::size_t k = 0; k < ra.runs.size(); ++k) EXPECT_EQ(ra.runs[k].x, rb.runs[k].x);
  EXPECT_GT(ra.converged, 0);
}

TEST(MultiStart, SeedChangesStartingPoints) {
  const Objective f = [](std::span<const double> x) { return std::pow(std::sin(3 * x[0]), 2); };
  MultiStartOptions a;
  a.restarts = 4;
  a.simplex.max_evals = 1;
  MultiStartOptions b = a;
  b.seed = 7;
  EXPECT_NE(multi_start(f, 1, a).runs[0].x, multi_start(f, 1, b).runs[0].x);
}

TEST(SeedFromEnv, ParsesOrFallsBack) {
  ::setenv("CTQD_SEED", "123", 1);
  EXPECT_EQ(seed_from_env(42), 123u);
  ::setenv("CTQD_SEED", "12x", 1);
  EXPECT_EQ(seed_from_env(42), 42u);
  ::unsetenv("CTQD_SEED");
  EXPECT_EQ(seed_from_env(9), 9u);
}

}  // namespace
}  // namespace ctqd
