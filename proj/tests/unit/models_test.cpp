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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ctqd/errors.hpp"
#include "ctqd/models.hpp"
#include "ctqd/series.hpp"
#include "oracles.hpp"

namespace ctqd {
namespace {

constexpr double kAlpha = 1.029;
constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kR = 0.1;

std::vector<double> random_phases(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  std::vector<double> out(n);
  for (double& x : out) x = u(rng);
  return out;
}

TEST(UnitBlock, MatchesProductOfPairBlocks) {
  for (double theta : {0.0, 0.37, -2.1}) {
    for (double delta : {0.0, 0.13, -0.4}) {
      const Eigen::Matrix2cd u = unit_block(kAlpha, kR, theta, delta);
      const Eigen::Matrix2cd ref = oracle::unit_from_pairs(kAlpha, kR, theta, delta);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(u(i, j)), std::abs(ref(i, j)), 1e-14);
      }
      EXPECT_LT((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(UnitChain, MatchesPairBlockChainMagnitude) {
  std::mt19937_64 rng(5);
  for (int n : {2, 3, 5}) {
    const std::vector<double> offs = random_phases(rng, n);
    for (double delta : {0.05, -0.3}) {
      Eigen::Matrix2cd ref = Eigen::Matrix2cd::Identity();
      for (double th : offs) ref = oracle::unit_from_pairs(kAlpha, kR, th, delta) * ref;
      EXPECT_NEAR(chain_ueb(offs, kAlpha, kR, delta), std::abs(ref(1, 0)), 1e-14);
    }
  }
}

TEST(UnitChainSeries, DerivativesMatchRichardson) {
  std::mt19937_64 rng(9);
  const std::vector<double> offs = random_phases(rng, 4);
  const JetMatrix2 s = unit_chain_series(offs, kAlpha, kR, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto f = [&](double d) { return unit_chain(offs, kAlpha, kR, d)(i, j); };
      for (int k = 0; k <= 4; ++k) {
        const Complex fd = oracle::richardson_derivative(f, 0.0, k, k >= 3 ? 2e-2 : 1e-3);
        EXPECT_NEAR(std::abs(s.at(i, j).derivative(k) - fd), 0.0, 1e-6 * std::max(1.0, std::abs(fd)))
            << "entry " << i << j << " order " << k;
      }
    }
  }
}

TEST(UnitChainSeries, TwoUnitFirstDerivativeClosedForm) {
  const std::vector<double> offs{0.0, 0.0};
  const Jet ueb = unit_chain_series(offs, kAlpha, kR, 1).at(1, 0);
  const double s = std::sqrt(1.0 - kR * kR);
  const double want = std::abs(-2.0 * Complex(0, 1) * kR * s * kAlpha * (std::polar(1.0, 4 * kAlpha) + 1.0));
  EXPECT_NEAR(std::abs(ueb.derivative(1)), want, 1e-14);
  EXPECT_EQ(std::abs(ueb.derivative(0)), 0.0);
}

TEST(CompositeRotation, MatchesPauliOracle) {
  std::mt19937_64 rng(21);
  const std::vector<double> axes = random_phases(rng, 5);
  for (double mix : {std::numbers::pi / 4, 0.6}) {
    for (double delta : {0.0, 0.2, -0.35}) {
      Eigen::Matrix2cd ref = Eigen::Matrix2cd::Identity();
      for (double a : axes) {
        ref = oracle::pauli_rotation(kHalfPi * (1.0 + delta), std::numbers::pi - 2.0 * mix, a) * ref;
      }
      const Eigen::Matrix2cd u = composite_rotation(axes, kHalfPi, mix, delta);
      EXPECT_LT((u - ref).cwiseAbs().maxCoeff(), 1e-14);
      EXPECT_NEAR(composite_population(axes, kHalfPi, mix, delta), std::norm(ref(1, 0)), 1e-14);
    }
  }
}

TEST(CompositeRotation, SeriesMatchesRichardson) {
  std::mt19937_64 rng(22);
  const std::vector<double> axes = random_phases(rng, 4);
  const Jet p = composite_population_series(axes, kHalfPi, kQuarterPi, 3);
  const auto f = [&](double d) { return Complex(composite_population(axes, kHalfPi, kQuarterPi, d)); };
  for (int k = 0; k <= 3; ++k) {
    EXPECT_NEAR(p.derivative(k).real(), oracle::richardson_derivative(f, 0.0, k, 1e-2).real(), 1e-7);
  }
  TargetState t;
  t.angle = 0.6;
  t.chi = 0.8;
  const Jet fid = composite_fidelity_series(axes, t, kHalfPi, kQuarterPi, 3);
  const auto g = [&](double d) { return Complex(composite_fidelity(axes, t, kHalfPi, kQuarterPi, d)); };
  for (int k = 0; k <= 3; ++k) {
    EXPECT_NEAR(fid.derivative(k).real(), oracle::richardson_derivative(g, 0.0, k, 1e-2).real(), 1e-7);
  }
}

TEST(CompositeRotation, PhaseSlopeMatchesFiniteDifferences) {
  const std::vector<double> axes = cumulative_phases(0.0, std::vector<double>{2.5133, 0.0, 1.2566, 0.0});
  const auto col = composite_column_series(axes, kHalfPi, kQuarterPi, 2);
  const auto rel = [&](double d) {
    const Eigen::Matrix2cd u = composite_rotation(axes, kHalfPi, kQuarterPi, d);
    return Complex(std::arg(u(1, 0) / u(0, 0)));
  };
  EXPECT_NEAR(composite_phase_slope(col), oracle::richardson_derivative(rel, 0.0, 1, 1e-4).real(), 1e-8);
  // beta = pi: the first block sends |g> fully to |f>, so U_gg vanishes.
  EXPECT_THROW(composite_phase_slope(composite_column_series(std::vector<double>{0.0}, std::numbers::pi,
                                                             kQuarterPi, 1)),
               DegenerateError);
}

TEST(PhaseLists, CumulativeAndDifferencesRoundTrip) {
  const std::vector<double> d{0.3, -1.2, 2.0};
  const std::vector<double> c = cumulative_phases(0.5, d);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_DOUBLE_EQ(c[3], 0.5 + 0.3 - 1.2 + 2.0);
  const std::vector<double> back = phase_differences(c);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(back[i], d[i], 1e-15);
}

TEST(MaxChainUeb, RequiresTwoSamples) {
  const std::vector<double> offs{0.0};
  EXPECT_THROW(max_chain_ueb(offs, kAlpha, kR, -0.5, 0.5, 1), DomainError);
  EXPECT_NEAR(max_chain_ueb(offs, kAlpha, kR, 0.0, 0.0, 2), 0.0, 1e-15);
}

TEST(Jet, ArithmeticAgainstKnownSeries) {
  const Jet e = Jet::exp_i(4, 0.0, 1.0);  // e^{i x}
  const Jet c = Jet::cos(4, 0.0, 1.0);
  const Jet s = Jet::sin(4, 0.0, 1.0);
  for (int k = 0; k <= 4; ++k) {
    EXPECT_NEAR(std::abs(e[k] - (c[k] + Complex(0, 1) * s[k])), 0.0, 1e-15);
  }
  EXPECT_NEAR((c * c + s * s)[0].real(), 1.0, 1e-15);
  for (int k = 1; k <= 4; ++k) EXPECT_NEAR(std::abs((c * c + s * s)[k]), 0.0, 1e-15);
}

}  // namespace
}  // namespace ctqd
