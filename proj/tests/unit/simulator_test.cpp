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

#include "ctqd/designer.hpp"
#include "ctqd/errors.hpp"
#include "ctqd/frame.hpp"
#include "ctqd/simulator.hpp"
#include "oracles.hpp"

namespace ctqd {
namespace {

SPPulsePair gaussian_pair(double a, double d, double ts = 0.0, double tp = 0.0) {
  SPPulsePair p;
  p.shape = PulseShape::gaussian(a, 1.0);
  p.detuning = d;
  p.theta_s = ts;
  p.theta_p = tp;
  return p;
}

std::vector<SPPulsePair> shaped_pairs() {
  std::vector<SPPulsePair> out;
  const std::vector<std::pair<PulseShape, double>> rows{
      {PulseShape::gaussian(1.099, 1.0), 0.6574},
      {PulseShape::sinusoidal(3.044, 1.0, 0.0), 1.98},
      {PulseShape::sawtooth(3.935, 1.0), 1.865},
      {PulseShape::triangle(3.884, 0.5, 1.0), 2.18},
      {PulseShape::trapezoidal(3.249, 0.2, 0.2, 1.0), 2.04}};
  for (const auto& [shape, d] : rows) {
    SPPulsePair p;
    p.shape = shape;
    p.detuning = d;
    p.theta_s = 0.7;
    p.theta_p = -0.3;
    out.push_back(p);
  }
  return out;
}

TEST(PropagatePair, UnitaryForEveryShapeAndError) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (const SPPulsePair& p : shaped_pairs()) {
    for (int k = 0; k < 4; ++k) {
      ErrorModel e;
      e.stokes_amp = u(rng);
      e.pump_amp = u(rng);
      e.detuning = u(rng);
      e.duration = u(rng);
      e.stark = u(rng);
      const ComplexMatrix m = propagate_pair(p, e);
      EXPECT_LT(m.unitarity_error(), 1e-10);
      EXPECT_TRUE(m.unitary());
    }
  }
}

TEST(PropagatePair, MatchesRk4Oracle) {
  for (const SPPulsePair& p : shaped_pairs()) {
    const ComplexMatrix u = propagate_pair(p, {});
    const Eigen::MatrixXcd ref = oracle::rk4_propagator(
        [&](double t) -> Eigen::MatrixXcd { return build_hamiltonian(p, {}, t).matrix(); }, p.duration(), 20000);
    EXPECT_LT((u.matrix() - ref).cwiseAbs().maxCoeff(), 1e-8) << to_string(p.shape.kind);
  }
}

TEST(PropagatePair, GaugeRouteMatchesDirectRoute) {
  const SPPulsePair p = gaussian_pair(2.381, 0.2802, 1.3, -2.2);
  ErrorModel e;
  e.pump_amp = 0.1;
  EXPECT_LT(propagate_pair(p, e).max_abs_diff(propagate_pair_direct(p, e)), 1e-11);
}

TEST(PropagatePair, StepDoublingConverges) {
  for (const SPPulsePair& p : shaped_pairs()) {
    EXPECT_LT(step_doubling_error(p, {}), 1e-9) << to_string(p.shape.kind);
  }
  PropagationConfig mid;
  mid.integrator = Integrator::kMidpoint;
  const SPPulsePair g = gaussian_pair(2.381, 0.2802);
  const double e1 = step_doubling_error(g, {}, mid);
  mid.steps_per_pair *= 2;
  const double e2 = step_doubling_error(g, {}, mid);
  // Second-order method: halving the step divides the change by about 4.
  EXPECT_NEAR(e1 / e2, 4.0, 0.4);
}

TEST(PropagatePair, ConvergenceGuardAndValidation) {
  PropagationConfig cfg;
  cfg.steps_per_pair = 100;
  cfg.integrator = Integrator::kMidpoint;
  cfg.convergence_guard = true;
  EXPECT_THROW(propagate_pair(gaussian_pair(2.381, 0.2802), {}, cfg), StepCountError);
  cfg.steps_per_pair = 50;
  EXPECT_THROW(cfg.validate(), DomainError);
}

TEST(PropagateSequence, EqualsFoldOfPairPropagators) {
  const std::vector<SPPulsePair> pairs{gaussian_pair(2.381, 0.2802, 0.5), gaussian_pair(2.381, 0.2802, -1.7, 0.4),
                                       gaussian_pair(1.099, 0.6574, 2.0, 1.0)};
  ErrorModel e;
  e.detuning = 0.1;
  ComplexMatrix fold = ComplexMatrix::identity(3);
  for (const SPPulsePair& p : pairs) fold = compose(propagate_pair(p, e), fold);
  const ComplexMatrix u = propagate_sequence(pairs, e);
  EXPECT_EQ(u.max_abs_diff(fold), 0.0);
  EXPECT_TRUE(propagate_sequence(std::vector<SPPulsePair>{}, e).approx_equal(ComplexMatrix::identity(3)));
}

TEST(Trace, PopulationsSumToOneAndEndAtFinalState) {
  const std::vector<SPPulsePair> pairs{gaussian_pair(2.381, 0.2802), gaussian_pair(2.381, 0.2802, 0.9, 0.9)};
  const StateVector g{1.0, 0.0, 0.0};
  PropagationConfig cfg;
  cfg.sample_stride = 40;
  const std::vector<TraceSample> tr = trace_populations(pairs, {}, g, cfg);
  ASSERT_EQ(tr.size(), 1u + 2u * 2000u / 40u);
  EXPECT_EQ(tr.front().t, 0.0);
  EXPECT_NEAR(tr.back().t, 12.0, 1e-12);
  for (const TraceSample& s : tr) EXPECT_NEAR(s.p_g + s.p_f + s.p_e, 1.0, 1e-10);
  const StateVector end = apply(propagate_sequence(pairs, {}, cfg), g);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(std::abs(tr.back().psi[k] - end[k]), 0.0, 1e-12);
  EXPECT_TRUE(trace_populations({}, {}, g).empty());
  EXPECT_THROW(trace_populations(pairs, {}, StateVector{1.0, 1.0, 0.0}), NormError);
}

TEST(Dynamics, SinglePairLeaksButLevel1PairDoesNot) {
  const SPPulsePair p = gaussian_pair(2.381, 0.2802, 0.5237);
  const StateVector g{1.0, 0.0, 0.0};
  const StateVector target = TargetState{}.ket();
  EXPECT_GT(final_metrics(propagate_pair(p, {}), g, target).p_e, 1e-3);
  const PairCharacterization c = characterize_pair(p);
  SPPulsePair q = p;
  q.theta_s -= level1_phase(c.alpha);
  q.theta_p -= level1_phase(c.alpha);
  EXPECT_LT(final_metrics(propagate_sequence(std::vector<SPPulsePair>{p, q}, {}), g, target).p_e, 1e-6);
}

TEST(Dynamics, R43SequenceReachesEqualSuperposition) {
  HierarchySpec h;
  h.n2 = 2;
  h.n3 = 3;
  h.level3 = Level3Mode::kPC;
  const Sequence s = design_sequence(h, gaussian_pair(2.381, 0.2802, 0.5237));
  const StateVector g{1.0, 0.0, 0.0};
  const FinalMetrics m = final_metrics(propagate_sequence(s, {}), g, TargetState{}.ket());
  EXPECT_GT(m.fidelity, 0.999);
  EXPECT_LT(m.p_e, 1e-6);
  EXPECT_NEAR(m.p_f, 0.5, 1e-3);
}

TEST(Dynamics, SinusoidalLevel1PairHitsTarget) {
  SPPulsePair p;
  p.shape = PulseShape::sinusoidal(3.044, 1.0, 0.0);
  p.detuning = 1.98;
  const Sequence s = design_sequence(HierarchySpec{}, p);
  const FinalMetrics m = final_metrics(propagate_sequence(s, {}), StateVector{1.0, 0.0, 0.0}, TargetState{}.ket());
  EXPECT_GT(m.fidelity, 0.99);
}

}  // namespace
}  // namespace ctqd
