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

// Time-ordered propagation of pulse pairs and sequences.

#pragma once

#include <functional>
#include <vector>

#include "ctqd/linalg.hpp"
#include "ctqd/pulses.hpp"
#include "ctqd/sequence.hpp"

namespace ctqd {

enum class Integrator {
  /// Fourth-order commutator-free Magnus step: two exponentials of
  /// Gauss-node Hamiltonian combinations per step.
  kMagnus4,
  /// Exponential of the midpoint Hamiltonian (first-order Magnus, second
  /// order accurate).
  kMidpoint,
};

struct PropagationConfig {
  int steps_per_pair = 2000;
  int sample_stride = 20;
  Integrator integrator = Integrator::kMagnus4;
  /// When set, every pair is also propagated with twice the steps and a
  /// difference above `guard_tol` raises StepCountError.
  bool convergence_guard = false;
  double guard_tol = 1e-9;

  /// Throws DomainError for steps_per_pair < 100 or sample_stride < 1.
  void validate() const;
};

/// Propagator of one pair in {|g>, |f>, |e>}. The envelope is integrated
/// with all field phases set to zero and the phases are restored by the
/// diagonal gauge transformation V = diag(e^{i theta_p}, e^{i theta_s}, 1).
ComplexMatrix propagate_pair(const SPPulsePair& pair, const ErrorModel& err,
                             const PropagationConfig& cfg = {});

/// Same propagator integrated with the phases inside H(t). Slower; this
/// route does not rely on the gauge identity and is used to check it.
ComplexMatrix propagate_pair_direct(const SPPulsePair& pair, const ErrorModel& err,
                                    const PropagationConfig& cfg = {});

/// Time-ordered exponential of an arbitrary 2x2 or 3x3 Hermitian H(t)
/// over [0, duration] with the configured integrator.
ComplexMatrix propagate_hamiltonian(const std::function<ComplexMatrix(double)>& hamiltonian,
                                    double duration, const PropagationConfig& cfg = {});

/// Ordered product U_N ... U_1. Identical, bit for bit, to folding
/// propagate_pair over the pairs: envelope propagators are reused between
/// pairs that differ only in their phases.
ComplexMatrix propagate_sequence(const std::vector<SPPulsePair>& pairs, const ErrorModel& err,
                                 const PropagationConfig& cfg = {});
ComplexMatrix propagate_sequence(const Sequence& seq, const ErrorModel& err,
                                 const PropagationConfig& cfg = {});

/// Largest entry change of the pair propagator when the step count is
/// doubled.
double step_doubling_error(const SPPulsePair& pair, const ErrorModel& err,
                           const PropagationConfig& cfg = {});

struct TraceSample {
  double t = 0.0;
  double p_g = 0.0;
  double p_f = 0.0;
  double p_e = 0.0;
  StateVector psi{1.0, 0.0, 0.0};
};

/// State populations sampled every `sample_stride` steps. The first
/// sample is the initial state at t = 0 and the last one is the final
/// state of the last pair. An empty sequence yields no samples.
std::vector<TraceSample> trace_populations(const std::vector<SPPulsePair>& pairs,
                                           const ErrorModel& err, const StateVector& init,
                                           const PropagationConfig& cfg = {});

/// F = |<target|U init>|^2 and the populations of the final state.
struct FinalMetrics {
  double fidelity = 0.0;
  double p_g = 0.0;
  double p_f = 0.0;
  double p_e = 0.0;
};
FinalMetrics final_metrics(const ComplexMatrix& u, const StateVector& init,
                           const StateVector& target);

}  // namespace ctqd
