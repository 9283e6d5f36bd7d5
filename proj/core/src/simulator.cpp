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

#include "ctqd/simulator.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace ctqd {

namespace {

// Commutator-free fourth-order Magnus coefficients.
const double kGaussOffset = std::sqrt(3.0) / 6.0;
const double kA1 = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;
const double kA2 = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;

Eigen::Matrix3d real_hamiltonian(const SPPulsePair& pair, const ErrorModel& err, double t) {
  const Couplings c = couplings(pair, err, t);
  Eigen::Matrix3d h;
  h << 0.0, 0.0, c.pump,
       0.0, 0.0, c.stokes,
       c.pump, c.stokes, c.detuning;
  return h;
}

Eigen::Matrix3cd phased_hamiltonian(const SPPulsePair& pair, const ErrorModel& err, double t) {
  return build_hamiltonian(pair, err, t).matrix();
}

Eigen::Matrix3cd real_exp(const Eigen::Matrix3d& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(h);
  const Eigen::Matrix3d& v = es.eigenvectors();
  const Eigen::Vector3d& w = es.eigenvalues();
  Eigen::Matrix3cd out = Eigen::Matrix3cd::Zero();
  for (int k = 0; k < 3; ++k) {
    const Complex ph = std::polar(1.0, -w(k) * dt);
    out.noalias() += ph * (v.col(k) * v.col(k).transpose()).cast<Complex>();
  }
  return out;
}

// One step of the zero-phase envelope propagation.
Eigen::Matrix3cd envelope_step(const SPPulsePair& pair, const ErrorModel& err, double t,
                               double dt, Integrator integrator) {
  if (integrator == Integrator::kMidpoint) {
    return real_exp(real_hamiltonian(pair, err, t + 0.5 * dt), dt);
  }
  const Eigen::Matrix3d h1 = real_hamiltonian(pair, err, t + (0.5 - kGaussOffset) * dt);
  const Eigen::Matrix3d h2 = real_hamiltonian(pair, err, t + (0.5 + kGaussOffset) * dt);
  return real_exp(kA1 * h1 + kA2 * h2, dt) * real_exp(kA2 * h1 + kA1 * h2, dt);
}

Eigen::Matrix3cd direct_step(const SPPulsePair& pair, const ErrorModel& err, double t,
                             double dt, Integrator integrator) {
  if (integrator == Integrator::kMidpoint) {
    return detail::hermitian_exp3(phased_hamiltonian(pair, err, t + 0.5 * dt), dt);
  }
  const Eigen::Matrix3cd h1 = phased_hamiltonian(pair, err, t + (0.5 - kGaussOffset) * dt);
  const Eigen::Matrix3cd h2 = phased_hamiltonian(pair, err, t + (0.5 + kGaussOffset) * dt);
  return detail::hermitian_exp3(kA1 * h1 + kA2 * h2, dt) *
         detail::hermitian_exp3(kA2 * h1 + kA1 * h2, dt);
}

template <typename Step>
Eigen::Matrix3cd integrate(const SPPulsePair& pair, const ErrorModel& err, int steps,
                           Integrator integrator, Step step) {
  const double T = scaled_duration(pair, err);
  const double dt = T / steps;
  Eigen::Matrix3cd u = Eigen::Matrix3cd::Identity();
  for (int n = 0; n < steps; ++n) {
    u = step(pair, err, n * dt, dt, integrator) * u;
  }
  return u;
}

Eigen::Matrix3cd envelope_propagator(const SPPulsePair& pair, const ErrorModel& err,
                                     const PropagationConfig& cfg) {
  const Eigen::Matrix3cd u =
      integrate(pair, err, cfg.steps_per_pair, cfg.integrator, envelope_step);
  if (cfg.convergence_guard) {
    const Eigen::Matrix3cd fine =
        integrate(pair, err, 2 * cfg.steps_per_pair, cfg.integrator, envelope_step);
    const double diff = (fine - u).cwiseAbs().maxCoeff();
    if (diff > cfg.guard_tol) {
      std::ostringstream os;
      os << "step doubling changed the pair propagator by " << diff << " (tolerance "
         << cfg.guard_tol << ") at " << cfg.steps_per_pair << " steps";
      throw StepCountError(os.str());
    }
  }
  return u;
}

Eigen::Vector3cd gauge_phases(const SPPulsePair& pair) {
  return Eigen::Vector3cd(std::polar(1.0, pair.theta_p), std::polar(1.0, pair.theta_s), 1.0);
}

Eigen::Matrix3cd apply_gauge(const Eigen::Matrix3cd& u0, const SPPulsePair& pair) {
  const Eigen::Vector3cd v = gauge_phases(pair);
  Eigen::Matrix3cd u;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) u(i, j) = v(i) * u0(i, j) * std::conj(v(j));
  }
  return u;
}

ComplexMatrix wrap(const Eigen::Matrix3cd& u) {
  return ComplexMatrix(ComplexMatrix::Storage(u), true);
}

bool same_shape(const PulseShape& a, const PulseShape& b) {
  return a.kind == b.kind && a.amplitude == b.amplitude && a.tau == b.tau && a.tau2 == b.tau2 &&
         a.duration == b.duration && a.samples == b.samples;
}

// True when two pairs have the same zero-phase propagator.
bool same_envelope(const SPPulsePair& a, const SPPulsePair& b) {
  if (a.detuning_profile || b.detuning_profile || a.pump_shape || b.pump_shape) return false;
  return same_shape(a.shape, b.shape) && a.mixing_angle == b.mixing_angle &&
         a.detuning == b.detuning;
}

void check_inputs(const SPPulsePair& pair, const ErrorModel& err, const PropagationConfig& cfg) {
  cfg.validate();
  pair.validate();
  err.validate();
}

}  // namespace

void PropagationConfig::validate() const {
  if (steps_per_pair < 100) throw DomainError("steps_per_pair must be at least 100");
  if (sample_stride < 1) throw DomainError("sample_stride must be at least 1");
  if (!(guard_tol > 0.0)) throw DomainError("guard_tol must be positive");
}

ComplexMatrix propagate_pair(const SPPulsePair& pair, const ErrorModel& err,
                             const PropagationConfig& cfg) {
  check_inputs(pair, err, cfg);
  return wrap(apply_gauge(envelope_propagator(pair, err, cfg), pair));
}

ComplexMatrix propagate_pair_direct(const SPPulsePair& pair, const ErrorModel& err,
                                    const PropagationConfig& cfg) {
  check_inputs(pair, err, cfg);
  return wrap(integrate(pair, err, cfg.steps_per_pair, cfg.integrator, direct_step));
}

ComplexMatrix propagate_hamiltonian(const std::function<ComplexMatrix(double)>& hamiltonian,
                                    double duration, const PropagationConfig& cfg) {
  cfg.validate();
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw DomainError("propagation window must be positive");
  }
  const int steps = cfg.steps_per_pair;
  const double dt = duration / steps;
  ComplexMatrix u = ComplexMatrix::identity(hamiltonian(0.0).dim());
  for (int n = 0; n < steps; ++n) {
    const double t = n * dt;
    if (cfg.integrator == Integrator::kMidpoint) {
      u = compose(mat_exp(hamiltonian(t + 0.5 * dt), dt), u);
      continue;
    }
    const auto h1 = hamiltonian(t + (0.5 - kGaussOffset) * dt).matrix();
    const auto h2 = hamiltonian(t + (0.5 + kGaussOffset) * dt).matrix();
    const ComplexMatrix first(ComplexMatrix::Storage(kA2 * h1 + kA1 * h2));
    const ComplexMatrix second(ComplexMatrix::Storage(kA1 * h1 + kA2 * h2));
    u = compose(mat_exp(second, dt), compose(mat_exp(first, dt), u));
  }
  return u;
}

ComplexMatrix propagate_sequence(const std::vector<SPPulsePair>& pairs, const ErrorModel& err,
                                 const PropagationConfig& cfg) {
  cfg.validate();
  err.validate();
  ComplexMatrix total = ComplexMatrix::identity(3);
  const SPPulsePair* cached_pair = nullptr;
  Eigen::Matrix3cd cached;
  for (const SPPulsePair& pair : pairs) {
    pair.validate();
    if (cached_pair == nullptr || !same_envelope(*cached_pair, pair)) {
      cached = envelope_propagator(pair, err, cfg);
      cached_pair = &pair;
    }
    total = compose(wrap(apply_gauge(cached, pair)), total);
  }
  return total;
}

ComplexMatrix propagate_sequence(const Sequence& seq, const ErrorModel& err,
                                 const PropagationConfig& cfg) {
  return propagate_sequence(seq.pairs, err, cfg);
}

double step_doubling_error(const SPPulsePair& pair, const ErrorModel& err,
                           const PropagationConfig& cfg) {
  PropagationConfig coarse = cfg;
  coarse.convergence_guard = false;
  PropagationConfig fine = coarse;
  fine.steps_per_pair *= 2;
  return propagate_pair(pair, err, coarse).max_abs_diff(propagate_pair(pair, err, fine));
}

std::vector<TraceSample> trace_populations(const std::vector<SPPulsePair>& pairs,
                                           const ErrorModel& err, const StateVector& init,
                                           const PropagationConfig& cfg) {
  cfg.validate();
  err.validate();
  if (init.dim() != 3) throw DimError("trace_populations needs a 3-level initial state");
  if (std::abs(init.norm() - 1.0) > kNormTol) throw NormError("initial state is not normalized");
  std::vector<TraceSample> out;
  if (pairs.empty()) return out;

  auto record = [&out](double t, const Eigen::Vector3cd& psi) {
    TraceSample s;
    s.t = t;
    s.p_g = std::norm(psi(0));
    s.p_f = std::norm(psi(1));
    s.p_e = std::norm(psi(2));
    s.psi = StateVector(StateVector::Storage(psi));
    out.push_back(std::move(s));
  };

  Eigen::Vector3cd psi = init.amplitudes();
  double t0 = 0.0;
  long long step_count = 0;
  record(0.0, psi);
  for (const SPPulsePair& pair : pairs) {
    pair.validate();
    const Eigen::Vector3cd v = gauge_phases(pair);
    // Work in the zero-phase gauge inside the pair.
    Eigen::Vector3cd phi = v.conjugate().cwiseProduct(psi);
    const double T = scaled_duration(pair, err);
    const int steps = cfg.steps_per_pair;
    const double dt = T / steps;
    for (int n = 0; n < steps; ++n) {
      phi = envelope_step(pair, err, n * dt, dt, cfg.integrator) * phi;
      ++step_count;
      const bool last = (n + 1 == steps);
      if (last || step_count % cfg.sample_stride == 0) {
        psi = v.cwiseProduct(phi);
        record(t0 + (last ? T : (n + 1) * dt), psi);
      }
    }
    psi = v.cwiseProduct(phi);
    t0 += T;
  }
  return out;
}

FinalMetrics final_metrics(const ComplexMatrix& u, const StateVector& init,
                           const StateVector& target) {
  const StateVector out = apply(u, init);
  FinalMetrics m;
  m.fidelity = fidelity(target, out.normalized());
  m.p_g = out.population(0);
  m.p_f = out.population(1);
  m.p_e = out.population(2);
  return m;
}

}  // namespace ctqd
