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

#include "ctqd/frame.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

namespace ctqd {

namespace {

constexpr Complex kI{0.0, 1.0};

struct Dilation {
  double tn;
  double stretch;
};

Dilation dilate(const SPPulsePair& pair, const ErrorModel& err, double t) {
  const double stretch = 1.0 + err.duration;
  return {std::clamp(t / stretch, 0.0, pair.duration()), stretch};
}

}  // namespace

EigenFrame eigensystem(const SPPulsePair& pair, const ErrorModel& err, double t) {
  const Couplings c = couplings(pair, err, t);
  EigenFrame f;
  f.omega = std::hypot(c.pump, c.stokes);
  f.detuning = c.detuning;
  if (f.omega == 0.0 && c.detuning == 0.0) {
    throw DegenerateError("H(t) vanishes; the eigenbasis is not defined");
  }
  f.mixing_angle = f.omega > 0.0 ? std::atan2(c.pump, c.stokes) : effective_mixing_angle(pair, err);
  f.varphi = 0.5 * std::atan2(2.0 * f.omega, c.detuning);
  f.theta_s = pair.theta_s;
  f.theta_p = pair.theta_p;
  const double root = std::sqrt(0.25 * c.detuning * c.detuning + f.omega * f.omega);
  f.e_plus = 0.5 * c.detuning + root;
  f.e_minus = 0.5 * c.detuning - root;

  const double cp = std::cos(f.mixing_angle);
  const double sp = std::sin(f.mixing_angle);
  const Complex esp = std::polar(1.0, f.theta_sp());
  f.dark = StateVector{cp * std::conj(esp), -sp, 0.0};
  f.bright = StateVector{sp, cp * esp, 0.0};
  const Complex ep = std::polar(1.0, f.theta_p);
  const double cv = std::cos(f.varphi);
  const double sv = std::sin(f.varphi);
  f.eig_plus = StateVector{sv * ep * sp, sv * ep * cp * esp, cv};
  f.eig_minus = StateVector{cv * ep * sp, cv * ep * cp * esp, -sv};
  return f;
}

EigenFrame eigensystem(const SPPulsePair& pair, double t) {
  return eigensystem(pair, ErrorModel{}, t);
}

ComplexMatrix db_transform(double mixing_angle, double theta_sp) {
  const double c = std::cos(mixing_angle);
  const double s = std::sin(mixing_angle);
  const Complex e = std::polar(1.0, theta_sp);
  ComplexMatrix::Storage b(3, 3);
  b << c * e, -s, 0.0,
       s, c * std::conj(e), 0.0,
       0.0, 0.0, 1.0;
  return ComplexMatrix(std::move(b), true);
}

ComplexMatrix db_transform(const EigenFrame& frame) {
  return db_transform(frame.mixing_angle, frame.theta_sp());
}

ComplexMatrix to_db_frame(const ComplexMatrix& u, double mixing_angle, double theta_sp) {
  if (u.dim() != 3) throw DimError("to_db_frame needs a 3x3 matrix");
  const ComplexMatrix b = db_transform(mixing_angle, theta_sp);
  return compose(b, compose(u, b.adjoint()));
}

ComplexMatrix db_hamiltonian(const SPPulsePair& pair, const ErrorModel& err, double t) {
  const double phi = effective_mixing_angle(pair, err);
  const ComplexMatrix b = db_transform(phi, pair.theta_sp());
  const ComplexMatrix h = build_hamiltonian(pair, err, t);
  return ComplexMatrix(b.matrix() * h.matrix() * b.matrix().adjoint());
}

double varphi_rate(const SPPulsePair& pair, const ErrorModel& err, double t) {
  const Couplings c = couplings(pair, err, t);
  const Dilation d = dilate(pair, err, t);
  const double ds = (1.0 + err.stokes_amp) * eval_shape_derivative(pair.shape, d.tn) / d.stretch;
  const double pump_slope = pair.pump_shape ? eval_shape_derivative(*pair.pump_shape, d.tn)
                                            : eval_shape_derivative(pair.shape, d.tn);
  const double dp =
      (1.0 + err.pump_amp) * std::tan(pair.mixing_angle) * pump_slope / d.stretch;
  const double omega = std::hypot(c.pump, c.stokes);
  const double domega = omega > 0.0 ? (c.stokes * ds + c.pump * dp) / omega : std::hypot(ds, dp);
  double ddelta = 0.0;
  if (pair.detuning_profile) {
    const double h = 1e-6 * pair.duration();
    const double lo = std::max(0.0, d.tn - h);
    const double hi = std::min(pair.duration(), d.tn + h);
    ddelta = (1.0 + err.detuning) * (pair.detuning_profile(hi) - pair.detuning_profile(lo)) /
             (hi - lo) / d.stretch;
  }
  const double denom = c.detuning * c.detuning + 4.0 * omega * omega;
  if (denom == 0.0) throw DegenerateError("H(t) vanishes; varphi is not defined");
  return (domega * c.detuning - omega * ddelta) / denom;
}

ComplexMatrix adiabatic_hamiltonian(const SPPulsePair& pair, const ErrorModel& err, double t) {
  const EigenFrame f = eigensystem(pair, err, t);
  const double rate = varphi_rate(pair, err, t);
  ComplexMatrix::Storage h = ComplexMatrix::Storage::Zero(3, 3);
  h(1, 1) = f.e_plus;
  h(2, 2) = f.e_minus;
  h(1, 2) = kI * rate;
  h(2, 1) = -kI * rate;
  return ComplexMatrix(std::move(h));
}

PairCharacterization extract_r_alpha(const ComplexMatrix& u, double theta) {
  if (u.dim() != 3) throw DimError("extract_r_alpha needs a 3x3 propagator");
  const double dark_dev = std::max({std::abs(u(0, 0) - 1.0), std::abs(u(0, 1)), std::abs(u(0, 2)),
                                    std::abs(u(1, 0)), std::abs(u(2, 0))});
  if (dark_dev > kDarkTol) {
    std::ostringstream os;
    os << "dark state is not decoupled (deviation " << dark_dev << ")";
    throw NotBlockDiagonal(os.str());
  }
  const Complex det = u(1, 1) * u(2, 2) - u(1, 2) * u(2, 1);
  double gamma = -0.5 * std::arg(det);
  Complex n00 = std::polar(1.0, gamma) * u(1, 1);
  Complex n01 = std::polar(1.0, gamma) * u(1, 2);
  if (n00.real() < 0.0 || (n00.real() == 0.0 && n00.imag() < 0.0)) {
    gamma += std::numbers::pi;
    n00 = -n00;
    n01 = -n01;
  }
  PairCharacterization c;
  c.block_phase = reduce_phase(gamma);
  c.s = std::abs(n00);
  c.alpha = c.s > 0.0 ? std::arg(n00) : 0.0;
  c.r = n01 * std::polar(1.0, theta);
  return c;
}

ComplexMatrix rebuild_propagator(const PairCharacterization& c, double theta) {
  const Complex g = std::polar(1.0, -c.block_phase);
  const Complex e_t = std::polar(1.0, theta);
  ComplexMatrix::Storage u = ComplexMatrix::Storage::Zero(3, 3);
  u(0, 0) = 1.0;
  u(1, 1) = g * c.s * std::polar(1.0, c.alpha);
  u(1, 2) = g * c.r * std::conj(e_t);
  u(2, 1) = -g * std::conj(c.r) * e_t;
  u(2, 2) = g * c.s * std::polar(1.0, -c.alpha);
  return ComplexMatrix(std::move(u));
}

PairCharacterization characterize_pair(const SPPulsePair& pair, const ErrorModel& err,
                                       const PropagationConfig& cfg) {
  const ComplexMatrix u = propagate_pair(pair, err, cfg);
  const ComplexMatrix u_dbe =
      to_db_frame(u, effective_mixing_angle(pair, err), pair.theta_sp());
  return extract_r_alpha(u_dbe, pair.theta_p);
}

GaugeReport gauge_invariance_check(const std::function<ComplexMatrix(double)>& hamiltonian,
                                   double duration, const std::vector<CouplingPhase>& phases,
                                   const PropagationConfig& cfg, double tol) {
  const int n = hamiltonian(0.0).dim();

  // Coupling graph from a handful of samples across the window.
  std::vector<std::vector<bool>> coupled(n, std::vector<bool>(n, false));
  constexpr int kProbes = 33;
  for (int k = 0; k < kProbes; ++k) {
    const ComplexMatrix h = hamiltonian(duration * k / (kProbes - 1));
    for (int j = 0; j < n; ++j) {
      for (int m = 0; m < n; ++m) {
        if (j != m && std::abs(h(j, m)) > 0.0) coupled[j][m] = coupled[m][j] = true;
      }
    }
  }
  std::vector<std::vector<double>> theta(n, std::vector<double>(n, 0.0));
  for (const CouplingPhase& p : phases) {
    if (p.j < 0 || p.m < 0 || p.j >= n || p.m >= n || p.j == p.m) {
      throw DomainError("coupling phase refers to an invalid level pair");
    }
    if (!coupled[p.j][p.m]) {
      std::ostringstream os;
      os << "levels " << p.j << " and " << p.m << " are not coupled";
      throw DomainError(os.str());
    }
    theta[p.j][p.m] = p.theta;
    theta[p.m][p.j] = -p.theta;
  }

  // Level phases with theta_jm = phi_j - phi_m, spanning tree from each root.
  std::vector<double> phi(n, 0.0);
  std::vector<bool> seen(n, false);
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int j = q.front();
      q.pop();
      for (int m = 0; m < n; ++m) {
        if (!coupled[j][m] || seen[m]) continue;
        phi[m] = phi[j] - theta[j][m];
        seen[m] = true;
        q.push(m);
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int m = j + 1; m < n; ++m) {
      if (!coupled[j][m]) continue;
      const double residual = reduce_phase(theta[j][m] + phi[m] - phi[j]);
      if (std::abs(residual) > 1e-12) {
        std::ostringstream os;
        os << "coupling phases violate theta_jm + phi_m - phi_j = 0 on (" << j << ", " << m
           << "), residual " << residual;
        throw ConstraintError(os.str());
      }
    }
  }

  auto phased = [&](double t) {
    ComplexMatrix::Storage h = hamiltonian(t).matrix();
    for (int j = 0; j < n; ++j) {
      for (int m = 0; m < n; ++m) {
        if (j != m) h(j, m) *= std::polar(1.0, theta[j][m]);
      }
    }
    return ComplexMatrix(std::move(h));
  };

  const ComplexMatrix u0 = propagate_hamiltonian(hamiltonian, duration, cfg);
  const ComplexMatrix u1 = propagate_hamiltonian(phased, duration, cfg);

  GaugeReport report;
  report.levels = n;
  report.free_phases = n;
  report.level_phases = phi;
  report.tol = tol;
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      report.max_magnitude_diff =
          std::max(report.max_magnitude_diff, std::abs(std::abs(u1(j, m)) - std::abs(u0(j, m))));
      const Complex expected = std::polar(1.0, phi[j] - phi[m]) * u0(j, m);
      report.max_gauge_diff = std::max(report.max_gauge_diff, std::abs(u1(j, m) - expected));
    }
  }
  report.passed = report.max_magnitude_diff <= tol && report.max_gauge_diff <= tol;
  return report;
}

GaugeReport gauge_invariance_check(const SPPulsePair& pair, const ErrorModel& err,
                                   double shift_s, double shift_p, const PropagationConfig& cfg,
                                   double tol) {
  pair.validate();
  err.validate();
  auto h = [&](double t) { return build_hamiltonian(pair, err, t); };
  const std::vector<CouplingPhase> phases{{0, 2, shift_p}, {1, 2, shift_s}};
  return gauge_invariance_check(h, scaled_duration(pair, err), phases, cfg, tol);
}

}  // namespace ctqd
