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

// Dark/bright frame, instantaneous eigensystem, single-pair
// characterization and the gauge-invariance check.
//
// Frame conventions for mixing angle phi and theta_sp = theta_s - theta_p:
//   |d> = cos(phi) e^{-i theta_sp} |g> - sin(phi) |f>
//   |b> = sin(phi) |g> + cos(phi) e^{i theta_sp} |f>
// so that <b|H|e> = Omega e^{i theta_p} with Omega = sqrt(Omega_p^2 + Omega_s^2),
// and with tan(2 varphi) = 2 Omega / Delta
//   |E+> = sin(varphi) e^{i theta_p} |b> + cos(varphi) |e>
//   |E-> = cos(varphi) e^{i theta_p} |b> - sin(varphi) |e>.

#pragma once

#include <functional>
#include <vector>

#include "ctqd/linalg.hpp"
#include "ctqd/pulses.hpp"
#include "ctqd/sequence.hpp"
#include "ctqd/simulator.hpp"

namespace ctqd {

struct EigenFrame {
  double mixing_angle = 0.0;
  double varphi = 0.0;
  double theta_s = 0.0;
  double theta_p = 0.0;
  double omega = 0.0;
  double detuning = 0.0;
  double e0 = 0.0;
  double e_plus = 0.0;
  double e_minus = 0.0;
  StateVector dark{1.0, 0.0, 0.0};
  StateVector bright{0.0, 1.0, 0.0};
  StateVector eig_plus{0.0, 0.0, 1.0};
  StateVector eig_minus{0.0, 0.0, 1.0};

  double theta_sp() const { return theta_s - theta_p; }
};

/// Instantaneous eigensystem of H(t) under `err`. When Omega(t) = 0 the
/// mixing angle falls back to the pair's nominal one. Throws
/// DegenerateError when H(t) vanishes.
EigenFrame eigensystem(const SPPulsePair& pair, const ErrorModel& err, double t);
EigenFrame eigensystem(const SPPulsePair& pair, double t);

/// Change of basis B with rows <d|, <b|, <e|, so psi_dbe = B psi_gfe and
/// U_dbe = B U B^dag.
ComplexMatrix db_transform(double mixing_angle, double theta_sp);
ComplexMatrix db_transform(const EigenFrame& frame);

/// B U B^dag for a 3x3 U given in {|g>, |f>, |e>}.
ComplexMatrix to_db_frame(const ComplexMatrix& u, double mixing_angle, double theta_sp);

/// H(t) in the basis {|d>, |b>, |e>}.
ComplexMatrix db_hamiltonian(const SPPulsePair& pair, const ErrorModel& err, double t);

/// d varphi / dt from the analytic envelope derivative.
double varphi_rate(const SPPulsePair& pair, const ErrorModel& err, double t);

/// H in the adiabatic basis {|d>, |E+>, |E->}: diag(0, E+, E-) plus the
/// non-adiabatic coupling, <E+|H_ad|E-> = i dvarphi/dt.
ComplexMatrix adiabatic_hamiltonian(const SPPulsePair& pair, const ErrorModel& err, double t);

/// Tolerance on the dark row and column when extracting (r, alpha).
inline constexpr double kDarkTol = 1e-8;

/// Reads (r, s, alpha, gamma) from a db-frame single-pair propagator.
/// `theta` is the phase of the bright/excited coupling (theta_p in this
/// frame). Throws NotBlockDiagonal when the dark row or column deviates
/// from (1, 0, 0) by more than kDarkTol.
PairCharacterization extract_r_alpha(const ComplexMatrix& u_dbe, double theta);

/// Rebuilds diag(1, B) from a characterization; inverse of extract_r_alpha.
ComplexMatrix rebuild_propagator(const PairCharacterization& c, double theta);

/// Simulates the pair and extracts (r, alpha) in its own frame, using the
/// mixing angle effective under `err`.
PairCharacterization characterize_pair(const SPPulsePair& pair, const ErrorModel& err = {},
                                       const PropagationConfig& cfg = {});

/// Phase attached to the coupling H_jm (j < m); H_mj gets the conjugate.
struct CouplingPhase {
  int j = 0;
  int m = 0;
  double theta = 0.0;
};

struct GaugeReport {
  int levels = 0;
  /// Number of free field phases the model admits: one per level.
  int free_phases = 0;
  /// Level phases phi_k with theta_jm = phi_j - phi_m (phi_0 = 0).
  std::vector<double> level_phases;
  /// max over entries of | |U'_jm| - |U_jm| |.
  double max_magnitude_diff = 0.0;
  /// max over entries of |U' - V U V^dag|.
  double max_gauge_diff = 0.0;
  double tol = 1e-10;
  bool passed = false;
};

/// Propagates `hamiltonian` over [0, duration] with and without the
/// coupling phases and compares the two propagators. Couplings not listed
/// carry phase 0. Throws ConstraintError when the phases cannot be written
/// as differences of level phases (closed coupling loops with non-zero
/// net phase), and DomainError for a listed pair that is not coupled.
GaugeReport gauge_invariance_check(const std::function<ComplexMatrix(double)>& hamiltonian,
                                   double duration, const std::vector<CouplingPhase>& phases,
                                   const PropagationConfig& cfg = {}, double tol = 1e-10);

/// Lambda-system convenience: compares the pair with phases shifted by
/// (shift_s, shift_p) against the pair as given.
GaugeReport gauge_invariance_check(const SPPulsePair& pair, const ErrorModel& err,
                                   double shift_s, double shift_p,
                                   const PropagationConfig& cfg = {}, double tol = 1e-10);

}  // namespace ctqd
