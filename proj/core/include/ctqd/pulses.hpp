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

// Pulse envelopes, the synchronized Stokes/pump pair and systematic errors.
//
// Units: rates are multiples of the reference Rabi frequency Omega_0 and
// times are in 1/Omega_0.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctqd/linalg.hpp"

namespace ctqd {

enum class ShapeKind { kGaussian, kSinusoidal, kSawtooth, kTriangle, kTrapezoidal, kSampled };

std::string_view to_string(ShapeKind kind);
/// Accepts the lowercase names printed by to_string. Throws SpecError.
ShapeKind shape_kind_from_string(std::string_view name);

/// Stokes envelope Omega_s(t)/Omega_0 on the window [0, duration].
///
/// Parameter meaning per kind:
///   gaussian     A exp(-(t - T/2)^2 / tau^2), T = 6 tau
///   sinusoidal   A |sin(pi t / T + tau)|, tau is a phase offset
///   sawtooth     A t / T
///   triangle     rises to A at t = tau, falls back to 0 at T
///   trapezoidal  rises to A at tau, holds until plateau_end(), falls to 0 at T
///   sampled      linear interpolation through (time, value) knots
struct PulseShape {
  using Samples = std::vector<std::pair<double, double>>;

  ShapeKind kind = ShapeKind::kGaussian;
  double amplitude = 1.0;
  double tau = 1.0;
  double tau2 = 0.0;
  double duration = 6.0;
  std::shared_ptr<const Samples> samples;

  static PulseShape gaussian(double amplitude, double tau);
  static PulseShape sinusoidal(double amplitude, double duration, double phase = 0.0);
  static PulseShape sawtooth(double amplitude, double duration);
  static PulseShape triangle(double amplitude, double peak_time, double duration);
  static PulseShape trapezoidal(double amplitude, double tau1, double tau2, double duration);
  /// Knots must start at t = 0, be strictly increasing in time and carry
  /// finite non-negative values. The last knot fixes the duration.
  static PulseShape sampled(Samples knots);

  /// Trapezoid plateau end. tau2 is read as an absolute time when it lies
  /// after tau1 and as the plateau length otherwise (tau1 = tau2 = 0.2
  /// would leave an empty plateau under the absolute reading).
  double plateau_end() const;

  /// Throws DomainError for non-finite or inconsistent parameters.
  void validate() const;
};

/// Omega_s(t)/Omega_0. Throws DomainError for t outside [0, duration].
double eval_shape(const PulseShape& shape, double t);

/// dOmega_s/dt / Omega_0. One-sided at the knots of piecewise shapes
/// (the slope of the segment that starts at t). Throws DomainError for t
/// outside [0, duration].
double eval_shape_derivative(const PulseShape& shape, double t);

/// Two-column (time, amplitude) CSV. Blank lines, '#' comments and one
/// non-numeric header row are skipped. Throws SpecError on malformed rows.
PulseShape load_sampled_csv(const std::string& path);

/// One Stokes + pump pulse pair sharing a single envelope. The Stokes
/// amplitude is the shape value and the pump amplitude is tan(phi) times
/// that, so the mixing angle phi stays constant over the pulse.
struct SPPulsePair {
  PulseShape shape;
  double mixing_angle = 0.7853981633974483;
  double theta_s = 0.0;
  double theta_p = 0.0;
  double detuning = 0.0;
  /// Optional Delta(t) on [0, duration]; replaces `detuning` when set.
  std::function<double(double)> detuning_profile;
  /// Optional separate pump envelope. Only useful for demonstrating what
  /// happens when the pair is not synchronized.
  std::optional<PulseShape> pump_shape;

  double duration() const { return shape.duration; }
  double theta_sp() const { return theta_s - theta_p; }
  bool synchronized() const { return !pump_shape.has_value(); }

  /// Throws DomainError for phi outside [0, pi/2) or non-finite fields.
  void validate() const;
};

/// Systematic deviations. Multiplicative on the Stokes amplitude, pump
/// amplitude, detuning and duration; `stark` shifts |e> additively.
struct ErrorModel {
  double stokes_amp = 0.0;
  double pump_amp = 0.0;
  double detuning = 0.0;
  double duration = 0.0;
  double stark = 0.0;

  static ErrorModel none() { return {}; }
  bool is_zero() const;
  /// Throws DomainError for non-finite values or duration <= -1.
  void validate() const;
};

/// Instantaneous real couplings after the error model is applied.
struct Couplings {
  double stokes = 0.0;
  double pump = 0.0;
  double detuning = 0.0;
};

/// Pair duration after duration error: T (1 + delta_T).
double scaled_duration(const SPPulsePair& pair, const ErrorModel& err);

/// Couplings at time t of the dilated window [0, scaled_duration]. The
/// envelope is stretched; phases are not touched by the duration error.
Couplings couplings(const SPPulsePair& pair, const ErrorModel& err, double t);

/// Mixing angle seen by the system under `err`:
/// atan((1 + delta_p) tan(phi) / (1 + delta_s)).
double effective_mixing_angle(const SPPulsePair& pair, const ErrorModel& err);

/// H(t) in the basis {|g>, |f>, |e>}:
///   H_ee = Delta_eff, H_ge = Omega_p e^{i theta_p}, H_fe = Omega_s e^{i theta_s}
/// plus Hermitian conjugates. Throws DomainError for t outside the window.
ComplexMatrix build_hamiltonian(const SPPulsePair& pair, const ErrorModel& err, double t);

}  // namespace ctqd
