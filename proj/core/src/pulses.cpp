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

#include "ctqd/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace ctqd {

namespace {

constexpr double kWindowSlack = 1e-12;

bool finite(double x) { return std::isfinite(x); }

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

double trim_to_window(double t, double duration) {
  const double slack = kWindowSlack * std::max(1.0, duration);
  if (!(t >= -slack && t <= duration + slack)) {
    std::ostringstream os;
    os << "time " << t << " outside pulse window [0, " << duration << "]";
    throw DomainError(os.str());
  }
  return std::clamp(t, 0.0, duration);
}

double interpolate(const PulseShape::Samples& knots, double t) {
  auto hi = std::upper_bound(knots.begin(), knots.end(), t,
                             [](double x, const auto& k) { return x < k.first; });
  if (hi == knots.begin()) return knots.front().second;
  if (hi == knots.end()) return knots.back().second;
  const auto lo = hi - 1;
  const double w = (t - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

}  // namespace

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::kGaussian: return "gaussian";
    case ShapeKind::kSinusoidal: return "sinusoidal";
    case ShapeKind::kSawtooth: return "sawtooth";
    case ShapeKind::kTriangle: return "triangle";
    case ShapeKind::kTrapezoidal: return "trapezoidal";
    case ShapeKind::kSampled: return "sampled";
  }
  return "unknown";
}

ShapeKind shape_kind_from_string(std::string_view name) {
  for (ShapeKind k : {ShapeKind::kGaussian, ShapeKind::kSinusoidal, ShapeKind::kSawtooth,
                      ShapeKind::kTriangle, ShapeKind::kTrapezoidal, ShapeKind::kSampled}) {
    if (to_string(k) == name) return k;
  }
  throw SpecError("unknown pulse shape '" + std::string(name) + "'");
}

PulseShape PulseShape::gaussian(double amplitude, double tau) {
  PulseShape s;
  s.kind = ShapeKind::kGaussian;
  s.amplitude = amplitude;
  s.tau = tau;
  s.duration = 6.0 * tau;
  s.validate();
  return s;
}

PulseShape PulseShape::sinusoidal(double amplitude, double duration, double phase) {
  PulseShape s;
  s.kind = ShapeKind::kSinusoidal;
  s.amplitude = amplitude;
  s.tau = phase;
  s.duration = duration;
  s.validate();
  return s;
}

PulseShape PulseShape::sawtooth(double amplitude, double duration) {
  PulseShape s;
  s.kind = ShapeKind::kSawtooth;
  s.amplitude = amplitude;
  s.tau = 0.0;
  s.duration = duration;
  s.validate();
  return s;
}

PulseShape PulseShape::triangle(double amplitude, double peak_time, double duration) {
  PulseShape s;
  s.kind = ShapeKind::kTriangle;
  s.amplitude = amplitude;
  s.tau = peak_time;
  s.duration = duration;
  s.validate();
  return s;
}

PulseShape PulseShape::trapezoidal(double amplitude, double tau1, double tau2, double duration) {
  PulseShape s;
  s.kind = ShapeKind::kTrapezoidal;
  s.amplitude = amplitude;
  s.tau = tau1;
  s.tau2 = tau2;
  s.duration = duration;
  s.validate();
  return s;
}

PulseShape PulseShape::sampled(Samples knots) {
  PulseShape s;
  s.kind = ShapeKind::kSampled;
  s.amplitude = 1.0;
  s.tau = 0.0;
  s.duration = knots.empty() ? 0.0 : knots.back().first;
  s.samples = std::make_shared<const Samples>(std::move(knots));
  s.validate();
  return s;
}

double PulseShape::plateau_end() const { return tau2 > tau ? tau2 : tau + tau2; }

void PulseShape::validate() const {
  require(finite(amplitude) && amplitude >= 0.0, "pulse amplitude must be finite and >= 0");
  require(finite(duration) && duration > 0.0, "pulse duration must be positive");
  require(finite(tau) && finite(tau2), "pulse shape times must be finite");
  switch (kind) {
    case ShapeKind::kGaussian:
      require(tau > 0.0, "gaussian width must be positive");
      break;
    case ShapeKind::kTriangle:
      require(tau > 0.0 && tau < duration, "triangle peak must lie inside (0, T)");
      break;
    case ShapeKind::kTrapezoidal:
      require(tau > 0.0 && tau2 >= 0.0, "trapezoid times must be positive");
      require(plateau_end() < duration, "trapezoid plateau must end before T");
      break;
    case ShapeKind::kSampled: {
      require(samples && samples->size() >= 2, "sampled shape needs at least two knots");
      require(samples->front().first == 0.0, "sampled shape must start at t = 0");
      for (std::size_t k = 0; k < samples->size(); ++k) {
        const auto& [t, v] = (*samples)[k];
        require(finite(t) && finite(v) && v >= 0.0, "sampled knots must be finite and >= 0");
        if (k > 0) require(t > (*samples)[k - 1].first, "sampled knot times must increase");
      }
      break;
    }
    case ShapeKind::kSinusoidal:
    case ShapeKind::kSawtooth:
      break;
  }
}

double eval_shape(const PulseShape& shape, double t) {
  const double T = shape.duration;
  t = trim_to_window(t, T);
  const double A = shape.amplitude;
  switch (shape.kind) {
    case ShapeKind::kGaussian: {
      const double x = (t - 0.5 * T) / shape.tau;
      return A * std::exp(-x * x);
    }
    case ShapeKind::kSinusoidal:
      return A * std::abs(std::sin(std::numbers::pi * t / T + shape.tau));
    case ShapeKind::kSawtooth:
      return A * t / T;
    case ShapeKind::kTriangle:
      if (t <= shape.tau) return A * t / shape.tau;
      return A * (T - t) / (T - shape.tau);
    case ShapeKind::kTrapezoidal: {
      const double t2 = shape.plateau_end();
      if (t <= shape.tau) return A * t / shape.tau;
      if (t <= t2) return A;
      return A * (T - t) / (T - t2);
    }
    case ShapeKind::kSampled:
      return shape.amplitude * interpolate(*shape.samples, t);
  }
  return 0.0;
}

double eval_shape_derivative(const PulseShape& shape, double t) {
  const double T = shape.duration;
  t = trim_to_window(t, T);
  const double A = shape.amplitude;
  switch (shape.kind) {
    case ShapeKind::kGaussian: {
      const double x = (t - 0.5 * T) / shape.tau;
      return -2.0 * x / shape.tau * A * std::exp(-x * x);
    }
    case ShapeKind::kSinusoidal: {
      const double arg = std::numbers::pi * t / T + shape.tau;
      const double sgn = std::sin(arg) >= 0.0 ? 1.0 : -1.0;
      return sgn * A * std::numbers::pi / T * std::cos(arg);
    }
    case ShapeKind::kSawtooth:
      return A / T;
    case ShapeKind::kTriangle:
      return t < shape.tau ? A / shape.tau : -A / (T - shape.tau);
    case ShapeKind::kTrapezoidal: {
      const double t2 = shape.plateau_end();
      if (t < shape.tau) return A / shape.tau;
      if (t < t2) return 0.0;
      return -A / (T - t2);
    }
    case ShapeKind::kSampled: {
      const auto& knots = *shape.samples;
      auto hi = std::upper_bound(knots.begin(), knots.end(), t,
                                 [](double x, const auto& k) { return x < k.first; });
      if (hi == knots.end()) hi = knots.end() - 1;
      if (hi == knots.begin()) hi = knots.begin() + 1;
      const auto lo = hi - 1;
      return shape.amplitude * (hi->second - lo->second) / (hi->first - lo->first);
    }
  }
  return 0.0;
}

PulseShape load_sampled_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open sampled shape file '" + path + "'");
  PulseShape::Samples knots;
  std::string line;
  int lineno = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw SpecError(path + ":" + std::to_string(lineno) + ": expected 'time,amplitude'");
    }
    const std::string a = line.substr(0, comma);
    const std::string b = line.substr(comma + 1);
    char* end_a = nullptr;
    char* end_b = nullptr;
    const double t = std::strtod(a.c_str(), &end_a);
    const double v = std::strtod(b.c_str(), &end_b);
    const bool ok_a = end_a != a.c_str() && std::string(end_a).find_first_not_of(" \t") == std::string::npos;
    const bool ok_b = end_b != b.c_str() && std::string(end_b).find_first_not_of(" \t") == std::string::npos;
    if (!ok_a || !ok_b) {
      if (header_allowed && knots.empty()) {
        header_allowed = false;
        continue;
      }
      throw SpecError(path + ":" + std::to_string(lineno) + ": non-numeric field");
    }
    knots.emplace_back(t, v);
  }
  try {
    return PulseShape::sampled(std::move(knots));
  } catch (const DomainError& e) {
    throw SpecError(path + ": " + e.what());
  }
}

void SPPulsePair::validate() const {
  shape.validate();
  require(finite(mixing_angle) && mixing_angle >= 0.0 && mixing_angle < std::numbers::pi / 2,
          "mixing angle must lie in [0, pi/2)");
  require(finite(theta_s) && finite(theta_p) && finite(detuning), "pair fields must be finite");
  if (pump_shape) {
    pump_shape->validate();
    require(std::abs(pump_shape->duration - shape.duration) <= kWindowSlack * shape.duration,
            "pump and Stokes windows must coincide");
  }
}

bool ErrorModel::is_zero() const {
  return stokes_amp == 0.0 && pump_amp == 0.0 && detuning == 0.0 && duration == 0.0 &&
         stark == 0.0;
}

void ErrorModel::validate() const {
  require(finite(stokes_amp) && finite(pump_amp) && finite(detuning) && finite(duration) &&
              finite(stark),
          "error model fields must be finite");
  require(duration > -1.0, "duration error must exceed -1");
}

double scaled_duration(const SPPulsePair& pair, const ErrorModel& err) {
  return pair.duration() * (1.0 + err.duration);
}

Couplings couplings(const SPPulsePair& pair, const ErrorModel& err, double t) {
  const double stretch = 1.0 + err.duration;
  const double T = pair.duration();
  const double tn = trim_to_window(t / stretch, T);
  const double env = eval_shape(pair.shape, tn);
  const double pump_env = pair.pump_shape ? eval_shape(*pair.pump_shape, tn) : env;
  const double delta = pair.detuning_profile ? pair.detuning_profile(tn) : pair.detuning;
  Couplings c;
  c.stokes = (1.0 + err.stokes_amp) * env;
  c.pump = (1.0 + err.pump_amp) * std::tan(pair.mixing_angle) * pump_env;
  c.detuning = (1.0 + err.detuning) * delta + err.stark;
  return c;
}

double effective_mixing_angle(const SPPulsePair& pair, const ErrorModel& err) {
  return std::atan2((1.0 + err.pump_amp) * std::tan(pair.mixing_angle), 1.0 + err.stokes_amp);
}

ComplexMatrix build_hamiltonian(const SPPulsePair& pair, const ErrorModel& err, double t) {
  const Couplings c = couplings(pair, err, t);
  const Complex hge = c.pump * std::polar(1.0, pair.theta_p);
  const Complex hfe = c.stokes * std::polar(1.0, pair.theta_s);
  ComplexMatrix::Storage h = ComplexMatrix::Storage::Zero(3, 3);
  h(0, 2) = hge;
  h(2, 0) = std::conj(hge);
  h(1, 2) = hfe;
  h(2, 1) = std::conj(hfe);
  h(2, 2) = c.detuning;
  return ComplexMatrix(std::move(h));
}

}  // namespace ctqd
