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

#include "ctqd/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace ctqd {

double reduce_phase(double x) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double y = std::remainder(x, kTwoPi);
  if (y <= -std::numbers::pi) y += kTwoPi;
  return y;
}

std::string to_string(Level3Mode mode) {
  switch (mode) {
    case Level3Mode::kNone: return "none";
    case Level3Mode::kPC: return "pc";
    case Level3Mode::kFC: return "fc";
  }
  return "none";
}

Level3Mode level3_mode_from_string(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "none") return Level3Mode::kNone;
  if (lower == "pc") return Level3Mode::kPC;
  if (lower == "fc") return Level3Mode::kFC;
  throw SpecError("unknown level-3 mode '" + name + "' (expected none, pc or fc)");
}

TargetState TargetState::from_population(double p_f, double chi) {
  if (!(p_f >= 0.0 && p_f <= 1.0)) throw DomainError("target population must lie in [0, 1]");
  TargetState t;
  t.angle = std::asin(std::sqrt(p_f));
  t.chi = chi;
  return t;
}

double TargetState::population() const {
  const double s = std::sin(angle);
  return s * s;
}

StateVector TargetState::ket() const {
  return StateVector{std::cos(angle), std::sin(angle) * std::polar(1.0, chi), 0.0};
}

void TargetState::validate() const {
  if (!std::isfinite(angle) || !std::isfinite(chi)) {
    throw DomainError("target angle and phase must be finite");
  }
  if (angle < -1e-12 || angle > std::numbers::pi / 2 + 1e-12) {
    throw DomainError("target angle must lie in [0, pi/2]");
  }
}

void HierarchySpec::validate() const {
  if (n1 != 2) throw SpecError("N1 must be 2");
  if (n2 < 1) throw SpecError("N2 must be at least 1");
  if (n3 < 1) throw SpecError("N3 must be at least 1");
  if (level3 == Level3Mode::kNone && n3 != 1) {
    throw SpecError("N3 > 1 needs a level-3 mode (pc or fc)");
  }
  if (level3 != Level3Mode::kNone && n3 < 2) {
    throw SpecError("level-3 compensation needs N3 >= 2");
  }
  try {
    target.validate();
  } catch (const DomainError& e) {
    throw SpecError(e.what());
  }
}

bool Sequence::audit() const {
  if (provenance.size() != pairs.size()) return false;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const PairProvenance& p = provenance[i];
    double s = p.base_theta_s;
    double q = p.base_theta_p;
    for (const PhaseContribution& c : p.contributions) {
      s += c.applied_s;
      q += c.applied_p;
    }
    if (s != p.theta_s_unreduced || q != p.theta_p_unreduced) return false;
    if (reduce_phase(s) != pairs[i].theta_s || reduce_phase(q) != pairs[i].theta_p) return false;
  }
  return true;
}

}  // namespace ctqd
