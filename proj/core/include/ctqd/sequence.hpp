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

// Data carried by a designed pulse sequence.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctqd/linalg.hpp"
#include "ctqd/pulses.hpp"

namespace ctqd {

/// Single-pair propagator parameters. In the {|d>, |b>, |e>} frame the
/// pair acts as diag(1, B) with
///   B = e^{-i gamma} [[s e^{i alpha},        r e^{-i theta}],
///                     [-conj(r) e^{i theta}, s e^{-i alpha}]]
/// where theta is the phase of the bright/excited coupling, s >= 0 and
/// alpha is reduced to (-pi/2, pi/2] by the choice of the branch of gamma.
struct PairCharacterization {
  Complex r{0.0, 0.0};
  double s = 1.0;
  double alpha = 0.0;
  /// gamma above. det B = e^{-2 i gamma}.
  double block_phase = 0.0;
};

enum class Level3Mode { kNone, kPC, kFC };

std::string to_string(Level3Mode mode);
/// Accepts "none", "pc", "fc" (any case). Throws SpecError.
Level3Mode level3_mode_from_string(const std::string& name);

/// Target cos(a)|g> + sin(a) e^{i chi}|f>. `a` is the superposition angle,
/// unrelated to the dynamical phase alpha of a pair.
struct TargetState {
  double angle = 0.7853981633974483;
  double chi = 0.0;

  static TargetState from_population(double p_f, double chi = 0.0);
  double population() const;
  StateVector ket() const;
  /// Throws DomainError for non-finite fields.
  void validate() const;
};

struct HierarchySpec {
  int n1 = 2;
  int n2 = 1;
  int n3 = 1;
  Level3Mode level3 = Level3Mode::kNone;
  TargetState target;

  int total_pairs() const { return n1 * n2 * n3; }
  /// Throws SpecError unless n1 == 2, n2 >= 1, n3 >= 1 and the level-3
  /// mode is consistent with n3.
  void validate() const;
};

/// Cumulative phase offsets in design convention: `level1` is the
/// in-unit difference, `level2[u]` the offset of 2-pair unit u inside a
/// block and `level3[b]` the offset of block b.
struct DesignPhases {
  double level1 = 0.0;
  std::vector<double> level2{0.0};
  std::vector<double> level3{0.0};
};

struct PhaseContribution {
  int level = 0;
  std::string label;
  /// Value in design convention, unreduced.
  double design = 0.0;
  double applied_s = 0.0;
  double applied_p = 0.0;
};

struct PairProvenance {
  double base_theta_s = 0.0;
  double base_theta_p = 0.0;
  std::vector<PhaseContribution> contributions;
  /// base + contributions summed left to right, before reduction.
  double theta_s_unreduced = 0.0;
  double theta_p_unreduced = 0.0;
};

struct Sequence {
  HierarchySpec hierarchy;
  std::vector<SPPulsePair> pairs;
  std::vector<PairProvenance> provenance;
  DesignPhases phases;
  std::optional<PairCharacterization> characterization;

  std::size_t size() const { return pairs.size(); }
  /// Re-adds every provenance record and checks it reproduces the stored
  /// phases bit for bit. Returns false on the first mismatch.
  bool audit() const;
};

/// Reduces x to (-pi, pi].
double reduce_phase(double x);

}  // namespace ctqd
