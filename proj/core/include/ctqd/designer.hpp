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

// Phase hierarchy design and sequence assembly.
//
// Design convention: all phase differences are expressed in the
// convention of the reduced models (models.hpp). Assembly converts them
// to field phases:
//   * the level-1 difference and the level-2 unit offsets are applied to
//     theta_s and theta_p together with sign -1 (a common shift of both
//     field phases moves the bright/excited coupling phase);
//   * level-3 block offsets are applied to theta_s only, which moves
//     theta_sp and hence the axis of the block rotation.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctqd/linalg.hpp"
#include "ctqd/pulses.hpp"
#include "ctqd/sequence.hpp"
#include "ctqd/simplex.hpp"
#include "ctqd/simulator.hpp"

namespace ctqd {

// ---- level 1 ----------------------------------------------------------------

/// pi - 2 alpha reduced to (-pi, pi].
double level1_phase(double alpha);

// ---- level 2 ----------------------------------------------------------------

/// Cumulative unit offsets for 2^M units built by M rounds of pairwise
/// concatenation: unit n carries sum over the set bits m of n of
/// (pi - 2^{m+2} alpha), bits counted from 0. Length 2^M, unreduced.
std::vector<double> level2_phases_pow2(double alpha, int depth);

struct ThreeUnitPhases {
  double theta21 = 0.0;
  double theta32 = 0.0;
  /// Set when 2 cos 4 alpha = 1 made the principal expression singular
  /// and the other branch was returned.
  bool alternate_branch = false;
  /// |e^{i(8a + t21 + t32)} + e^{i(4a + t21)} + 1|.
  double residual = 0.0;
};

/// First-order solution for three units. Both differences take the same
/// value, 2 atan[(sqrt3 - 2 sin 4a)/(2 cos 4a - 1)], which closes the three
/// unit phasors into an equilateral triangle.
ThreeUnitPhases level2_phases_three(double alpha);

/// The phasor-closure residual used above, for any pair of differences.
double level2_three_residual(double alpha, double theta21, double theta32);

/// |d^k U_eb / d delta^k| at delta = 0 for k = 0..max_order, unit chain
/// with the given cumulative offsets. Computed with exact series
/// arithmetic.
std::vector<double> taylor_coeffs_ueb(const std::vector<double>& offsets, double alpha, double r,
                                      int max_order);

struct SolverOptions {
  std::uint64_t seed = 42;
  int restarts = 32;
  int workers = 1;
  SimplexOptions simplex;
};

struct NumericPhases {
  /// Cumulative offsets (first entry 0 for level 2, the absolute first
  /// axis phase for level-3 FC).
  std::vector<double> cumulative;
  /// Successive differences of `cumulative`.
  std::vector<double> differences;
  double objective = 0.0;
  /// Sum of squares of the coefficients that are required to vanish.
  double residual = 0.0;
  int restart = -1;
  int converged_restarts = 0;
};

/// Multi-start simplex search for N2 unit offsets that null the
/// derivatives of U_eb up to order floor(log2 N2), with a small weight on
/// the next order to pick the flattest member. Throws NoSolution when no
/// restart drives the required coefficients below 1e-12 (relative to r s).
NumericPhases level2_phases_numeric(double alpha, double r, int n2,
                                    const SolverOptions& opts = {});

// ---- level 3 ----------------------------------------------------------------

inline constexpr double kHalfPi = 1.5707963267948966;

struct PcBranch {
  double theta21 = 0.0;
  double theta32 = 0.0;
  int outer_sign21 = 1;
  int inner_sign = 1;
  int outer_sign32 = 1;
  double p0_residual = 0.0;
  double p1_residual = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
};

/// All sign branches of the closed-form three-block population solution
/// that reproduce P_f and null its first derivative, ordered by
/// |second derivative|, then |third derivative|, then enumeration order.
std::vector<PcBranch> level3_pc_three_branches(double p_f, double beta = kHalfPi);

/// Best branch of the above. Throws DomainError for P_f outside [0, 1],
/// UseNumeric when beta differs from pi/2.
std::pair<double, double> level3_pc_three(double p_f, double beta = kHalfPi);

/// Population derivatives d^k P_f / d delta^k at 0, k = 0..max_order, in
/// the rotation model with block axis phases from `differences` (first
/// block at phase 0).
std::vector<double> pc_population_derivatives(const std::vector<double>& differences,
                                              double beta, int max_order,
                                              double mixing_angle = 0.7853981633974483);

/// Numeric PC design for N3 blocks: P_f(0) = target and derivatives
/// 1..(N3-1)/2 vanish. Among solutions, the one with the smallest next
/// population derivative and relative-phase drift is preferred.
NumericPhases level3_pc_numeric(double p_f, int n3, double beta = kHalfPi,
                                const SolverOptions& opts = {});

/// Local polish of rounded PC differences: Gauss-Newton with minimum-norm
/// steps from `start`, which lands on a nearby exact solution.
NumericPhases level3_pc_refine(double p_f, const std::vector<double>& start,
                               double beta = kHalfPi);

/// Fidelity coefficients f_k = (1/k!) d^k F / d delta^k at 0 for
/// k = 0..max_order, rotation model with absolute block axis phases
/// cumulative(first, differences).
std::vector<double> fc_fidelity_coeffs(double first, const std::vector<double>& differences,
                                       const TargetState& target, double beta, int max_order,
                                       double mixing_angle = 0.7853981633974483);

struct FcSolution {
  std::string family;
  double theta21 = 0.0;
  double theta32 = 0.0;
  double f0 = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
};

/// Members of the closed-form three-block FC families for an equal
/// superposition target and first axis phase `theta1`. Only members with
/// |f0 - 1| and |f1| below 1e-9 are returned, sorted by |f2|.
/// zeta = theta1 - chi is the combination the families depend on.
/// Throws UseNumeric unless the target angle is pi/4 and beta is pi/2.
std::vector<FcSolution> level3_fc_family(const TargetState& target, double theta1,
                                         double beta = kHalfPi);

/// Member of level3_fc_family with the smallest |f2|.
std::pair<double, double> level3_fc_three(const TargetState& target, double theta1,
                                          double beta = kHalfPi);

/// Numeric FC design for N3 blocks over the first axis phase and N3 - 1
/// differences: f0 = 1 and f_1..f_{N3-2} = 0, smallest f_{N3-1}.
NumericPhases level3_fc_numeric(const TargetState& target, int n3, double beta = kHalfPi,
                                const SolverOptions& opts = {});

// ---- assembly ---------------------------------------------------------------

/// Bloch rotation angle of one N1 x N2 block, beta = -(N2 (2 alpha - 2 gamma))
/// reduced to (-pi, pi], from the bright-state phase each level-1 unit
/// accumulates.
double block_rotation_angle(const PairCharacterization& c, int n2);

enum class Level2Method { kAuto, kPow2, kThree, kNumeric };

struct DesignOptions {
  Level2Method level2 = Level2Method::kAuto;
  SolverOptions solver;
  /// After assembly, shift every theta_s so the nominal final state has
  /// the target's relative phase chi. Population-only designs leave chi
  /// free, so without this the base Stokes phase decides it.
  bool align_target_phase = true;
};

struct DesignReport {
  std::string level2_method;
  std::string level3_method;
  double beta = 0.0;
  double level2_residual = 0.0;
  double level3_residual = 0.0;
  /// Stokes shift applied by align_target_phase (0 when disabled).
  double alignment_shift = 0.0;
};

/// Designs every level for `spec` given the base pair and its
/// characterization. Throws SpecError for an invalid spec.
DesignPhases design_phases(const HierarchySpec& spec, const SPPulsePair& base,
                           const PairCharacterization& c, const DesignOptions& opts = {},
                           DesignReport* report = nullptr);

/// Emits N1 N2 N3 pairs. Pair index i = ((b N2) + u) 2 + k for block b,
/// unit u and position k in the unit; provenance records every offset.
Sequence assemble(const HierarchySpec& spec, const SPPulsePair& base,
                  const PairCharacterization& c, const DesignPhases& phases);

/// Characterize, design, assemble and optionally align in one go.
Sequence design_sequence(const HierarchySpec& spec, const SPPulsePair& base,
                         const DesignOptions& opts = {}, const PropagationConfig& cfg = {},
                         DesignReport* report = nullptr);

/// Shift x of every theta_s that turns the relative phase of the f and g
/// amplitudes of U|g> into the target's chi.
double phase_alignment_shift(const ComplexMatrix& u, const TargetState& target);

/// Copy of `seq` with x added to every theta_s (recorded as a level-0
/// "align" contribution).
Sequence with_stokes_shift(const Sequence& seq, double x);

}  // namespace ctqd
