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

// Reduced 2x2 design models.
//
// Level 2: one error-perturbed level-1 unit in the {|b>, |e>} block,
// parameterized by the pair's r (real), its dynamical phase alpha, the
// unit's coupling phase theta and the fractional phase error delta:
//
//   U(theta, delta) = [[e^{2ia}(r^2 + s^2 e^{2ia delta}),  2irs sin(a delta) e^{i(a - theta)}],
//                      [2irs sin(a delta) e^{i(theta - a)}, e^{-2ia}(r^2 + s^2 e^{-2ia delta})]]
//
// Level 3: each N1 x N2 block is a rotation of the {|g>, |f>} qubit,
//   exp(-i (beta/2)(1 + delta) m.sigma),  m = (sin 2phi cos c, sin 2phi sin c, -cos 2phi),
// with axis phase c set by the block's Stokes phase offset.

#pragma once

#include <span>
#include <utility>

#include <Eigen/Core>

#include "ctqd/linalg.hpp"
#include "ctqd/sequence.hpp"
#include "ctqd/series.hpp"

namespace ctqd {

inline constexpr double kQuarterPi = 0.7853981633974483;

// ---- level 2 ---------------------------------------------------------------

Eigen::Matrix2cd unit_block(double alpha, double r, double theta, double delta);
JetMatrix2 unit_block_series(double alpha, double r, double theta, int order);

/// Product of units with coupling phases offsets[0], offsets[1], ...
/// (first unit applied first).
Eigen::Matrix2cd unit_chain(std::span<const double> offsets, double alpha, double r,
                            double delta);
JetMatrix2 unit_chain_series(std::span<const double> offsets, double alpha, double r, int order);

/// |U_eb| of the chain at phase error delta.
double chain_ueb(std::span<const double> offsets, double alpha, double r, double delta);

/// max |U_eb| over `samples` evenly spaced points of [lo, hi].
double max_chain_ueb(std::span<const double> offsets, double alpha, double r, double lo,
                     double hi, int samples = 1001);

// ---- level 3 ---------------------------------------------------------------

Eigen::Matrix2cd block_rotation(double beta, double axis_phase, double mixing_angle,
                                double delta);
JetMatrix2 block_rotation_series(double beta, double axis_phase, double mixing_angle, int order);

/// Rotations with axis phases c_1, c_2, ... applied in order.
Eigen::Matrix2cd composite_rotation(std::span<const double> axis_phases, double beta,
                                    double mixing_angle, double delta);
JetMatrix2 composite_rotation_series(std::span<const double> axis_phases, double beta,
                                     double mixing_angle, int order);

/// First column (U_gg, U_fg) of the composite rotation as series in delta.
std::pair<Jet, Jet> composite_column_series(std::span<const double> axis_phases, double beta,
                                            double mixing_angle, int order);

/// d/d delta of arg(U_fg / U_gg) at delta = 0, the drift of the relative
/// phase of the final superposition. Throws DegenerateError when either
/// amplitude vanishes at delta = 0.
double composite_phase_slope(const std::pair<Jet, Jet>& column);

/// P_f(delta) after the composite rotation acting on |g>.
double composite_population(std::span<const double> axis_phases, double beta,
                            double mixing_angle, double delta);
Jet composite_population_series(std::span<const double> axis_phases, double beta,
                                double mixing_angle, int order);

/// |<target|U|g>|^2 as a function of delta.
double composite_fidelity(std::span<const double> axis_phases, const TargetState& target,
                          double beta, double mixing_angle, double delta);
Jet composite_fidelity_series(std::span<const double> axis_phases, const TargetState& target,
                              double beta, double mixing_angle, int order);

/// Cumulative phases {x_1, x_1 + d_1, x_1 + d_1 + d_2, ...} from a first
/// value and successive differences.
std::vector<double> cumulative_phases(double first, std::span<const double> differences);

/// Successive differences of a cumulative phase list.
std::vector<double> phase_differences(std::span<const double> cumulative);

}  // namespace ctqd
