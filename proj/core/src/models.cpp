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

#include "ctqd/models.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace ctqd {

namespace {

constexpr Complex kI{0.0, 1.0};

double s_of(double r) {
  if (!(std::abs(r) < 1.0)) throw DomainError("|r| must be below 1");
  return std::sqrt(1.0 - r * r);
}

Jet mul(const Jet& a, const Jet& b) { return a * b; }

}  // namespace

Eigen::Matrix2cd unit_block(double alpha, double r, double theta, double delta) {
  const double s = s_of(r);
  const Complex e2 = std::polar(1.0, 2.0 * alpha);
  const Complex d2 = std::polar(1.0, 2.0 * alpha * delta);
  const Complex off = 2.0 * kI * r * s * std::sin(alpha * delta);
  Eigen::Matrix2cd u;
  u(0, 0) = e2 * (r * r + s * s * d2);
  u(0, 1) = off * std::polar(1.0, alpha - theta);
  u(1, 0) = off * std::polar(1.0, theta - alpha);
  u(1, 1) = std::conj(e2) * (r * r + s * s * std::conj(d2));
  return u;
}

JetMatrix2 unit_block_series(double alpha, double r, double theta, int order) {
  const double s = s_of(r);
  const Complex e2 = std::polar(1.0, 2.0 * alpha);
  const Jet d2 = Jet::exp_i(order, 2.0 * alpha);
  const Jet rr = Jet::constant(order, r * r);
  const Jet off = Jet::sin(order, 0.0, alpha) * (2.0 * kI * r * s);
  JetMatrix2 u(order);
  u.at(0, 0) = (rr + d2 * Complex(s * s)) * e2;
  u.at(0, 1) = off * std::polar(1.0, alpha - theta);
  u.at(1, 0) = off * std::polar(1.0, theta - alpha);
  u.at(1, 1) = (rr + d2.conj() * Complex(s * s)) * std::conj(e2);
  return u;
}

Eigen::Matrix2cd unit_chain(std::span<const double> offsets, double alpha, double r,
                            double delta) {
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  for (double theta : offsets) u = unit_block(alpha, r, theta, delta) * u;
  return u;
}

JetMatrix2 unit_chain_series(std::span<const double> offsets, double alpha, double r, int order) {
  JetMatrix2 u = JetMatrix2::identity(order);
  for (double theta : offsets) u = unit_block_series(alpha, r, theta, order) * u;
  return u;
}

double chain_ueb(std::span<const double> offsets, double alpha, double r, double delta) {
  return std::abs(unit_chain(offsets, alpha, r, delta)(1, 0));
}

double max_chain_ueb(std::span<const double> offsets, double alpha, double r, double lo,
                     double hi, int samples) {
  if (samples < 2) throw DomainError("need at least two samples");
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double d = lo + (hi - lo) * k / (samples - 1);
    best = std::max(best, chain_ueb(offsets, alpha, r, d));
  }
  return best;
}

Eigen::Matrix2cd block_rotation(double beta, double axis_phase, double mixing_angle,
                                double delta) {
  const double half = 0.5 * beta * (1.0 + delta);
  const double st = std::sin(2.0 * mixing_angle);
  const double mx = st * std::cos(axis_phase);
  const double my = st * std::sin(axis_phase);
  const double mz = -std::cos(2.0 * mixing_angle);
  const double c = std::cos(half);
  const double s = std::sin(half);
  Eigen::Matrix2cd u;
  u(0, 0) = Complex(c, -s * mz);
  u(0, 1) = -kI * s * Complex(mx, -my);
  u(1, 0) = -kI * s * Complex(mx, my);
  u(1, 1) = Complex(c, s * mz);
  return u;
}

JetMatrix2 block_rotation_series(double beta, double axis_phase, double mixing_angle, int order) {
  const double half = 0.5 * beta;
  const double st = std::sin(2.0 * mixing_angle);
  const Complex mxy = st * std::polar(1.0, axis_phase);
  const double mz = -std::cos(2.0 * mixing_angle);
  const Jet c = Jet::cos(order, half, half);
  const Jet s = Jet::sin(order, half, half);
  JetMatrix2 u(order);
  u.at(0, 0) = c - s * (kI * mz);
  u.at(0, 1) = s * (-kI * std::conj(mxy));
  u.at(1, 0) = s * (-kI * mxy);
  u.at(1, 1) = c + s * (kI * mz);
  return u;
}

Eigen::Matrix2cd composite_rotation(std::span<const double> axis_phases, double beta,
                                    double mixing_angle, double delta) {
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  for (double c : axis_phases) u = block_rotation(beta, c, mixing_angle, delta) * u;
  return u;
}

JetMatrix2 composite_rotation_series(std::span<const double> axis_phases, double beta,
                                     double mixing_angle, int order) {
  JetMatrix2 u = JetMatrix2::identity(order);
  for (double c : axis_phases) u = block_rotation_series(beta, c, mixing_angle, order) * u;
  return u;
}

double composite_population(std::span<const double> axis_phases, double beta,
                            double mixing_angle, double delta) {
  return std::norm(composite_rotation(axis_phases, beta, mixing_angle, delta)(1, 0));
}

// First column of the composite rotation as two series, propagated block by
// block. cos and sin of beta(1 + delta)/2 have real coefficients shared by
// every block, so each block costs four real-by-complex truncated products.
std::pair<Jet, Jet> composite_column_series(std::span<const double> axis_phases, double beta,
                                            double mixing_angle, int order) {
  const int n = order + 1;
  const double half = 0.5 * beta;
  const Jet cj = Jet::cos(order, half, half);
  const Jet sj = Jet::sin(order, half, half);
  std::vector<double> c(n), sn(n);
  for (int k = 0; k < n; ++k) {
    c[k] = cj[k].real();
    sn[k] = sj[k].real();
  }
  const double st = std::sin(2.0 * mixing_angle);
  const double mz = -std::cos(2.0 * mixing_angle);
  std::vector<Complex> a(n, 0.0), b(n, 0.0), na(n), nb(n);
  a[0] = 1.0;
  for (double phase : axis_phases) {
    const Complex m = st * std::polar(1.0, phase);
    const Complex ka = -kI * mz;
    const Complex kb = -kI * std::conj(m);
    const Complex kc = -kI * m;
    const Complex kd = kI * mz;
    for (int k = 0; k < n; ++k) {
      Complex ca = 0.0, sa = 0.0, cb = 0.0, sb = 0.0;
      for (int j = 0; j <= k; ++j) {
        ca += c[k - j] * a[j];
        sa += sn[k - j] * a[j];
        cb += c[k - j] * b[j];
        sb += sn[k - j] * b[j];
      }
      na[k] = ca + ka * sa + kb * sb;
      nb[k] = kc * sa + cb + kd * sb;
    }
    a.swap(na);
    b.swap(nb);
  }
  Jet ja(order), jb(order);
  for (int k = 0; k < n; ++k) {
    ja[k] = a[k];
    jb[k] = b[k];
  }
  return {ja, jb};
}


double composite_phase_slope(const std::pair<Jet, Jet>& column) {
  const auto& [a, b] = column;
  if (a.order() < 1) throw DomainError("phase slope needs series order >= 1");
  if (std::abs(a[0]) < 1e-12 || std::abs(b[0]) < 1e-12) {
    throw DegenerateError("relative phase undefined: an amplitude vanishes");
  }
  return (b[1] / b[0] - a[1] / a[0]).imag();
}

Jet composite_population_series(std::span<const double> axis_phases, double beta,
                                double mixing_angle, int order) {
  const Jet f = composite_column_series(axis_phases, beta, mixing_angle, order).second;
  return mul(f, f.conj()).real();
}

double composite_fidelity(std::span<const double> axis_phases, const TargetState& target,
                          double beta, double mixing_angle, double delta) {
  const Eigen::Matrix2cd u = composite_rotation(axis_phases, beta, mixing_angle, delta);
  const Complex overlap = std::cos(target.angle) * u(0, 0) +
                          std::sin(target.angle) * std::polar(1.0, -target.chi) * u(1, 0);
  return std::norm(overlap);
}

Jet composite_fidelity_series(std::span<const double> axis_phases, const TargetState& target,
                              double beta, double mixing_angle, int order) {
  const auto [u00, u10] = composite_column_series(axis_phases, beta, mixing_angle, order);
  const Jet overlap = u00 * Complex(std::cos(target.angle)) +
                      u10 * (std::sin(target.angle) * std::polar(1.0, -target.chi));
  return mul(overlap, overlap.conj()).real();
}

std::vector<double> cumulative_phases(double first, std::span<const double> differences) {
  std::vector<double> out;
  out.reserve(differences.size() + 1);
  out.push_back(first);
  for (double d : differences) out.push_back(out.back() + d);
  return out;
}

std::vector<double> phase_differences(std::span<const double> cumulative) {
  std::vector<double> out;
  for (std::size_t k = 1; k < cumulative.size(); ++k) out.push_back(cumulative[k] - cumulative[k - 1]);
  return out;
}

}  // namespace ctqd
