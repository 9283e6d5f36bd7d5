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

#include "ctqd/designer.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "ctqd/frame.hpp"
#include "ctqd/models.hpp"

namespace ctqd {

namespace {

constexpr double kPi = std::numbers::pi;
// Designs snap beta to pi/2 when the simulated block angle is this close.
constexpr double kBetaSnap = 1e-3;
// Weight of the first order that is not required to vanish.
constexpr double kSoftWeight = 1e-6;
constexpr double kLevel2Accept = 1e-14;
constexpr double kLevel3Accept = 1e-18;
constexpr double kPolishGate = 1e-2;
constexpr int kPolishIters = 40;
constexpr double kFdStep = 1e-7;
// Field-phase sign of the level-1 and level-2 offsets.
constexpr double kUnitSign = -1.0;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int ilog2(int n) {
  int m = 0;
  while ((1 << (m + 1)) <= n) ++m;
  return m;
}

bool near_phase(double a, double b, double tol) { return std::abs(reduce_phase(a - b)) < tol; }

// Key for ordering by magnitude while treating values equal to ~1e-10 as ties.
long long mag_key(double v) { return std::llround(std::abs(v) * 1e10); }

struct Scored {
  std::vector<double> x;
  double objective;
  double residual;
  int restart;
};

using Residuals = std::function<std::vector<double>(std::span<const double>)>;

double sum_sq(const std::vector<double>& r) {
  double s = 0.0;
  for (double v : r) s += v * v;
  return s;
}

// Gauss-Newton on the required residuals with central-difference Jacobians
// and minimum-norm steps (the systems are underdetermined), halving the
// step until the squared residual drops.
std::vector<double> gauss_newton_polish(const Residuals& req, std::vector<double> x,
                                        double target) {
  std::vector<double> r = req(x);
  double e = sum_sq(r);
  const int n = static_cast<int>(x.size());
  for (int it = 0; it < kPolishIters && e > target; ++it) {
    const int m = static_cast<int>(r.size());
    Eigen::MatrixXd jac(m, n);
    for (int j = 0; j < n; ++j) {
      std::vector<double> xp = x, xm = x;
      xp[j] += kFdStep;
      xm[j] -= kFdStep;
      const std::vector<double> rp = req(xp), rm = req(xm);
      for (int i = 0; i < m; ++i) jac(i, j) = (rp[i] - rm[i]) / (2.0 * kFdStep);
    }
    const Eigen::VectorXd rv = Eigen::Map<const Eigen::VectorXd>(r.data(), m);
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-rv);
    bool improved = false;
    double t = 1.0;
    for (int ls = 0; ls < 30 && !improved; ++ls, t *= 0.5) {
      std::vector<double> xt = x;
      for (int j = 0; j < n; ++j) xt[j] += t * step(j);
      std::vector<double> rt = req(xt);
      const double et = sum_sq(rt);
      if (et < e) {
        x = std::move(xt);
        r = std::move(rt);
        e = et;
        improved = true;
      }
    }
    if (!improved) break;
  }
  return x;
}

// Runs the multi-start search on sum(req^2) + kSoftWeight * soft and keeps
// the lowest-objective restart whose required part is below `accept`. The
// soft term pulls the combined minimum slightly off the solution set, so
// restarts that land close are polished on the required part alone.
// `parts` returns the required residuals and the soft term from one series
// evaluation.
using Parts = std::function<std::pair<std::vector<double>, double>(std::span<const double>)>;

Scored pick(const Parts& parts, int dim, const SolverOptions& opts, double accept,
            int* converged, const char* what) {
  const Residuals req = [&](std::span<const double> x) { return parts(x).first; };
  const Objective f = [&](std::span<const double> x) {
    const auto [r, soft] = parts(x);
    return sum_sq(r) + kSoftWeight * soft;
  };
  MultiStartOptions ms;
  ms.restarts = opts.restarts;
  ms.seed = opts.seed;
  ms.workers = opts.workers;
  ms.simplex = opts.simplex;
  const MultiStartResult res = multi_start(f, dim, ms);
  Scored best{{}, HUGE_VAL, HUGE_VAL, -1};
  Scored fallback{{}, HUGE_VAL, HUGE_VAL, -1};
  *converged = 0;
  for (int k = 0; k < static_cast<int>(res.runs.size()); ++k) {
    std::vector<double> x = res.runs[k].x;
    double resid = sum_sq(req(x));
    if (resid >= accept && resid < kPolishGate) {
      x = gauss_newton_polish(req, std::move(x), 1e-3 * accept);
      resid = sum_sq(req(x));
    }
    const double value = f(x);
    if (resid < fallback.residual) fallback = {x, value, resid, k};
    if (resid >= accept) continue;
    ++*converged;
    if (value < best.objective) best = {x, value, resid, k};
  }
  if (best.restart < 0) {
    std::ostringstream os;
    os << what << ": no restart converged (best residual " << fallback.residual << ")";
    throw NoSolution(os.str(), fallback.x, fallback.residual);
  }
  return best;
}

NumericPhases to_numeric(double first, const Scored& s, int converged, bool with_first) {
  NumericPhases out;
  std::vector<double> diffs(s.x.begin() + (with_first ? 1 : 0), s.x.end());
  out.cumulative = cumulative_phases(with_first ? s.x[0] : first, diffs);
  out.differences = std::move(diffs);
  out.objective = s.objective;
  out.residual = s.residual;
  out.restart = s.restart;
  out.converged_restarts = converged;
  return out;
}

double snap_beta(double beta) {
  if (std::abs(beta - kHalfPi) < kBetaSnap) return kHalfPi;
  if (std::abs(beta + kHalfPi) < kBetaSnap) return -kHalfPi;
  return beta;
}

void check_population(double p_f) {
  if (!(p_f >= 0.0 && p_f <= 1.0)) throw DomainError("P_f must lie in [0, 1]");
}

}  // namespace

double level1_phase(double alpha) { return reduce_phase(kPi - 2.0 * alpha); }

std::vector<double> level2_phases_pow2(double alpha, int depth) {
  if (depth < 0 || depth > 20) throw DomainError("concatenation depth must lie in [0, 20]");
  const int n = 1 << depth;
  std::vector<double> out(n, 0.0);
  for (int u = 0; u < n; ++u) {
    double acc = 0.0;
    for (int m = 0; m < depth; ++m) {
      if (u & (1 << m)) acc += kPi - std::ldexp(alpha, m + 2);
    }
    out[u] = acc;
  }
  return out;
}

double level2_three_residual(double alpha, double theta21, double theta32) {
  const Complex sum = std::polar(1.0, 8.0 * alpha + theta21 + theta32) +
                      std::polar(1.0, 4.0 * alpha + theta21) + Complex(1.0, 0.0);
  return std::abs(sum);
}

ThreeUnitPhases level2_phases_three(double alpha) {
  ThreeUnitPhases out;
  const double x = 4.0 * alpha;
  const double den = 2.0 * std::cos(x) - 1.0;
  if (std::abs(den) > 1e-12) {
    out.theta21 = 2.0 * std::atan((std::sqrt(3.0) - 2.0 * std::sin(x)) / den);
  } else {
    // Principal expression is singular; the other closure branch.
    out.theta21 = reduce_phase(-2.0 * kPi / 3.0 - x);
    out.alternate_branch = true;
  }
  out.theta32 = out.theta21;
  out.residual = level2_three_residual(alpha, out.theta21, out.theta32);
  return out;
}

std::vector<double> taylor_coeffs_ueb(const std::vector<double>& offsets, double alpha, double r,
                                      int max_order) {
  if (max_order < 0) throw DomainError("max_order must be non-negative");
  const Jet ueb = unit_chain_series(offsets, alpha, r, max_order).at(1, 0);
  std::vector<double> out;
  for (int k = 0; k <= max_order; ++k) out.push_back(std::abs(ueb.derivative(k)));
  return out;
}

NumericPhases level2_phases_numeric(double alpha, double r, int n2, const SolverOptions& opts) {
  if (n2 < 1) throw DomainError("N2 must be at least 1");
  if (!(std::abs(r) < 1.0) || r == 0.0) throw DomainError("need 0 < |r| < 1");
  if (n2 == 1) {
    NumericPhases out;
    out.cumulative = {0.0};
    return out;
  }
  const int top = ilog2(n2) + 1;
  const double scale = std::abs(r) * std::sqrt(1.0 - r * r);
  auto series = [=](std::span<const double> x) {
    const std::vector<double> offs = cumulative_phases(0.0, x);
    return unit_chain_series(offs, alpha, r, top).at(1, 0);
  };
  const Parts parts = [=](std::span<const double> x) {
    const Jet ueb = series(x);
    std::vector<double> out;
    for (int k = 0; k < top; ++k) {
      out.push_back(ueb[k].real() / scale);
      out.push_back(ueb[k].imag() / scale);
    }
    return std::pair{out, std::norm(ueb[top]) / (scale * scale)};
  };
  int converged = 0;
  const Scored best = pick(parts, n2 - 1, opts, kLevel2Accept, &converged, "level-2 design");
  return to_numeric(0.0, best, converged, false);
}

std::vector<double> pc_population_derivatives(const std::vector<double>& differences,
                                              double beta, int max_order,
                                              double mixing_angle) {
  const std::vector<double> c = cumulative_phases(0.0, differences);
  const Jet p = composite_population_series(c, beta, mixing_angle, max_order);
  std::vector<double> out;
  for (int k = 0; k <= max_order; ++k) out.push_back(p.derivative(k).real());
  return out;
}

std::vector<PcBranch> level3_pc_three_branches(double p_f, double beta) {
  check_population(p_f);
  const double a = std::sqrt(std::max(0.0, 1.0 - p_f * p_f));
  const double b = std::sqrt(std::max(0.0, 2.0 * p_f - p_f * p_f));
  std::vector<PcBranch> out;
  for (int o21 : {1, -1}) {
    for (int inner : {1, -1}) {
      for (int o32 : {1, -1}) {
        PcBranch br;
        br.outer_sign21 = o21;
        br.inner_sign = inner;
        br.outer_sign32 = o32;
        br.theta21 = 2.0 * std::atan(o21 * (a + inner * b));
        br.theta32 = 2.0 * std::atan(o32 * (a - inner * b));
        const auto d = pc_population_derivatives({br.theta21, br.theta32}, beta, 3);
        br.p0_residual = std::abs(d[0] - p_f);
        br.p1_residual = std::abs(d[1]);
        br.p2 = d[2];
        br.p3 = d[3];
        if (br.p0_residual < 1e-9 && br.p1_residual < 1e-9) out.push_back(br);
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const PcBranch& x, const PcBranch& y) {
    if (mag_key(x.p2) != mag_key(y.p2)) return mag_key(x.p2) < mag_key(y.p2);
    return mag_key(x.p3) < mag_key(y.p3);
  });
  return out;
}

std::pair<double, double> level3_pc_three(double p_f, double beta) {
  check_population(p_f);
  if (std::abs(beta - kHalfPi) > 1e-12) {
    throw UseNumeric("closed-form PC phases assume a pi/2 block rotation");
  }
  const auto branches = level3_pc_three_branches(p_f, beta);
  if (branches.empty()) throw NoSolution("no PC sign branch satisfies the residual checks", {}, 0.0);
  return {branches.front().theta21, branches.front().theta32};
}

NumericPhases level3_pc_numeric(double p_f, int n3, double beta, const SolverOptions& opts) {
  check_population(p_f);
  if (n3 < 2) throw DomainError("N3 must be at least 2");
  const int k_top = (n3 - 1) / 2;
  // Soft term: next population order plus the drift of the relative phase,
  // which the population conditions leave free and which decides how well
  // the superposition's phase holds up.
  const Parts parts = [=](std::span<const double> x) {
    const std::vector<double> c = cumulative_phases(0.0, x);
    const auto column = composite_column_series(c, beta, kQuarterPi, k_top + 1);
    const Jet p = (column.second * column.second.conj()).real();
    std::vector<double> out{p[0].real() - p_f};
    for (int k = 1; k <= k_top; ++k) out.push_back(p[k].real());
    double slope = 0.0;
    if (std::abs(column.first[0]) > 1e-6 && std::abs(column.second[0]) > 1e-6) {
      slope = composite_phase_slope(column);
    }
    return std::pair{out, std::norm(p[k_top + 1]) + slope * slope};
  };
  int converged = 0;
  const Scored best = pick(parts, n3 - 1, opts, kLevel3Accept, &converged, "PC design");
  return to_numeric(0.0, best, converged, false);
}

NumericPhases level3_pc_refine(double p_f, const std::vector<double>& start, double beta) {
  check_population(p_f);
  if (start.empty()) throw DomainError("need at least one phase difference");
  const int n3 = static_cast<int>(start.size()) + 1;
  const int k_top = (n3 - 1) / 2;
  const Residuals req = [=](std::span<const double> x) {
    const std::vector<double> c = cumulative_phases(0.0, x);
    const Jet p = composite_population_series(c, beta, kQuarterPi, k_top);
    std::vector<double> out{p[0].real() - p_f};
    for (int k = 1; k <= k_top; ++k) out.push_back(p[k].real());
    return out;
  };
  const std::vector<double> x = gauss_newton_polish(req, start, 1e-30);
  const double resid = sum_sq(req(x));
  return to_numeric(0.0, Scored{x, resid, resid, 0}, 1, false);
}

std::vector<double> fc_fidelity_coeffs(double first, const std::vector<double>& differences,
                                       const TargetState& target, double beta, int max_order,
                                       double mixing_angle) {
  const std::vector<double> c = cumulative_phases(first, differences);
  const Jet f = composite_fidelity_series(c, target, beta, mixing_angle, max_order);
  std::vector<double> out;
  for (int k = 0; k <= max_order; ++k) out.push_back(f[k].real());
  return out;
}

std::vector<FcSolution> level3_fc_family(const TargetState& target, double theta1, double beta) {
  target.validate();
  if (std::abs(target.angle - kQuarterPi) > 1e-12 || std::abs(beta - kHalfPi) > 1e-12) {
    throw UseNumeric("closed-form FC phases need an equal-superposition target and beta = pi/2");
  }
  const double zeta = theta1 - target.chi;
  std::vector<FcSolution> cand;
  auto add = [&](std::string family, double t21, double t32) {
    FcSolution s;
    s.family = std::move(family);
    s.theta21 = reduce_phase(t21);
    s.theta32 = reduce_phase(t32);
    cand.push_back(s);
  };
  for (int m : {0, 1}) {
    add("m*pi, 3pi/2 - zeta", m * kPi, 1.5 * kPi - zeta);
  }
  for (int m : {0, 1}) {
    add("3pi/4 - zeta/2 + m*pi, 0", 0.75 * kPi - 0.5 * zeta + m * kPi, 0.0);
  }
  if (near_phase(zeta, 0.5 * kPi, 1e-9)) {
    for (int k = 0; k < 8; ++k) add("any, pi", k * kPi / 4.0, kPi);
  }
  for (int sgn : {1, -1}) {
    if (near_phase(zeta, 1.5 * kPi - sgn * 2.0 * kPi / 3.0, 1e-9)) {
      add(sgn > 0 ? "4pi/3, 0" : "-4pi/3, 0", sgn * 4.0 * kPi / 3.0, 0.0);
    }
    if (near_phase(zeta, 0.5 * kPi - sgn * kPi / 3.0, 1e-9)) {
      add(sgn > 0 ? "2pi/3, 0" : "-2pi/3, 0", sgn * 2.0 * kPi / 3.0, 0.0);
    }
  }
  std::vector<FcSolution> out;
  for (FcSolution& s : cand) {
    const auto f = fc_fidelity_coeffs(theta1, {s.theta21, s.theta32}, target, beta, 2);
    s.f0 = f[0];
    s.f1 = f[1];
    s.f2 = f[2];
    if (std::abs(s.f0 - 1.0) < 1e-9 && std::abs(s.f1) < 1e-9) out.push_back(s);
  }
  std::stable_sort(out.begin(), out.end(), [](const FcSolution& x, const FcSolution& y) {
    return mag_key(x.f2) < mag_key(y.f2);
  });
  return out;
}

std::pair<double, double> level3_fc_three(const TargetState& target, double theta1, double beta) {
  const auto fam = level3_fc_family(target, theta1, beta);
  if (fam.empty()) throw NoSolution("no closed-form FC member satisfies f0 = 1, f1 = 0", {}, 0.0);
  return {fam.front().theta21, fam.front().theta32};
}

NumericPhases level3_fc_numeric(const TargetState& target, int n3, double beta,
                                const SolverOptions& opts) {
  target.validate();
  if (n3 < 2) throw DomainError("N3 must be at least 2");
  const int k_top = std::max(1, n3 - 2);
  auto series = [=](std::span<const double> x) {
    const std::vector<double> c(x.begin(), x.end());
    const std::vector<double> axes = cumulative_phases(c[0], std::span<const double>(c).subspan(1));
    return composite_fidelity_series(axes, target, beta, kQuarterPi, k_top + 1);
  };
  const Parts parts = [=](std::span<const double> x) {
    const Jet f = series(x);
    std::vector<double> out{1.0 - f[0].real()};
    for (int k = 1; k <= k_top; ++k) out.push_back(f[k].real());
    return std::pair{out, std::norm(f[k_top + 1])};
  };
  int converged = 0;
  const Scored best = pick(parts, n3, opts, kLevel3Accept, &converged, "FC design");
  return to_numeric(0.0, best, converged, true);
}

double block_rotation_angle(const PairCharacterization& c, int n2) {
  if (n2 < 1) throw DomainError("N2 must be at least 1");
  return reduce_phase(-static_cast<double>(n2) * (2.0 * c.alpha - 2.0 * c.block_phase));
}

DesignPhases design_phases(const HierarchySpec& spec, const SPPulsePair& base,
                           const PairCharacterization& c, const DesignOptions& opts,
                           DesignReport* report) {
  spec.validate();
  DesignReport rep;
  DesignPhases out;
  out.level1 = level1_phase(c.alpha);

  const int n2 = spec.n2;
  Level2Method m2 = opts.level2;
  if (m2 == Level2Method::kAuto) {
    m2 = n2 == 1 ? Level2Method::kPow2
                 : is_pow2(n2) ? Level2Method::kPow2
                               : n2 == 3 ? Level2Method::kThree : Level2Method::kNumeric;
  }
  switch (m2) {
    case Level2Method::kPow2:
      if (!is_pow2(n2)) throw SpecError("pow2 level-2 design needs N2 to be a power of two");
      out.level2 = level2_phases_pow2(c.alpha, ilog2(n2));
      rep.level2_method = n2 == 1 ? "none" : "pow2";
      break;
    case Level2Method::kThree: {
      if (n2 != 3) throw SpecError("three-unit level-2 design needs N2 = 3");
      const ThreeUnitPhases t = level2_phases_three(c.alpha);
      out.level2 = {0.0, t.theta21, t.theta21 + t.theta32};
      rep.level2_method = "three";
      rep.level2_residual = t.residual;
      break;
    }
    case Level2Method::kNumeric:
    case Level2Method::kAuto: {
      const NumericPhases np = level2_phases_numeric(c.alpha, std::abs(c.r), n2, opts.solver);
      out.level2 = np.cumulative;
      rep.level2_method = "numeric";
      rep.level2_residual = np.residual;
      break;
    }
  }

  rep.beta = block_rotation_angle(c, n2);
  const double beta = snap_beta(rep.beta);
  const double phi = base.mixing_angle;
  const bool quarter = std::abs(phi - kQuarterPi) < 1e-12;
  const bool half_pi = std::abs(std::abs(beta) - kHalfPi) < 1e-15;
  switch (spec.level3) {
    case Level3Mode::kNone:
      out.level3 = {0.0};
      rep.level3_method = "none";
      break;
    case Level3Mode::kPC: {
      const double p_f = spec.target.population();
      if (spec.n3 == 3 && quarter && beta == kHalfPi) {
        const auto [t21, t32] = level3_pc_three(p_f, beta);
        out.level3 = {0.0, t21, t21 + t32};
        rep.level3_method = "pc-closed-form";
      } else {
        if (!quarter) throw SpecError("level-3 design supports mixing angle pi/4 only");
        const NumericPhases np = level3_pc_numeric(p_f, spec.n3, beta, opts.solver);
        out.level3 = np.cumulative;
        rep.level3_method = "pc-numeric";
        rep.level3_residual = np.residual;
      }
      break;
    }
    case Level3Mode::kFC: {
      if (!quarter) throw SpecError("level-3 design supports mixing angle pi/4 only");
      const double theta1 = base.theta_sp();
      if (spec.n3 == 3 && half_pi && beta > 0.0 &&
          std::abs(spec.target.angle - kQuarterPi) < 1e-12) {
        const auto [t21, t32] = level3_fc_three(spec.target, theta1, beta);
        out.level3 = {0.0, t21, t21 + t32};
        rep.level3_method = "fc-closed-form";
      } else {
        const NumericPhases np = level3_fc_numeric(spec.target, spec.n3, beta, opts.solver);
        out.level3.clear();
        for (double x : np.cumulative) out.level3.push_back(x - theta1);
        rep.level3_method = "fc-numeric";
        rep.level3_residual = np.residual;
      }
      break;
    }
  }
  if (report) *report = rep;
  return out;
}

Sequence assemble(const HierarchySpec& spec, const SPPulsePair& base,
                  const PairCharacterization& c, const DesignPhases& phases) {
  spec.validate();
  base.validate();
  if (static_cast<int>(phases.level2.size()) != spec.n2) {
    throw SpecError("level-2 offsets do not match N2");
  }
  if (static_cast<int>(phases.level3.size()) != spec.n3) {
    throw SpecError("level-3 offsets do not match N3");
  }
  Sequence seq;
  seq.hierarchy = spec;
  seq.phases = phases;
  seq.characterization = c;
  for (int b = 0; b < spec.n3; ++b) {
    for (int u = 0; u < spec.n2; ++u) {
      for (int k = 0; k < spec.n1; ++k) {
        PairProvenance prov;
        prov.base_theta_s = base.theta_s;
        prov.base_theta_p = base.theta_p;
        if (k == 1) {
          const double v = kUnitSign * phases.level1;
          prov.contributions.push_back({1, "theta_21", phases.level1, v, v});
        }
        if (spec.n2 > 1 && u > 0) {
          const double v = kUnitSign * phases.level2[u];
          prov.contributions.push_back(
              {2, "theta'_" + std::to_string(u + 1) + "1", phases.level2[u], v, v});
        }
        if (phases.level3[b] != 0.0) {
          prov.contributions.push_back({3, "theta''_" + std::to_string(b + 1),
                                        phases.level3[b], phases.level3[b], 0.0});
        }
        double s = prov.base_theta_s;
        double p = prov.base_theta_p;
        for (const PhaseContribution& pc : prov.contributions) {
          s += pc.applied_s;
          p += pc.applied_p;
        }
        prov.theta_s_unreduced = s;
        prov.theta_p_unreduced = p;
        SPPulsePair pair = base;
        pair.theta_s = reduce_phase(s);
        pair.theta_p = reduce_phase(p);
        seq.pairs.push_back(std::move(pair));
        seq.provenance.push_back(std::move(prov));
      }
    }
  }
  return seq;
}

Sequence design_sequence(const HierarchySpec& spec, const SPPulsePair& base,
                         const DesignOptions& opts, const PropagationConfig& cfg,
                         DesignReport* report) {
  spec.validate();
  const PairCharacterization c = characterize_pair(base, ErrorModel{}, cfg);
  DesignReport rep;
  const DesignPhases phases = design_phases(spec, base, c, opts, &rep);
  Sequence seq = assemble(spec, base, c, phases);
  if (opts.align_target_phase) {
    const double x = phase_alignment_shift(propagate_sequence(seq, ErrorModel{}, cfg), spec.target);
    if (x != 0.0) seq = with_stokes_shift(seq, x);
    rep.alignment_shift = x;
  }
  if (report) *report = rep;
  return seq;
}

double phase_alignment_shift(const ComplexMatrix& u, const TargetState& target) {
  const Complex ag = u(0, 0);
  const Complex af = u(1, 0);
  if (std::abs(ag) == 0.0 || std::abs(af) == 0.0) return 0.0;
  return reduce_phase(target.chi - std::arg(af / ag));
}

Sequence with_stokes_shift(const Sequence& seq, double x) {
  Sequence out = seq;
  for (std::size_t i = 0; i < out.pairs.size(); ++i) {
    PairProvenance& p = out.provenance[i];
    p.contributions.push_back({0, "align", x, x, 0.0});
    p.theta_s_unreduced += x;
    out.pairs[i].theta_s = reduce_phase(p.theta_s_unreduced);
  }
  return out;
}

}  // namespace ctqd
