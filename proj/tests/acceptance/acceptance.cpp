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


// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails. Tolerances and runtime limits are fixed here.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ctqd/designer.hpp"
#include "ctqd/frame.hpp"
#include "ctqd/models.hpp"
#include "ctqd/scan.hpp"
#include "ctqd/simulator.hpp"
#include "oracles.hpp"

namespace {

using namespace ctqd;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string strf(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

SPPulsePair gaussian_pair(double amplitude, double detuning, double theta_s = 0.0) {
  SPPulsePair p;
  p.shape = PulseShape::gaussian(amplitude, 1.0);
  p.detuning = detuning;
  p.theta_s = theta_s;
  return p;
}

double max_off_diagonal(const ComplexMatrix& m) {
  double worst = 0.0;
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      if (i != j) worst = std::max(worst, std::abs(m(i, j)));
    }
  }
  return worst;
}

// Level-1 pair with both field phases stepped by the design offset.
std::vector<SPPulsePair> level1_pairs(const SPPulsePair& base, double alpha) {
  SPPulsePair second = base;
  const double shift = level1_phase(alpha);
  second.theta_s -= shift;
  second.theta_p -= shift;
  return {base, second};
}

const StateVector kG{1.0, 0.0, 0.0};

// ---- 1 ----------------------------------------------------------------------

Outcome level1_exactness() {
  struct Row {
    const char* name;
    PulseShape shape;
    double detuning;
  };
  const std::vector<Row> rows{
      {"gaussian", PulseShape::gaussian(1.099, 1.0), 0.6574},
      {"sinusoidal", PulseShape::sinusoidal(3.044, 1.0, 0.0), 1.98},
      {"sawtooth", PulseShape::sawtooth(3.935, 1.0), 1.865},
      {"triangle", PulseShape::triangle(3.884, 0.5, 1.0), 2.18},
      {"trapezoidal", PulseShape::trapezoidal(3.249, 0.2, 0.2, 1.0), 2.04},
  };
  Outcome out{true, ""};
  const StateVector target = TargetState{}.ket();
  for (const Row& row : rows) {
    SPPulsePair p;
    p.shape = row.shape;
    p.detuning = row.detuning;
    // No theta_s,1 is given for these rows; the designer's target-phase
    // alignment picks it.
    const Sequence seq = design_sequence(HierarchySpec{}, p);
    const ComplexMatrix u = propagate_sequence(seq.pairs, {});
    const double off = max_off_diagonal(to_db_frame(u, p.mixing_angle, seq.pairs[0].theta_sp()));
    const FinalMetrics m = final_metrics(u, kG, target);
    const bool ok = off < 1e-8 && m.p_e < 1e-6 && m.fidelity > 0.99;
    out.pass = out.pass && ok;
    out.detail += strf("%s off=%.1e Pe=%.1e F=%.6f; ", row.name, off, m.p_e, m.fidelity);
  }
  return out;
}

// ---- 2 ----------------------------------------------------------------------

// The pair block carries a common phase e^{-i gamma} on {b, e}; the
// two-pair product is diag(1, e^{2i alpha}, e^{-2i alpha}) up to e^{-2i gamma} on
// that block.
Outcome r_independence() {
  const SPPulsePair p = gaussian_pair(2.381, 0.2802, 0.5237);
  Outcome out{true, ""};
  for (double d : {-0.5, -0.2, 0.2, 0.5}) {
    ErrorModel err;
    err.stokes_amp = d;
    err.pump_amp = d;
    const PairCharacterization c = characterize_pair(p, err);
    const ComplexMatrix u = propagate_sequence(level1_pairs(p, c.alpha), err);
    const ComplexMatrix db = to_db_frame(u, effective_mixing_angle(p, err), p.theta_sp());
    const Complex block = std::polar(1.0, -2.0 * c.block_phase);
    const Complex want[3] = {1.0, block * std::polar(1.0, 2.0 * c.alpha),
                             block * std::polar(1.0, -2.0 * c.alpha)};
    double dev = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) dev = std::max(dev, std::abs(db(i, j) - (i == j ? want[i] : 0.0)));
    }
    out.pass = out.pass && dev < 1e-7;
    out.detail += strf("d=%+.1f |r|=%.3f dev=%.1e; ", d, std::abs(c.r), dev);
  }
  return out;
}

// ---- 3 ----------------------------------------------------------------------

Outcome level2_scaling() {
  const double alpha = 1.029, r = 0.1;
  std::vector<double> deltas;
  for (int k = 0; k <= 20; ++k) deltas.push_back(std::pow(10.0, -3.0 + 2.0 * k / 20));
  Outcome out{true, ""};
  for (int m = 1; m <= 3; ++m) {
    const std::vector<double> offs = level2_phases_pow2(alpha, m);
    std::vector<double> ueb;
    for (double d : deltas) ueb.push_back(chain_ueb(offs, alpha, r, d));
    const double slope = oracle::loglog_slope(deltas, ueb);
    out.pass = out.pass && std::abs(slope - (m + 1)) <= 0.2;
    out.detail += strf("N2=%d slope=%.3f; ", 1 << m, slope);
  }
  return out;
}

// ---- 4 ----------------------------------------------------------------------

Outcome reference_level2_phases() {
  const double alpha = 1.029, r = 0.1;
  const std::vector<double> reference = cumulative_phases(0.0, std::vector<double>{-0.9750, 2.1678, -0.9744});
  const std::vector<double> c = taylor_coeffs_ueb(reference, alpha, r, 2);
  const bool coeffs_ok = c[0] < 1e-4 && c[1] < 1e-4 && c[2] < 1e-4;
  const NumericPhases ours = level2_phases_numeric(alpha, r, 4);
  const double m_ref = max_chain_ueb(reference, alpha, r, -0.5, 0.5, 2001);
  const double m_ours = max_chain_ueb(ours.cumulative, alpha, r, -0.5, 0.5, 2001);
  const bool curve_ok = m_ours <= 1.05 * m_ref;
  return {coeffs_ok && curve_ok,
          strf("reference-phase coeffs k0=%.2e k1=%.2e k2=%.2e (limit 1e-4) %s; "
               "max|U_eb| ours=%.6f reference=%.6f ratio=%.4f %s",
               c[0], c[1], c[2], coeffs_ok ? "ok" : "EXCEEDED", m_ours, m_ref,
               m_ours / m_ref, curve_ok ? "ok" : "EXCEEDED")};
}

// ---- 5 ----------------------------------------------------------------------

Outcome pc_closed_form() {
  const auto [t21, t32] = level3_pc_three(0.5);
  Outcome out{std::abs(t21 - 2.0944) < 1e-4 && std::abs(t32) < 1e-4,
              strf("N3=3 (%.6f, %.6f); ", t21, t32)};
  const std::vector<std::vector<double>> rows{{2.5133, 0, 1.2566, 0},
                                              {2.6928, 0, 1.7952, 0, 0.8976, 0}};
  for (const auto& row : rows) {
    const int n3 = static_cast<int>(row.size()) + 1;
    const int top = (n3 - 1) / 2;
    const std::vector<double> d = pc_population_derivatives(row, kHalfPi, top);
    double worst = 0.0;
    for (int k = 1; k <= top; ++k) worst = std::max(worst, std::abs(d[k]));
    out.pass = out.pass && worst < 1e-5;
    // Nearest exact solution, for context only.
    const NumericPhases refined = level3_pc_refine(0.5, row);
    double shift = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) shift = std::max(shift, std::abs(refined.differences[i] - row[i]));
    out.detail += strf("N3=%d reference max|dP|=%.2e (limit 1e-5) %s, nearest exact row %.1e away; ", n3,
                       worst, worst < 1e-5 ? "ok" : "EXCEEDED", shift);
  }
  return out;
}

// ---- 6 ----------------------------------------------------------------------

// Analytic rows written in zeta = theta1 - chi.
struct FcRow {
  const char* name;
  double theta1, t21, t32;
};

std::vector<FcRow> analytic_rows(double chi, int m, double free_value) {
  const double mp = m * kPi;
  std::vector<FcRow> rows;
  rows.push_back({"t21=m pi", free_value, mp, 1.5 * kPi - (free_value - chi) + 2 * mp});
  rows.push_back({"t32=2m pi", free_value, 0.75 * kPi - (free_value - chi) / 2 + mp, 2 * mp});
  rows.push_back({"t32=pi", 0.5 * kPi + chi + 2 * mp, free_value, kPi + 2 * mp});
  for (int sg : {1, -1}) {
    rows.push_back({"t21=+-4pi/3", 1.5 * kPi - sg * 2 * kPi / 3 + chi + 2 * mp,
                    sg * 4 * kPi / 3 + 4 * mp, 2 * mp});
    rows.push_back({"t21=+-2pi/3", 0.5 * kPi - sg * kPi / 3 + chi + 2 * mp,
                    sg * 2 * kPi / 3 + 4 * mp, 2 * mp});
  }
  return rows;
}

double fit_theta1(const std::vector<double>& row, const TargetState& t) {
  auto f0 = [&](double th) { return fc_fidelity_coeffs(th, row, t, kHalfPi, 0)[0]; };
  double best = -1.0, at = 0.0;
  constexpr int kGrid = 20000;
  for (int i = 0; i < kGrid; ++i) {
    const double th = -kPi + 2 * kPi * i / kGrid;
    if (const double v = f0(th); v > best) best = v, at = th;
  }
  double lo = at - 2 * kPi / kGrid, hi = at + 2 * kPi / kGrid;
  for (int it = 0; it < 100; ++it) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (f0(m1) > f0(m2)) hi = m2; else lo = m1;
  }
  return 0.5 * (lo + hi);
}

Outcome fc_family() {
  Outcome out{true, ""};
  double worst = 0.0;
  int count = 0;
  for (double chi : {0.0, 0.7, -1.3}) {
    TargetState t;
    t.chi = chi;
    for (int m : {-1, 0, 1}) {
      for (double free_value : {0.0, 0.4, -2.2}) {
        for (const FcRow& r : analytic_rows(chi, m, free_value)) {
          const std::vector<double> f = fc_fidelity_coeffs(r.theta1, {r.t21, r.t32}, t, kHalfPi, 1);
          worst = std::max({worst, std::abs(f[0] - 1.0), std::abs(f[1])});
          ++count;
        }
      }
    }
  }
  out.pass = worst < 1e-9;
  out.detail += strf("%d analytic rows max(|f0-1|,|f1|)=%.1e; ", count, worst);

  const TargetState t;
  const std::vector<std::vector<double>> reference{{1.5708, 2.3562, -1.5708, -1.5708},
                                                 {3.1416, -2.3886, 0.0097, 2.6366, -0.0096, -1.8235}};
  for (const auto& row : reference) {
    const double th = fit_theta1(row, t);
    const std::vector<double> f = fc_fidelity_coeffs(th, row, t, kHalfPi, 1);
    const double res = std::max(std::abs(f[0] - 1.0), std::abs(f[1]));
    out.pass = out.pass && res < 1e-4;
    out.detail += strf("reference N3=%zu (theta1=%.4f) res=%.1e; ", row.size() + 1, th, res);
  }
  for (int n3 : {5, 7}) {
    const NumericPhases s = level3_fc_numeric(t, n3);
    const std::vector<double> f = fc_fidelity_coeffs(s.cumulative[0], s.differences, t, kHalfPi, 1);
    const double res = std::max(std::abs(f[0] - 1.0), std::abs(f[1]));
    out.pass = out.pass && res < 1e-4;
    out.detail += strf("numeric N3=%d res=%.1e; ", n3, res);
  }
  return out;
}

// ---- 7 ----------------------------------------------------------------------

Outcome r43_robustness() {
  HierarchySpec h;
  h.n2 = 2;
  h.n3 = 3;
  h.level3 = Level3Mode::kPC;
  const Sequence s = design_sequence(h, gaussian_pair(2.381, 0.2802, 0.5237));
  const StateVector target = TargetState{}.ket();
  const FinalMetrics nominal = final_metrics(propagate_sequence(s, {}), kG, target);
  ErrorModel err;
  err.stokes_amp = 0.1;
  err.detuning = 0.1;
  const FinalMetrics perturbed = final_metrics(propagate_sequence(s, err), kG, target);
  const double alpha = s.characterization->alpha;
  const bool ok = std::abs(alpha - 0.4479) < 5e-5 && nominal.fidelity > 0.999 && nominal.p_e < 1e-6 &&
                  perturbed.fidelity > 0.99 && perturbed.p_e < 1e-3;
  return {ok, strf("alpha=%.5f nominal F=%.8f Pe=%.1e; perturbed F=%.5f Pe=%.1e", alpha,
                   nominal.fidelity, nominal.p_e, perturbed.fidelity, perturbed.p_e)};
}

// ---- 8 ----------------------------------------------------------------------

Outcome area_ordering() {
  struct Row {
    int n1n2, n3;
    double a, d, ts;
  };
  const std::vector<Row> rows{{2, 1, 1.099, 0.6574, 1.5708},
                              {4, 3, 2.381, 0.2802, 0.5237},
                              {4, 5, 2.381, 0.2802, -0.9425},
                              {8, 1, 1.1299, 0.1640, 1.5708},
                              {8, 5, 1.1299, 0.1640, -0.9425}};
  std::vector<double> area_f, area_pe;
  Outcome out{true, ""};
  for (const Row& r : rows) {
    HierarchySpec h;
    h.n2 = r.n1n2 / 2;
    h.n3 = r.n3;
    h.level3 = r.n3 > 1 ? Level3Mode::kPC : Level3Mode::kNone;
    const Sequence s = design_sequence(h, gaussian_pair(r.a, r.d, r.ts));
    ScanConfig cfg;
    cfg.x = {ErrorAxis::kStokes, -0.5, 0.5, 41};
    cfg.y = {ErrorAxis::kDetuning, -0.5, 0.5, 41};
    const ScanGrid g = run_scan(s.pairs, cfg);
    area_f.push_back(fraction_above(g.fidelity, 0.999));
    area_pe.push_back(fraction_below(g.p_e, 1e-4));
    out.detail += strf("(%d,%d) A_F=%.4f A_Pe=%.4f; ", r.n1n2, r.n3, area_f.back(), area_pe.back());
  }
  const bool f_order = area_f[2] > area_f[1] && area_f[1] > area_f[0];
  const bool pe_order = std::min(area_pe[3], area_pe[4]) > std::max(area_pe[1], area_pe[2]) &&
                        std::min(area_pe[1], area_pe[2]) > area_pe[0];
  out.pass = f_order && pe_order;
  return out;
}

// ---- 9 ----------------------------------------------------------------------

Outcome gauge_invariance() {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  const SPPulsePair base = gaussian_pair(2.381, 0.2802);
  ErrorModel err;
  err.stokes_amp = 0.07;
  err.detuning = -0.05;
  PropagationConfig cfg;
  cfg.steps_per_pair = 400;
  const ComplexMatrix u0 = propagate_pair(base, err, cfg);
  double worst = 0.0, worst_check = 0.0;
  bool all_passed = true;
  for (int k = 0; k < 100; ++k) {
    const double ds = phase(rng), dp = phase(rng);
    SPPulsePair shifted = base;
    shifted.theta_s += ds;
    shifted.theta_p += dp;
    const ComplexMatrix u1 = propagate_pair(shifted, err, cfg);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(std::abs(u1(i, j)) - std::abs(u0(i, j))));
    }
    const GaugeReport rep = gauge_invariance_check(base, err, ds, dp, cfg);
    all_passed = all_passed && rep.passed && rep.free_phases == 3;
    worst_check = std::max(worst_check, rep.max_magnitude_diff);
  }
  return {worst < 1e-10 && all_passed,
          strf("100 vectors: max||U'|-|U||=%.1e, gauge check max=%.1e, free phases=3 %s", worst,
               worst_check, all_passed ? "ok" : "FAILED")};
}

// ---- 10 ---------------------------------------------------------------------

Outcome properties() {
  const SPPulsePair p = gaussian_pair(2.381, 0.2802, 0.5237);
  std::vector<ErrorModel> axes(6);
  axes[1].stokes_amp = 0.2;
  axes[2].pump_amp = -0.2;
  axes[3].detuning = 0.3;
  axes[4].duration = 0.1;
  axes[5].stark = 0.15;
  double unitarity = 0.0, dark = 0.0, norm = 0.0, doubling = 0.0;
  for (const ErrorModel& e : axes) {
    const ComplexMatrix u = propagate_pair(p, e);
    unitarity = std::max(unitarity, u.unitarity_error());
    const ComplexMatrix db = to_db_frame(u, effective_mixing_angle(p, e), p.theta_sp());
    dark = std::max({dark, std::abs(db(0, 0) - 1.0), std::abs(db(0, 1)), std::abs(db(0, 2)),
                     std::abs(db(1, 0)), std::abs(db(2, 0))});
    for (const TraceSample& s : trace_populations({p, p}, e, kG)) {
      norm = std::max(norm, std::abs(s.p_g + s.p_f + s.p_e - 1.0));
    }
    doubling = std::max(doubling, step_doubling_error(p, e));
  }
  const bool ok = unitarity < 1e-10 && norm < 1e-10 && dark < 1e-8 && doubling < 1e-9;
  return {ok, strf("unitarity=%.1e norm=%.1e dark=%.1e step-doubling=%.1e over %zu error axes",
                   unitarity, norm, dark, doubling, axes.size())};
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::vector<Criterion> criteria{
      {1, "level-1 exactness", 5.0, level1_exactness},
      {2, "r-independence", 5.0, r_independence},
      {3, "level-2 order scaling", 2.0, level2_scaling},
      {4, "reference N2 = 4 phases", 60.0, reference_level2_phases},
      {5, "PC closed form and reference rows", 5.0, pc_closed_form},
      {6, "FC analytic family and numeric rows", 10.0, fc_family},
      {7, "R(4,3) nominal and perturbed", 10.0, r43_robustness},
      {8, "error-map area ordering", 600.0, area_ordering},
      {9, "gauge invariance", 10.0, gauge_invariance},
      {10, "property suites", 60.0, properties},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s [%.2f s, limit %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id,
                c.title, o.detail.c_str(), secs, c.limit_s, in_time ? "" : ", TOO SLOW");
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
