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

// Two-dimensional error scans and the CSV files the command-line tool
// writes.
//
// CSV dialect: comma separated, LF line ends, `#` comment lines for
// metadata, one header row. Numbers use printf "%.12g" (12 significant
// digits), so reading a file and writing it again reproduces it byte for
// byte.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctqd/pulses.hpp"
#include "ctqd/sequence.hpp"
#include "ctqd/simulator.hpp"

namespace ctqd {

enum class ErrorAxis { kStokes, kPump, kDetuning, kDuration, kStark };

std::string_view to_string(ErrorAxis axis);
/// Accepts "stokes", "pump", "detuning", "duration", "stark". Throws
/// SpecError otherwise.
ErrorAxis error_axis_from_string(std::string_view name);

/// Sets the field of `err` that `axis` controls.
void set_error(ErrorModel& err, ErrorAxis axis, double value);

struct AxisSpec {
  ErrorAxis axis = ErrorAxis::kStokes;
  double min = -0.5;
  double max = 0.5;
  int count = 101;

  /// Grid coordinate i; the last point is exactly `max`.
  double value(int i) const;
  /// Throws SpecError unless count >= 2 and min < max are finite.
  void validate() const;
};

struct ScanConfig {
  AxisSpec x{ErrorAxis::kStokes, -0.5, 0.5, 101};
  AxisSpec y{ErrorAxis::kDetuning, -0.5, 0.5, 101};
  bool metric_f = true;
  bool metric_pe = true;
  bool metric_pf = false;
  TargetState target;
  StateVector initial{1.0, 0.0, 0.0};
  /// Errors held fixed while the two axes vary.
  ErrorModel base_error;
  PropagationConfig propagation;
  /// 0 picks std::thread::hardware_concurrency().
  int workers = 1;

  void validate() const;
};

/// Metric arrays are row-major: entry (i, j) sits at i * y.count + j with i
/// indexing the x axis. Disabled metrics are left empty.
struct ScanGrid {
  AxisSpec x;
  AxisSpec y;
  std::vector<double> fidelity;
  std::vector<double> p_e;
  std::vector<double> p_f;

  std::size_t size() const {
    return static_cast<std::size_t>(x.count) * static_cast<std::size_t>(y.count);
  }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(y.count) +
           static_cast<std::size_t>(j);
  }
};

/// Metrics at one error point.
FinalMetrics evaluate_point(const std::vector<SPPulsePair>& pairs, const ScanConfig& cfg,
                            double dx, double dy);

/// Evaluates every grid point. Rows are split statically across workers and
/// written by index, so the result does not depend on the worker count. A
/// failing point aborts the scan with an Error naming its coordinates (the
/// lowest-index failure when several fail).
ScanGrid run_scan(const std::vector<SPPulsePair>& pairs, const ScanConfig& cfg);

/// Fraction of grid points where `values[k] > threshold`.
double fraction_above(const std::vector<double>& values, double threshold);
/// Fraction of grid points where `values[k] < threshold`.
double fraction_below(const std::vector<double>& values, double threshold);

struct CsvMetadata {
  std::string sequence_hash;
  std::optional<std::uint64_t> seed;
  std::string version;
};

/// printf("%.12g").
std::string format_g12(double v);

void write_scan_csv(std::ostream& out, const ScanGrid& grid, const CsvMetadata& meta);
/// Parses what write_scan_csv produced. Throws SpecError on malformed
/// input.
ScanGrid read_scan_csv(std::istream& in, CsvMetadata* meta = nullptr);

/// Columns t, P_g, P_f, P_e and, with `amplitudes`, Re/Im of the g, f, e
/// amplitudes. No samples gives a header-only file.
void write_trace_csv(std::ostream& out, const std::vector<TraceSample>& samples,
                     bool amplitudes, const CsvMetadata& meta);

/// `points` samples of (t, Omega_s, Omega_p) over [0, T] for one pair.
void write_shape_csv(std::ostream& out, const SPPulsePair& pair, int points = 1000);

}  // namespace ctqd
