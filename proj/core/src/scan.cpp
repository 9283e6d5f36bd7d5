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

#include "ctqd/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace ctqd {

namespace {

constexpr const char* kAxisNames[] = {"stokes", "pump", "detuning", "duration", "stark"};

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::string axis_line(const AxisSpec& a) {
  return std::string(to_string(a.axis)) + "," + format_g12(a.min) + "," + format_g12(a.max) +
         "," + std::to_string(a.count);
}

AxisSpec parse_axis(const std::string& text) {
  std::stringstream ss(text);
  std::string name, lo, hi, n;
  if (!std::getline(ss, name, ',') || !std::getline(ss, lo, ',') || !std::getline(ss, hi, ',') ||
      !std::getline(ss, n)) {
    throw SpecError("scan csv: malformed axis line '" + text + "'");
  }
  AxisSpec a;
  a.axis = error_axis_from_string(name);
  a.min = std::strtod(lo.c_str(), nullptr);
  a.max = std::strtod(hi.c_str(), nullptr);
  a.count = std::atoi(n.c_str());
  a.validate();
  return a;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_number(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw SpecError("scan csv: bad number '" + s + "'");
  return v;
}

void write_metadata(std::ostream& out, const char* kind, const CsvMetadata& meta) {
  out << "# ctqd " << kind << '\n';
  if (!meta.version.empty()) out << "# version: " << meta.version << '\n';
  if (!meta.sequence_hash.empty()) out << "# sequence_hash: " << meta.sequence_hash << '\n';
  if (meta.seed) out << "# seed: " << *meta.seed << '\n';
}

}  // namespace

std::string_view to_string(ErrorAxis axis) { return kAxisNames[static_cast<int>(axis)]; }

ErrorAxis error_axis_from_string(std::string_view name) {
  for (int i = 0; i < 5; ++i) {
    if (name == kAxisNames[i]) return static_cast<ErrorAxis>(i);
  }
  throw SpecError("unknown error axis '" + std::string(name) +
                  "' (expected stokes, pump, detuning, duration or stark)");
}

void set_error(ErrorModel& err, ErrorAxis axis, double value) {
  switch (axis) {
    case ErrorAxis::kStokes: err.stokes_amp = value; break;
    case ErrorAxis::kPump: err.pump_amp = value; break;
    case ErrorAxis::kDetuning: err.detuning = value; break;
    case ErrorAxis::kDuration: err.duration = value; break;
    case ErrorAxis::kStark: err.stark = value; break;
  }
}

double AxisSpec::value(int i) const {
  if (i == count - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

void AxisSpec::validate() const {
  if (count < 2) throw SpecError("axis '" + std::string(to_string(axis)) + "': count must be >= 2");
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw SpecError("axis '" + std::string(to_string(axis)) + "': need finite min < max");
  }
}

void ScanConfig::validate() const {
  x.validate();
  y.validate();
  if (x.axis == y.axis) throw SpecError("scan axes must differ");
  if (!metric_f && !metric_pe && !metric_pf) throw SpecError("scan needs at least one metric");
  if (workers < 0) throw SpecError("workers must be >= 0");
  target.validate();
  propagation.validate();
}

FinalMetrics evaluate_point(const std::vector<SPPulsePair>& pairs, const ScanConfig& cfg,
                            double dx, double dy) {
  ErrorModel err = cfg.base_error;
  set_error(err, cfg.x.axis, dx);
  set_error(err, cfg.y.axis, dy);
  const ComplexMatrix u = propagate_sequence(pairs, err, cfg.propagation);
  return final_metrics(u, cfg.initial, cfg.target.ket());
}

ScanGrid run_scan(const std::vector<SPPulsePair>& pairs, const ScanConfig& cfg) {
  cfg.validate();
  ScanGrid grid;
  grid.x = cfg.x;
  grid.y = cfg.y;
  const std::size_t n = grid.size();
  if (cfg.metric_f) grid.fidelity.assign(n, 0.0);
  if (cfg.metric_pe) grid.p_e.assign(n, 0.0);
  if (cfg.metric_pf) grid.p_f.assign(n, 0.0);

  int workers = cfg.workers;
  if (workers == 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, cfg.x.count);

  std::mutex fail_mutex;
  std::size_t fail_index = std::numeric_limits<std::size_t>::max();
  std::string fail_message;

  auto work = [&](int row_begin, int row_end) {
    for (int i = row_begin; i < row_end; ++i) {
      for (int j = 0; j < cfg.y.count; ++j) {
        const std::size_t k = grid.index(i, j);
        const double dx = cfg.x.value(i);
        const double dy = cfg.y.value(j);
        try {
          const FinalMetrics m = evaluate_point(pairs, cfg, dx, dy);
          if (cfg.metric_f) grid.fidelity[k] = clamp01(m.fidelity);
          if (cfg.metric_pe) grid.p_e[k] = clamp01(m.p_e);
          if (cfg.metric_pf) grid.p_f[k] = clamp01(m.p_f);
        } catch (const std::exception& e) {
          std::lock_guard lock(fail_mutex);
          if (k < fail_index) {
            fail_index = k;
            fail_message = "scan point (dx=" + format_g12(dx) + ", dy=" + format_g12(dy) +
                           ") failed: " + e.what();
          }
          return;
        }
      }
    }
  };

  if (workers <= 1) {
    work(0, cfg.x.count);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      const int begin = cfg.x.count * w / workers;
      const int end = cfg.x.count * (w + 1) / workers;
      pool.emplace_back(work, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  if (!fail_message.empty()) throw Error(fail_message);
  return grid;
}

double fraction_above(const std::vector<double>& values, double threshold) {
  if (values.empty()) return 0.0;
  const auto c = std::count_if(values.begin(), values.end(), [&](double v) { return v > threshold; });
  return static_cast<double>(c) / static_cast<double>(values.size());
}

double fraction_below(const std::vector<double>& values, double threshold) {
  if (values.empty()) return 0.0;
  const auto c = std::count_if(values.begin(), values.end(), [&](double v) { return v < threshold; });
  return static_cast<double>(c) / static_cast<double>(values.size());
}

std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_scan_csv(std::ostream& out, const ScanGrid& grid, const CsvMetadata& meta) {
  write_metadata(out, "scan", meta);
  out << "# x_axis: " << axis_line(grid.x) << '\n';
  out << "# y_axis: " << axis_line(grid.y) << '\n';
  out << "dx,dy";
  if (!grid.fidelity.empty()) out << ",F";
  if (!grid.p_e.empty()) out << ",P_e";
  if (!grid.p_f.empty()) out << ",P_f";
  out << '\n';
  for (int i = 0; i < grid.x.count; ++i) {
    for (int j = 0; j < grid.y.count; ++j) {
      const std::size_t k = grid.index(i, j);
      out << format_g12(grid.x.value(i)) << ',' << format_g12(grid.y.value(j));
      if (!grid.fidelity.empty()) out << ',' << format_g12(grid.fidelity[k]);
      if (!grid.p_e.empty()) out << ',' << format_g12(grid.p_e[k]);
      if (!grid.p_f.empty()) out << ',' << format_g12(grid.p_f[k]);
      out << '\n';
    }
  }
}

ScanGrid read_scan_csv(std::istream& in, CsvMetadata* meta) {
  ScanGrid grid;
  bool have_x = false, have_y = false, have_header = false;
  std::vector<std::vector<double>*> columns;
  std::size_t row = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto value_of = [&](const char* key) -> std::optional<std::string> {
        const std::string prefix = std::string("# ") + key + ": ";
        if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
        return std::nullopt;
      };
      if (auto v = value_of("x_axis")) {
        grid.x = parse_axis(*v);
        have_x = true;
      } else if (auto v2 = value_of("y_axis")) {
        grid.y = parse_axis(*v2);
        have_y = true;
      } else if (meta) {
        if (auto s = value_of("version")) meta->version = *s;
        if (auto s = value_of("sequence_hash")) meta->sequence_hash = *s;
        if (auto s = value_of("seed")) meta->seed = std::strtoull(s->c_str(), nullptr, 10);
      }
      continue;
    }
    if (!have_header) {
      if (!have_x || !have_y) throw SpecError("scan csv: axis metadata missing");
      const auto names = split(line);
      if (names.size() < 3 || names[0] != "dx" || names[1] != "dy") {
        throw SpecError("scan csv: header must start with dx,dy");
      }
      for (std::size_t c = 2; c < names.size(); ++c) {
        std::vector<double>* col = nullptr;
        if (names[c] == "F") col = &grid.fidelity;
        else if (names[c] == "P_e") col = &grid.p_e;
        else if (names[c] == "P_f") col = &grid.p_f;
        else throw SpecError("scan csv: unknown column '" + names[c] + "'");
        col->assign(grid.size(), 0.0);
        columns.push_back(col);
      }
      have_header = true;
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != columns.size() + 2) throw SpecError("scan csv: wrong column count");
    if (row >= grid.size()) throw SpecError("scan csv: too many rows");
    const int i = static_cast<int>(row / static_cast<std::size_t>(grid.y.count));
    const int j = static_cast<int>(row % static_cast<std::size_t>(grid.y.count));
    if (cells[0] != format_g12(grid.x.value(i)) || cells[1] != format_g12(grid.y.value(j))) {
      throw SpecError("scan csv: row " + std::to_string(row) + " is out of grid order");
    }
    for (std::size_t c = 0; c < columns.size(); ++c) (*columns[c])[row] = parse_number(cells[c + 2]);
    ++row;
  }
  if (!have_header) throw SpecError("scan csv: header row missing");
  if (row != grid.size()) throw SpecError("scan csv: expected " + std::to_string(grid.size()) + " rows");
  return grid;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceSample>& samples, bool amplitudes,
                     const CsvMetadata& meta) {
  write_metadata(out, "trace", meta);
  out << "t,P_g,P_f,P_e";
  if (amplitudes) out << ",re_g,im_g,re_f,im_f,re_e,im_e";
  out << '\n';
  for (const TraceSample& s : samples) {
    out << format_g12(s.t) << ',' << format_g12(s.p_g) << ',' << format_g12(s.p_f) << ','
        << format_g12(s.p_e);
    if (amplitudes) {
      for (int k = 0; k < 3; ++k) {
        out << ',' << format_g12(s.psi[k].real()) << ',' << format_g12(s.psi[k].imag());
      }
    }
    out << '\n';
  }
}

void write_shape_csv(std::ostream& out, const SPPulsePair& pair, int points) {
  if (points < 2) throw DomainError("shape csv needs at least 2 points");
  pair.validate();
  const double T = pair.duration();
  out << "t,Omega_s,Omega_p\n";
  for (int k = 0; k < points; ++k) {
    const double t = (k == points - 1) ? T : T * k / (points - 1);
    const Couplings c = couplings(pair, ErrorModel::none(), t);
    out << format_g12(t) << ',' << format_g12(c.stokes) << ',' << format_g12(c.pump) << '\n';
  }
}

}  // namespace ctqd
