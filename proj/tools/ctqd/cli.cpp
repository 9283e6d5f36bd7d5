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

#include "ctqd/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctqd/config.hpp"
#include "ctqd/version.hpp"

namespace ctqd::cli {

namespace {

struct ErrorFlags {
  std::optional<double> stokes, pump, detuning, duration, stark;

  void add(CLI::App* app) {
    app->add_option("--stokes-error", stokes, "Fractional Stokes amplitude error");
    app->add_option("--pump-error", pump, "Fractional pump amplitude error");
    app->add_option("--detuning-error", detuning, "Fractional detuning error");
    app->add_option("--duration-error", duration, "Fractional duration error");
    app->add_option("--stark", stark, "Additive shift of |e> (units of Omega_0)");
  }
  void merge(Json& cfg) const {
    Json& e = cfg["errors"];
    if (!e.is_object()) e = Json::object();
    if (stokes) e["stokes_amp"] = *stokes;
    if (pump) e["pump_amp"] = *pump;
    if (detuning) e["detuning"] = *detuning;
    if (duration) e["duration"] = *duration;
    if (stark) e["stark"] = *stark;
  }
};

struct CommonFlags {
  std::string config;
  std::string sequence;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::optional<int> steps;

  void add(CLI::App* app, bool with_sequence) {
    app->add_option("config", config, "JSON configuration file");
    if (with_sequence) app->add_option("-s,--sequence", sequence, "Sequence JSON file");
    app->add_option("-o,--output", output, "Output file (default: standard output)");
    app->add_option("--seed", seed, "Solver seed (overrides CTQD_SEED and the file)");
    app->add_option("--steps", steps, "Integration steps per pulse pair");
  }
  Json load() const {
    Json cfg = load_config(config);
    if (!sequence.empty()) {
      cfg.erase("design");
      cfg["sequence"] = sequence;
    }
    if (steps) cfg["propagation"]["steps_per_pair"] = *steps;
    return cfg;
  }
};

// Writes through a file when a path is given, else to `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw Error("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }
  void close() {
    if (file_.is_open()) {
      file_.close();
      if (file_.fail()) throw Error("write failed");
    }
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

CsvMetadata metadata_for(const LoadedSequence& seq) {
  CsvMetadata m;
  m.sequence_hash = sequence_hash(seq.sequence.pairs);
  m.seed = seq.seed;
  m.version = kVersion;
  return m;
}

int cmd_design(const CommonFlags& common, const Json& overrides, std::ostream& out) {
  Json spec = load_config(common.config);
  if (spec.contains("design")) spec = spec.at("design");
  spec.merge_patch(overrides);
  if (common.steps) spec["propagation"]["steps_per_pair"] = *common.steps;
  const DesignJob job = design_job_from_json(spec, common.seed);
  LoadedSequence seq;
  DesignReport rep;
  seq.sequence = design_sequence(job.hierarchy, job.pair, job.options, job.propagation, &rep);
  seq.seed = job.options.solver.seed;
  seq.report = rep;
  out << format_design_report(seq.sequence, rep);
  const std::string path = common.output.empty() ? "sequence.json" : common.output;
  if (path == "-") {
    out << sequence_document(seq).dump(2) << '\n';
  } else {
    write_json_file(path, sequence_document(seq));
    out << "wrote " << path << '\n';
  }
  return kExitOk;
}

int cmd_simulate(const Json& cfg, const std::string& output, bool as_json,
                 std::optional<std::uint64_t> seed, std::ostream& out) {
  const LoadedSequence seq = resolve_sequence(cfg, seed);
  const ErrorModel err = cfg.contains("errors") ? error_model_from_json(cfg.at("errors")) : ErrorModel{};
  const TargetState target =
      cfg.contains("target") ? target_from_json(cfg.at("target")) : seq.sequence.hierarchy.target;
  const StateVector init = cfg.contains("initial") ? state_from_json(cfg.at("initial"))
                                                   : StateVector{1.0, 0.0, 0.0};
  const PropagationConfig prop =
      propagation_from_json(cfg.contains("propagation") ? cfg.at("propagation") : Json::object());
  const ComplexMatrix u = propagate_sequence(seq.sequence, err, prop);
  const FinalMetrics m = final_metrics(u, init, target.ket());
  Sink sink(output, out);
  if (as_json) {
    sink.get() << Json{{"fidelity", m.fidelity},
                       {"p_g", m.p_g},
                       {"p_f", m.p_f},
                       {"p_e", m.p_e},
                       {"pairs", seq.sequence.pairs.size()},
                       {"errors", error_model_to_json(err)},
                       {"sequence_hash", sequence_hash(seq.sequence.pairs)}}
                      .dump(2)
               << '\n';
  } else {
    sink.get() << "pairs " << seq.sequence.pairs.size() << "\n"
               << "F   " << format_g12(m.fidelity) << "\n"
               << "P_g " << format_g12(m.p_g) << "\n"
               << "P_f " << format_g12(m.p_f) << "\n"
               << "P_e " << format_g12(m.p_e) << "\n";
  }
  sink.close();
  return kExitOk;
}

int cmd_scan(const Json& cfg, const std::string& output, std::optional<std::uint64_t> seed,
             std::ostream& out) {
  const LoadedSequence seq = resolve_sequence(cfg, seed);
  Json scan_json = cfg;
  if (!scan_json.contains("target")) scan_json["target"] = target_to_json(seq.sequence.hierarchy.target);
  const ScanConfig sc = scan_config_from_json(scan_json);
  const ScanGrid grid = run_scan(seq.sequence.pairs, sc);
  Sink sink(output, out);
  write_scan_csv(sink.get(), grid, metadata_for(seq));
  sink.close();
  return kExitOk;
}

int cmd_trace(const Json& cfg, const std::string& output, bool amplitudes,
              std::optional<std::uint64_t> seed, std::ostream& out) {
  const LoadedSequence seq = resolve_sequence(cfg, seed);
  const ErrorModel err = cfg.contains("errors") ? error_model_from_json(cfg.at("errors")) : ErrorModel{};
  const StateVector init = cfg.contains("initial") ? state_from_json(cfg.at("initial"))
                                                   : StateVector{1.0, 0.0, 0.0};
  const PropagationConfig prop =
      propagation_from_json(cfg.contains("propagation") ? cfg.at("propagation") : Json::object());
  const auto samples = trace_populations(seq.sequence.pairs, err, init, prop);
  Sink sink(output, out);
  write_trace_csv(sink.get(), samples, amplitudes || cfg.value("amplitudes", false), metadata_for(seq));
  sink.close();
  return kExitOk;
}

int cmd_shapes(const Json& cfg, int points, const std::string& output, std::ostream& out) {
  if (!cfg.contains("pair")) throw SpecError("shapes: need a pair (config 'pair' or --kind)");
  const SPPulsePair pair = pair_from_json(cfg.at("pair"));
  Sink sink(output, out);
  write_shape_csv(sink.get(), pair, points);
  sink.close();
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Design and simulate phase-shifted STIRAP pulse sequences in a three-level system",
               "ctqd"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // design
  CommonFlags design_flags;
  std::optional<int> n2, n3;
  std::optional<std::string> level3;
  std::optional<double> p_f, chi;
  CLI::App* design = app.add_subcommand("design", "Design a phase sequence from a spec file");
  design_flags.add(design, false);
  design->add_option("--n2", n2, "Units per block");
  design->add_option("--n3", n3, "Blocks");
  design->add_option("--level3", level3, "none, pc or fc");
  design->add_option("--p-f", p_f, "Target population of |f>");
  design->add_option("--chi", chi, "Target relative phase");

  // simulate
  CommonFlags sim_flags;
  ErrorFlags sim_errors;
  bool sim_json = false;
  CLI::App* simulate = app.add_subcommand("simulate", "Final-state metrics of a sequence");
  sim_flags.add(simulate, true);
  sim_errors.add(simulate);
  simulate->add_flag("--json", sim_json, "Print metrics as JSON");

  // scan
  CommonFlags scan_flags;
  ErrorFlags scan_errors;
  std::optional<std::string> x_axis, y_axis, metrics;
  std::optional<double> x_min, x_max, y_min, y_max;
  std::optional<int> x_count, y_count, workers;
  CLI::App* scan = app.add_subcommand("scan", "Two-dimensional error scan to CSV");
  scan_flags.add(scan, true);
  scan_errors.add(scan);
  scan->add_option("--x-axis", x_axis, "stokes, pump, detuning, duration or stark");
  scan->add_option("--x-min", x_min);
  scan->add_option("--x-max", x_max);
  scan->add_option("--x-count", x_count);
  scan->add_option("--y-axis", y_axis, "stokes, pump, detuning, duration or stark");
  scan->add_option("--y-min", y_min);
  scan->add_option("--y-max", y_max);
  scan->add_option("--y-count", y_count);
  scan->add_option("--metrics", metrics, "Comma-separated subset of F,P_e,P_f");
  scan->add_option("--workers", workers, "Worker threads (0: all cores)");

  // trace
  CommonFlags trace_flags;
  ErrorFlags trace_errors;
  bool amplitudes = false;
  std::optional<int> stride;
  CLI::App* trace = app.add_subcommand("trace", "Population trace to CSV");
  trace_flags.add(trace, true);
  trace_errors.add(trace);
  trace->add_flag("--amplitudes", amplitudes, "Add Re/Im amplitude columns");
  trace->add_option("--stride", stride, "Steps between samples");

  // shapes
  std::string shapes_config, shapes_output, kind, file;
  std::optional<double> amplitude, tau, tau2, duration, mixing_angle;
  int points = 1000;
  CLI::App* shapes = app.add_subcommand("shapes", "Sample a pulse pair envelope to CSV");
  shapes->add_option("config", shapes_config, "JSON file with a 'pair' object");
  shapes->add_option("-o,--output", shapes_output, "Output file (default: standard output)");
  shapes->add_option("--kind", kind, "gaussian, sinusoidal, sawtooth, triangle, trapezoidal, sampled");
  shapes->add_option("--amplitude", amplitude);
  shapes->add_option("--tau", tau);
  shapes->add_option("--tau2", tau2);
  shapes->add_option("--duration", duration);
  shapes->add_option("--file", file, "Two-column CSV for kind 'sampled'");
  shapes->add_option("--mixing-angle", mixing_angle);
  shapes->add_option("--points", points)->check(CLI::Range(2, 10000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ctqd: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (design->parsed()) {
      if (design_flags.config.empty()) throw SpecError("design: a spec file is required");
      Json overrides = Json::object();
      if (n2) overrides["hierarchy"]["n2"] = *n2;
      if (n3) overrides["hierarchy"]["n3"] = *n3;
      if (level3) overrides["hierarchy"]["level3"] = *level3;
      if (p_f) {
        overrides["hierarchy"]["target"]["p_f"] = *p_f;
        overrides["hierarchy"]["target"]["angle"] = nullptr;
      }
      if (chi) overrides["hierarchy"]["target"]["chi"] = *chi;
      return cmd_design(design_flags, overrides, out);
    }
    if (simulate->parsed()) {
      Json cfg = sim_flags.load();
      sim_errors.merge(cfg);
      return cmd_simulate(cfg, sim_flags.output, sim_json, sim_flags.seed, out);
    }
    if (scan->parsed()) {
      Json cfg = scan_flags.load();
      scan_errors.merge(cfg);
      auto set_axis = [&](const char* key, const std::optional<std::string>& name,
                          const std::optional<double>& lo, const std::optional<double>& hi,
                          const std::optional<int>& count) {
        if (name) cfg[key]["axis"] = *name;
        if (lo) cfg[key]["min"] = *lo;
        if (hi) cfg[key]["max"] = *hi;
        if (count) cfg[key]["count"] = *count;
      };
      set_axis("x", x_axis, x_min, x_max, x_count);
      set_axis("y", y_axis, y_min, y_max, y_count);
      if (metrics) {
        Json list = Json::array();
        std::stringstream ss(*metrics);
        std::string m;
        while (std::getline(ss, m, ',')) list.push_back(m);
        cfg["metrics"] = list;
      }
      if (workers) cfg["workers"] = *workers;
      return cmd_scan(cfg, scan_flags.output, scan_flags.seed, out);
    }
    if (trace->parsed()) {
      Json cfg = trace_flags.load();
      trace_errors.merge(cfg);
      if (stride) cfg["propagation"]["sample_stride"] = *stride;
      return cmd_trace(cfg, trace_flags.output, amplitudes, trace_flags.seed, out);
    }
    if (shapes->parsed()) {
      Json cfg = load_config(shapes_config);
      Json& pair = cfg["pair"];
      if (!pair.is_object()) pair = Json::object();
      Json& shape = pair["shape"];
      if (!shape.is_object()) shape = Json::object();
      if (!kind.empty()) shape["kind"] = kind;
      if (amplitude) shape["amplitude"] = *amplitude;
      if (tau) shape["tau"] = *tau;
      if (tau2) shape["tau2"] = *tau2;
      if (duration) shape["duration"] = *duration;
      if (!file.empty()) shape["file"] = file;
      if (mixing_angle) pair["mixing_angle"] = *mixing_angle;
      if (!shape.contains("kind")) throw SpecError("shapes: need --kind or a config 'pair'");
      return cmd_shapes(cfg, points, shapes_output, out);
    }
  } catch (const SpecError& e) {
    err << "ctqd: config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NoSolution& e) {
    err << "ctqd: " << e.what() << "\n  best-found objective " << e.objective() << " at [";
    for (std::size_t k = 0; k < e.best().size(); ++k) err << (k ? ", " : "") << e.best()[k];
    err << "]\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "ctqd: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace ctqd::cli
