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

#include "ctqd/config.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ctqd/models.hpp"
#include "ctqd/version.hpp"

namespace ctqd::cli {

namespace {

template <typename T>
T value_or(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SpecError(std::string("config: key '") + key + "' has the wrong type");
  }
}

const Json& object_at(const Json& j, const char* key) {
  static const Json empty = Json::object();
  if (!j.is_object() || !j.contains(key)) return empty;
  const Json& v = j.at(key);
  if (!v.is_object()) throw SpecError(std::string("config: '") + key + "' must be an object");
  return v;
}

Level2Method level2_method_from_string(const std::string& s) {
  if (s == "auto") return Level2Method::kAuto;
  if (s == "pow2") return Level2Method::kPow2;
  if (s == "three") return Level2Method::kThree;
  if (s == "numeric") return Level2Method::kNumeric;
  throw SpecError("config: level2_method must be auto, pow2, three or numeric");
}

AxisSpec axis_from_json(const Json& j, AxisSpec fallback, const char* name) {
  if (!j.is_object()) throw SpecError(std::string("config: '") + name + "' must be an object");
  AxisSpec a = fallback;
  if (j.contains("axis")) a.axis = error_axis_from_string(value_or<std::string>(j, "axis", ""));
  a.min = value_or<double>(j, "min", a.min);
  a.max = value_or<double>(j, "max", a.max);
  a.count = value_or<int>(j, "count", a.count);
  a.validate();
  return a;
}

std::string fmt4(double v) {
  if (std::abs(v) < 5e-5) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string primes(int level) { return std::string(static_cast<std::size_t>(level - 1), '\''); }

}  // namespace

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  Json j = read_json_file(path);
  if (!j.is_object()) throw SpecError(path + ": top level must be a JSON object");
  return j;
}

PropagationConfig propagation_from_json(const Json& j) {
  PropagationConfig cfg;
  cfg.steps_per_pair = value_or<int>(j, "steps_per_pair", cfg.steps_per_pair);
  cfg.sample_stride = value_or<int>(j, "sample_stride", cfg.sample_stride);
  const std::string integ = value_or<std::string>(j, "integrator", "magnus4");
  if (integ == "magnus4") {
    cfg.integrator = Integrator::kMagnus4;
  } else if (integ == "midpoint") {
    cfg.integrator = Integrator::kMidpoint;
  } else {
    throw SpecError("config: integrator must be magnus4 or midpoint");
  }
  cfg.convergence_guard = value_or<bool>(j, "convergence_guard", cfg.convergence_guard);
  cfg.guard_tol = value_or<double>(j, "guard_tol", cfg.guard_tol);
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw SpecError(std::string("config: propagation: ") + e.what());
  }
  return cfg;
}

Json propagation_to_json(const PropagationConfig& cfg) {
  return Json{{"steps_per_pair", cfg.steps_per_pair},
              {"sample_stride", cfg.sample_stride},
              {"integrator", cfg.integrator == Integrator::kMagnus4 ? "magnus4" : "midpoint"},
              {"convergence_guard", cfg.convergence_guard},
              {"guard_tol", cfg.guard_tol}};
}

DesignJob design_job_from_json(const Json& j, std::optional<std::uint64_t> seed_flag) {
  if (!j.is_object()) throw SpecError("design: spec must be a JSON object");
  if (!j.contains("pair")) throw SpecError("design: missing key 'pair'");
  DesignJob job;
  job.pair = pair_from_json(j.at("pair"));
  job.hierarchy = hierarchy_from_json(object_at(j, "hierarchy"));
  const Json& solver = object_at(j, "solver");
  job.options.solver.seed = seed_from_env(value_or<std::uint64_t>(solver, "seed", 42));
  if (seed_flag) job.options.solver.seed = *seed_flag;
  job.options.solver.restarts = value_or<int>(solver, "restarts", job.options.solver.restarts);
  job.options.solver.workers = value_or<int>(solver, "workers", job.options.solver.workers);
  if (job.options.solver.restarts < 1) throw SpecError("design: solver.restarts must be >= 1");
  job.options.level2 = level2_method_from_string(value_or<std::string>(j, "level2_method", "auto"));
  job.options.align_target_phase = value_or<bool>(j, "align_target_phase", true);
  job.propagation = propagation_from_json(object_at(j, "propagation"));
  return job;
}

LoadedSequence resolve_sequence(const Json& cfg, std::optional<std::uint64_t> seed_flag) {
  LoadedSequence out;
  if (cfg.contains("sequence")) {
    const Json& s = cfg.at("sequence");
    Json doc;
    if (s.is_string()) {
      doc = read_json_file(s.get<std::string>());
    } else if (s.is_object()) {
      doc = s;
    } else {
      throw SpecError("config: 'sequence' must be a path or an object");
    }
    out.sequence = sequence_from_json(doc);
    if (doc.contains("designer") && doc.at("designer").contains("seed")) {
      out.seed = value_or<std::uint64_t>(doc.at("designer"), "seed", 0);
    }
    return out;
  }
  if (cfg.contains("design")) {
    const DesignJob job = design_job_from_json(cfg.at("design"), seed_flag);
    DesignReport rep;
    out.sequence = design_sequence(job.hierarchy, job.pair, job.options, job.propagation, &rep);
    out.seed = job.options.solver.seed;
    out.report = rep;
    return out;
  }
  throw SpecError("config: need 'sequence' (path or document) or 'design'");
}

Json sequence_document(const LoadedSequence& seq) {
  Json j = sequence_to_json(seq.sequence);
  Json d{{"version", kVersion}};
  if (seq.seed) d["seed"] = *seq.seed;
  if (seq.report) {
    d["level2_method"] = seq.report->level2_method;
    d["level3_method"] = seq.report->level3_method;
    d["beta"] = seq.report->beta;
    d["alignment_shift"] = seq.report->alignment_shift;
  }
  j["designer"] = std::move(d);
  return j;
}

StateVector state_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "g") return StateVector{1.0, 0.0, 0.0};
    if (s == "f") return StateVector{0.0, 1.0, 0.0};
    if (s == "e") return StateVector{0.0, 0.0, 1.0};
    throw SpecError("config: initial state must be g, f, e or amplitudes");
  }
  if (!j.is_array() || j.size() != 3) throw SpecError("config: initial state needs 3 amplitudes");
  std::vector<Complex> a;
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 2) throw SpecError("config: amplitude must be [re, im]");
    a.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  StateVector v{a[0], a[1], a[2]};
  if (std::abs(v.norm() - 1.0) > 1e-9) throw SpecError("config: initial state is not normalized");
  return v;
}

ScanConfig scan_config_from_json(const Json& j) {
  ScanConfig cfg;
  if (j.contains("x")) cfg.x = axis_from_json(j.at("x"), cfg.x, "x");
  if (j.contains("y")) cfg.y = axis_from_json(j.at("y"), cfg.y, "y");
  if (j.contains("metrics")) {
    const Json& m = j.at("metrics");
    if (!m.is_array()) throw SpecError("config: 'metrics' must be an array");
    cfg.metric_f = cfg.metric_pe = cfg.metric_pf = false;
    for (const Json& e : m) {
      const std::string name = e.is_string() ? e.get<std::string>() : "";
      if (name == "F") cfg.metric_f = true;
      else if (name == "P_e") cfg.metric_pe = true;
      else if (name == "P_f") cfg.metric_pf = true;
      else throw SpecError("config: metric must be F, P_e or P_f");
    }
  }
  if (j.contains("target")) cfg.target = target_from_json(j.at("target"));
  if (j.contains("errors")) cfg.base_error = error_model_from_json(j.at("errors"));
  if (j.contains("initial")) cfg.initial = state_from_json(j.at("initial"));
  cfg.workers = value_or<int>(j, "workers", cfg.workers);
  cfg.propagation = propagation_from_json(object_at(j, "propagation"));
  cfg.validate();
  return cfg;
}

std::string format_design_report(const Sequence& seq, const DesignReport& rep) {
  std::ostringstream os;
  const HierarchySpec& h = seq.hierarchy;
  os << "sequence R(" << h.n1 * h.n2 << "," << h.n3 << ")  pairs " << seq.pairs.size()
     << "  level 3 " << to_string(h.level3) << "  target P_f " << fmt4(h.target.population())
     << " chi " << fmt4(h.target.chi) << "\n";
  if (seq.characterization) {
    const PairCharacterization& c = *seq.characterization;
    os << "pair: alpha = " << fmt4(c.alpha) << "  |r| = " << fmt4(std::abs(c.r))
       << "  s = " << fmt4(c.s) << "  gamma = " << fmt4(c.block_phase) << "\n";
  }
  os << "level 1: theta_21 = pi - 2 alpha = " << fmt4(seq.phases.level1) << "\n";
  auto print_level = [&](int level, const std::string& method, const std::vector<double>& cum) {
    os << "level " << level << " [" << (method.empty() ? "none" : method) << "]:";
    const std::vector<double> d = phase_differences(cum);
    if (d.empty()) os << " (single unit)";
    for (std::size_t k = 0; k < d.size(); ++k) {
      os << "  theta" << primes(level) << "_" << k + 2 << k + 1 << " = " << fmt4(reduce_phase(d[k]));
    }
    os << "\n";
  };
  print_level(2, rep.level2_method, seq.phases.level2);
  print_level(3, rep.level3_method, seq.phases.level3);
  if (h.n3 > 1) os << "block rotation beta = " << fmt4(rep.beta) << "\n";
  if (rep.alignment_shift != 0.0) os << "target phase alignment: theta_s += " << fmt4(rep.alignment_shift) << "\n";
  os << "stepped phases (pair: theta_s theta_p):\n";
  for (std::size_t i = 0; i < seq.pairs.size(); ++i) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "  %3zu  %8.4f  %8.4f\n", i + 1, seq.pairs[i].theta_s,
                  seq.pairs[i].theta_p);
    os << buf;
  }
  return os.str();
}

}  // namespace ctqd::cli
