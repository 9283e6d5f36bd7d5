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

#include "ctqd/sequence_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ctqd {

namespace {

template <typename T>
T get(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw SpecError(where + ": missing key '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SpecError(where + ": key '" + key + "' has the wrong type");
  }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get<T>(j, key, where);
}

void require_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw SpecError(where + ": expected a JSON object");
}

}  // namespace

Json shape_to_json(const PulseShape& s) {
  Json j;
  j["kind"] = std::string(to_string(s.kind));
  switch (s.kind) {
    case ShapeKind::kGaussian:
      j["amplitude"] = s.amplitude;
      j["tau"] = s.tau;
      break;
    case ShapeKind::kSinusoidal:
    case ShapeKind::kTriangle:
      j["amplitude"] = s.amplitude;
      j["tau"] = s.tau;
      j["duration"] = s.duration;
      break;
    case ShapeKind::kSawtooth:
      j["amplitude"] = s.amplitude;
      j["duration"] = s.duration;
      break;
    case ShapeKind::kTrapezoidal:
      j["amplitude"] = s.amplitude;
      j["tau"] = s.tau;
      j["tau2"] = s.tau2;
      j["duration"] = s.duration;
      break;
    case ShapeKind::kSampled: {
      j["amplitude"] = s.amplitude;
      Json knots = Json::array();
      for (const auto& [t, v] : *s.samples) knots.push_back({t, v});
      j["samples"] = std::move(knots);
      break;
    }
  }
  return j;
}

PulseShape shape_from_json(const Json& j) {
  const std::string where = "shape";
  require_object(j, where);
  const ShapeKind kind = shape_kind_from_string(get<std::string>(j, "kind", where));
  try {
    switch (kind) {
      case ShapeKind::kGaussian:
        return PulseShape::gaussian(get<double>(j, "amplitude", where), get<double>(j, "tau", where));
      case ShapeKind::kSinusoidal:
        return PulseShape::sinusoidal(get<double>(j, "amplitude", where),
                                      get<double>(j, "duration", where),
                                      get_or<double>(j, "tau", 0.0, where));
      case ShapeKind::kSawtooth:
        return PulseShape::sawtooth(get<double>(j, "amplitude", where),
                                    get<double>(j, "duration", where));
      case ShapeKind::kTriangle:
        return PulseShape::triangle(get<double>(j, "amplitude", where),
                                    get<double>(j, "tau", where), get<double>(j, "duration", where));
      case ShapeKind::kTrapezoidal:
        return PulseShape::trapezoidal(get<double>(j, "amplitude", where),
                                       get<double>(j, "tau", where), get<double>(j, "tau2", where),
                                       get<double>(j, "duration", where));
      case ShapeKind::kSampled: {
        PulseShape s;
        if (j.contains("file")) {
          s = load_sampled_csv(get<std::string>(j, "file", where));
        } else {
          const auto knots = get<std::vector<std::pair<double, double>>>(j, "samples", where);
          s = PulseShape::sampled(knots);
        }
        s.amplitude = get_or<double>(j, "amplitude", 1.0, where);
        s.validate();
        return s;
      }
    }
  } catch (const DomainError& e) {
    throw SpecError(where + ": " + e.what());
  }
  throw SpecError(where + ": unsupported kind");
}

Json pair_to_json(const SPPulsePair& p) {
  if (p.detuning_profile || p.pump_shape) {
    throw SpecError("pairs with a detuning profile or separate pump shape cannot be serialized");
  }
  Json j;
  j["shape"] = shape_to_json(p.shape);
  j["mixing_angle"] = p.mixing_angle;
  j["theta_s"] = p.theta_s;
  j["theta_p"] = p.theta_p;
  j["detuning"] = p.detuning;
  j["duration"] = p.duration();
  return j;
}

SPPulsePair pair_from_json(const Json& j) {
  const std::string where = "pair";
  require_object(j, where);
  SPPulsePair p;
  p.shape = shape_from_json(get<Json>(j, "shape", where));
  p.mixing_angle = get_or<double>(j, "mixing_angle", p.mixing_angle, where);
  p.theta_s = get_or<double>(j, "theta_s", 0.0, where);
  p.theta_p = get_or<double>(j, "theta_p", 0.0, where);
  p.detuning = get_or<double>(j, "detuning", 0.0, where);
  if (j.contains("duration")) {
    const double d = get<double>(j, "duration", where);
    if (std::abs(d - p.duration()) > 1e-12 * std::max(1.0, d)) {
      throw SpecError(where + ": 'duration' disagrees with the shape window");
    }
  }
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw SpecError(where + ": " + e.what());
  }
  return p;
}

Json error_model_to_json(const ErrorModel& e) {
  return Json{{"stokes_amp", e.stokes_amp},
              {"pump_amp", e.pump_amp},
              {"detuning", e.detuning},
              {"duration", e.duration},
              {"stark", e.stark}};
}

ErrorModel error_model_from_json(const Json& j) {
  const std::string where = "errors";
  require_object(j, where);
  ErrorModel e;
  e.stokes_amp = get_or<double>(j, "stokes_amp", 0.0, where);
  e.pump_amp = get_or<double>(j, "pump_amp", 0.0, where);
  e.detuning = get_or<double>(j, "detuning", 0.0, where);
  e.duration = get_or<double>(j, "duration", 0.0, where);
  e.stark = get_or<double>(j, "stark", 0.0, where);
  try {
    e.validate();
  } catch (const DomainError& ex) {
    throw SpecError(where + ": " + ex.what());
  }
  return e;
}

Json target_to_json(const TargetState& t) { return Json{{"angle", t.angle}, {"chi", t.chi}}; }

TargetState target_from_json(const Json& j) {
  const std::string where = "target";
  require_object(j, where);
  const double chi = get_or<double>(j, "chi", 0.0, where);
  if (j.contains("p_f")) {
    if (j.contains("angle")) {
      const double a = get<double>(j, "angle", where);
      const double p = get<double>(j, "p_f", where);
      if (std::abs(std::sin(a) * std::sin(a) - p) > 1e-9) {
        throw SpecError(where + ": 'p_f' and 'angle' disagree");
      }
    }
    try {
      return TargetState::from_population(get<double>(j, "p_f", where), chi);
    } catch (const DomainError& e) {
      throw SpecError(where + ": " + e.what());
    }
  }
  TargetState t;
  t.angle = get_or<double>(j, "angle", t.angle, where);
  t.chi = chi;
  return t;
}

Json hierarchy_to_json(const HierarchySpec& h) {
  return Json{{"n1", h.n1},
              {"n2", h.n2},
              {"n3", h.n3},
              {"level3", to_string(h.level3)},
              {"target", target_to_json(h.target)}};
}

HierarchySpec hierarchy_from_json(const Json& j) {
  const std::string where = "hierarchy";
  require_object(j, where);
  HierarchySpec h;
  h.n1 = get_or<int>(j, "n1", 2, where);
  h.n2 = get_or<int>(j, "n2", 1, where);
  h.n3 = get_or<int>(j, "n3", 1, where);
  h.level3 = level3_mode_from_string(
      get_or<std::string>(j, "level3", h.n3 > 1 ? "pc" : "none", where));
  if (j.contains("target")) h.target = target_from_json(j.at("target"));
  h.validate();
  return h;
}

Json sequence_to_json(const Sequence& seq) {
  Json j;
  j["format"] = "ctqd-sequence";
  j["version"] = kSequenceFormatVersion;
  j["hierarchy"] = hierarchy_to_json(seq.hierarchy);
  if (seq.characterization) {
    const auto& c = *seq.characterization;
    j["characterization"] = Json{{"r_re", c.r.real()},
                                 {"r_im", c.r.imag()},
                                 {"s", c.s},
                                 {"alpha", c.alpha},
                                 {"block_phase", c.block_phase}};
  }
  j["phases"] = Json{{"level1", seq.phases.level1},
                     {"level2", seq.phases.level2},
                     {"level3", seq.phases.level3}};
  Json pairs = Json::array();
  for (std::size_t i = 0; i < seq.pairs.size(); ++i) {
    Json pj = pair_to_json(seq.pairs[i]);
    if (i < seq.provenance.size()) {
      const PairProvenance& pv = seq.provenance[i];
      Json contrib = Json::array();
      for (const PhaseContribution& c : pv.contributions) {
        contrib.push_back(Json{{"level", c.level},
                               {"label", c.label},
                               {"design", c.design},
                               {"applied_s", c.applied_s},
                               {"applied_p", c.applied_p}});
      }
      pj["provenance"] = Json{{"base_theta_s", pv.base_theta_s},
                              {"base_theta_p", pv.base_theta_p},
                              {"theta_s_unreduced", pv.theta_s_unreduced},
                              {"theta_p_unreduced", pv.theta_p_unreduced},
                              {"contributions", std::move(contrib)}};
    }
    pairs.push_back(std::move(pj));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

Sequence sequence_from_json(const Json& j) {
  const std::string where = "sequence";
  require_object(j, where);
  const int version = get_or<int>(j, "version", kSequenceFormatVersion, where);
  if (version != kSequenceFormatVersion) {
    throw SpecError(where + ": unsupported version " + std::to_string(version));
  }
  Sequence seq;
  const bool has_hierarchy = j.contains("hierarchy");
  if (has_hierarchy) seq.hierarchy = hierarchy_from_json(j.at("hierarchy"));
  if (j.contains("characterization")) {
    const Json& c = j.at("characterization");
    PairCharacterization pc;
    pc.r = Complex(get<double>(c, "r_re", "characterization"), get<double>(c, "r_im", "characterization"));
    pc.s = get<double>(c, "s", "characterization");
    pc.alpha = get<double>(c, "alpha", "characterization");
    pc.block_phase = get_or<double>(c, "block_phase", 0.0, "characterization");
    seq.characterization = pc;
  }
  if (j.contains("phases")) {
    const Json& p = j.at("phases");
    seq.phases.level1 = get_or<double>(p, "level1", 0.0, "phases");
    seq.phases.level2 = get_or<std::vector<double>>(p, "level2", {0.0}, "phases");
    seq.phases.level3 = get_or<std::vector<double>>(p, "level3", {0.0}, "phases");
  }
  const Json pairs = get<Json>(j, "pairs", where);
  if (!pairs.is_array()) throw SpecError(where + ": 'pairs' must be an array");
  bool all_provenance = true;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string pw = "pairs[" + std::to_string(i) + "]";
    try {
      seq.pairs.push_back(pair_from_json(pairs[i]));
    } catch (const SpecError& e) {
      throw SpecError(pw + "." + e.what());
    }
    if (!pairs[i].contains("provenance")) {
      all_provenance = false;
      continue;
    }
    const Json& pv = pairs[i].at("provenance");
    PairProvenance p;
    p.base_theta_s = get<double>(pv, "base_theta_s", pw);
    p.base_theta_p = get<double>(pv, "base_theta_p", pw);
    p.theta_s_unreduced = get<double>(pv, "theta_s_unreduced", pw);
    p.theta_p_unreduced = get<double>(pv, "theta_p_unreduced", pw);
    for (const Json& c : get<Json>(pv, "contributions", pw)) {
      PhaseContribution pc;
      pc.level = get<int>(c, "level", pw);
      pc.label = get<std::string>(c, "label", pw);
      pc.design = get<double>(c, "design", pw);
      pc.applied_s = get<double>(c, "applied_s", pw);
      pc.applied_p = get<double>(c, "applied_p", pw);
      p.contributions.push_back(std::move(pc));
    }
    seq.provenance.push_back(std::move(p));
  }
  if (!all_provenance) {
    seq.provenance.clear();
  } else if (!seq.audit()) {
    throw SpecError(where + ": provenance does not reproduce the pair phases");
  }
  if (has_hierarchy && static_cast<int>(seq.pairs.size()) != seq.hierarchy.total_pairs()) {
    throw SpecError(where + ": pair count does not match the hierarchy");
  }
  return seq;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw Error("write to '" + path + "' failed");
}

std::string sequence_hash(const std::vector<SPPulsePair>& pairs) {
  Json arr = Json::array();
  for (const SPPulsePair& p : pairs) arr.push_back(pair_to_json(p));
  const std::string s = arr.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ctqd
