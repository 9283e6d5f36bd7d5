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

// JSON form of shapes, pairs, error models and sequences.
//
// Document layout (see docs/schemas/sequence.schema.json):
//   { "format": "ctqd-sequence", "version": 1,
//     "hierarchy": {...}, "characterization": {...}, "phases": {...},
//     "pairs": [ { "shape": {...}, "mixing_angle", "theta_s", "theta_p",
//                  "detuning", "duration", "provenance": {...} }, ... ] }

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ctqd/pulses.hpp"
#include "ctqd/sequence.hpp"

namespace ctqd {

using Json = nlohmann::json;

inline constexpr int kSequenceFormatVersion = 1;

Json shape_to_json(const PulseShape& shape);
/// Accepts {"kind": ..., "amplitude", "tau", "tau2", "duration"} with the
/// parameters the kind needs; "sampled" takes "samples": [[t, v], ...] or
/// "file": path. Throws SpecError naming the offending key.
PulseShape shape_from_json(const Json& j);

Json pair_to_json(const SPPulsePair& pair);
SPPulsePair pair_from_json(const Json& j);

Json error_model_to_json(const ErrorModel& err);
ErrorModel error_model_from_json(const Json& j);

Json target_to_json(const TargetState& t);
/// {"angle": a, "chi": c} or {"p_f": p, "chi": c}.
TargetState target_from_json(const Json& j);

Json hierarchy_to_json(const HierarchySpec& h);
HierarchySpec hierarchy_from_json(const Json& j);

Json sequence_to_json(const Sequence& seq);
/// Throws SpecError for malformed documents and for provenance records
/// that do not reproduce the stored phases.
Sequence sequence_from_json(const Json& j);

/// Reads a JSON file. Throws SpecError for I/O or parse failures.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// FNV-1a 64-bit hash of the compact JSON dump of the pairs, as 16 hex
/// digits. Identifies the simulated content of a sequence in CSV headers.
std::string sequence_hash(const std::vector<SPPulsePair>& pairs);

}  // namespace ctqd
