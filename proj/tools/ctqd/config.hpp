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

// Configuration documents of the command-line tool. Every subcommand reads
// one JSON object (docs/schemas/config.schema.json); command-line flags are
// merged into it before parsing, so a flag always wins over the file.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ctqd/designer.hpp"
#include "ctqd/scan.hpp"
#include "ctqd/sequence_io.hpp"

namespace ctqd::cli {

/// Reads `path` or returns an empty object for an empty path.
Json load_config(const std::string& path);

PropagationConfig propagation_from_json(const Json& j);
Json propagation_to_json(const PropagationConfig& cfg);

struct DesignJob {
  SPPulsePair pair;
  HierarchySpec hierarchy;
  DesignOptions options;
  PropagationConfig propagation;
};

/// {"pair": {...}, "hierarchy": {...}, "solver": {...}, "level2_method",
///  "align_target_phase", "propagation": {...}}. The solver seed is taken
/// from "solver.seed", replaced by CTQD_SEED when set; `seed_flag` wins
/// over both.
DesignJob design_job_from_json(const Json& j, std::optional<std::uint64_t> seed_flag);

/// A sequence plus where it came from.
struct LoadedSequence {
  Sequence sequence;
  std::optional<std::uint64_t> seed;
  std::optional<DesignReport> report;
};

/// Resolves the "sequence" key (file path or inline document) or the
/// "design" key (inline design job). Throws SpecError when neither is
/// present.
LoadedSequence resolve_sequence(const Json& cfg, std::optional<std::uint64_t> seed_flag);

/// Sequence document with a "designer" record of seed and version.
Json sequence_document(const LoadedSequence& seq);

/// "g", "f", "e" or [[re, im], [re, im], [re, im]].
StateVector state_from_json(const Json& j);

/// Scan settings from {"x": axis, "y": axis, "metrics": [...], "target",
/// "errors", "initial", "workers", "propagation"}.
ScanConfig scan_config_from_json(const Json& j);

/// Phase report printed by `ctqd design`.
std::string format_design_report(const Sequence& seq, const DesignReport& rep);

}  // namespace ctqd::cli
