// Copyright 2026 The ctrlforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Mutation-site tracking for model elements.
//
// Tracking is off by default. It is switched on either programmatically or by
// setting CTRLFORGE_DEBUG=1 in the environment; the flag is sampled when a
// ModelRoot is created, so it must be set before the model is built.
// CTRLFORGE_DEBUG_DUMP_DIR=<dir> additionally writes the complete mutation
// log of every element to <dir> whenever compilation fails.

#ifndef CTRLFORGE_MJCF_PROVENANCE_H_
#define CTRLFORGE_MJCF_PROVENANCE_H_

#include <cstdint>
#include <optional>
#include <source_location>
#include <string>

namespace ctrlforge::mjcf {

inline constexpr char kDebugEnvVar[] = "CTRLFORGE_DEBUG";
inline constexpr char kDebugDumpDirEnvVar[] = "CTRLFORGE_DEBUG_DUMP_DIR";

struct ProvenanceRecord {
  std::string action;  // e.g. "created", "set size", "removed rgba"
  std::string file;
  std::uint32_t line = 0;
  std::string function;

  static ProvenanceRecord FromLocation(std::string action,
                                       const std::source_location& loc);
};

std::string ToString(const ProvenanceRecord& record);

bool DebugModeEnabled();
void SetDebugMode(bool enabled);

std::optional<std::string> DebugDumpDir();
void SetDebugDumpDir(std::optional<std::string> dir);

}  // namespace ctrlforge::mjcf

#endif  // CTRLFORGE_MJCF_PROVENANCE_H_
