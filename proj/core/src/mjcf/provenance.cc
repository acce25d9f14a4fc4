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

#include "ctrlforge/mjcf/provenance.h"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string_view>

namespace ctrlforge::mjcf {
namespace {

bool EnvFlag(const char* name) {
  const char* value = std::getenv(name);
  if (value == nullptr) return false;
  std::string_view v(value);
  return v == "1" || v == "true" || v == "TRUE" || v == "yes";
}

std::atomic<bool>& DebugFlag() {
  static std::atomic<bool> flag{EnvFlag(kDebugEnvVar)};
  return flag;
}

struct DumpDirState {
  std::mutex mu;
  std::optional<std::string> dir;
  DumpDirState() {
    if (const char* v = std::getenv(kDebugDumpDirEnvVar); v != nullptr && *v) {
      dir = std::string(v);
    }
  }
};

DumpDirState& DumpDir() {
  static DumpDirState state;
  return state;
}

}  // namespace

ProvenanceRecord ProvenanceRecord::FromLocation(std::string action,
                                                const std::source_location& loc) {
  return {std::move(action), loc.file_name(), loc.line(), loc.function_name()};
}

std::string ToString(const ProvenanceRecord& record) {
  std::string out = record.file + ":" + std::to_string(record.line);
  if (!record.function.empty()) out += " (" + record.function + ")";
  out += ": " + record.action;
  return out;
}

bool DebugModeEnabled() { return DebugFlag().load(); }

void SetDebugMode(bool enabled) { DebugFlag().store(enabled); }

std::optional<std::string> DebugDumpDir() {
  DumpDirState& state = DumpDir();
  std::lock_guard<std::mutex> lock(state.mu);
  return state.dir;
}

void SetDebugDumpDir(std::optional<std::string> dir) {
  DumpDirState& state = DumpDir();
  std::lock_guard<std::mutex> lock(state.mu);
  state.dir = std::move(dir);
}

}  // namespace ctrlforge::mjcf
