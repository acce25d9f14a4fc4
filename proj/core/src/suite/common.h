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

// Internal helpers shared by the domain implementations.

#ifndef CTRLFORGE_SRC_SUITE_COMMON_H_
#define CTRLFORGE_SRC_SUITE_COMMON_H_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "ctrlforge/suite/base.h"
#include "ctrlforge/suite/suite.h"

namespace ctrlforge::suite::internal {

// Physics step and control step of the mechanical domains.
inline constexpr double kTimestep = 0.002;
inline constexpr double kControlTimestep = 0.02;
inline constexpr double kTimeLimit = 20;

// <asset> block with the grid texture and the self, effector, decoration
// and target materials.
std::string CommonAssets();

// Reads task_kwargs; throws InvalidArgumentError for unknown keys or values
// out of range.
class Kwargs {
 public:
  explicit Kwargs(const std::map<std::string, double>& values) : values_(values) {}
  int GetInt(const std::string& key, int fallback, int min_value, int max_value);
  // Throws if a key was never read.
  void CheckAllUsed() const;

 private:
  const std::map<std::string, double>& values_;
  std::set<std::string> used_;
};

std::unique_ptr<Environment> MakeEnvironment(const std::string& xml, std::unique_ptr<Task> task,
                                             const LoadOptions& options,
                                             double control_timestep, double time_limit);

std::unique_ptr<Environment> LoadPendulum(std::string_view task, const LoadOptions& options);
std::unique_ptr<Environment> LoadAcrobot(std::string_view task, const LoadOptions& options);
std::unique_ptr<Environment> LoadCartpole(std::string_view task, const LoadOptions& options);
std::unique_ptr<Environment> LoadPointMass(std::string_view task, const LoadOptions& options);
std::unique_ptr<Environment> LoadReacher(std::string_view task, const LoadOptions& options);
std::unique_ptr<Environment> LoadSwimmer(std::string_view task, const LoadOptions& options);
std::unique_ptr<Environment> LoadLqr(std::string_view task, const LoadOptions& options);

}  // namespace ctrlforge::suite::internal

#endif  // CTRLFORGE_SRC_SUITE_COMMON_H_
