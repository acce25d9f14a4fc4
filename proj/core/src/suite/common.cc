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

#include "suite/common.h"

#include <cmath>
#include <utility>

#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/attr_value.h"

namespace ctrlforge::suite::internal {

std::string CommonAssets() {
  return R"(
  <asset>
    <texture name="grid" type="2d" builtin="checker" rgb1=".1 .2 .3" rgb2=".2 .3 .4"
             width="300" height="300"/>
    <material name="grid" texture="grid" texrepeat="8 8"/>
    <material name="self" rgba=".7 .5 .3 1"/>
    <material name="effector" rgba=".7 .4 .2 1"/>
    <material name="decoration" rgba=".3 .5 .7 1"/>
    <material name="target" rgba=".6 .3 .3 1"/>
  </asset>
)";
}

int Kwargs::GetInt(const std::string& key, int fallback, int min_value, int max_value) {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  used_.insert(key);
  const double v = it->second;
  if (v != std::floor(v) || v < min_value || v > max_value) {
    throw InvalidArgumentError("task argument '" + key + "' must be an integer in [" +
                               std::to_string(min_value) + ", " + std::to_string(max_value) +
                               "], got " + mjcf::FormatNumber(v));
  }
  return static_cast<int>(v);
}

void Kwargs::CheckAllUsed() const {
  for (const auto& [key, value] : values_) {
    if (!used_.count(key)) throw InvalidArgumentError("unknown task argument '" + key + "'");
  }
}

std::unique_ptr<Environment> MakeEnvironment(const std::string& xml, std::unique_ptr<Task> task,
                                             const LoadOptions& options,
                                             double control_timestep, double time_limit) {
  EnvironmentOptions env;
  env.control_timestep = control_timestep;
  env.time_limit = options.time_limit.value_or(time_limit);
  env.seed = options.seed;
  env.visualize_reward = options.visualize_reward;
  return std::make_unique<Environment>(sim::Physics::FromXmlString(xml), std::move(task), env);
}

}  // namespace ctrlforge::suite::internal
