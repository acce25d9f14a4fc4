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

#include "ctrlforge/rl/time_step.h"

namespace ctrlforge::rl {

std::string_view StepTypeName(StepType type) {
  switch (type) {
    case StepType::kFirst: return "FIRST";
    case StepType::kMid: return "MID";
    case StepType::kLast: return "LAST";
  }
  return "?";
}

TimeStep Restart(Observation observation) {
  return {StepType::kFirst, std::nullopt, std::nullopt, std::move(observation)};
}

TimeStep Transition(double reward, Observation observation, double discount) {
  return {StepType::kMid, reward, discount, std::move(observation)};
}

TimeStep Termination(double reward, Observation observation) {
  return {StepType::kLast, reward, 0.0, std::move(observation)};
}

TimeStep Truncation(double reward, Observation observation, double discount) {
  return {StepType::kLast, reward, discount, std::move(observation)};
}

}  // namespace ctrlforge::rl
