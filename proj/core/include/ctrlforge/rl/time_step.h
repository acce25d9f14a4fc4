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

#ifndef CTRLFORGE_RL_TIME_STEP_H_
#define CTRLFORGE_RL_TIME_STEP_H_

#include <optional>
#include <string_view>

#include "ctrlforge/rl/array.h"

namespace ctrlforge::rl {

enum class StepType { kFirst, kMid, kLast };

std::string_view StepTypeName(StepType type);

// Reward and discount are absent on the first step of an episode.
struct TimeStep {
  StepType step_type = StepType::kFirst;
  std::optional<double> reward;
  std::optional<double> discount;
  Observation observation;

  bool first() const { return step_type == StepType::kFirst; }
  bool mid() const { return step_type == StepType::kMid; }
  bool last() const { return step_type == StepType::kLast; }

  bool operator==(const TimeStep&) const = default;
};

TimeStep Restart(Observation observation);
TimeStep Transition(double reward, Observation observation, double discount = 1.0);
TimeStep Termination(double reward, Observation observation);
TimeStep Truncation(double reward, Observation observation, double discount = 1.0);

}  // namespace ctrlforge::rl

#endif  // CTRLFORGE_RL_TIME_STEP_H_
