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

#include "ctrlforge/composer/task.h"

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/attr_value.h"

namespace ctrlforge::composer {

double Task::physics_timestep() {
  std::optional<mjcf::AttrValue> v = root_entity()->mjcf_model()->EffectiveOption("timestep");
  return v ? v->AsNumber() : 0.002;
}

void Task::BeforeStep(sim::Physics& physics, const Eigen::VectorXd& action,
                      RandomState& /*random_state*/) {
  if (action.size() != physics.data().ctrl.size()) {
    throw InvalidArgumentError("action has " + std::to_string(action.size()) +
                               " entries, the model has " +
                               std::to_string(physics.data().ctrl.size()) + " actuators");
  }
  physics.data().ctrl = action;
}

rl::ArraySpec Task::ActionSpec(const sim::Physics& physics) const {
  const auto& actuators = physics.model().actuators;
  const int n = static_cast<int>(actuators.size());
  std::vector<double> lo(n, -std::numeric_limits<double>::infinity());
  std::vector<double> hi(n, std::numeric_limits<double>::infinity());
  for (int i = 0; i < n; ++i) {
    if (actuators[i].ctrllimited) {
      lo[i] = actuators[i].ctrlrange[0];
      hi[i] = actuators[i].ctrlrange[1];
    }
  }
  return rl::ArraySpec({n}, rl::DType::kFloat64, lo, hi, "action");
}

}  // namespace ctrlforge::composer
