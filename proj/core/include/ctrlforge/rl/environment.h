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

#ifndef CTRLFORGE_RL_ENVIRONMENT_H_
#define CTRLFORGE_RL_ENVIRONMENT_H_

#include <Eigen/Core>

#include "ctrlforge/rl/array.h"
#include "ctrlforge/rl/time_step.h"

namespace ctrlforge::sim {
class Physics;
}  // namespace ctrlforge::sim

namespace ctrlforge::rl {

// Agent-facing episodic environment. Step() after a LAST time step (or
// before the first Reset()) starts a new episode and returns FIRST.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual TimeStep Reset() = 0;
  // Throws SpecError if `action` violates action_spec().
  virtual TimeStep Step(const Eigen::VectorXd& action) = 0;

  virtual ArraySpec action_spec() const = 0;
  virtual ObservationSpec observation_spec() const = 0;

  // Simulation backing the environment, if any.
  virtual sim::Physics* physics() { return nullptr; }
};

}  // namespace ctrlforge::rl

#endif  // CTRLFORGE_RL_ENVIRONMENT_H_
