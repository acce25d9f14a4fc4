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

#ifndef CTRLFORGE_COMPOSER_TASK_H_
#define CTRLFORGE_COMPOSER_TASK_H_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ctrlforge/composer/entity.h"
#include "ctrlforge/composer/observable.h"
#include "ctrlforge/rl/array.h"
#include "ctrlforge/sim/physics.h"

namespace ctrlforge::composer {

// A task owns the root entity (the arena) and defines rewards. Callbacks
// run before the corresponding callbacks of the entities.
class Task {
 public:
  virtual ~Task() = default;

  virtual std::shared_ptr<Entity> root_entity() = 0;
  // Observables that are not tied to one entity; keys are used verbatim.
  virtual std::vector<std::pair<std::string, ObservablePtr>> task_observables() { return {}; }

  // Defaults to the physics timestep. Must be an integer multiple of it.
  double control_timestep() const { return control_timestep_; }
  void set_control_timestep(double dt) { control_timestep_ = dt; }
  // Effective <option> timestep of the root model.
  double physics_timestep();

  virtual void InitializeEpisodeMjcf(RandomState& /*random_state*/) {}
  virtual void InitializeEpisode(sim::Physics& /*physics*/, RandomState& /*random_state*/) {}
  // Default: writes the action into the control vector.
  virtual void BeforeStep(sim::Physics& physics, const Eigen::VectorXd& action,
                          RandomState& random_state);
  virtual void BeforeSubstep(sim::Physics& /*physics*/, const Eigen::VectorXd& /*action*/,
                             RandomState& /*random_state*/) {}
  virtual void AfterSubstep(sim::Physics& /*physics*/, RandomState& /*random_state*/) {}
  virtual void AfterStep(sim::Physics& /*physics*/, RandomState& /*random_state*/) {}

  virtual double GetReward(sim::Physics& physics) = 0;
  virtual double GetDiscount(sim::Physics& /*physics*/) { return 1.0; }
  virtual bool ShouldTerminateEpisode(sim::Physics& /*physics*/) { return false; }

  // One entry per actuator, bounded by ctrlrange where control is limited.
  virtual rl::ArraySpec ActionSpec(const sim::Physics& physics) const;

 private:
  double control_timestep_ = 0;
};

}  // namespace ctrlforge::composer

#endif  // CTRLFORGE_COMPOSER_TASK_H_
