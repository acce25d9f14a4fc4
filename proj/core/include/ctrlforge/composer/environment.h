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

#ifndef CTRLFORGE_COMPOSER_ENVIRONMENT_H_
#define CTRLFORGE_COMPOSER_ENVIRONMENT_H_

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>

#include <Eigen/Core>

#include "ctrlforge/composer/observable.h"
#include "ctrlforge/composer/task.h"
#include "ctrlforge/rl/environment.h"
#include "ctrlforge/sim/physics.h"

namespace ctrlforge::composer {

struct EnvironmentOptions {
  // Episode length in seconds of simulated time.
  double time_limit = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  bool strip_singleton_obs_buffer_dim = true;
};

// Runs a Task. Reset: initialize_episode_mjcf (task, then entities
// depth-first), compile, initialize_episode, fresh observation buffers.
// Step: before_step, then per substep before_substep, physics step,
// after_substep and a buffer update (except after the last substep), then
// after_step, the final buffer update, and reward, discount and termination
// queries in that order.
//
// Exceptions thrown by callbacks are rethrown as CallbackError naming the
// callback and its owner. Termination ends the episode with the task's
// discount; reaching the time limit ends it as well.
class Environment : public rl::Environment {
 public:
  explicit Environment(std::shared_ptr<Task> task, EnvironmentOptions options = {});

  rl::TimeStep Reset() override;
  rl::TimeStep Step(const Eigen::VectorXd& action) override;

  rl::ArraySpec action_spec() const override { return action_spec_; }
  rl::ObservationSpec observation_spec() const override { return observation_spec_; }
  sim::Physics* physics() override { return &*physics_; }

  Task& task() { return *task_; }
  RandomState& random_state() { return random_state_; }
  double control_timestep() const { return control_timestep_; }
  int substeps_per_step() const { return substeps_; }
  // Source evaluations across all episodes.
  std::int64_t source_calls() const;

 private:
  void Compile();
  void MakeUpdater();
  template <typename TaskHook, typename EntityHook>
  void RunHooks(const char* callback, TaskHook&& task_hook, EntityHook&& entity_hook);

  std::shared_ptr<Task> task_;
  EnvironmentOptions options_;
  RandomState random_state_;
  std::optional<sim::Physics> physics_;
  std::optional<ObservationUpdater> updater_;
  std::int64_t retired_source_calls_ = 0;
  rl::ArraySpec action_spec_;
  rl::ObservationSpec observation_spec_;
  double control_timestep_ = 0;
  int substeps_ = 1;
  std::int64_t step_limit_ = std::numeric_limits<std::int64_t>::max();
  std::int64_t steps_ = 0;
  bool reset_next_step_ = true;
};

}  // namespace ctrlforge::composer

#endif  // CTRLFORGE_COMPOSER_ENVIRONMENT_H_
