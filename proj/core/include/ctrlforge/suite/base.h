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

// Shared machinery for benchmark tasks: the task interface, the
// fixed-substep environment loop and small physics helpers.

#ifndef CTRLFORGE_SUITE_BASE_H_
#define CTRLFORGE_SUITE_BASE_H_

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "ctrlforge/rl/array.h"
#include "ctrlforge/rl/environment.h"
#include "ctrlforge/sim/physics.h"

namespace ctrlforge::suite {

using RandomState = std::mt19937_64;

class Task {
 public:
  virtual ~Task() = default;

  // Sets the initial state; runs inside Physics::ResetContext.
  virtual void InitializeEpisode(sim::Physics& physics, RandomState& random_state) = 0;
  // Default: writes the action into the control vector.
  virtual void BeforeStep(const Eigen::VectorXd& action, sim::Physics& physics);
  // Default: physics.Step(substeps).
  virtual void Advance(sim::Physics& physics, int substeps);
  virtual void AfterStep(sim::Physics& /*physics*/) {}

  virtual rl::Observation GetObservation(sim::Physics& physics) = 0;
  virtual double GetReward(sim::Physics& physics) = 0;
  // Discount of a terminal state, or nullopt to continue.
  virtual std::optional<double> GetTermination(sim::Physics& /*physics*/) {
    return std::nullopt;
  }

  // One entry per actuator, bounded by ctrlrange where control is limited.
  virtual rl::ArraySpec ActionSpec(const sim::Physics& physics) const;
};

struct EnvironmentOptions {
  double time_limit = std::numeric_limits<double>::infinity();
  // 0: one physics step per control step.
  double control_timestep = 0;
  std::uint64_t seed = 0;
  // Scales the brightness of the "self" and "effector" materials with the
  // current reward.
  bool visualize_reward = false;
};

class Environment : public rl::Environment {
 public:
  Environment(sim::Physics physics, std::unique_ptr<Task> task, EnvironmentOptions options = {});

  rl::TimeStep Reset() override;
  rl::TimeStep Step(const Eigen::VectorXd& action) override;
  rl::ArraySpec action_spec() const override { return action_spec_; }
  rl::ObservationSpec observation_spec() const override { return observation_spec_; }
  sim::Physics* physics() override { return &physics_; }

  Task& task() { return *task_; }
  int substeps() const { return substeps_; }
  double control_timestep() const { return substeps_ * physics_.timestep(); }
  // Control steps per episode; max() without a time limit.
  std::int64_t step_limit() const { return step_limit_; }
  RandomState& random_state() { return random_state_; }

 private:
  void VisualizeReward(double reward);

  sim::Physics physics_;
  std::unique_ptr<Task> task_;
  EnvironmentOptions options_;
  RandomState random_state_;
  rl::ArraySpec action_spec_;
  rl::ObservationSpec observation_spec_;
  int substeps_ = 1;
  std::int64_t step_limit_ = std::numeric_limits<std::int64_t>::max();
  std::int64_t steps_ = 0;
  bool reset_next_step_ = true;
  // Material id and default color of reward-visualized materials.
  std::vector<std::pair<int, Eigen::Vector4d>> reward_materials_;
  // (geom, material) pairs whose color follows the material.
  std::vector<std::pair<int, int>> reward_geoms_;
};

// Linear velocity of the body frame origin and angular velocity, both in
// world coordinates, from the current qvel (requires the position stage).
std::pair<Eigen::Vector3d, Eigen::Vector3d> BodyVelocity(const sim::Physics& physics, int body);

// Uniform angles in [-pi, pi) for every hinge joint.
void RandomizeHinges(sim::Physics& physics, RandomState& random_state);

}  // namespace ctrlforge::suite

#endif  // CTRLFORGE_SUITE_BASE_H_
