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

#include "ctrlforge/suite/base.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/attr_value.h"
#include "ctrlforge/rl/tolerance.h"

namespace ctrlforge::suite {

void Task::BeforeStep(const Eigen::VectorXd& action, sim::Physics& physics) {
  physics.data().ctrl = action;
}

void Task::Advance(sim::Physics& physics, int substeps) { physics.Step(substeps); }

rl::ArraySpec Task::ActionSpec(const sim::Physics& physics) const {
  const auto& actuators = physics.model().actuators;
  const int n = static_cast<int>(actuators.size());
  std::vector<double> lo(n, -rl::kInf);
  std::vector<double> hi(n, rl::kInf);
  for (int i = 0; i < n; ++i) {
    if (actuators[i].ctrllimited) {
      lo[i] = actuators[i].ctrlrange[0];
      hi[i] = actuators[i].ctrlrange[1];
    }
  }
  return rl::ArraySpec({n}, rl::DType::kFloat64, lo, hi, "action");
}

Environment::Environment(sim::Physics physics, std::unique_ptr<Task> task,
                         EnvironmentOptions options)
    : physics_(std::move(physics)),
      task_(std::move(task)),
      options_(options),
      random_state_(options.seed) {
  const double h = physics_.timestep();
  if (options_.control_timestep > 0) {
    const double ratio = options_.control_timestep / h;
    substeps_ = static_cast<int>(std::llround(ratio));
    if (substeps_ < 1 || std::abs(ratio - substeps_) > 1e-9 * ratio) {
      throw InvalidArgumentError("control timestep " +
                                 mjcf::FormatNumber(options_.control_timestep) +
                                 " is not a multiple of the physics timestep " +
                                 mjcf::FormatNumber(h));
    }
  }
  if (!(options_.time_limit > 0)) throw InvalidArgumentError("time limit must be positive");
  if (std::isfinite(options_.time_limit)) {
    step_limit_ = static_cast<std::int64_t>(
        std::ceil(options_.time_limit / control_timestep() - 1e-9));
  }
  action_spec_ = task_->ActionSpec(physics_);
  // Probe the observation layout from a throwaway episode so the episode
  // stream of random_state_ is untouched.
  RandomState scratch(options_.seed);
  physics_.ResetContext(
      [&](sim::Physics& physics) { task_->InitializeEpisode(physics, scratch); });
  for (const auto& [name, array] : task_->GetObservation(physics_)) {
    observation_spec_.Insert(name, rl::ArraySpec(array.shape, array.dtype, name));
  }
  if (options_.visualize_reward) {
    for (const char* name : {"self", "effector"}) {
      int id = physics_.model().NameToId(mjcf::Namespace::kMaterial, name);
      if (id >= 0) reward_materials_.emplace_back(id, physics_.model().materials[id].rgba);
    }
    // Geoms take their color from the material at compile time.
    const engine::CompiledModel& model = physics_.model();
    for (int g = 0; g < model.ngeom(); ++g) {
      const engine::GeomModel& geom = model.geoms[g];
      for (const auto& [id, rgba] : reward_materials_) {
        if (geom.material == id && geom.rgba == rgba) reward_geoms_.emplace_back(g, id);
      }
    }
  }
}

void Environment::VisualizeReward(double reward) {
  const double r = std::clamp(reward, 0.0, 1.0);
  for (const auto& [id, rgba] : reward_materials_) {
    Eigen::Vector4d& out = physics_.mutable_model().materials[id].rgba;
    out.head<3>() = rgba.head<3>() * (0.5 + 0.5 * r);
    out[3] = rgba[3];
  }
  engine::CompiledModel& model = physics_.mutable_model();
  for (const auto& [geom, id] : reward_geoms_) model.geoms[geom].rgba = model.materials[id].rgba;
}

rl::TimeStep Environment::Reset() {
  reset_next_step_ = false;
  steps_ = 0;
  physics_.ResetContext(
      [&](sim::Physics& physics) { task_->InitializeEpisode(physics, random_state_); });
  if (options_.visualize_reward) VisualizeReward(task_->GetReward(physics_));
  return rl::Restart(task_->GetObservation(physics_));
}

rl::TimeStep Environment::Step(const Eigen::VectorXd& action) {
  if (reset_next_step_) return Reset();
  action_spec_.Validate(action);
  // An exception leaves the episode in an unknown state.
  reset_next_step_ = true;
  task_->BeforeStep(action, physics_);
  task_->Advance(physics_, substeps_);
  task_->AfterStep(physics_);
  const double reward = task_->GetReward(physics_);
  if (options_.visualize_reward) VisualizeReward(reward);
  ++steps_;
  rl::Observation observation = task_->GetObservation(physics_);
  if (std::optional<double> discount = task_->GetTermination(physics_)) {
    return rl::Truncation(reward, std::move(observation), *discount);
  }
  if (steps_ >= step_limit_) return rl::Truncation(reward, std::move(observation), 1.0);
  reset_next_step_ = false;
  return rl::Transition(reward, std::move(observation));
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> BodyVelocity(const sim::Physics& physics, int body) {
  const engine::CompiledModel& m = physics.model();
  const engine::Data& d = physics.data();
  engine::Vector6d v = engine::Vector6d::Zero();
  for (int b = body; b > 0; b = m.bodies[b].parent) {
    for (int j = m.bodies[b].jnt_adr; j < m.bodies[b].jnt_adr + m.bodies[b].jnt_num; ++j) {
      v += d.cdof[j] * d.qvel[j];
    }
  }
  const Eigen::Vector3d angular = v.head<3>();
  // Pluecker velocity at the world origin, shifted to the body origin.
  const Eigen::Vector3d linear = v.tail<3>() + angular.cross(d.xpos[body]);
  return {linear, angular};
}

void RandomizeHinges(sim::Physics& physics, RandomState& random_state) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  const auto& joints = physics.model().joints;
  for (std::size_t j = 0; j < joints.size(); ++j) {
    if (joints[j].type == engine::JointType::kHinge) physics.data().qpos[j] = angle(random_state);
  }
}

}  // namespace ctrlforge::suite
