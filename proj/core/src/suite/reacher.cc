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

// Two-link planar arm reaching for a randomly placed target.

#include <cmath>
#include <numbers>
#include <random>

#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/attr_value.h"
#include "ctrlforge/rl/tolerance.h"
#include "suite/common.h"

namespace ctrlforge::suite::internal {
namespace {

constexpr double kBigTarget = 0.05;
constexpr double kSmallTarget = 0.015;

std::string ModelXml(double target_size) {
  return R"(<mujoco model="two-link planar reacher">
  <option timestep="0.002" integrator="RK4"/>)" +
         CommonAssets() + R"(
  <worldbody>
    <light name="light" pos="0 0 1"/>
    <camera name="fixed" pos="0 0 .75"/>
    <geom name="ground" type="plane" size=".3 .3 .1" material="grid"/>
    <geom name="root" type="cylinder" fromto="0 0 0 0 0 .02" size=".011"
          material="decoration"/>
    <geom name="target" type="sphere" pos="0 .1 .01" size=")" +
         mjcf::FormatNumber(target_size) + R"(" material="target"/>
    <body name="arm" pos="0 0 .01">
      <joint name="shoulder" type="hinge" axis="0 0 1" damping=".01"/>
      <geom name="arm" type="capsule" fromto="0 0 0 .12 0 0" size=".01" material="self"/>
      <body name="hand" pos=".12 0 0">
        <joint name="wrist" type="hinge" axis="0 0 1" damping=".01"/>
        <geom name="hand" type="capsule" fromto="0 0 0 .1 0 0" size=".01" material="self"/>
        <body name="finger" pos=".12 0 0">
          <geom name="finger" type="sphere" size=".01" material="effector"/>
        </body>
      </body>
    </body>
  </worldbody>
  <actuator>
    <motor name="shoulder" joint="shoulder" gear=".05" ctrllimited="true" ctrlrange="-1 1"/>
    <motor name="wrist" joint="wrist" gear=".05" ctrllimited="true" ctrlrange="-1 1"/>
  </actuator>
</mujoco>
)";
}

class Reach : public Task {
 public:
  void InitializeEpisode(sim::Physics& physics, RandomState& random_state) override {
    RandomizeHinges(physics, random_state);
    engine::CompiledModel& m = physics.mutable_model();
    finger_ = m.NameToId(mjcf::Namespace::kGeom, "finger");
    target_ = m.NameToId(mjcf::Namespace::kGeom, "target");
    const double angle =
        std::uniform_real_distribution<double>(0, 2 * std::numbers::pi)(random_state);
    const double radius = std::uniform_real_distribution<double>(0.05, 0.20)(random_state);
    m.geoms[target_].pos = {radius * std::cos(angle), radius * std::sin(angle), 0.01};
  }

  rl::Observation GetObservation(sim::Physics& physics) override {
    const engine::Data& d = physics.data();
    rl::Observation obs;
    obs.Insert("position", rl::Array::FromVector(d.qpos));
    obs.Insert("to_target", rl::Array::FromVector(ToTarget(physics)));
    obs.Insert("velocity", rl::Array::FromVector(d.qvel));
    return obs;
  }

  double GetReward(sim::Physics& physics) override {
    const auto& geoms = physics.model().geoms;
    const double radii = geoms[target_].size[0] + geoms[finger_].size[0];
    return rl::Tolerance(ToTarget(physics).norm(), {.lower = 0, .upper = radii});
  }

 private:
  Eigen::Vector2d ToTarget(const sim::Physics& physics) const {
    const auto& xpos = physics.data().geom_xpos;
    return (xpos[target_] - xpos[finger_]).head<2>();
  }

  int finger_ = 0;
  int target_ = 0;
};

}  // namespace

std::unique_ptr<Environment> LoadReacher(std::string_view task, const LoadOptions& options) {
  Kwargs(options.task_kwargs).CheckAllUsed();
  if (task != "easy" && task != "hard") throw UnknownTaskError("reacher:" + std::string(task));
  return MakeEnvironment(ModelXml(task == "easy" ? kBigTarget : kSmallTarget),
                         std::make_unique<Reach>(), options, kControlTimestep, kTimeLimit);
}

}  // namespace ctrlforge::suite::internal
