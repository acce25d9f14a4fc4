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

// Pendulum swing-up: a torque-limited pole that must be pumped upright.

#include <cmath>
#include <numbers>

#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/attr_value.h"
#include "ctrlforge/rl/tolerance.h"
#include "suite/common.h"

namespace ctrlforge::suite::internal {
namespace {

constexpr double kPoleMass = 1.0;
constexpr double kPoleLength = 0.5;
constexpr double kGravity = 9.81;
// Maximum torque is a sixth of the largest gravitational torque.
constexpr double kGear = kPoleMass * kGravity * kPoleLength / 6;
const double kCosineBound = std::cos(30 * std::numbers::pi / 180);

std::string ModelXml() {
  return R"(<mujoco model="pendulum">
  <option timestep="0.002" integrator="RK4"/>)" +
         CommonAssets() + R"(
  <worldbody>
    <light name="light" pos="0 0 6"/>
    <camera name="fixed" pos="0 -2 .6" xyaxes="1 0 0 0 0 1"/>
    <geom name="floor" type="plane" pos="0 0 -.05" size="2 2 .2" material="grid"/>
    <body name="pole" pos="0 0 .6">
      <joint name="hinge" type="hinge" axis="0 1 0" damping="0.1"/>
      <geom name="base" type="cylinder" fromto="0 -.03 0 0 .03 0" size=".021" mass="0"
            material="decoration"/>
      <geom name="pole" type="capsule" fromto="0 0 0 0 0 .5" size=".02" mass="0"
            material="self"/>
      <geom name="mass" type="sphere" pos="0 0 .5" size=".05" mass="1" material="effector"/>
    </body>
  </worldbody>
  <actuator>
    <motor name="torque" joint="hinge" gear=")" +
         mjcf::FormatNumber(kGear) + R"(" ctrllimited="true" ctrlrange="-1 1"/>
  </actuator>
</mujoco>
)";
}

class SwingUp : public Task {
 public:
  void InitializeEpisode(sim::Physics& physics, RandomState& random_state) override {
    RandomizeHinges(physics, random_state);
    pole_ = physics.model().NameToId(mjcf::Namespace::kBody, "pole");
  }

  rl::Observation GetObservation(sim::Physics& physics) override {
    const Eigen::Matrix3d& r = physics.data().xmat[pole_];
    rl::Observation obs;
    obs.Insert("orientation", rl::Array::FromVector(Eigen::Vector2d(r(2, 2), r(0, 2))));
    obs.Insert("velocity", rl::Array::FromVector(physics.data().qvel));
    return obs;
  }

  double GetReward(sim::Physics& physics) override {
    return rl::Tolerance(physics.data().xmat[pole_](2, 2), {.lower = kCosineBound, .upper = 1});
  }

 private:
  int pole_ = 1;
};

}  // namespace

std::unique_ptr<Environment> LoadPendulum(std::string_view task, const LoadOptions& options) {
  Kwargs(options.task_kwargs).CheckAllUsed();
  if (task != "swingup") throw UnknownTaskError("pendulum:" + std::string(task));
  return MakeEnvironment(ModelXml(), std::make_unique<SwingUp>(), options, kControlTimestep,
                         kTimeLimit);
}

}  // namespace ctrlforge::suite::internal
