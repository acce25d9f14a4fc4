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

// Acrobot: a two-link pendulum actuated only at the elbow.

#include "ctrlforge/errors.h"
#include "ctrlforge/rl/tolerance.h"
#include "suite/common.h"

namespace ctrlforge::suite::internal {
namespace {

constexpr double kTargetRadius = 0.2;

std::string ModelXml() {
  return R"(<mujoco model="acrobot">
  <option timestep="0.002" integrator="RK4"/>)" +
         CommonAssets() + R"(
  <worldbody>
    <light name="light" pos="0 0 6"/>
    <camera name="fixed" pos="0 -10 2.5" xyaxes="1 0 0 0 0 1"/>
    <geom name="floor" type="plane" size="3 3 .2" material="grid"/>
    <site name="target" type="sphere" pos="0 0 4" size=".2" rgba=".6 .3 .3 1"/>
    <body name="upper_arm" pos="0 0 2">
      <joint name="shoulder" type="hinge" axis="0 1 0" damping=".05"/>
      <geom name="upper_arm_decoration" type="cylinder" fromto="0 -.06 0 0 .06 0"
            size=".051" mass="0" material="decoration"/>
      <geom name="upper_arm" type="capsule" fromto="0 0 0 0 0 1" size=".045" material="self"/>
      <body name="lower_arm" pos="0 0 1">
        <joint name="elbow" type="hinge" axis="0 1 0" damping=".05"/>
        <geom name="lower_arm" type="capsule" fromto="0 0 0 0 0 1" size=".049"
              material="self"/>
        <site name="tip" pos="0 0 1" size=".01"/>
      </body>
    </body>
  </worldbody>
  <actuator>
    <motor name="elbow" joint="elbow" gear="2" ctrllimited="true" ctrlrange="-1 1"/>
  </actuator>
</mujoco>
)";
}

class SwingUp : public Task {
 public:
  explicit SwingUp(bool sparse) : sparse_(sparse) {}

  void InitializeEpisode(sim::Physics& physics, RandomState& random_state) override {
    RandomizeHinges(physics, random_state);
    const engine::CompiledModel& m = physics.model();
    upper_ = m.NameToId(mjcf::Namespace::kBody, "upper_arm");
    lower_ = m.NameToId(mjcf::Namespace::kBody, "lower_arm");
    tip_ = m.NameToId(mjcf::Namespace::kSite, "tip");
    target_ = m.NameToId(mjcf::Namespace::kSite, "target");
  }

  rl::Observation GetObservation(sim::Physics& physics) override {
    const auto& xmat = physics.data().xmat;
    rl::Observation obs;
    obs.Insert("orientations",
               rl::Array::FromVector(Eigen::Vector4d(xmat[upper_](0, 2), xmat[lower_](0, 2),
                                                     xmat[upper_](2, 2), xmat[lower_](2, 2))));
    obs.Insert("velocity", rl::Array::FromVector(physics.data().qvel));
    return obs;
  }

  double GetReward(sim::Physics& physics) override {
    const auto& sites = physics.data().site_xpos;
    const double distance = (sites[tip_] - sites[target_]).norm();
    return rl::Tolerance(distance, {.lower = 0,
                                    .upper = kTargetRadius,
                                    .margin = sparse_ ? 0.0 : 1.0,
                                    .sigmoid = rl::Sigmoid::kLongTail});
  }

 private:
  bool sparse_;
  int upper_ = 1;
  int lower_ = 2;
  int tip_ = 1;
  int target_ = 0;
};

}  // namespace

std::unique_ptr<Environment> LoadAcrobot(std::string_view task, const LoadOptions& options) {
  Kwargs(options.task_kwargs).CheckAllUsed();
  if (task != "swingup" && task != "swingup_sparse") {
    throw UnknownTaskError("acrobot:" + std::string(task));
  }
  return MakeEnvironment(ModelXml(), std::make_unique<SwingUp>(task == "swingup_sparse"),
                         options, kControlTimestep, kTimeLimit);
}

}  // namespace ctrlforge::suite::internal
