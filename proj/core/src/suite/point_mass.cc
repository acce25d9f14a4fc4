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

// Point mass on a plane, driven towards a target at the origin.

#include <cmath>
#include <numbers>
#include <random>

#include "ctrlforge/errors.h"
#include "ctrlforge/rl/tolerance.h"
#include "suite/common.h"

namespace ctrlforge::suite::internal {
namespace {

constexpr double kArena = 0.29;

std::string ModelXml() {
  return R"(<mujoco model="planar point mass">
  <option timestep="0.002" integrator="RK4"/>)" +
         CommonAssets() + R"(
  <worldbody>
    <light name="light" pos="0 0 1"/>
    <camera name="fixed" pos="0 0 .75"/>
    <geom name="ground" type="plane" size=".3 .3 .1" material="grid"/>
    <geom name="wall_x" type="box" pos="-.3 0 .02" size=".01 .3 .02" material="decoration"/>
    <geom name="wall_y" type="box" pos="0 -.3 .02" size=".3 .01 .02" material="decoration"/>
    <geom name="wall_neg_x" type="box" pos=".3 0 .02" size=".01 .3 .02" material="decoration"/>
    <geom name="wall_neg_y" type="box" pos="0 .3 .02" size=".3 .01 .02" material="decoration"/>
    <geom name="target" type="sphere" pos="0 0 .01" size=".015" material="target"/>
    <body name="pointmass" pos="0 0 .01">
      <joint name="root_x" type="slide" axis="1 0 0" damping="1"/>
      <joint name="root_y" type="slide" axis="0 1 0" damping="1"/>
      <geom name="pointmass" type="sphere" size=".01" mass=".3" material="self"/>
    </body>
  </worldbody>
  <actuator>
    <motor name="t1" joint="root_x" gear=".1"/>
    <motor name="t2" joint="root_y" gear=".1"/>
  </actuator>
</mujoco>
)";
}

// In the hard variant the action is mixed through a random matrix with unit
// rows, redrawn every episode, before it reaches the motors.
class PointMass : public Task {
 public:
  explicit PointMass(bool randomize_gains) : randomize_gains_(randomize_gains) {}

  void InitializeEpisode(sim::Physics& physics, RandomState& random_state) override {
    std::uniform_real_distribution<double> position(-kArena, kArena);
    physics.data().qpos[0] = position(random_state);
    physics.data().qpos[1] = position(random_state);
    gains_.setIdentity();
    if (randomize_gains_) {
      std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
      for (int row = 0; row < 2; ++row) {
        const double a = angle(random_state);
        gains_.row(row) << std::cos(a), std::sin(a);
      }
    }
    last_action_.setZero();
    const engine::CompiledModel& m = physics.model();
    mass_ = m.NameToId(mjcf::Namespace::kGeom, "pointmass");
    target_ = m.NameToId(mjcf::Namespace::kGeom, "target");
  }

  void BeforeStep(const Eigen::VectorXd& action, sim::Physics& physics) override {
    last_action_ = action;
    physics.data().ctrl = gains_ * action;
  }

  rl::ArraySpec ActionSpec(const sim::Physics& /*physics*/) const override {
    return rl::ArraySpec({2}, rl::DType::kFloat64, {-1, -1}, {1, 1}, "action");
  }

  rl::Observation GetObservation(sim::Physics& physics) override {
    rl::Observation obs;
    obs.Insert("position", rl::Array::FromVector(physics.data().qpos));
    obs.Insert("velocity", rl::Array::FromVector(physics.data().qvel));
    return obs;
  }

  double GetReward(sim::Physics& physics) override {
    const engine::CompiledModel& m = physics.model();
    const double target_size = m.geoms[target_].size[0];
    const double distance =
        (physics.data().geom_xpos[mass_] - physics.data().geom_xpos[target_]).norm();
    const double near_target =
        rl::Tolerance(distance, {.lower = 0, .upper = target_size, .margin = target_size});
    double control = 0;
    for (int i = 0; i < 2; ++i) {
      control += rl::Tolerance(last_action_[i], {.margin = 1,
                                                 .sigmoid = rl::Sigmoid::kQuadratic,
                                                 .value_at_margin = 0});
    }
    const double small_control = (4 + control / 2) / 5;
    return near_target * small_control;
  }

  const Eigen::Matrix2d& gains() const { return gains_; }

 private:
  bool randomize_gains_;
  Eigen::Matrix2d gains_ = Eigen::Matrix2d::Identity();
  Eigen::Vector2d last_action_ = Eigen::Vector2d::Zero();
  int mass_ = 0;
  int target_ = 0;
};

}  // namespace

std::unique_ptr<Environment> LoadPointMass(std::string_view task, const LoadOptions& options) {
  Kwargs(options.task_kwargs).CheckAllUsed();
  if (task != "easy" && task != "hard") throw UnknownTaskError("point_mass:" + std::string(task));
  return MakeEnvironment(ModelXml(), std::make_unique<PointMass>(task == "hard"), options,
                         kControlTimestep, kTimeLimit);
}

}  // namespace ctrlforge::suite::internal
