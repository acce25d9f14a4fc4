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

// Planar swimmer: a chain of links in a viscous fluid, steering its nose
// towards a target.

#include <numbers>
#include <random>

#include "ctrlforge/errors.h"
#include "ctrlforge/rl/tolerance.h"
#include "suite/common.h"

namespace ctrlforge::suite::internal {
namespace {

constexpr int kMaxLinks = 50;
constexpr double kTargetSize = 0.1;
constexpr double kJointRange = 100 * std::numbers::pi / 180;

// Each link carries a thin plate that sets its mass and drag, plus massless,
// drag-free visual geoms.
std::string LinkGeoms(const std::string& name) {
  return "<geom name=\"inertial_" + name +
         "\" type=\"box\" size=\".001 .05 .01\" mass=\".01\" rgba=\"0 0 0 0\"/>\n"
         "<geom name=\"visual_" + name +
         "\" type=\"capsule\" fromto=\"0 -.05 0 0 .05 0\" size=\".01\" mass=\"0\" "
         "dragcoef=\"0\" material=\"self\"/>\n";
}

std::string ModelXml(int n_links) {
  std::string chain;
  for (int i = 0; i < n_links - 1; ++i) {
    const std::string id = std::to_string(i);
    chain += "<body name=\"segment_" + id + "\" pos=\"0 .1 0\">\n";
    chain += "<joint name=\"joint_" + id +
             "\" type=\"hinge\" axis=\"0 0 1\" pos=\"0 -.05 0\" damping=\"1e-4\"/>\n";
    chain += LinkGeoms("segment_" + id);
  }
  for (int i = 0; i < n_links - 1; ++i) chain += "</body>\n";
  std::string motors;
  for (int i = 0; i < n_links - 1; ++i) {
    const std::string id = std::to_string(i);
    motors += "<motor name=\"motor_" + id + "\" joint=\"joint_" + id +
              "\" gear=\"5e-4\" ctrllimited=\"true\" ctrlrange=\"-1 1\"/>\n";
  }
  return R"(<mujoco model="swimmer">
  <option timestep="0.002" density="3000" integrator="RK4"/>)" +
         CommonAssets() + R"(
  <worldbody>
    <light name="light" pos="0 0 4"/>
    <camera name="fixed" pos="0 0 5"/>
    <geom name="ground" type="plane" size="3 3 .1" material="grid"/>
    <geom name="target" type="sphere" pos="1 1 .05" size=".1" material="target"/>
    <body name="head" pos="0 0 .05">
      <joint name="rootx" type="slide" axis="1 0 0"/>
      <joint name="rooty" type="slide" axis="0 1 0"/>
      <joint name="rootz" type="hinge" axis="0 0 1"/>
      <geom name="head" type="ellipsoid" pos="0 -.022 0" size=".02 .04 .017" mass="0"
            dragcoef="0" material="self"/>
      <geom name="nose" type="sphere" pos="0 -.06 0" size=".004" mass="0" dragcoef="0"
            material="effector"/>
)" + LinkGeoms("head") +
         chain + R"(    </body>
  </worldbody>
  <actuator>
)" + motors + R"(  </actuator>
</mujoco>
)";
}

class Swim : public Task {
 public:
  explicit Swim(int n_links) : n_links_(n_links) {}

  void InitializeEpisode(sim::Physics& physics, RandomState& random_state) override {
    engine::CompiledModel& m = physics.mutable_model();
    Eigen::VectorXd& qpos = physics.data().qpos;
    qpos[2] = std::uniform_real_distribution<double>(-std::numbers::pi,
                                                     std::numbers::pi)(random_state);
    std::uniform_real_distribution<double> bend(-kJointRange, kJointRange);
    for (int i = 3; i < m.nq(); ++i) qpos[i] = bend(random_state);
    const bool close = std::bernoulli_distribution(0.2)(random_state);
    const double box = close ? 0.3 : 2.0;
    std::uniform_real_distribution<double> coordinate(-box, box);
    target_ = m.NameToId(mjcf::Namespace::kGeom, "target");
    nose_ = m.NameToId(mjcf::Namespace::kGeom, "nose");
    head_ = m.NameToId(mjcf::Namespace::kBody, "head");
    const double x = coordinate(random_state);
    const double y = coordinate(random_state);
    m.geoms[target_].pos = {x, y, 0.05};
  }

  rl::Observation GetObservation(sim::Physics& physics) override {
    const engine::Data& d = physics.data();
    Eigen::VectorXd velocities(3 * n_links_);
    for (int i = 0; i < n_links_; ++i) {
      const int body = head_ + i;
      const auto [linear, angular] = BodyVelocity(physics, body);
      const Eigen::Vector3d v = d.xmat[body].transpose() * linear;
      const Eigen::Vector3d w = d.xmat[body].transpose() * angular;
      velocities.segment<3>(3 * i) << v.x(), v.y(), w.z();
    }
    rl::Observation obs;
    obs.Insert("joints", rl::Array::FromVector(d.qpos.tail(n_links_ - 1)));
    obs.Insert("to_target", rl::Array::FromVector(NoseToTarget(physics)));
    obs.Insert("body_velocities", rl::Array::FromVector(velocities));
    return obs;
  }

  double GetReward(sim::Physics& physics) override {
    return rl::Tolerance(NoseToTarget(physics).norm(), {.lower = 0,
                                                        .upper = kTargetSize,
                                                        .margin = 5 * kTargetSize,
                                                        .sigmoid = rl::Sigmoid::kLongTail});
  }

 private:
  // In head coordinates.
  Eigen::Vector2d NoseToTarget(const sim::Physics& physics) const {
    const engine::Data& d = physics.data();
    const Eigen::Vector3d world = d.geom_xpos[target_] - d.geom_xpos[nose_];
    return (d.xmat[head_].transpose() * world).head<2>();
  }

  int n_links_;
  int target_ = 0;
  int nose_ = 0;
  int head_ = 1;
};

}  // namespace

std::unique_ptr<Environment> LoadSwimmer(std::string_view task, const LoadOptions& options) {
  Kwargs kwargs(options.task_kwargs);
  int default_links = 0;
  if (task == "swimmer6") {
    default_links = 6;
  } else if (task == "swimmer15") {
    default_links = 15;
  } else {
    throw UnknownTaskError("swimmer:" + std::string(task));
  }
  const int n_links = kwargs.GetInt("n_links", default_links, 2, kMaxLinks);
  kwargs.CheckAllUsed();
  return MakeEnvironment(ModelXml(n_links), std::make_unique<Swim>(n_links), options,
                         kControlTimestep, kTimeLimit);
}

}  // namespace ctrlforge::suite::internal
