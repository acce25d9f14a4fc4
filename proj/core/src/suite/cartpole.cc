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

// Cart-pole with one or more poles chained on top of the cart.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ctrlforge/errors.h"
#include "ctrlforge/rl/tolerance.h"
#include "suite/common.h"

namespace ctrlforge::suite::internal {
namespace {

constexpr int kMaxPoles = 20;

std::string ModelXml(int num_poles) {
  std::string poles;
  for (int i = 1; i <= num_poles; ++i) {
    const std::string id = std::to_string(i);
    poles += "<body name=\"pole_" + id + "\"" + (i > 1 ? " pos=\"0 0 1\"" : "") + ">\n";
    poles += "  <joint name=\"hinge_" + id + "\" type=\"hinge\" axis=\"0 1 0\" damping=\"2e-6\"/>\n";
    poles += "  <geom name=\"pole_" + id +
             "\" type=\"capsule\" fromto=\"0 0 0 0 0 1\" size=\".045\" mass=\".1\" "
             "material=\"self\"/>\n";
  }
  for (int i = 0; i < num_poles; ++i) poles += "</body>\n";
  return R"(<mujoco model="cart-pole">
  <option timestep="0.002" integrator="RK4"/>)" +
         CommonAssets() + R"(
  <worldbody>
    <light name="light" pos="0 0 6"/>
    <camera name="fixed" pos="0 -6 1.5" xyaxes="1 0 0 0 0 1"/>
    <geom name="floor" type="plane" pos="0 0 -.05" size="4 4 .2" material="grid"/>
    <geom name="rail1" type="capsule" fromto="-3 .07 1 3 .07 1" size=".02"
          material="decoration"/>
    <geom name="rail2" type="capsule" fromto="-3 -.07 1 3 -.07 1" size=".02"
          material="decoration"/>
    <body name="cart" pos="0 0 1">
      <joint name="slider" type="slide" axis="1 0 0" damping="5e-4"/>
      <geom name="cart" type="box" size=".2 .15 .1" mass="1" material="self"/>
)" + poles + R"(    </body>
  </worldbody>
  <actuator>
    <motor name="slide" joint="slider" gear="10" ctrllimited="true" ctrlrange="-1 1"/>
  </actuator>
</mujoco>
)";
}

class Balance : public Task {
 public:
  Balance(int num_poles, bool swing_up, bool sparse)
      : num_poles_(num_poles), swing_up_(swing_up), sparse_(sparse) {}

  void InitializeEpisode(sim::Physics& physics, RandomState& random_state) override {
    Eigen::VectorXd& qpos = physics.data().qpos;
    Eigen::VectorXd& qvel = physics.data().qvel;
    std::normal_distribution<double> normal;
    if (swing_up_) {
      qpos[0] = 0.01 * normal(random_state);
      qpos[1] = std::numbers::pi + 0.01 * normal(random_state);
      for (int i = 2; i <= num_poles_; ++i) qpos[i] = 0.1 * normal(random_state);
    } else {
      qpos[0] = std::uniform_real_distribution<double>(-0.1, 0.1)(random_state);
      std::uniform_real_distribution<double> angle(-0.034, 0.034);
      for (int i = 1; i <= num_poles_; ++i) qpos[i] = angle(random_state);
    }
    for (int i = 0; i <= num_poles_; ++i) qvel[i] = 0.01 * normal(random_state);
    poles_.clear();
    for (int i = 1; i <= num_poles_; ++i) {
      poles_.push_back(
          physics.model().NameToId(mjcf::Namespace::kBody, "pole_" + std::to_string(i)));
    }
  }

  rl::Observation GetObservation(sim::Physics& physics) override {
    Eigen::VectorXd position(1 + 2 * num_poles_);
    position[0] = physics.data().qpos[0];
    for (int i = 0; i < num_poles_; ++i) {
      const Eigen::Matrix3d& r = physics.data().xmat[poles_[i]];
      position[1 + i] = r(2, 2);
      position[1 + num_poles_ + i] = r(0, 2);
    }
    rl::Observation obs;
    obs.Insert("position", rl::Array::FromVector(position));
    obs.Insert("velocity", rl::Array::FromVector(physics.data().qvel));
    return obs;
  }

  double GetReward(sim::Physics& physics) override {
    const engine::Data& d = physics.data();
    const double cart = d.qpos[0];
    if (sparse_) {
      double reward = rl::Tolerance(cart, {.lower = -0.25, .upper = 0.25});
      for (int pole : poles_) reward *= rl::Tolerance(d.xmat[pole](2, 2), {.lower = 0.995, .upper = 1});
      return reward;
    }
    double upright = 0;
    for (int pole : poles_) upright += (d.xmat[pole](2, 2) + 1) / 2;
    upright /= num_poles_;
    const double centered = (1 + rl::Tolerance(cart, {.margin = 2})) / 2;
    const double control = rl::Tolerance(
        d.ctrl[0], {.margin = 1, .sigmoid = rl::Sigmoid::kQuadratic, .value_at_margin = 0});
    const double small_control = (4 + control) / 5;
    double slowest = 1;
    for (int i = 1; i <= num_poles_; ++i) {
      slowest = std::min(slowest, rl::Tolerance(d.qvel[i], {.margin = 5}));
    }
    const double small_velocity = (1 + slowest) / 2;
    return upright * small_control * small_velocity * centered;
  }

 private:
  int num_poles_;
  bool swing_up_;
  bool sparse_;
  std::vector<int> poles_;
};

}  // namespace

std::unique_ptr<Environment> LoadCartpole(std::string_view task, const LoadOptions& options) {
  Kwargs kwargs(options.task_kwargs);
  int default_poles = 1;
  bool swing_up = false;
  bool sparse = false;
  if (task == "balance") {
  } else if (task == "balance_sparse") {
    sparse = true;
  } else if (task == "swingup") {
    swing_up = true;
  } else if (task == "swingup_sparse") {
    swing_up = sparse = true;
  } else if (task == "two_poles") {
    default_poles = 2;
    swing_up = true;
  } else if (task == "three_poles") {
    default_poles = 3;
    swing_up = true;
  } else {
    throw UnknownTaskError("cartpole:" + std::string(task));
  }
  const int num_poles = kwargs.GetInt("num_poles", default_poles, 1, kMaxPoles);
  kwargs.CheckAllUsed();
  return MakeEnvironment(ModelXml(num_poles),
                         std::make_unique<Balance>(num_poles, swing_up, sparse), options,
                         kControlTimestep, kTimeLimit);
}

}  // namespace ctrlforge::suite::internal
