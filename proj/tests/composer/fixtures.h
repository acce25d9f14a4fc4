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

// Shared fixtures for composer tests: a one-joint counter model whose
// observable reports the substep index, and a configurable task.

#ifndef CTRLFORGE_TESTS_COMPOSER_FIXTURES_H_
#define CTRLFORGE_TESTS_COMPOSER_FIXTURES_H_

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ctrlforge/composer/entity.h"
#include "ctrlforge/composer/environment.h"
#include "ctrlforge/composer/observable.h"
#include "ctrlforge/composer/task.h"
#include "ctrlforge/mjcf/xml.h"

namespace ctrlforge::testing {

inline constexpr double kCounterTimestep = 0.01;

// Value reported for substep index t.
inline Eigen::VectorXd CounterValue(std::int64_t t) {
  return Eigen::Vector2d(static_cast<double>(t), 2.0 * static_cast<double>(t) + 1.0);
}

inline std::int64_t SubstepIndex(const sim::Physics& physics) {
  return std::llround(physics.time() / kCounterTimestep);
}

inline std::shared_ptr<composer::ModelEntity> MakeCounterEntity(
    composer::ObservablePtr counter) {
  auto model = mjcf::ParseModel(R"(
    <mujoco model="pipe">
      <option timestep="0.01"/>
      <worldbody>
        <body name="slider">
          <joint name="x" type="slide" axis="1 0 0"/>
          <geom type="sphere" size="0.1"/>
        </body>
      </worldbody>
    </mujoco>)");
  return composer::MakeEntity<composer::ModelEntity>(
      model, std::vector<std::pair<std::string, composer::ObservablePtr>>{{"counter", counter}});
}

inline composer::ObservablePtr MakeCounterObservable() {
  auto obs = composer::Generic(
      [](sim::Physics& physics) { return CounterValue(SubstepIndex(physics)); });
  obs->enabled = true;
  return obs;
}

// Task with a fixed root entity and zero reward unless overridden.
class SimpleTask : public composer::Task {
 public:
  explicit SimpleTask(std::shared_ptr<composer::Entity> root, int substeps = 1)
      : root_(std::move(root)) {
    set_control_timestep(substeps * physics_timestep());
  }
  std::shared_ptr<composer::Entity> root_entity() override { return root_; }
  double GetReward(sim::Physics& /*physics*/) override { return 0.0; }

 private:
  std::shared_ptr<composer::Entity> root_;
};

}  // namespace ctrlforge::testing

#endif  // CTRLFORGE_TESTS_COMPOSER_FIXTURES_H_
