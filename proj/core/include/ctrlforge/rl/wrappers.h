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

// Environment wrappers that change the observation format.

#ifndef CTRLFORGE_RL_WRAPPERS_H_
#define CTRLFORGE_RL_WRAPPERS_H_

#include <memory>
#include <string>

#include "ctrlforge/rl/environment.h"
#include "ctrlforge/sim/physics.h"

namespace ctrlforge::rl {

// Adds a uint8 (height, width, 3) image rendered after every reset and step,
// or replaces all other observations with it when `pixels_only`.
class PixelObservationWrapper : public Environment {
 public:
  // Throws InvalidArgumentError if `env` has no physics or already has an
  // observation named `key` (and pixels_only is false).
  PixelObservationWrapper(std::unique_ptr<Environment> env, bool pixels_only = true,
                          sim::RenderOptions render = {}, std::string key = "pixels");

  TimeStep Reset() override;
  TimeStep Step(const Eigen::VectorXd& action) override;
  ArraySpec action_spec() const override { return env_->action_spec(); }
  ObservationSpec observation_spec() const override { return spec_; }
  sim::Physics* physics() override { return env_->physics(); }

  Environment& wrapped() { return *env_; }

 private:
  TimeStep AddPixels(TimeStep step);

  std::unique_ptr<Environment> env_;
  bool pixels_only_;
  sim::RenderOptions render_;
  std::string key_;
  ObservationSpec spec_;
};

// Concatenates all observations, in spec order, into one float64 vector.
class FlattenObservationWrapper : public Environment {
 public:
  explicit FlattenObservationWrapper(std::unique_ptr<Environment> env,
                                     std::string key = "observations");

  TimeStep Reset() override;
  TimeStep Step(const Eigen::VectorXd& action) override;
  ArraySpec action_spec() const override { return env_->action_spec(); }
  ObservationSpec observation_spec() const override;
  sim::Physics* physics() override { return env_->physics(); }

  Environment& wrapped() { return *env_; }
  const ObservationSpec& wrapped_spec() const { return inner_spec_; }

 private:
  std::unique_ptr<Environment> env_;
  std::string key_;
  ObservationSpec inner_spec_;
};

Eigen::VectorXd FlattenObservation(const Observation& observation);
// Inverse of FlattenObservation for observations matching `spec`. Throws
// SpecError if the length does not match.
Observation UnflattenObservation(const ObservationSpec& spec, const Eigen::VectorXd& flat);

}  // namespace ctrlforge::rl

#endif  // CTRLFORGE_RL_WRAPPERS_H_
