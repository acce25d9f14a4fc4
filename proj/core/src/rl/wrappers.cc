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

#include "ctrlforge/rl/wrappers.h"

#include <utility>

#include "ctrlforge/errors.h"

namespace ctrlforge::rl {

PixelObservationWrapper::PixelObservationWrapper(std::unique_ptr<Environment> env,
                                                 bool pixels_only, sim::RenderOptions render,
                                                 std::string key)
    : env_(std::move(env)),
      pixels_only_(pixels_only),
      render_(std::move(render)),
      key_(std::move(key)) {
  if (env_->physics() == nullptr) {
    throw InvalidArgumentError("pixel observations need an environment backed by a Physics");
  }
  if (!pixels_only_) {
    spec_ = env_->observation_spec();
    if (spec_.Contains(key_)) {
      throw InvalidArgumentError("observation '" + key_ + "' already exists");
    }
  }
  spec_.Insert(key_, ArraySpec({render_.height, render_.width, 3}, DType::kUint8, {0}, {255},
                               key_));
}

TimeStep PixelObservationWrapper::AddPixels(TimeStep step) {
  if (pixels_only_) step.observation = Observation();
  sim::Frame frame = env_->physics()->Render(render_);
  Array pixels{{frame.height, frame.width, 3}, DType::kUint8,
               std::vector<double>(frame.rgb.begin(), frame.rgb.end())};
  step.observation.Insert(key_, std::move(pixels));
  return step;
}

TimeStep PixelObservationWrapper::Reset() { return AddPixels(env_->Reset()); }

TimeStep PixelObservationWrapper::Step(const Eigen::VectorXd& action) {
  return AddPixels(env_->Step(action));
}

Eigen::VectorXd FlattenObservation(const Observation& observation) {
  std::size_t n = 0;
  for (const auto& [key, value] : observation) n += value.size();
  Eigen::VectorXd flat(static_cast<Eigen::Index>(n));
  Eigen::Index offset = 0;
  for (const auto& [key, value] : observation) {
    for (double x : value.data) flat[offset++] = x;
  }
  return flat;
}

Observation UnflattenObservation(const ObservationSpec& spec, const Eigen::VectorXd& flat) {
  std::size_t n = 0;
  for (const auto& [key, s] : spec) n += s.size();
  if (static_cast<std::size_t>(flat.size()) != n) {
    throw SpecError("flat observation has " + std::to_string(flat.size()) +
                    " values, spec needs " + std::to_string(n));
  }
  Observation out;
  Eigen::Index offset = 0;
  for (const auto& [key, s] : spec) {
    Array a = s.Zeros();
    for (double& x : a.data) x = flat[offset++];
    out.Insert(key, std::move(a));
  }
  return out;
}

FlattenObservationWrapper::FlattenObservationWrapper(std::unique_ptr<Environment> env,
                                                     std::string key)
    : env_(std::move(env)), key_(std::move(key)), inner_spec_(env_->observation_spec()) {}

ObservationSpec FlattenObservationWrapper::observation_spec() const {
  std::size_t n = 0;
  for (const auto& [key, s] : inner_spec_) n += s.size();
  ObservationSpec spec;
  spec.Insert(key_, ArraySpec({static_cast<int>(n)}, DType::kFloat64, key_));
  return spec;
}

TimeStep FlattenObservationWrapper::Reset() {
  TimeStep step = env_->Reset();
  Observation flat;
  flat.Insert(key_, Array::FromVector(FlattenObservation(step.observation)));
  step.observation = std::move(flat);
  return step;
}

TimeStep FlattenObservationWrapper::Step(const Eigen::VectorXd& action) {
  TimeStep step = env_->Step(action);
  Observation flat;
  flat.Insert(key_, Array::FromVector(FlattenObservation(step.observation)));
  step.observation = std::move(flat);
  return step;
}

}  // namespace ctrlforge::rl
