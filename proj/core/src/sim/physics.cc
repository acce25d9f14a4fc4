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

#include "ctrlforge/sim/physics.h"

#include <utility>

#include "ctrlforge/engine/compiler.h"
#include "ctrlforge/engine/dynamics.h"
#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/xml.h"

namespace ctrlforge::sim {

Physics::Physics(engine::CompiledModel model)
    : model_(std::move(model)), data_(model_), free_camera_(DefaultFreeCamera(model_)) {
  engine::Forward(model_, data_);
}

Physics Physics::FromModel(const mjcf::ModelRoot& model) {
  return Physics(engine::Compile(model));
}

Physics Physics::FromXmlString(std::string_view xml) {
  return FromModel(*mjcf::ParseModel(xml));
}

Physics Physics::FromXmlFile(const std::string& path) {
  return FromModel(*mjcf::ParseModelFile(path));
}

void Physics::Step(int substeps) {
  for (int i = 0; i < substeps; ++i) engine::Step(model_, data_);
}

void Physics::Forward() {
  data_.stage = engine::Stage::kInvalid;
  engine::Forward(model_, data_);
}

void Physics::ResetContext(const std::function<void(Physics&)>& mutator) {
  engine::ResetData(model_, data_);
  auto sizes_ok = [&] {
    return data_.qpos.size() == model_.nq() && data_.qvel.size() == model_.nv() &&
           data_.ctrl.size() == model_.nu() && data_.qfrc_applied.size() == model_.nv() &&
           static_cast<int>(data_.xfrc_applied.size()) == model_.nbody();
  };
  try {
    if (mutator) mutator(*this);
  } catch (...) {
    if (!sizes_ok()) data_ = engine::Data(model_);
    Forward();
    throw;
  }
  if (!sizes_ok()) {
    data_ = engine::Data(model_);
    Forward();
    throw InvalidArgumentError("state arrays were resized inside the reset context");
  }
  data_.time = 0;
  Forward();
}

Eigen::VectorXd Physics::State() const {
  Eigen::VectorXd state(model_.nq() + model_.nv());
  state << data_.qpos, data_.qvel;
  return state;
}

void Physics::SetState(const Eigen::VectorXd& state) {
  if (state.size() != model_.nq() + model_.nv()) {
    throw InvalidArgumentError("state has size " + std::to_string(state.size()) + ", expected " +
                               std::to_string(model_.nq() + model_.nv()));
  }
  data_.qpos = state.head(model_.nq());
  data_.qvel = state.tail(model_.nv());
  Forward();
}

std::string Physics::Id2Name(int id, mjcf::Namespace ns) const {
  if (id < 0 || id >= model_.Count(ns)) {
    throw IndexError(std::string(mjcf::NamespaceName(ns)) + " index " + std::to_string(id) +
                     " out of range [0, " + std::to_string(model_.Count(ns)) + ")");
  }
  return model_.names[static_cast<int>(ns)][id];
}

int Physics::Name2Id(std::string_view name, mjcf::Namespace ns) const {
  int id = model_.NameToId(ns, name);
  if (id < 0) {
    throw UnknownNameError("no " + std::string(mjcf::NamespaceName(ns)) + " named '" +
                           std::string(name) + "'");
  }
  return id;
}

Frame Physics::Render(const RenderOptions& options) {
  int camera = options.camera;
  if (!options.camera_name.empty()) camera = Name2Id(options.camera_name, mjcf::Namespace::kCamera);
  if (camera >= static_cast<int>(model_.cameras.size())) {
    throw UnknownNameError("no camera with index " + std::to_string(camera));
  }
  if (data_.stage == engine::Stage::kInvalid) engine::ForwardPosition(model_, data_);
  // Meshes are rebuilt per call so that edited geom sizes are picked up.
  return Renderer(model_).Render(model_, data_, options.width, options.height, camera, free_camera_);
}

}  // namespace ctrlforge::sim
