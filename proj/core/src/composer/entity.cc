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

#include "ctrlforge/composer/entity.h"

#include <cmath>

#include "ctrlforge/engine/rotation.h"
#include "ctrlforge/errors.h"

namespace ctrlforge::composer {
namespace {

Eigen::Vector3d Row3(const Eigen::MatrixXd& m, int row = 0) {
  return m.row(row).head<3>().transpose();
}

engine::Quat ToQuat(const Eigen::Vector4d& wxyz) {
  return engine::MakeQuat(wxyz[0], wxyz[1], wxyz[2], wxyz[3]);
}

Eigen::Vector4d ToVector(const engine::Quat& q) { return {q.w(), q.x(), q.y(), q.z()}; }

double Yaw(const engine::Quat& q) {
  return std::atan2(2 * (q.w() * q.z() + q.x() * q.y()), 1 - 2 * (q.y() * q.y() + q.z() * q.z()));
}

}  // namespace

void Entity::Initialize() {
  Build();
  if (mjcf_model_ == nullptr) throw Error("entity Build() did not set a model");
  BuildObservables();
}

std::string Entity::name() const {
  std::string n = mjcf_model_->model_name();
  return n.empty() ? "entity" : n;
}

void Entity::AddObservable(std::string name, ObservablePtr observable) {
  if (observables_.Contains(name)) {
    throw InvalidArgumentError("duplicate observable '" + name + "' in entity '" + this->name() +
                               "'");
  }
  observables_.Insert(std::move(name), std::move(observable));
}

void Entity::CollectEntities(std::vector<Entity*>& out) {
  out.push_back(this);
  for (const auto& child : children_) child->CollectEntities(out);
}

std::vector<Entity*> Entity::IterEntities() {
  std::vector<Entity*> out;
  CollectEntities(out);
  return out;
}

mjcf::Element* Entity::Attach(std::shared_ptr<Entity> child, mjcf::Element* site) {
  if (child == nullptr) throw InvalidArgumentError("cannot attach a null entity");
  if (child->parent_ != nullptr) {
    throw AttachmentError("entity '" + child->name() + "' is already attached");
  }
  for (Entity* e : IterEntities()) {
    if (e == child.get()) throw AttachmentError("cannot attach an entity to itself");
  }
  if (site == nullptr) site = mjcf_model_->worldbody().Add("site");
  mjcf::Element* frame = site->Attach(child->mjcf_model_);
  child->parent_ = this;
  children_.push_back(std::move(child));
  return frame;
}

mjcf::Element* Entity::AttachFree(std::shared_ptr<Entity> child, mjcf::Element* site) {
  Entity* raw = child.get();
  mjcf::Element* frame = Attach(std::move(child), site);
  raw->free_joints_ = {
      frame->Add("joint", {{"type", "slide"}, {"axis", {1, 0, 0}}}),
      frame->Add("joint", {{"type", "slide"}, {"axis", {0, 1, 0}}}),
      frame->Add("joint", {{"type", "slide"}, {"axis", {0, 0, 1}}}),
      frame->Add("joint", {{"type", "hinge"}, {"axis", {0, 0, 1}}}),
  };
  return frame;
}

mjcf::Element* Entity::attachment_frame() const { return mjcf_model_->attachment_frame(); }

std::pair<Eigen::Vector3d, Eigen::Vector4d> Entity::GetPose(sim::Physics& physics) const {
  const mjcf::Element* frame = attachment_frame();
  if (frame == nullptr) return {Eigen::Vector3d::Zero(), Eigen::Vector4d(1, 0, 0, 0)};
  sim::Binding b = physics.Bind(frame);
  return {Row3(b.Get("xpos")), b.Get("xquat").row(0).transpose()};
}

void Entity::SetPose(sim::Physics& physics, const Eigen::Vector3d& position,
                     const std::optional<Eigen::Vector4d>& quaternion) {
  mjcf::Element* frame = attachment_frame();
  if (frame == nullptr) throw InvalidArgumentError("the root entity has no pose");
  physics.Forward();
  auto [current_pos, current_quat] = GetPose(physics);
  if (!free_joints_.empty()) {
    sim::Binding joints = physics.Bind(free_joints_);
    Eigen::MatrixXd axes = joints.Get("xaxis");
    Eigen::VectorXd qpos = joints.GetVector("qpos");
    const Eigen::Vector3d d = position - current_pos;
    for (int i = 0; i < 3; ++i) qpos[i] += Row3(axes, i).dot(d);
    if (quaternion) {
      engine::Quat q = ToQuat(*quaternion);
      if (std::abs(q.x()) > 1e-9 || std::abs(q.y()) > 1e-9) {
        throw InvalidArgumentError("entity '" + name() +
                                   "' can only be rotated about the vertical axis");
      }
      qpos[3] += Yaw(q) - Yaw(ToQuat(current_quat));
    }
    joints.SetVector("qpos", qpos);
  } else {
    Eigen::Vector3d parent_pos = Eigen::Vector3d::Zero();
    engine::Quat parent_quat = engine::Quat::Identity();
    const mjcf::Element* parent = frame->parent();
    if (parent != nullptr && parent->tag() == "body") {
      sim::Binding b = physics.Bind(parent);
      parent_pos = Row3(b.Get("xpos"));
      parent_quat = ToQuat(b.Get("xquat").row(0).transpose());
    }
    sim::Binding b = physics.Bind(frame);
    Eigen::Vector3d local = parent_quat.conjugate() * (position - parent_pos);
    b.Set("pos", local.transpose());
    if (quaternion) {
      engine::Quat q = parent_quat.conjugate() * ToQuat(*quaternion);
      b.Set("quat", ToVector(q).transpose());
    }
  }
  physics.Forward();
}

Eigen::Vector3d Entity::GlobalVectorToLocalFrame(sim::Physics& physics,
                                                 const Eigen::Vector3d& v) const {
  const Eigen::Vector4d q = GetPose(physics).second;
  return ToQuat(q).conjugate() * v;
}

}  // namespace ctrlforge::composer
