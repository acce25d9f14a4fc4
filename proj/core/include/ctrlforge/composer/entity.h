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

// Entities: reusable model fragments with their own observables and
// episode callbacks, assembled into a tree by attachment.

#ifndef CTRLFORGE_COMPOSER_ENTITY_H_
#define CTRLFORGE_COMPOSER_ENTITY_H_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ctrlforge/composer/observable.h"
#include "ctrlforge/composer/variation.h"
#include "ctrlforge/mjcf/element.h"
#include "ctrlforge/rl/array.h"
#include "ctrlforge/sim/physics.h"

namespace ctrlforge::composer {

class Entity;

// Creates an entity and runs Build() then BuildObservables(). Constructors
// of derived classes should only store their arguments.
template <typename T, typename... Args>
std::shared_ptr<T> MakeEntity(Args&&... args);

class Entity : public std::enable_shared_from_this<Entity> {
 public:
  virtual ~Entity() = default;
  Entity(const Entity&) = delete;
  Entity& operator=(const Entity&) = delete;

  const std::shared_ptr<mjcf::ModelRoot>& mjcf_model() const { return mjcf_model_; }
  // Model name, or "entity" when unnamed.
  std::string name() const;

  const rl::OrderedDict<ObservablePtr>& observables() const { return observables_; }
  ObservablePtr observable(std::string_view name) const { return observables_.At(name); }

  Entity* parent() const { return parent_; }
  const std::vector<std::shared_ptr<Entity>>& children() const { return children_; }
  // This entity and its descendants, depth-first in attachment order.
  std::vector<Entity*> IterEntities();

  // Attaches `child`'s model at `site` (a site or body of this model), or at
  // a new site on the worldbody. Returns the attachment frame.
  mjcf::Element* Attach(std::shared_ptr<Entity> child, mjcf::Element* site = nullptr);
  // As Attach(), adding slide joints along x, y, z and a hinge about z to
  // the frame so that the child can move freely in the horizontal plane and
  // in height.
  mjcf::Element* AttachFree(std::shared_ptr<Entity> child, mjcf::Element* site = nullptr);

  // Null for the root entity.
  mjcf::Element* attachment_frame() const;
  const std::vector<mjcf::Element*>& free_joints() const { return free_joints_; }

  // World position and (w, x, y, z) orientation of the attachment frame;
  // origin and identity for the root.
  std::pair<Eigen::Vector3d, Eigen::Vector4d> GetPose(sim::Physics& physics) const;
  // Moves a free entity through its joints (the orientation must be a yaw
  // about z) or a fixed one through its frame placement, then runs
  // Forward(). Throws InvalidArgumentError for the root entity.
  void SetPose(sim::Physics& physics, const Eigen::Vector3d& position,
               const std::optional<Eigen::Vector4d>& quaternion = std::nullopt);
  // Rotates a world-frame vector into the attachment frame.
  Eigen::Vector3d GlobalVectorToLocalFrame(sim::Physics& physics,
                                           const Eigen::Vector3d& v) const;

  virtual void InitializeEpisodeMjcf(RandomState& /*random_state*/) {}
  virtual void InitializeEpisode(sim::Physics& /*physics*/, RandomState& /*random_state*/) {}
  virtual void BeforeStep(sim::Physics& /*physics*/, RandomState& /*random_state*/) {}
  virtual void BeforeSubstep(sim::Physics& /*physics*/, RandomState& /*random_state*/) {}
  virtual void AfterSubstep(sim::Physics& /*physics*/, RandomState& /*random_state*/) {}
  virtual void AfterStep(sim::Physics& /*physics*/, RandomState& /*random_state*/) {}

 protected:
  Entity() = default;

  // Must set the model through set_mjcf_model().
  virtual void Build() = 0;
  virtual void BuildObservables() {}

  void set_mjcf_model(std::shared_ptr<mjcf::ModelRoot> model) { mjcf_model_ = std::move(model); }
  void AddObservable(std::string name, ObservablePtr observable);

 private:
  template <typename T, typename... Args>
  friend std::shared_ptr<T> MakeEntity(Args&&... args);

  void Initialize();
  void CollectEntities(std::vector<Entity*>& out);

  std::shared_ptr<mjcf::ModelRoot> mjcf_model_;
  rl::OrderedDict<ObservablePtr> observables_;
  Entity* parent_ = nullptr;
  std::vector<std::shared_ptr<Entity>> children_;
  std::vector<mjcf::Element*> free_joints_;
};

template <typename T, typename... Args>
std::shared_ptr<T> MakeEntity(Args&&... args) {
  std::shared_ptr<T> entity(new T(std::forward<Args>(args)...));
  static_cast<Entity&>(*entity).Initialize();
  return entity;
}

// Entity wrapping an existing model, with optional observables.
class ModelEntity : public Entity {
 public:
  explicit ModelEntity(std::shared_ptr<mjcf::ModelRoot> model,
                       std::vector<std::pair<std::string, ObservablePtr>> observables = {})
      : model_(std::move(model)), initial_observables_(std::move(observables)) {}

 protected:
  void Build() override { set_mjcf_model(model_); }
  void BuildObservables() override {
    for (auto& [name, obs] : initial_observables_) AddObservable(name, obs);
  }

 private:
  std::shared_ptr<mjcf::ModelRoot> model_;
  std::vector<std::pair<std::string, ObservablePtr>> initial_observables_;
};

}  // namespace ctrlforge::composer

#endif  // CTRLFORGE_COMPOSER_ENTITY_H_
