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

// Vectorized access to model and simulation fields of a set of elements.

#ifndef CTRLFORGE_SIM_BINDING_H_
#define CTRLFORGE_SIM_BINDING_H_

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ctrlforge/mjcf/element.h"

namespace ctrlforge::sim {

class Physics;

// Resolves each element to its compiled index once. Fields are addressed by
// name; Get returns one row per element. Static fields (e.g. geom "rgba",
// body "mass") read and write the compiled model; dynamic fields (e.g.
// joint "qpos", actuator "ctrl", body "xpos") the simulation data.
class Binding {
 public:
  // Throws BindingError for mixed namespaces, untagged elements, or
  // elements absent from the compiled model.
  Binding(Physics& physics, const std::vector<const mjcf::Element*>& elements);

  std::size_t size() const { return ids_.size(); }
  std::optional<mjcf::Namespace> ns() const { return ns_; }
  const std::vector<int>& ids() const { return ids_; }

  // Throws BindingError for fields that do not exist in the namespace.
  Eigen::MatrixXd Get(std::string_view field) const;
  void Set(std::string_view field, const Eigen::MatrixXd& values);
  // Single-column fields as vectors.
  Eigen::VectorXd GetVector(std::string_view field) const;
  void SetVector(std::string_view field, const Eigen::VectorXd& values);

  // Field names available for the bound namespace.
  std::vector<std::string_view> Fields() const;

 private:
  Physics* physics_;
  std::optional<mjcf::Namespace> ns_;
  std::vector<int> ids_;
};

}  // namespace ctrlforge::sim

#endif  // CTRLFORGE_SIM_BINDING_H_
