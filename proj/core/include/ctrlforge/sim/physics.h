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

// Simulation facade: owns a compiled model and its state, keeps derived
// quantities consistent with the documented step ordering, and provides
// name-based access and rendering.

#ifndef CTRLFORGE_SIM_PHYSICS_H_
#define CTRLFORGE_SIM_PHYSICS_H_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ctrlforge/engine/data.h"
#include "ctrlforge/engine/model.h"
#include "ctrlforge/mjcf/element.h"
#include "ctrlforge/sim/binding.h"
#include "ctrlforge/sim/named_view.h"
#include "ctrlforge/sim/render.h"

namespace ctrlforge::sim {

struct RenderOptions {
  int width = 320;
  int height = 240;
  int camera = -1;           // -1: free camera
  std::string camera_name;   // overrides `camera` when non-empty
  RenderMode mode = RenderMode::kRgb;
};

class Physics {
 public:
  explicit Physics(engine::CompiledModel model);
  // Compile errors propagate (CompileError).
  static Physics FromModel(const mjcf::ModelRoot& model);
  static Physics FromXmlString(std::string_view xml);
  static Physics FromXmlFile(const std::string& path);

  const engine::CompiledModel& model() const { return model_; }
  // Static parameters may be edited between steps.
  engine::CompiledModel& mutable_model() { return model_; }
  engine::Data& data() { return data_; }
  const engine::Data& data() const { return data_; }

  double time() const { return data_.time; }
  double timestep() const { return model_.opt.timestep; }

  // Per substep: the control-dependent half of the transition for the
  // current state, integration, then the position stage of the new state.
  // Throws DivergenceError; the state is then that of the failed substep.
  void Step(int substeps = 1);
  // Recomputes all derived quantities for the current state without
  // advancing time.
  void Forward();
  // Resets to the reference state, runs `mutator`, then Forward(). If the
  // mutator throws or leaves arrays with the wrong size, the state is made
  // consistent again before the error propagates.
  void ResetContext(const std::function<void(Physics&)>& mutator = {});
  void Reset() { ResetContext(); }

  // Position and velocity, concatenated.
  Eigen::VectorXd State() const;
  // Sets qpos/qvel from State() output and runs Forward().
  void SetState(const Eigen::VectorXd& state);

  NamedView Named(Field field) { return NamedView(*this, field); }
  NamedView Named(std::string_view field) { return NamedView(*this, ParseField(field)); }

  // Throw IndexError / UnknownNameError.
  std::string Id2Name(int id, mjcf::Namespace ns) const;
  int Name2Id(std::string_view name, mjcf::Namespace ns) const;

  Binding Bind(const std::vector<const mjcf::Element*>& elements) {
    return Binding(*this, elements);
  }
  Binding Bind(const std::vector<mjcf::Element*>& elements) {
    return Binding(*this, {elements.begin(), elements.end()});
  }
  Binding Bind(const mjcf::Element* element) { return Binding(*this, {element}); }

  Frame Render(const RenderOptions& options = {});
  FreeCamera& free_camera() { return free_camera_; }

 private:
  engine::CompiledModel model_;
  engine::Data data_;
  FreeCamera free_camera_;
};

}  // namespace ctrlforge::sim

#endif  // CTRLFORGE_SIM_PHYSICS_H_
