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

// JSON messages exchanged with the browser viewer, and the simulation loop
// that serves them. Every message carries {"v": 1, "type": ...}.
//
// Server to client:
//   hello  {task, timestep, control_timestep, bodies: [{id, name, mass}],
//           geoms: [{id, name, body, kind, size}], camera: {lookat, distance,
//           azimuth, elevation, fovy}}
//   frame  {time, step, reward, paused, perturbing, qpos, qvel,
//           geoms: [{id, kind, size, pos, quat (w, x, y, z), rgba}]}
//   error  {message}
// Client to server:
//   pause | resume | step | reset
//   perturb {body, force | drag, point, substeps}
//     `force` is in newtons (world frame). `drag` is a mouse displacement in
//     meters, converted to drag * subtree mass * kPerturbGain. `point` is a
//     world-frame application point (default: the body's center of mass).

#ifndef CTRLFORGE_TOOLS_CLI_PROTOCOL_H_
#define CTRLFORGE_TOOLS_CLI_PROTOCOL_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "cli/policy.h"
#include "ctrlforge/suite/base.h"
#include "json.hpp"

namespace ctrlforge::cli {

inline constexpr int kProtocolVersion = 1;
// Acceleration per meter of mouse drag, 1/s^2.
inline constexpr double kPerturbGain = 10;

struct Perturbation {
  int body = 0;
  Eigen::Vector3d force = Eigen::Vector3d::Zero();
  // World frame; the body's center of mass when unset.
  std::optional<Eigen::Vector3d> point;
  int substeps = 1;
};

struct Command {
  enum class Type { kPause, kResume, kStep, kReset, kPerturb };
  Type type = Type::kPause;
  Perturbation perturbation;
};

// Throws InvalidArgumentError for malformed or unsupported messages. Only
// reads static body data of `model`, so it may run beside the simulation.
Command ParseCommand(std::string_view text, const engine::CompiledModel& model);

nlohmann::json HelloMessage(std::string_view task, suite::Environment& env);
nlohmann::json ErrorMessage(std::string_view what);

// Owns the environment and applies queued commands once per control step.
// Enqueue() may be called from any thread; the other members belong to the
// simulation thread.
class ViewerSimulation {
 public:
  ViewerSimulation(std::string task, std::unique_ptr<suite::Environment> env, PolicyKind policy,
                   std::uint64_t seed);

  void Enqueue(Command command);
  // Applies pending commands, advances one control step unless paused and
  // returns the resulting frame. A perturbation waits for the next advance
  // and lasts whole control steps (its substeps rounded up).
  nlohmann::json Tick();
  nlohmann::json Frame();
  nlohmann::json Hello();

  suite::Environment& env() { return *env_; }
  bool paused() const { return paused_; }

 private:
  void Advance();

  std::string task_;
  std::unique_ptr<suite::Environment> env_;
  Policy policy_;
  std::mutex mutex_;
  std::vector<Command> queue_;
  std::vector<Perturbation> waiting_;
  // Active perturbations with their remaining substeps.
  std::vector<Perturbation> active_;
  bool paused_ = false;
  std::int64_t step_ = 0;
  double reward_ = 0;
};

}  // namespace ctrlforge::cli

#endif  // CTRLFORGE_TOOLS_CLI_PROTOCOL_H_
