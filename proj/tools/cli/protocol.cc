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

#include "cli/protocol.h"

#include <algorithm>
#include <utility>

#include <Eigen/Geometry>

#include "ctrlforge/errors.h"

namespace ctrlforge::cli {
namespace {

using nlohmann::json;

const char* GeomKind(engine::GeomType type) {
  switch (type) {
    case engine::GeomType::kPlane: return "plane";
    case engine::GeomType::kSphere: return "sphere";
    case engine::GeomType::kCapsule: return "capsule";
    case engine::GeomType::kCylinder: return "cylinder";
    case engine::GeomType::kBox: return "box";
    case engine::GeomType::kEllipsoid: return "ellipsoid";
  }
  return "";
}

template <typename Vector>
json ToJson(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::Vector3d Vector3(const json& message, const char* key) {
  const json& v = message.at(key);
  if (!v.is_array() || v.size() != 3) {
    throw InvalidArgumentError(std::string("'") + key + "' must be an array of 3 numbers");
  }
  Eigen::Vector3d out;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_number()) {
      throw InvalidArgumentError(std::string("'") + key + "' must be an array of 3 numbers");
    }
    out[i] = v[i].get<double>();
  }
  if (!out.allFinite()) throw InvalidArgumentError(std::string("'") + key + "' must be finite");
  return out;
}

json Envelope(const char* type) { return json{{"v", kProtocolVersion}, {"type", type}}; }

}  // namespace

Command ParseCommand(std::string_view text, const engine::CompiledModel& model) {
  json message = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (message.is_discarded() || !message.is_object()) {
    throw InvalidArgumentError("message is not a JSON object");
  }
  if (!message.contains("v") || message["v"] != kProtocolVersion) {
    throw InvalidArgumentError("unsupported protocol version (expected v=1)");
  }
  if (!message.contains("type") || !message["type"].is_string()) {
    throw InvalidArgumentError("message has no type");
  }
  const std::string type = message["type"];
  Command command;
  if (type == "pause") {
    command.type = Command::Type::kPause;
  } else if (type == "resume") {
    command.type = Command::Type::kResume;
  } else if (type == "step") {
    command.type = Command::Type::kStep;
  } else if (type == "reset") {
    command.type = Command::Type::kReset;
  } else if (type == "perturb") {
    command.type = Command::Type::kPerturb;
    Perturbation& p = command.perturbation;
    try {
      if (!message.at("body").is_number_integer()) throw InvalidArgumentError("");
      p.body = message["body"].get<int>();
    } catch (const std::exception&) {
      throw InvalidArgumentError("perturb needs an integer 'body'");
    }
    if (p.body <= 0 || p.body >= model.nbody()) {
      throw InvalidArgumentError("perturb body " + std::to_string(p.body) + " is not a movable body");
    }
    if (message.contains("force")) {
      p.force = Vector3(message, "force");
    } else if (message.contains("drag")) {
      p.force = Vector3(message, "drag") * model.bodies[p.body].subtree_mass * kPerturbGain;
    } else {
      throw InvalidArgumentError("perturb needs 'force' or 'drag'");
    }
    if (message.contains("point")) p.point = Vector3(message, "point");
    if (message.contains("substeps")) {
      if (!message["substeps"].is_number_integer() || message["substeps"].get<int>() < 1) {
        throw InvalidArgumentError("perturb 'substeps' must be a positive integer");
      }
      p.substeps = message["substeps"].get<int>();
    }
  } else {
    throw InvalidArgumentError("unknown message type '" + type + "'");
  }
  return command;
}

json HelloMessage(std::string_view task, suite::Environment& env) {
  const sim::Physics& physics = *env.physics();
  const engine::CompiledModel& model = physics.model();
  json hello = Envelope("hello");
  hello["task"] = task;
  hello["timestep"] = physics.timestep();
  hello["control_timestep"] = env.control_timestep();
  json bodies = json::array();
  for (int b = 0; b < model.nbody(); ++b) {
    bodies.push_back({{"id", b},
                      {"name", model.names[static_cast<int>(mjcf::Namespace::kBody)][b]},
                      {"mass", model.bodies[b].mass}});
  }
  hello["bodies"] = std::move(bodies);
  json geoms = json::array();
  for (int g = 0; g < model.ngeom(); ++g) {
    geoms.push_back({{"id", g},
                     {"name", model.names[static_cast<int>(mjcf::Namespace::kGeom)][g]},
                     {"body", model.geoms[g].body},
                     {"kind", GeomKind(model.geoms[g].type)},
                     {"size", ToJson(model.geoms[g].size)}});
  }
  hello["geoms"] = std::move(geoms);
  const sim::FreeCamera camera = sim::DefaultFreeCamera(model);
  hello["camera"] = {{"lookat", ToJson(camera.lookat)},
                     {"distance", camera.distance},
                     {"azimuth", camera.azimuth},
                     {"elevation", camera.elevation},
                     {"fovy", camera.fovy}};
  return hello;
}

json ErrorMessage(std::string_view what) {
  json error = Envelope("error");
  error["message"] = what;
  return error;
}

ViewerSimulation::ViewerSimulation(std::string task, std::unique_ptr<suite::Environment> env,
                                   PolicyKind policy, std::uint64_t seed)
    : task_(std::move(task)), env_(std::move(env)), policy_(policy, *env_, seed) {
  env_->Reset();
}

void ViewerSimulation::Enqueue(Command command) {
  std::lock_guard<std::mutex> lock(mutex_);
  queue_.push_back(std::move(command));
}

json ViewerSimulation::Hello() { return HelloMessage(task_, *env_); }

void ViewerSimulation::Advance() {
  for (Perturbation& p : waiting_) active_.push_back(p);
  waiting_.clear();
  sim::Physics& physics = *env_->physics();
  engine::Data& d = physics.data();
  for (auto& f : d.xfrc_applied) f.setZero();
  for (const Perturbation& p : active_) {
    d.xfrc_applied[p.body].head<3>() += p.force;
    if (p.point) {
      d.xfrc_applied[p.body].tail<3>() += (*p.point - d.xipos[p.body]).cross(p.force);
    }
  }
  const rl::TimeStep ts = env_->Step(policy_.Act());
  for (auto& f : d.xfrc_applied) f.setZero();
  for (Perturbation& p : active_) p.substeps -= env_->substeps();
  std::erase_if(active_, [](const Perturbation& p) { return p.substeps <= 0; });
  if (ts.first()) {
    step_ = 0;
    reward_ = 0;
  } else {
    ++step_;
    reward_ = ts.reward.value_or(0);
  }
}

json ViewerSimulation::Tick() {
  std::vector<Command> commands;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    commands.swap(queue_);
  }
  int steps = paused_ ? 0 : 1;
  for (const Command& command : commands) {
    switch (command.type) {
      case Command::Type::kPause:
        paused_ = true;
        steps = 0;
        break;
      case Command::Type::kResume:
        paused_ = false;
        steps = std::max(steps, 1);
        break;
      case Command::Type::kStep:
        ++steps;
        break;
      case Command::Type::kReset:
        env_->Reset();
        waiting_.clear();
        active_.clear();
        step_ = 0;
        reward_ = 0;
        steps = 0;
        break;
      case Command::Type::kPerturb:
        waiting_.push_back(command.perturbation);
        break;
    }
  }
  for (int i = 0; i < steps; ++i) Advance();
  return Frame();
}

json ViewerSimulation::Frame() {
  const sim::Physics& physics = *env_->physics();
  const engine::CompiledModel& model = physics.model();
  const engine::Data& d = physics.data();
  json frame = Envelope("frame");
  frame["time"] = physics.time();
  frame["step"] = step_;
  frame["reward"] = reward_;
  frame["paused"] = paused_;
  frame["perturbing"] = !active_.empty() || !waiting_.empty();
  frame["qpos"] = ToJson(d.qpos);
  frame["qvel"] = ToJson(d.qvel);
  json geoms = json::array();
  for (int g = 0; g < model.ngeom(); ++g) {
    const engine::GeomModel& geom = model.geoms[g];
    const Eigen::Quaterniond q(d.geom_xmat[g]);
    geoms.push_back({{"id", g},
                     {"kind", GeomKind(geom.type)},
                     {"size", ToJson(geom.size)},
                     {"pos", ToJson(d.geom_xpos[g])},
                     {"quat", {q.w(), q.x(), q.y(), q.z()}},
                     {"rgba", ToJson(geom.rgba)}});
  }
  frame["geoms"] = std::move(geoms);
  return frame;
}

}  // namespace ctrlforge::cli
