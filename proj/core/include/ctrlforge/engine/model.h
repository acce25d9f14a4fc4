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

// Compiled, immutable description of a kinematic tree of rigid bodies.
//
// Body 0 is the world. Bodies are stored parent-before-child. Every joint has
// exactly one position and one velocity coordinate, so joint j owns qpos[j]
// and qvel[j].

#ifndef CTRLFORGE_ENGINE_MODEL_H_
#define CTRLFORGE_ENGINE_MODEL_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "ctrlforge/mjcf/schema.h"

namespace ctrlforge::engine {

enum class JointType { kHinge, kSlide };
enum class GeomType { kPlane, kSphere, kCapsule, kCylinder, kBox, kEllipsoid };
enum class ActuatorType { kMotor, kPosition };
enum class SensorType { kJointPos, kJointVel };
enum class Integrator { kEuler, kRK4 };

struct BodyModel {
  int parent = -1;
  Eigen::Vector3d pos = Eigen::Vector3d::Zero();  // in parent frame
  Eigen::Quaterniond quat = Eigen::Quaterniond::Identity();
  double mass = 0;
  Eigen::Vector3d ipos = Eigen::Vector3d::Zero();  // center of mass, body frame
  Eigen::Matrix3d inertia = Eigen::Matrix3d::Zero();  // about ipos, body frame
  int jnt_adr = 0;
  int jnt_num = 0;
  double subtree_mass = 0;
};

struct JointModel {
  JointType type = JointType::kHinge;
  int body = 0;
  Eigen::Vector3d pos = Eigen::Vector3d::Zero();   // anchor, body frame
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();  // unit, body frame
  double damping = 0;
  double stiffness = 0;
  double springref = 0;
  double qpos0 = 0;  // reference configuration (`ref`)
  double armature = 0;
  bool limited = false;
  std::array<double, 2> range = {0, 0};
  int parent_dof = -1;  // nearest ancestor degree of freedom
};

struct GeomModel {
  GeomType type = GeomType::kSphere;
  int body = 0;
  Eigen::Vector3d size = Eigen::Vector3d::Zero();
  Eigen::Vector3d pos = Eigen::Vector3d::Zero();
  Eigen::Quaterniond quat = Eigen::Quaterniond::Identity();
  Eigen::Vector4d rgba{0.5, 0.5, 0.5, 1};
  double mass = 0;
  double dragcoef = 1;
  int material = -1;
  int group = 0;
};

struct SiteModel {
  int body = 0;
  Eigen::Vector3d size{0.005, 0.005, 0.005};
  Eigen::Vector3d pos = Eigen::Vector3d::Zero();
  Eigen::Quaterniond quat = Eigen::Quaterniond::Identity();
  Eigen::Vector4d rgba{0.5, 0.5, 0.5, 1};
};

struct CameraModel {
  int body = 0;
  Eigen::Vector3d pos = Eigen::Vector3d::Zero();
  Eigen::Quaterniond quat = Eigen::Quaterniond::Identity();  // looks along -z, y up
  double fovy = 45;  // degrees
};

struct LightModel {
  int body = 0;
  Eigen::Vector3d pos{0, 0, 10};
  Eigen::Vector3d dir{0, 0, -1};
  bool directional = false;
  Eigen::Vector3d diffuse{0.7, 0.7, 0.7};
  Eigen::Vector3d ambient{0, 0, 0};
};

struct TextureModel {
  bool checker = false;
  Eigen::Vector3d rgb1{0.8, 0.8, 0.8};
  Eigen::Vector3d rgb2{0.5, 0.5, 0.5};
};

struct MaterialModel {
  Eigen::Vector4d rgba{1, 1, 1, 1};
  int texture = -1;
  std::array<double, 2> texrepeat = {1, 1};
};

struct ActuatorModel {
  ActuatorType type = ActuatorType::kMotor;
  int joint = 0;
  double gear = 1;
  double kp = 1;
  double kv = 0;
  bool ctrllimited = false;
  std::array<double, 2> ctrlrange = {0, 0};
};

struct SensorModel {
  SensorType type = SensorType::kJointPos;
  int joint = 0;
};

struct Options {
  double timestep = 0.002;
  Eigen::Vector3d gravity{0, 0, -9.81};
  Integrator integrator = Integrator::kEuler;
  double density = 0;  // fluid density for drag
};

struct CompiledModel {
  std::vector<BodyModel> bodies;
  std::vector<JointModel> joints;
  std::vector<GeomModel> geoms;
  std::vector<SiteModel> sites;
  std::vector<CameraModel> cameras;
  std::vector<LightModel> lights;
  std::vector<TextureModel> textures;
  std::vector<MaterialModel> materials;
  std::vector<ActuatorModel> actuators;
  std::vector<SensorModel> sensors;
  Options opt;

  int nbody() const { return static_cast<int>(bodies.size()); }
  int njnt() const { return static_cast<int>(joints.size()); }
  int nq() const { return njnt(); }
  int nv() const { return njnt(); }
  int nu() const { return static_cast<int>(actuators.size()); }
  int ngeom() const { return static_cast<int>(geoms.size()); }
  int nsensordata() const { return static_cast<int>(sensors.size()); }

  // Full identifiers ("" for unnamed elements), indexed per namespace.
  std::array<std::vector<std::string>, mjcf::kNumNamespaces> names;
  // Source element serials, indexed like `names`.
  std::array<std::vector<std::uint64_t>, mjcf::kNumNamespaces> serials;

  // Returns -1 when absent.
  int NameToId(mjcf::Namespace ns, std::string_view name) const;
  int SerialToId(mjcf::Namespace ns, std::uint64_t serial) const;
  int Count(mjcf::Namespace ns) const;

  // Builds the reverse lookup tables; called by the compiler.
  void IndexNames();

 private:
  std::array<std::unordered_map<std::string, int>, mjcf::kNumNamespaces> name_index_;
  std::array<std::unordered_map<std::uint64_t, int>, mjcf::kNumNamespaces> serial_index_;
};

}  // namespace ctrlforge::engine

#endif  // CTRLFORGE_ENGINE_MODEL_H_
