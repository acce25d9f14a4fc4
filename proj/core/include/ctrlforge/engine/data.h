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

// Simulation state and quantities derived from it.

#ifndef CTRLFORGE_ENGINE_DATA_H_
#define CTRLFORGE_ENGINE_DATA_H_

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "ctrlforge/engine/model.h"

namespace ctrlforge::engine {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

// How far derived quantities have been brought up to date with the state.
enum class Stage {
  kInvalid = 0,
  kPosition = 1,  // frames, motion subspaces, sensors
  kFull = 2,      // plus velocities, forces, mass matrix and qacc
};

struct Data {
  explicit Data(const CompiledModel& model);

  // State.
  double time = 0;
  std::int64_t nstep = 0;
  Eigen::VectorXd qpos;
  Eigen::VectorXd qvel;
  Eigen::VectorXd ctrl;
  // Inputs applied on top of the model forces.
  Eigen::VectorXd qfrc_applied;
  // Per body: force (0:3) and torque (3:6) in world coordinates, at the
  // body's center of mass.
  std::vector<Vector6d> xfrc_applied;

  // Position stage.
  std::vector<Eigen::Vector3d> xpos;
  std::vector<Eigen::Quaterniond> xquat;
  std::vector<Eigen::Matrix3d> xmat;
  std::vector<Eigen::Vector3d> xipos;
  std::vector<Eigen::Vector3d> xanchor;
  std::vector<Eigen::Vector3d> xaxis;
  std::vector<Eigen::Vector3d> geom_xpos;
  std::vector<Eigen::Matrix3d> geom_xmat;
  std::vector<Eigen::Vector3d> site_xpos;
  std::vector<Eigen::Matrix3d> site_xmat;
  std::vector<Eigen::Vector3d> cam_xpos;
  std::vector<Eigen::Matrix3d> cam_xmat;
  std::vector<Eigen::Vector3d> light_xpos;
  std::vector<Eigen::Vector3d> light_xdir;
  // Motion subspace of every degree of freedom and spatial inertia of every
  // body, both as Pluecker quantities (angular; linear) at the world origin.
  std::vector<Vector6d> cdof;
  std::vector<Matrix6d> cinert;
  Eigen::VectorXd sensordata;

  // Acceleration stage; refers to the state at the start of the most recent
  // transition once a step has been taken.
  std::vector<Vector6d> cvel;
  Eigen::MatrixXd qM;
  Eigen::VectorXd qfrc_bias;
  Eigen::VectorXd qfrc_passive;
  Eigen::VectorXd qfrc_actuator;
  Eigen::VectorXd qfrc_drag;
  Eigen::VectorXd qfrc_external;
  Eigen::VectorXd actuator_force;
  Eigen::VectorXd qacc;

  Stage stage = Stage::kInvalid;
};

}  // namespace ctrlforge::engine

#endif  // CTRLFORGE_ENGINE_DATA_H_
