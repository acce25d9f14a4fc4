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

// Kinematics, dynamics and time integration.
//
// Quantities are computed in two stages, mirroring the split of a time step:
// ForwardPosition brings frames and sensors up to date with qpos/qvel;
// ForwardAcceleration evaluates forces and solves M(q) qacc = f. Step runs
// the acceleration stage (and the position stage first, if stale) and
// integration for the current state, then the position stage for the new
// state. Acceleration-stage quantities therefore describe the transition
// just taken.

#ifndef CTRLFORGE_ENGINE_DYNAMICS_H_
#define CTRLFORGE_ENGINE_DYNAMICS_H_

#include <Eigen/Core>

#include "ctrlforge/engine/data.h"
#include "ctrlforge/engine/model.h"

namespace ctrlforge::engine {

// Spatial cross products for motion and force vectors.
Matrix6d CrossMotion(const Vector6d& v);
Matrix6d CrossForce(const Vector6d& v);
// Spatial inertia at the world origin of a body with mass `m`, center of
// mass `c` and rotational inertia `ic` about c (world axes).
Matrix6d SpatialInertia(double m, const Eigen::Vector3d& c, const Eigen::Matrix3d& ic);

void Kinematics(const CompiledModel& m, Data& d);
void Sensors(const CompiledModel& m, Data& d);
void ForwardPosition(const CompiledModel& m, Data& d);

// Composite rigid body algorithm; requires the position stage. Includes
// joint armature on the diagonal.
Eigen::MatrixXd MassMatrix(const CompiledModel& m, const Data& d);

struct InverseDynamicsOptions {
  bool gravity = true;
  bool velocity = true;
};
// Recursive Newton-Euler: generalized forces that produce `qacc` given the
// current positions (and velocities, if enabled). Excludes armature.
Eigen::VectorXd InverseDynamics(const CompiledModel& m, const Data& d,
                                const Eigen::VectorXd& qacc,
                                InverseDynamicsOptions options = {});

// Generalized force of spatial forces (torque; force) at the world origin,
// one per body.
Eigen::VectorXd BodyForcesToJoint(const CompiledModel& m, const Data& d,
                                  const std::vector<Vector6d>& forces);

Eigen::VectorXd PassiveForces(const CompiledModel& m, const Data& d);
// Fills d.actuator_force and returns the generalized actuator force.
Eigen::VectorXd ActuatorForces(const CompiledModel& m, Data& d);
Eigen::VectorXd DragForces(const CompiledModel& m, const Data& d);

void ForwardAcceleration(const CompiledModel& m, Data& d);
void Forward(const CompiledModel& m, Data& d);

// Advances qpos, qvel and time by one timestep using the model integrator.
// Requires the acceleration stage. Throws DivergenceError (state unchanged)
// if the new state is not finite.
void Integrate(const CompiledModel& m, Data& d);
void Step(const CompiledModel& m, Data& d);

struct Energy {
  double kinetic = 0;
  double potential = 0;  // gravitational plus joint springs
  double total() const { return kinetic + potential; }
};
// Requires the position stage.
Energy ComputeEnergy(const CompiledModel& m, const Data& d);

// Resets qpos to the reference configuration and zeroes velocities,
// controls, applied forces and time.
void ResetData(const CompiledModel& m, Data& d);

}  // namespace ctrlforge::engine

#endif  // CTRLFORGE_ENGINE_DYNAMICS_H_
