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

#include "ctrlforge/engine/dynamics.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "ctrlforge/engine/inertia.h"
#include "ctrlforge/engine/rotation.h"
#include "ctrlforge/errors.h"

namespace ctrlforge::engine {
namespace {

Eigen::Matrix3d Skew(const Eigen::Vector3d& v) {
  Eigen::Matrix3d s;
  s << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return s;
}

// Spatial force (torque about the origin; force) of `force` acting at `point`.
Vector6d ForceAt(const Eigen::Vector3d& point, const Eigen::Vector3d& force,
                 const Eigen::Vector3d& torque = Eigen::Vector3d::Zero()) {
  Vector6d f;
  f.head<3>() = torque + point.cross(force);
  f.tail<3>() = force;
  return f;
}

}  // namespace

Data::Data(const CompiledModel& m)
    : qpos(m.nq()),
      qvel(Eigen::VectorXd::Zero(m.nv())),
      ctrl(Eigen::VectorXd::Zero(m.nu())),
      qfrc_applied(Eigen::VectorXd::Zero(m.nv())),
      xfrc_applied(m.nbody(), Vector6d::Zero()),
      xpos(m.nbody(), Eigen::Vector3d::Zero()),
      xquat(m.nbody(), Eigen::Quaterniond::Identity()),
      xmat(m.nbody(), Eigen::Matrix3d::Identity()),
      xipos(m.nbody(), Eigen::Vector3d::Zero()),
      xanchor(m.njnt(), Eigen::Vector3d::Zero()),
      xaxis(m.njnt(), Eigen::Vector3d::Zero()),
      geom_xpos(m.ngeom(), Eigen::Vector3d::Zero()),
      geom_xmat(m.ngeom(), Eigen::Matrix3d::Identity()),
      site_xpos(m.sites.size(), Eigen::Vector3d::Zero()),
      site_xmat(m.sites.size(), Eigen::Matrix3d::Identity()),
      cam_xpos(m.cameras.size(), Eigen::Vector3d::Zero()),
      cam_xmat(m.cameras.size(), Eigen::Matrix3d::Identity()),
      light_xpos(m.lights.size(), Eigen::Vector3d::Zero()),
      light_xdir(m.lights.size(), Eigen::Vector3d::Zero()),
      cdof(m.nv(), Vector6d::Zero()),
      cinert(m.nbody(), Matrix6d::Zero()),
      sensordata(Eigen::VectorXd::Zero(m.nsensordata())),
      cvel(m.nbody(), Vector6d::Zero()),
      qM(Eigen::MatrixXd::Zero(m.nv(), m.nv())),
      qfrc_bias(Eigen::VectorXd::Zero(m.nv())),
      qfrc_passive(Eigen::VectorXd::Zero(m.nv())),
      qfrc_actuator(Eigen::VectorXd::Zero(m.nv())),
      qfrc_drag(Eigen::VectorXd::Zero(m.nv())),
      qfrc_external(Eigen::VectorXd::Zero(m.nv())),
      actuator_force(Eigen::VectorXd::Zero(m.nu())),
      qacc(Eigen::VectorXd::Zero(m.nv())) {
  for (int j = 0; j < m.njnt(); ++j) qpos[j] = m.joints[j].qpos0;
}

void ResetData(const CompiledModel& m, Data& d) {
  for (int j = 0; j < m.njnt(); ++j) d.qpos[j] = m.joints[j].qpos0;
  d.qvel.setZero();
  d.ctrl.setZero();
  d.qfrc_applied.setZero();
  std::fill(d.xfrc_applied.begin(), d.xfrc_applied.end(), Vector6d::Zero());
  d.qacc.setZero();
  d.actuator_force.setZero();
  d.time = 0;
  d.nstep = 0;
  d.stage = Stage::kInvalid;
}

Matrix6d CrossMotion(const Vector6d& v) {
  Matrix6d x = Matrix6d::Zero();
  Eigen::Matrix3d w = Skew(v.head<3>());
  x.topLeftCorner<3, 3>() = w;
  x.bottomRightCorner<3, 3>() = w;
  x.bottomLeftCorner<3, 3>() = Skew(v.tail<3>());
  return x;
}

Matrix6d CrossForce(const Vector6d& v) { return -CrossMotion(v).transpose(); }

Matrix6d SpatialInertia(double m, const Eigen::Vector3d& c, const Eigen::Matrix3d& ic) {
  Matrix6d s;
  Eigen::Matrix3d cx = Skew(c);
  s.topLeftCorner<3, 3>() = ic + m * cx * cx.transpose();
  s.topRightCorner<3, 3>() = m * cx;
  s.bottomLeftCorner<3, 3>() = m * cx.transpose();
  s.bottomRightCorner<3, 3>() = m * Eigen::Matrix3d::Identity();
  return s;
}

void Kinematics(const CompiledModel& m, Data& d) {
  d.xpos[0].setZero();
  d.xquat[0].setIdentity();
  d.xmat[0].setIdentity();
  d.xipos[0].setZero();
  for (int b = 1; b < m.nbody(); ++b) {
    const BodyModel& body = m.bodies[b];
    int p = body.parent;
    Eigen::Vector3d pos = d.xpos[p] + d.xmat[p] * body.pos;
    Eigen::Quaterniond quat = d.xquat[p] * body.quat;
    Eigen::Matrix3d mat = quat.toRotationMatrix();
    for (int j = body.jnt_adr; j < body.jnt_adr + body.jnt_num; ++j) {
      const JointModel& joint = m.joints[j];
      Eigen::Vector3d anchor = pos + mat * joint.pos;
      Eigen::Vector3d axis = mat * joint.axis;
      d.xanchor[j] = anchor;
      d.xaxis[j] = axis;
      double delta = d.qpos[j] - joint.qpos0;
      if (joint.type == JointType::kHinge) {
        quat = (quat * AxisAngle(joint.axis, delta)).normalized();
        mat = quat.toRotationMatrix();
        pos = anchor - mat * joint.pos;
        d.cdof[j].head<3>() = axis;
        d.cdof[j].tail<3>() = anchor.cross(axis);
      } else {
        pos += axis * delta;
        d.cdof[j].head<3>().setZero();
        d.cdof[j].tail<3>() = axis;
      }
    }
    d.xpos[b] = pos;
    d.xquat[b] = quat;
    d.xmat[b] = mat;
    d.xipos[b] = pos + mat * body.ipos;
    d.cinert[b] = SpatialInertia(body.mass, d.xipos[b], mat * body.inertia * mat.transpose());
  }
  for (int g = 0; g < m.ngeom(); ++g) {
    const GeomModel& geom = m.geoms[g];
    d.geom_xpos[g] = d.xpos[geom.body] + d.xmat[geom.body] * geom.pos;
    d.geom_xmat[g] = d.xmat[geom.body] * geom.quat.toRotationMatrix();
  }
  for (std::size_t i = 0; i < m.sites.size(); ++i) {
    const SiteModel& site = m.sites[i];
    d.site_xpos[i] = d.xpos[site.body] + d.xmat[site.body] * site.pos;
    d.site_xmat[i] = d.xmat[site.body] * site.quat.toRotationMatrix();
  }
  for (std::size_t i = 0; i < m.cameras.size(); ++i) {
    const CameraModel& cam = m.cameras[i];
    d.cam_xpos[i] = d.xpos[cam.body] + d.xmat[cam.body] * cam.pos;
    d.cam_xmat[i] = d.xmat[cam.body] * cam.quat.toRotationMatrix();
  }
  for (std::size_t i = 0; i < m.lights.size(); ++i) {
    const LightModel& light = m.lights[i];
    d.light_xpos[i] = d.xpos[light.body] + d.xmat[light.body] * light.pos;
    d.light_xdir[i] = (d.xmat[light.body] * light.dir).normalized();
  }
}

void Sensors(const CompiledModel& m, Data& d) {
  for (int i = 0; i < m.nsensordata(); ++i) {
    const SensorModel& s = m.sensors[i];
    d.sensordata[i] = s.type == SensorType::kJointPos ? d.qpos[s.joint] : d.qvel[s.joint];
  }
}

void ForwardPosition(const CompiledModel& m, Data& d) {
  Kinematics(m, d);
  Sensors(m, d);
  d.stage = Stage::kPosition;
}

Eigen::MatrixXd MassMatrix(const CompiledModel& m, const Data& d) {
  std::vector<Matrix6d> composite(d.cinert);
  for (int b = m.nbody() - 1; b > 0; --b) composite[m.bodies[b].parent] += composite[b];
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(m.nv(), m.nv());
  for (int j = 0; j < m.nv(); ++j) {
    Vector6d f = composite[m.joints[j].body] * d.cdof[j];
    mass(j, j) = d.cdof[j].dot(f) + m.joints[j].armature;
    for (int k = m.joints[j].parent_dof; k >= 0; k = m.joints[k].parent_dof) {
      mass(k, j) = mass(j, k) = d.cdof[k].dot(f);
    }
  }
  return mass;
}

Eigen::VectorXd InverseDynamics(const CompiledModel& m, const Data& d,
                                const Eigen::VectorXd& qacc, InverseDynamicsOptions options) {
  std::vector<Vector6d> vel(m.nbody(), Vector6d::Zero());
  std::vector<Vector6d> acc(m.nbody(), Vector6d::Zero());
  std::vector<Vector6d> force(m.nbody(), Vector6d::Zero());
  if (options.gravity) acc[0].tail<3>() = -m.opt.gravity;
  for (int b = 1; b < m.nbody(); ++b) {
    const BodyModel& body = m.bodies[b];
    Vector6d v = vel[body.parent];
    Vector6d a = acc[body.parent];
    for (int j = body.jnt_adr; j < body.jnt_adr + body.jnt_num; ++j) {
      double qd = options.velocity ? d.qvel[j] : 0.0;
      a += d.cdof[j] * qacc[j] + CrossMotion(v) * d.cdof[j] * qd;
      v += d.cdof[j] * qd;
    }
    vel[b] = v;
    acc[b] = a;
    force[b] = d.cinert[b] * a + CrossForce(v) * (d.cinert[b] * v);
  }
  for (int b = m.nbody() - 1; b > 0; --b) force[m.bodies[b].parent] += force[b];
  Eigen::VectorXd tau(m.nv());
  for (int j = 0; j < m.nv(); ++j) tau[j] = d.cdof[j].dot(force[m.joints[j].body]);
  return tau;
}

Eigen::VectorXd BodyForcesToJoint(const CompiledModel& m, const Data& d,
                                  const std::vector<Vector6d>& forces) {
  std::vector<Vector6d> acc(forces);
  for (int b = m.nbody() - 1; b > 0; --b) acc[m.bodies[b].parent] += acc[b];
  Eigen::VectorXd tau(m.nv());
  for (int j = 0; j < m.nv(); ++j) tau[j] = d.cdof[j].dot(acc[m.joints[j].body]);
  return tau;
}

Eigen::VectorXd PassiveForces(const CompiledModel& m, const Data& d) {
  Eigen::VectorXd f(m.nv());
  for (int j = 0; j < m.nv(); ++j) {
    const JointModel& joint = m.joints[j];
    f[j] = -joint.damping * d.qvel[j] - joint.stiffness * (d.qpos[j] - joint.springref);
  }
  return f;
}

Eigen::VectorXd ActuatorForces(const CompiledModel& m, Data& d) {
  Eigen::VectorXd tau = Eigen::VectorXd::Zero(m.nv());
  for (int i = 0; i < m.nu(); ++i) {
    const ActuatorModel& a = m.actuators[i];
    double u = d.ctrl[i];
    if (a.ctrllimited) u = std::clamp(u, a.ctrlrange[0], a.ctrlrange[1]);
    double force = u;
    if (a.type == ActuatorType::kPosition) {
      force = a.kp * (u - a.gear * d.qpos[a.joint]) - a.kv * a.gear * d.qvel[a.joint];
    }
    d.actuator_force[i] = force;
    tau[a.joint] += a.gear * force;
  }
  return tau;
}

Eigen::VectorXd DragForces(const CompiledModel& m, const Data& d) {
  if (m.opt.density <= 0) return Eigen::VectorXd::Zero(m.nv());
  std::vector<Vector6d> forces(m.nbody(), Vector6d::Zero());
  bool any = false;
  for (int g = 0; g < m.ngeom(); ++g) {
    const GeomModel& geom = m.geoms[g];
    if (geom.body == 0 || geom.dragcoef <= 0) continue;
    const Vector6d& v = d.cvel[geom.body];
    const Eigen::Vector3d& p = d.geom_xpos[g];
    Eigen::Vector3d vp = v.tail<3>() + v.head<3>().cross(p);
    Eigen::Vector3d local = d.geom_xmat[g].transpose() * vp;
    Eigen::Vector3d area = ProjectedAreas(geom.type, geom.size);
    Eigen::Vector3d f_local =
        -0.5 * m.opt.density * geom.dragcoef * area.cwiseProduct(local.cwiseAbs()).cwiseProduct(local);
    forces[geom.body] += ForceAt(p, d.geom_xmat[g] * f_local);
    any = true;
  }
  if (!any) return Eigen::VectorXd::Zero(m.nv());
  return BodyForcesToJoint(m, d, forces);
}

namespace {

void ComVelocity(const CompiledModel& m, Data& d) {
  d.cvel[0].setZero();
  for (int b = 1; b < m.nbody(); ++b) {
    const BodyModel& body = m.bodies[b];
    Vector6d v = d.cvel[body.parent];
    for (int j = body.jnt_adr; j < body.jnt_adr + body.jnt_num; ++j) v += d.cdof[j] * d.qvel[j];
    d.cvel[b] = v;
  }
}

Eigen::VectorXd ExternalForces(const CompiledModel& m, const Data& d) {
  std::vector<Vector6d> forces(m.nbody(), Vector6d::Zero());
  bool any = false;
  for (int b = 1; b < m.nbody(); ++b) {
    const Vector6d& x = d.xfrc_applied[b];
    if (x.isZero()) continue;
    forces[b] = ForceAt(d.xipos[b], x.head<3>(), x.tail<3>());
    any = true;
  }
  Eigen::VectorXd f = d.qfrc_applied;
  if (any) f += BodyForcesToJoint(m, d, forces);
  return f;
}

}  // namespace

void ForwardAcceleration(const CompiledModel& m, Data& d) {
  if (d.stage == Stage::kInvalid) ForwardPosition(m, d);
  ComVelocity(m, d);
  d.qM = MassMatrix(m, d);
  d.qfrc_bias = InverseDynamics(m, d, Eigen::VectorXd::Zero(m.nv()));
  d.qfrc_passive = PassiveForces(m, d);
  d.qfrc_actuator = ActuatorForces(m, d);
  d.qfrc_drag = DragForces(m, d);
  d.qfrc_external = ExternalForces(m, d);
  Eigen::VectorXd f = d.qfrc_actuator + d.qfrc_passive + d.qfrc_drag + d.qfrc_external - d.qfrc_bias;
  if (m.nv() > 0) {
    Eigen::LLT<Eigen::MatrixXd> llt(d.qM);
    if (llt.info() != Eigen::Success) {
      throw NumericalError("mass matrix is not positive definite at time " +
                           std::to_string(d.time));
    }
    d.qacc = llt.solve(f);
  }
  d.stage = Stage::kFull;
}

void Forward(const CompiledModel& m, Data& d) {
  ForwardPosition(m, d);
  ForwardAcceleration(m, d);
}

void Integrate(const CompiledModel& m, Data& d) {
  const double h = m.opt.timestep;
  if (!d.qacc.allFinite()) {
    throw DivergenceError("simulation diverged at step " + std::to_string(d.nstep) +
                              " (time " + std::to_string(d.time) + "): non-finite acceleration",
                          d.nstep);
  }
  Eigen::VectorXd qpos;
  Eigen::VectorXd qvel;
  if (m.opt.integrator == Integrator::kEuler) {
    qvel = d.qvel + h * d.qacc;
    qpos = d.qpos + h * qvel;
  } else {
    Data scratch(d);
    auto accel = [&](const Eigen::VectorXd& q, const Eigen::VectorXd& v) {
      scratch.qpos = q;
      scratch.qvel = v;
      scratch.stage = Stage::kInvalid;
      ForwardPosition(m, scratch);
      ForwardAcceleration(m, scratch);
      return scratch.qacc;
    };
    const Eigen::VectorXd& q0 = d.qpos;
    const Eigen::VectorXd& v0 = d.qvel;
    Eigen::VectorXd k1v = d.qacc;
    Eigen::VectorXd k2q = v0 + 0.5 * h * k1v;
    Eigen::VectorXd k2v = accel(q0 + 0.5 * h * v0, k2q);
    Eigen::VectorXd k3q = v0 + 0.5 * h * k2v;
    Eigen::VectorXd k3v = accel(q0 + 0.5 * h * k2q, k3q);
    Eigen::VectorXd k4q = v0 + h * k3v;
    Eigen::VectorXd k4v = accel(q0 + h * k3q, k4q);
    qpos = q0 + h / 6 * (v0 + 2 * k2q + 2 * k3q + k4q);
    qvel = v0 + h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
  }
  if (!qpos.allFinite() || !qvel.allFinite()) {
    throw DivergenceError("simulation diverged at step " + std::to_string(d.nstep) +
                              " (time " + std::to_string(d.time) + "): non-finite state",
                          d.nstep);
  }
  d.qpos = std::move(qpos);
  d.qvel = std::move(qvel);
  d.time += h;
  ++d.nstep;
  d.stage = Stage::kInvalid;
}

void Step(const CompiledModel& m, Data& d) {
  ForwardAcceleration(m, d);
  Integrate(m, d);
  ForwardPosition(m, d);
}

Energy ComputeEnergy(const CompiledModel& m, const Data& d) {
  Energy e;
  if (m.nv() > 0) e.kinetic = 0.5 * d.qvel.dot(MassMatrix(m, d) * d.qvel);
  for (int b = 1; b < m.nbody(); ++b) {
    e.potential -= m.bodies[b].mass * m.opt.gravity.dot(d.xipos[b]);
  }
  for (int j = 0; j < m.njnt(); ++j) {
    double x = d.qpos[j] - m.joints[j].springref;
    e.potential += 0.5 * m.joints[j].stiffness * x * x;
  }
  return e;
}

}  // namespace ctrlforge::engine
