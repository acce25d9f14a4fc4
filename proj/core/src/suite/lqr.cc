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

#include "ctrlforge/suite/lqr.h"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <unsupported/Eigen/MatrixFunctions>

#include "ctrlforge/engine/dynamics.h"
#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/attr_value.h"
#include "suite/common.h"

namespace ctrlforge::suite {
namespace {

double MaxAbs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXd RiccatiUpdate(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                              const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                              const Eigen::MatrixXd& P) {
  const Eigen::MatrixXd btpa = B.transpose() * P * A;
  const Eigen::MatrixXd s = R + B.transpose() * P * B;
  Eigen::MatrixXd next = Q + A.transpose() * P * A - btpa.transpose() * s.ldlt().solve(btpa);
  return (next + next.transpose()) / 2;
}

}  // namespace

RiccatiSolution SolveRiccati(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                             const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R, double tol,
                             int max_iter) {
  const Eigen::Index n = A.rows();
  const Eigen::Index m = B.cols();
  if (A.cols() != n || B.rows() != n || Q.rows() != n || Q.cols() != n || R.rows() != m ||
      R.cols() != m) {
    throw InvalidArgumentError("Riccati: inconsistent matrix shapes");
  }
  if (m > 0 && Eigen::LLT<Eigen::MatrixXd>(R).info() != Eigen::Success) {
    throw InvalidArgumentError("Riccati: R must be positive definite");
  }
  if (!(tol > 0)) throw InvalidArgumentError("Riccati: tolerance must be positive");
  RiccatiSolution out;
  Eigen::MatrixXd P = Q;
  double change = 0;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::MatrixXd next = RiccatiUpdate(A, B, Q, R, P);
    if (!next.allFinite()) {
      throw ConvergenceError("Riccati iteration diverged after " + std::to_string(it) +
                                 " iterations",
                             std::numeric_limits<double>::infinity());
    }
    change = MaxAbs(next - P);
    P = std::move(next);
    if (change < tol * std::max(1.0, MaxAbs(P))) {
      out.iterations = it;
      out.P = P;
      out.K = (R + B.transpose() * P * B).ldlt().solve(B.transpose() * P * A);
      out.residual = MaxAbs(RiccatiUpdate(A, B, Q, R, P) - P);
      return out;
    }
  }
  throw ConvergenceError("Riccati iteration did not converge in " + std::to_string(max_iter) +
                             " iterations (last change " + mjcf::FormatNumber(change) + ")",
                         MaxAbs(RiccatiUpdate(A, B, Q, R, P) - P));
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> Discretize(const Eigen::MatrixXd& Ac,
                                                       const Eigen::MatrixXd& Bc, double h) {
  const Eigen::Index n = Ac.rows();
  const Eigen::Index m = Bc.cols();
  Eigen::MatrixXd augmented = Eigen::MatrixXd::Zero(n + m, n + m);
  augmented.topLeftCorner(n, n) = Ac * h;
  augmented.topRightCorner(n, m) = Bc * h;
  const Eigen::MatrixXd e = augmented.exp();
  return {e.topLeftCorner(n, n), e.topRightCorner(n, m)};
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> LinearDynamics(const sim::Physics& physics) {
  const engine::CompiledModel& model = physics.model();
  const int nv = model.nv();
  const int nu = model.nu();
  Eigen::MatrixXd stiffness = Eigen::MatrixXd::Zero(nv, nv);
  Eigen::MatrixXd damping = Eigen::MatrixXd::Zero(nv, nv);
  for (int j = 0; j < nv; ++j) {
    if (model.joints[j].type != engine::JointType::kSlide) {
      throw InvalidArgumentError("linear dynamics require slide joints only");
    }
    stiffness(j, j) = model.joints[j].stiffness;
    damping(j, j) = model.joints[j].damping;
  }
  Eigen::MatrixXd gear = Eigen::MatrixXd::Zero(nv, nu);
  for (int a = 0; a < nu; ++a) {
    const engine::ActuatorModel& act = model.actuators[a];
    if (act.type != engine::ActuatorType::kMotor) {
      throw InvalidArgumentError("linear dynamics require motor actuators");
    }
    gear(act.joint, a) = act.gear;
  }
  const Eigen::MatrixXd mass = engine::MassMatrix(model, physics.data());
  const Eigen::LDLT<Eigen::MatrixXd> solver(mass);
  Eigen::MatrixXd Ac = Eigen::MatrixXd::Zero(2 * nv, 2 * nv);
  Ac.topRightCorner(nv, nv).setIdentity();
  Ac.bottomLeftCorner(nv, nv) = -solver.solve(stiffness);
  Ac.bottomRightCorner(nv, nv) = -solver.solve(damping);
  Eigen::MatrixXd Bc = Eigen::MatrixXd::Zero(2 * nv, nu);
  Bc.bottomRows(nv) = solver.solve(gear);
  return {Ac, Bc};
}

std::string LqrModelXml(int n, int m, double timestep) {
  if (n < 1 || m < 1 || m > n) {
    throw InvalidArgumentError("LQR needs 1 <= m <= n, got n=" + std::to_string(n) +
                               ", m=" + std::to_string(m));
  }
  std::string bodies;
  for (int i = 0; i < n; ++i) {
    const std::string id = std::to_string(i);
    bodies += "<body name=\"body_" + id + "\"" + (i > 0 ? " pos=\".25 0 0\"" : "") + ">\n";
    bodies += "<joint name=\"joint_" + id + "\" type=\"slide\" axis=\"1 0 0\" stiffness=\"" +
              mjcf::FormatNumber(kLqrStiffness) + "\" damping=\"0\"/>\n";
    bodies += "<geom name=\"geom_" + id + "\" type=\"sphere\" size=\".05\" mass=\"" +
              mjcf::FormatNumber(kLqrMass) + "\" material=\"self\"/>\n";
  }
  for (int i = 0; i < n; ++i) bodies += "</body>\n";
  std::string motors;
  for (int i = 0; i < m; ++i) {
    const std::string id = std::to_string(i);
    motors += "<motor name=\"motor_" + id + "\" joint=\"joint_" + id + "\"/>\n";
  }
  return "<mujoco model=\"LQR\">\n<option timestep=\"" + mjcf::FormatNumber(timestep) +
         "\" gravity=\"0 0 0\"/>" + internal::CommonAssets() +
         R"(<worldbody>
<light name="light" pos="0 0 2"/>
<camera name="fixed" pos=")" +
         mjcf::FormatNumber(0.125 * (n - 1)) + " -" + mjcf::FormatNumber(1 + 0.25 * n) +
         R"( .5" xyaxes="1 0 0 0 0 1"/>
<geom name="floor" type="plane" pos="0 0 -.1" size="4 4 .1" material="grid"/>
)" + bodies + "</worldbody>\n<actuator>\n" +
         motors + "</actuator>\n</mujoco>\n";
}

LqrSpec MakeLqrSpec(int n, int m, double timestep) {
  sim::Physics physics = sim::Physics::FromXmlString(LqrModelXml(n, m, timestep));
  physics.Forward();
  auto [Ac, Bc] = LinearDynamics(physics);
  LqrSpec spec;
  spec.n = n;
  spec.m = m;
  spec.timestep = timestep;
  std::tie(spec.A, spec.B) = Discretize(Ac, Bc, timestep);
  spec.Q = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  spec.R = kLqrControlCost * Eigen::MatrixXd::Identity(m, m);
  return spec;
}

LqrTask::LqrTask(int n, int m)
    : spec_(MakeLqrSpec(n, m)),
      solution_(SolveRiccati(spec_.A, spec_.B, spec_.Q, spec_.R)),
      last_action_(Eigen::VectorXd::Zero(m)) {}

Eigen::VectorXd LqrTask::State(const sim::Physics& physics) const {
  Eigen::VectorXd x(2 * spec_.n);
  x << physics.data().qpos, physics.data().qvel;
  return x;
}

Eigen::VectorXd LqrTask::OptimalAction(const sim::Physics& physics) const {
  return -solution_.K * State(physics);
}

void LqrTask::InitializeEpisode(sim::Physics& physics, RandomState& random_state) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd q(spec_.n);
  do {
    for (int i = 0; i < spec_.n; ++i) q[i] = normal(random_state);
  } while (q.norm() == 0);
  physics.data().qpos = q.normalized() * std::sqrt(2.0);
  physics.data().qvel.setZero();
  last_action_.setZero();
}

void LqrTask::BeforeStep(const Eigen::VectorXd& action, sim::Physics& physics) {
  last_action_ = action;
  physics.data().ctrl = action;
}

void LqrTask::Advance(sim::Physics& physics, int substeps) {
  engine::Data& d = physics.data();
  for (int s = 0; s < substeps; ++s) {
    const Eigen::VectorXd x = spec_.A * State(physics) + spec_.B * d.ctrl;
    d.qpos = x.head(spec_.n);
    d.qvel = x.tail(spec_.n);
    d.time += spec_.timestep;
    ++d.nstep;
  }
  physics.Forward();
}

rl::Observation LqrTask::GetObservation(sim::Physics& physics) {
  rl::Observation obs;
  obs.Insert("position", rl::Array::FromVector(physics.data().qpos));
  obs.Insert("velocity", rl::Array::FromVector(physics.data().qvel));
  return obs;
}

double LqrTask::GetReward(sim::Physics& physics) {
  const Eigen::VectorXd x = State(physics);
  const double cost = x.dot(spec_.Q * x) + last_action_.dot(spec_.R * last_action_);
  return -cost * spec_.timestep;
}

std::optional<double> LqrTask::GetTermination(sim::Physics& physics) {
  if (State(physics).cwiseAbs().maxCoeff() < kLqrTerminationThreshold) return 0.0;
  return std::nullopt;
}

namespace internal {

std::unique_ptr<Environment> LoadLqr(std::string_view task, const LoadOptions& options) {
  Kwargs kwargs(options.task_kwargs);
  int n = 0;
  int m = 0;
  if (task == "lqr_2_1") {
    n = 2;
    m = 1;
  } else if (task == "lqr_6_2") {
    n = 6;
    m = 2;
  } else {
    throw UnknownTaskError("lqr:" + std::string(task));
  }
  n = kwargs.GetInt("n", n, 1, 50);
  m = kwargs.GetInt("m", m, 1, 50);
  kwargs.CheckAllUsed();
  const std::string xml = LqrModelXml(n, m);
  return MakeEnvironment(xml, std::make_unique<LqrTask>(n, m), options, kLqrTimestep,
                         1000 * kLqrTimestep);
}

}  // namespace internal
}  // namespace ctrlforge::suite
