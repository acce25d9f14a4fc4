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

// Linear-quadratic regulator: discrete Riccati iteration and the chain of
// spring-coupled masses it controls.

#ifndef CTRLFORGE_SUITE_LQR_H_
#define CTRLFORGE_SUITE_LQR_H_

#include <string>
#include <utility>

#include <Eigen/Core>

#include "ctrlforge/suite/base.h"

namespace ctrlforge::suite {

struct RiccatiSolution {
  Eigen::MatrixXd P;  // value matrix
  Eigen::MatrixXd K;  // gain, u = -K x
  int iterations = 0;
  // Max-abs residual of the discrete algebraic Riccati equation.
  double residual = 0;
};

// Iterates P <- Q + A'PA - A'PB (R + B'PB)^-1 B'PA from P = Q until the
// max-abs change falls below tol * max(1, max|P|). Throws ConvergenceError
// after max_iter iterations and InvalidArgumentError for mismatched shapes
// or R not positive definite.
RiccatiSolution SolveRiccati(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                             const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                             double tol = 1e-12, int max_iter = 1'000'000);

// Zero-order-hold discretization of x' = Ac x + Bc u over `h`.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> Discretize(const Eigen::MatrixXd& Ac,
                                                       const Eigen::MatrixXd& Bc, double h);

// Continuous-time linear dynamics of a model whose joints are all slides
// (constant mass matrix), with state x = (qpos - qpos0, qvel) and input ctrl
// through motors.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> LinearDynamics(const sim::Physics& physics);

struct LqrSpec {
  int n = 0;  // masses
  int m = 0;  // actuated masses
  double timestep = 0;
  Eigen::MatrixXd A, B, Q, R;
};

inline constexpr double kLqrTimestep = 0.01;
inline constexpr double kLqrControlCost = 0.1;
inline constexpr double kLqrMass = 0.01;
inline constexpr double kLqrStiffness = 10;

// Chain of `n` masses (kLqrMass) on slide joints joined by springs
// (kLqrStiffness, no damping); the first
// `m` joints carry unbounded motors. Throws InvalidArgumentError unless
// 1 <= m <= n.
std::string LqrModelXml(int n, int m, double timestep = kLqrTimestep);
// Q = I, R = kLqrControlCost * I.
LqrSpec MakeLqrSpec(int n, int m, double timestep = kLqrTimestep);

// Reward -(x'Qx + u'Ru) h; the episode terminates with discount 0 once
// max|x| < 1e-4. Steps by the exact discretization rather than the engine
// integrator. Initial positions have norm sqrt(2), velocities are zero.
class LqrTask : public Task {
 public:
  LqrTask(int n, int m);

  const LqrSpec& spec() const { return spec_; }
  const RiccatiSolution& solution() const { return solution_; }
  Eigen::VectorXd State(const sim::Physics& physics) const;
  // -K x for the current state.
  Eigen::VectorXd OptimalAction(const sim::Physics& physics) const;

  void InitializeEpisode(sim::Physics& physics, RandomState& random_state) override;
  void BeforeStep(const Eigen::VectorXd& action, sim::Physics& physics) override;
  void Advance(sim::Physics& physics, int substeps) override;
  rl::Observation GetObservation(sim::Physics& physics) override;
  double GetReward(sim::Physics& physics) override;
  std::optional<double> GetTermination(sim::Physics& physics) override;

 private:
  LqrSpec spec_;
  RiccatiSolution solution_;
  Eigen::VectorXd last_action_;
};

inline constexpr double kLqrTerminationThreshold = 1e-4;

}  // namespace ctrlforge::suite

#endif  // CTRLFORGE_SUITE_LQR_H_
