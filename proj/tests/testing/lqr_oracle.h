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

// Closed-form and rollout costs for linear feedback, independent of the
// Riccati solver.

#ifndef CTRLFORGE_TESTS_TESTING_LQR_ORACLE_H_
#define CTRLFORGE_TESTS_TESTING_LQR_ORACLE_H_

#include <cmath>
#include <limits>

#include <Eigen/Core>
#include <Eigen/LU>

#include "ctrlforge/suite/lqr.h"

namespace ctrlforge::testing {

// Solves P = Q + F' P F by vectorization: (I - F' (x) F') vec(P) = vec(Q).
inline Eigen::MatrixXd Lyapunov(const Eigen::MatrixXd& F, const Eigen::MatrixXd& Q) {
  const Eigen::Index n = F.rows();
  Eigen::MatrixXd kron(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      kron.block(i * n, j * n, n, n) = F(j, i) * F.transpose();
    }
  }
  const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n * n, n * n) - kron;
  const Eigen::VectorXd vec_q = Eigen::Map<const Eigen::VectorXd>(Q.data(), n * n);
  const Eigen::VectorXd vec_p = lhs.partialPivLu().solve(vec_q);
  return Eigen::Map<const Eigen::MatrixXd>(vec_p.data(), n, n);
}

// Sum of x'Qx + u'Ru along the closed loop u = -K x, to numerical
// convergence.
inline double RolloutCost(const suite::LqrSpec& spec, const Eigen::MatrixXd& K, Eigen::VectorXd x) {
  double cost = 0;
  for (int t = 0; t < 200000; ++t) {
    const Eigen::VectorXd u = -K * x;
    const double stage = x.dot(spec.Q * x) + u.dot(spec.R * u);
    cost += stage;
    if (!std::isfinite(cost) || cost > 1e12) return std::numeric_limits<double>::infinity();
    if (stage < 1e-30 * cost) break;
    x = spec.A * x + spec.B * u;
  }
  return cost;
}

}  // namespace ctrlforge::testing

#endif  // CTRLFORGE_TESTS_TESTING_LQR_ORACLE_H_
