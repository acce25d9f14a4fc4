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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ctrlforge/engine/compiler.h"
#include "ctrlforge/engine/dynamics.h"
#include "ctrlforge/engine/rotation.h"
#include "ctrlforge/rl/tolerance.h"
#include "ctrlforge/sim/physics.h"
#include "ctrlforge/suite/lqr.h"
#include "ctrlforge/suite/suite.h"
#include "testing/lqr_oracle.h"
#include "testing/models.h"
#include "testing/observable_oracle.h"
#include "testing/random_models.h"

namespace ctrlforge::acceptance {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* format, double a, double b = 0, double c = 0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), format, a, b, c);
  return buffer;
}

// ---------------------------------------------------------------------------

Outcome ForwardKinematics() {
  constexpr double kTol = 5e-4;  // printed values are rounded
  sim::Physics physics = sim::Physics::FromXmlString(testing::kBoxAndSphereXml);
  const int sphere = physics.Name2Id("green_sphere", mjcf::Namespace::kGeom);
  const Eigen::Vector3d at_rest = physics.data().geom_xpos[sphere];
  const double rest_error = (at_rest - Eigen::Vector3d(0.273, 0.0732, 0.2)).cwiseAbs().maxCoeff();
  physics.ResetContext([](sim::Physics& p) {
    p.data().qpos[p.Name2Id("swing", mjcf::Namespace::kJoint)] = std::numbers::pi;
  });
  const double z = physics.data().geom_xpos[sphere].z();
  const double swing_error = std::abs(z + 0.6);
  return {rest_error < kTol && swing_error < kTol,
          Format("rest error %.2e, swung z %.4f", rest_error, z)};
}

Outcome Quaternion() {
  Eigen::Matrix3d expected;
  expected << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  const double error =
      (engine::QuatToMat(engine::MakeQuat(.5, .5, .5, .5)) - expected).cwiseAbs().maxCoeff();
  return {error < 1e-12, Format("max error %.1e", error)};
}

Outcome LinearVelocityReward() {
  const rl::ToleranceOptions options{.lower = 10,
                                     .upper = rl::kInf,
                                     .margin = 10,
                                     .sigmoid = rl::Sigmoid::kLinear,
                                     .value_at_margin = 0};
  const double speeds[] = {0, 5, 10, 15};
  const double expected[] = {0, 0.5, 1, 1};
  bool pass = true;
  std::string values;
  for (int i = 0; i < 4; ++i) {
    const double r = rl::Tolerance(speeds[i], options);
    pass = pass && r == expected[i] && r == std::max(0.0, std::min(speeds[i] / 10, 1.0));
    values += Format("%g ", r);
  }
  return {pass, "r = " + values};
}

Outcome LqrOptimality() {
  const auto start = Clock::now();
  const Eigen::MatrixXd one = Eigen::MatrixXd::Ones(1, 1);
  const double scalar_error = std::abs(suite::SolveRiccati(one, one, one, one).P(0, 0) -
                                       std::numbers::phi);

  const suite::LqrSpec spec = suite::MakeLqrSpec(6, 2);
  const suite::RiccatiSolution sol = suite::SolveRiccati(spec.A, spec.B, spec.Q, spec.R);
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal;
  double worst_rollout = 0;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd x0(2 * spec.n);
    for (double& v : x0) v = normal(rng);
    const double value = x0.dot(sol.P * x0);
    worst_rollout = std::max(
        worst_rollout, std::abs(testing::RolloutCost(spec, sol.K, x0) - value) / value);
  }

  Eigen::VectorXd x0(2 * spec.n);
  for (double& v : x0) v = normal(rng);
  const double optimal = x0.dot(sol.P * x0);
  int beaten = 0;
  double closest = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd K = sol.K;
    for (int i = 0; i < K.size(); ++i) K.data()[i] += 1e-2 * normal(rng);
    const Eigen::MatrixXd F = spec.A - spec.B * K;
    double cost = std::numeric_limits<double>::infinity();
    if (F.eigenvalues().cwiseAbs().maxCoeff() < 1) {
      cost = x0.dot(testing::Lyapunov(F, spec.Q + K.transpose() * spec.R * K) * x0);
    }
    beaten += cost < optimal;
    closest = std::min(closest, cost / optimal - 1);
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return {scalar_error < 1e-9 && worst_rollout < 1e-6 && beaten == 0 && seconds < 10,
          Format("scalar |P-phi| %.1e, rollout rel err %.1e", scalar_error, worst_rollout) +
              ", " + std::to_string(beaten) + "/100 perturbations beat K" +
              Format(" (min excess %.1e)", closest)};
}

// Energy of testing::DoublePendulumXml from its closed-form Lagrangian.
double DoublePendulumEnergy(double m1, double l1, double m2, double l2, double r, double g,
                            const Eigen::VectorXd& q, const Eigen::VectorXd& qd) {
  const double i1 = 0.4 * m1 * r * r, i2 = 0.4 * m2 * r * r;
  const double c2 = std::cos(q[1]);
  Eigen::Matrix2d mass;
  mass(0, 0) = i1 + i2 + m1 * l1 * l1 + m2 * (l1 * l1 + l2 * l2 + 2 * l1 * l2 * c2);
  mass(0, 1) = mass(1, 0) = i2 + m2 * (l2 * l2 + l1 * l2 * c2);
  mass(1, 1) = i2 + m2 * l2 * l2;
  const double z1 = -l1 * std::cos(q[0]);
  const double z2 = z1 - l2 * std::cos(q[0] + q[1]);
  return 0.5 * qd.dot(mass * qd) + g * (m1 * z1 + m2 * z2);
}

Eigen::VectorXd Simulate(engine::CompiledModel m, double h, double duration,
                         const Eigen::VectorXd& q0) {
  m.opt.timestep = h;
  engine::Data d(m);
  d.qpos = q0;
  engine::Forward(m, d);
  const int steps = static_cast<int>(std::lround(duration / h));
  for (int i = 0; i < steps; ++i) engine::Step(m, d);
  Eigen::VectorXd state(2 * m.nv());
  state << d.qpos, d.qvel;
  return state;
}

Outcome EnergyConservation() {
  const double m1 = 1, l1 = 0.5, m2 = 1, l2 = 0.5, r = 0.05;
  engine::CompiledModel m = testing::CompileXml(
      testing::DoublePendulumXml(m1, l1, m2, l2, r, "integrator=\"RK4\" timestep=\"0.001\""));
  const double g = -m.opt.gravity.z();
  engine::Data d(m);
  d.qpos << 1.0, -0.5;
  engine::Forward(m, d);
  const double e0 = DoublePendulumEnergy(m1, l1, m2, l2, r, g, d.qpos, d.qvel);
  for (int i = 0; i < 1000; ++i) engine::Step(m, d);
  const double drift =
      std::abs(DoublePendulumEnergy(m1, l1, m2, l2, r, g, d.qpos, d.qvel) - e0) / std::abs(e0);

  Eigen::VectorXd q0(2);
  q0 << 1.0, -0.5;
  const double h = 0.01;
  const Eigen::VectorXd reference = Simulate(m, h / 8, 1.0, q0);
  const double ratio =
      (Simulate(m, h, 1.0, q0) - reference).norm() / (Simulate(m, h / 2, 1.0, q0) - reference).norm();
  return {drift < 1e-5 && ratio >= 8 && ratio <= 32,
          Format("relative drift %.1e, error ratio %.2f", drift, ratio)};
}

Outcome CrbaRnea() {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  auto random_vector = [&](int n, double scale) {
    Eigen::VectorXd v(n);
    for (double& x : v) x = scale * u(rng);
    return v;
  };
  double worst = 0;
  for (unsigned seed = 0; seed < 200; ++seed) {
    const engine::CompiledModel m = testing::CompileXml(testing::RandomTreeXml(1000 + seed, 6));
    engine::Data d(m);
    for (int state = 0; state < 10; ++state) {
      d.qpos = random_vector(m.nq(), std::numbers::pi);
      d.qvel = random_vector(m.nv(), 2);
      engine::ForwardPosition(m, d);
      const Eigen::MatrixXd mass = engine::MassMatrix(m, d);
      // Inverse dynamics is affine in qacc: M e_i = ID(e_i) - ID(0).
      const Eigen::VectorXd bias = engine::InverseDynamics(m, d, Eigen::VectorXd::Zero(m.nv()));
      for (int i = 0; i < m.nv(); ++i) {
        Eigen::VectorXd column =
            engine::InverseDynamics(m, d, Eigen::VectorXd::Unit(m.nv(), i)) - bias;
        column[i] += m.joints[i].armature;
        worst = std::max(worst, (mass.col(i) - column).cwiseAbs().maxCoeff());
      }
    }
  }
  return {worst < 1e-9, Format("2000 states, max |M e_i - ID(e_i)| %.1e", worst)};
}

struct Annotation {
  const char* id;
  int state, action, observation;
};

// Expected state, action and observation sizes per task.
constexpr Annotation kAnnotations[] = {
    {"acrobot:swingup", 4, 1, 6},       {"acrobot:swingup_sparse", 4, 1, 6},
    {"cartpole:balance", 4, 1, 5},      {"cartpole:balance_sparse", 4, 1, 5},
    {"cartpole:swingup", 4, 1, 5},      {"cartpole:swingup_sparse", 4, 1, 5},
    {"cartpole:two_poles", 6, 1, 8},    {"cartpole:three_poles", 8, 1, 11},
    {"pendulum:swingup", 2, 1, 3},      {"point_mass:easy", 4, 2, 4},
    {"point_mass:hard", 4, 2, 4},       {"reacher:easy", 4, 2, 6},
    {"reacher:hard", 4, 2, 6},          {"swimmer:swimmer6", 16, 5, 25},
    {"swimmer:swimmer15", 34, 14, 61},  {"lqr:lqr_2_1", 4, 1, 4},
    {"lqr:lqr_6_2", 12, 2, 12},
};

const Annotation* FindAnnotation(const std::string& id) {
  for (const Annotation& a : kAnnotations) {
    if (id == a.id) return &a;
  }
  return nullptr;
}

Outcome SuiteConventions() {
  const auto start = Clock::now();
  std::string failures;
  int checked = 0;
  for (const suite::TaskEntry& entry : suite::AllTasks()) {
    const std::string id = entry.id();
    const bool lqr = entry.domain == "lqr";
    auto fail = [&](const std::string& what) { failures += " " + id + ": " + what + ";"; };
    auto env = suite::Load(id, {.seed = 1});
    const Annotation* annotation = FindAnnotation(id);
    if (annotation == nullptr) {
      fail("no annotation");
      continue;
    }
    sim::Physics& physics = *env->physics();
    int obs_dim = 0;
    for (const auto& [name, spec] : env->observation_spec()) obs_dim += spec.size();
    if (physics.model().nq() + physics.model().nv() != annotation->state) fail("state dim");
    if (static_cast<int>(env->action_spec().size()) != annotation->action) fail("action dim");
    if (obs_dim != annotation->observation) fail("observation dim");
    if (!lqr) {
      for (double v : env->action_spec().minimum()) {
        if (v != -1) fail("action minimum");
      }
      for (double v : env->action_spec().maximum()) {
        if (v != 1) fail("action maximum");
      }
    }
    std::mt19937_64 rng(7);
    rl::TimeStep ts = env->Reset();
    double episode_return = 0;
    int steps = 0;
    bool rewards_ok = true, discounts_ok = true;
    while (!ts.last()) {
      ts = env->Step(env->action_spec().SampleUniform(rng));
      ++steps;
      const double r = *ts.reward;
      episode_return += r;
      if (!lqr && !(r >= 0 && r <= 1)) rewards_ok = false;
      const double gamma = *ts.discount;
      if (gamma != 1 && !(lqr && ts.last() && gamma == 0)) discounts_ok = false;
    }
    if (!rewards_ok) fail("reward outside [0, 1]");
    if (!discounts_ok) fail("discount");
    if (!lqr && steps != 1000) fail("episode length " + std::to_string(steps));
    if (lqr && *ts.discount == 1 && steps != 1000) fail("episode length");
    if (!lqr && !(episode_return >= 0 && episode_return <= 1000)) fail("return");
    ++checked;
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (seconds >= 120) failures += " runtime;";
  return {failures.empty() && checked == static_cast<int>(suite::AllTasks().size()),
          std::to_string(checked) + " tasks" + Format(", %.1f s", seconds) + failures};
}

Outcome ObservablePipeline() {
  std::string failures;
  int index = 0;
  for (const testing::GridCase& c : testing::kGridCases) {
    const std::string problem = testing::CheckGridCase(c);
    if (!problem.empty()) failures += " case " + std::to_string(index) + ": " + problem + ";";
    ++index;
  }
  return {failures.empty(), std::to_string(index) + " cases" + failures};
}

Outcome Namespacing() {
  int attaches = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    testing::Composition c = testing::RandomComposition(50000 + seed, 40);
    attaches += c.attaches;
    for (const auto& model : c.models) {
      const std::string problem = testing::CheckNamespaceInvariants(*model);
      if (!problem.empty()) return {false, "sequence " + std::to_string(seed) + ": " + problem};
    }
    for (const auto& [actuator, joint] : c.references) {
      if (actuator->GetReference("joint") != joint) {
        return {false, "sequence " + std::to_string(seed) + ": actuator lost its joint"};
      }
    }
  }
  return {true, "1000 sequences, " + std::to_string(attaches) + " attachments"};
}

// Observation, reward and discount bytes of one episode.
std::string EpisodeBytes(const std::string& id, std::uint64_t seed) {
  auto env = suite::Load(id, {.seed = seed});
  std::mt19937_64 rng(seed);
  std::string bytes;
  auto record = [&](const rl::TimeStep& ts) {
    for (const auto& [name, array] : ts.observation) {
      bytes.append(reinterpret_cast<const char*>(array.data.data()),
                   array.data.size() * sizeof(double));
    }
    if (ts.reward) bytes.append(reinterpret_cast<const char*>(&*ts.reward), sizeof(double));
    if (ts.discount) bytes.append(reinterpret_cast<const char*>(&*ts.discount), sizeof(double));
  };
  rl::TimeStep ts = env->Reset();
  record(ts);
  while (!ts.last()) {
    ts = env->Step(env->action_spec().SampleUniform(rng));
    record(ts);
  }
  return bytes;
}

Outcome SeedDeterminism() {
  std::string failures;
  std::size_t total = 0;
  for (const suite::TaskEntry& entry : suite::AllTasks()) {
    const std::string a = EpisodeBytes(entry.id(), 3);
    const std::string b = EpisodeBytes(entry.id(), 3);
    total += a.size();
    if (a.size() != b.size() || std::memcmp(a.data(), b.data(), a.size()) != 0) {
      failures += " " + entry.id() + ";";
    }
  }
  return {failures.empty(), std::to_string(suite::AllTasks().size()) + " tasks, " +
                                std::to_string(total / 1024) + " KiB compared per run" +
                                failures};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> check;
};

}  // namespace
}  // namespace ctrlforge::acceptance

int main() {
  using namespace ctrlforge::acceptance;
  const Criterion criteria[] = {
      {"forward kinematics", ForwardKinematics},
      {"quaternion to matrix", Quaternion},
      {"linear velocity reward", LinearVelocityReward},
      {"lqr optimality", LqrOptimality},
      {"energy conservation", EnergyConservation},
      {"crba/rnea equivalence", CrbaRnea},
      {"suite conventions", SuiteConventions},
      {"observable pipeline", ObservablePipeline},
      {"namespacing", Namespacing},
      {"seed determinism", SeedDeterminism},
  };
  int failed = 0;
  int index = 1;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%s %2d %-24s %.2fs  %s\n", outcome.pass ? "PASS" : "FAIL", index++, c.name,
                seconds, outcome.detail.c_str());
    failed += !outcome.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
