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

#include "ctrlforge/suite/suite.h"

#include <cmath>
#include <numbers>
#include <random>
#include <cstring>
#include <set>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "ctrlforge/errors.h"
#include "ctrlforge/suite/lqr.h"

namespace ctrlforge::suite {
namespace {

using ::testing::ElementsAre;

int ObservationSize(const rl::ObservationSpec& spec) {
  int size = 0;
  for (const auto& [name, array] : spec) size += static_cast<int>(array.size());
  return size;
}

double Radians(double degrees) { return degrees * std::numbers::pi / 180; }

class EveryTaskTest : public ::testing::TestWithParam<TaskEntry> {};

TEST_P(EveryTaskTest, DimensionsMatchRegistry) {
  const TaskEntry& entry = GetParam();
  auto env = Load(entry.domain, entry.task);
  const sim::Physics& physics = *env->physics();
  EXPECT_EQ(physics.model().nq() + physics.model().nv(), entry.dim_state);
  EXPECT_EQ(static_cast<int>(env->action_spec().size()), entry.dim_action);
  EXPECT_EQ(ObservationSize(env->observation_spec()), entry.dim_observation);
  const rl::TimeStep ts = env->Reset();
  int size = 0;
  for (const auto& [name, array] : ts.observation) size += static_cast<int>(array.size());
  EXPECT_EQ(size, entry.dim_observation);
}

TEST_P(EveryTaskTest, RandomEpisodeFollowsConventions) {
  const TaskEntry& entry = GetParam();
  const bool lqr = entry.domain == "lqr";
  auto env = Load(entry.domain, entry.task, {.seed = 17});
  const rl::ArraySpec action_spec = env->action_spec();
  if (!lqr) {
    for (double lo : action_spec.minimum()) EXPECT_EQ(lo, -1);
    for (double hi : action_spec.maximum()) EXPECT_EQ(hi, 1);
  }
  std::mt19937_64 rng(5);
  rl::TimeStep ts = env->Reset();
  ASSERT_TRUE(ts.first());
  int steps = 0;
  double episode_return = 0;
  while (!ts.last()) {
    const Eigen::VectorXd action =
        lqr ? Eigen::VectorXd::Zero(action_spec.size()) : action_spec.SampleUniform(rng);
    ts = env->Step(action);
    ++steps;
    episode_return += *ts.reward;
    if (!lqr) {
      ASSERT_GE(*ts.reward, 0.0);
      ASSERT_LE(*ts.reward, 1.0);
    }
    if (!ts.last()) ASSERT_EQ(*ts.discount, 1.0);
    rl::ValidateObservation(env->observation_spec(), ts.observation);
  }
  EXPECT_EQ(steps, 1000);
  EXPECT_EQ(*ts.discount, 1.0);
  if (!lqr) {
    EXPECT_GE(episode_return, 0.0);
    EXPECT_LE(episode_return, 1000.0);
  }
}

TEST_P(EveryTaskTest, SameSeedGivesIdenticalStreams) {
  const TaskEntry& entry = GetParam();
  std::vector<double> streams[2];
  for (auto& stream : streams) {
    auto env = Load(entry.domain, entry.task, {.seed = 99});
    std::mt19937_64 rng(1);
    rl::TimeStep ts = env->Reset();
    for (int t = 0; t < 30; ++t) {
      for (const auto& [name, array] : ts.observation) {
        stream.insert(stream.end(), array.data.begin(), array.data.end());
      }
      ts = env->Step(env->action_spec().SampleUniform(rng));
      stream.push_back(*ts.reward);
    }
  }
  ASSERT_EQ(streams[0].size(), streams[1].size());
  EXPECT_EQ(std::memcmp(streams[0].data(), streams[1].data(),
                        streams[0].size() * sizeof(double)),
            0);
}

TEST_P(EveryTaskTest, RewardVisualizationLeavesDynamicsAlone) {
  const TaskEntry& entry = GetParam();
  auto plain = Load(entry.domain, entry.task, {.seed = 4});
  auto shaded = Load(entry.domain, entry.task, {.seed = 4, .visualize_reward = true});
  std::mt19937_64 rng(8);
  rl::TimeStep a = plain->Reset();
  rl::TimeStep b = shaded->Reset();
  for (int t = 0; t < 20; ++t) {
    ASSERT_EQ(a, b) << t;
    const Eigen::VectorXd action = plain->action_spec().SampleUniform(rng);
    a = plain->Step(action);
    b = shaded->Step(action);
  }
}

INSTANTIATE_TEST_SUITE_P(Suite, EveryTaskTest, ::testing::ValuesIn(AllTasks()),
                         [](const ::testing::TestParamInfo<TaskEntry>& info) {
                           return info.param.domain + "_" + info.param.task;
                         });

TEST(RegistryTest, TagsPartitionTasks) {
  const auto all = TasksWithTag(kAll);
  const auto benchmarking = TasksWithTag(kBenchmarking);
  const auto extra = TasksWithTag(kExtra);
  EXPECT_EQ(all.size(), AllTasks().size());
  EXPECT_EQ(benchmarking.size() + extra.size(), all.size());
  EXPECT_EQ(benchmarking.size(), 12u);
  std::set<std::string> ids;
  for (const TaskEntry& e : all) ids.insert(e.id());
  EXPECT_EQ(ids.size(), all.size());
  EXPECT_TRUE(ids.count("cartpole:three_poles"));
  EXPECT_THROW(TasksWithTag("hard"), InvalidArgumentError);
}

TEST(RegistryTest, UnknownTasksThrow) {
  EXPECT_THROW(Load("cartpole", "juggle"), UnknownTaskError);
  EXPECT_THROW(Load("humanoid", "walk"), UnknownTaskError);
  EXPECT_THROW(Load("cartpole-balance"), UnknownTaskError);
  EXPECT_NO_THROW(Load("cartpole:balance"));
}

TEST(RegistryTest, TaskArgumentsAreValidated) {
  EXPECT_THROW(Load("cartpole", "balance", {.task_kwargs = {{"num_poles", 0}}}),
               InvalidArgumentError);
  EXPECT_THROW(Load("cartpole", "balance", {.task_kwargs = {{"num_poles", 1.5}}}),
               InvalidArgumentError);
  EXPECT_THROW(Load("cartpole", "balance", {.task_kwargs = {{"poles", 2}}}),
               InvalidArgumentError);
  EXPECT_THROW(Load("pendulum", "swingup", {.task_kwargs = {{"num_poles", 2}}}),
               InvalidArgumentError);
  EXPECT_THROW(Load("swimmer", "swimmer6", {.task_kwargs = {{"n_links", 1}}}),
               InvalidArgumentError);
  EXPECT_THROW(Load("lqr", "lqr_2_1", {.task_kwargs = {{"m", 3}}}), InvalidArgumentError);
}

TEST(RegistryTest, TaskArgumentsResizeModels) {
  auto cartpole = Load("cartpole", "balance", {.task_kwargs = {{"num_poles", 4}}});
  EXPECT_EQ(ObservationSize(cartpole->observation_spec()), 3 * 4 + 2);
  auto swimmer = Load("swimmer", "swimmer6", {.task_kwargs = {{"n_links", 8}}});
  EXPECT_EQ(ObservationSize(swimmer->observation_spec()), 4 * 8 + 1);
  EXPECT_EQ(swimmer->action_spec().size(), 7u);
  auto lqr = Load("lqr", "lqr_2_1", {.task_kwargs = {{"n", 3}, {"m", 3}}});
  EXPECT_EQ(lqr->action_spec().size(), 3u);
}

TEST(EnvironmentTest, TimeLimitOverride) {
  auto env = Load("pendulum", "swingup", {.time_limit = 1.0});
  EXPECT_EQ(env->step_limit(), 50);
  EXPECT_EQ(env->substeps(), 10);
  EXPECT_DOUBLE_EQ(env->control_timestep(), 0.02);
  rl::TimeStep ts = env->Reset();
  int steps = 0;
  while (!ts.last()) {
    ts = env->Step(Eigen::VectorXd::Zero(1));
    ++steps;
  }
  EXPECT_EQ(steps, 50);
  EXPECT_NEAR(env->physics()->time(), 1.0, 1e-12);
  // The episode restarts on the next step.
  EXPECT_TRUE(env->Step(Eigen::VectorXd::Zero(1)).first());
}

TEST(EnvironmentTest, RejectsOutOfBoundsAction) {
  auto env = Load("pendulum", "swingup");
  env->Reset();
  EXPECT_THROW(env->Step(Eigen::VectorXd::Constant(1, 1.5)), SpecError);
  EXPECT_THROW(env->Step(Eigen::VectorXd::Zero(2)), SpecError);
}

TEST(EnvironmentTest, DifferentSeedsGiveDifferentEpisodes) {
  auto a = Load("reacher", "easy", {.seed = 1});
  auto b = Load("reacher", "easy", {.seed = 2});
  EXPECT_NE(a->Reset().observation.At("to_target").data,
            b->Reset().observation.At("to_target").data);
}

TEST(EnvironmentTest, RewardVisualizationBrightensWithReward) {
  auto env = Load("pendulum", "swingup", {.visualize_reward = true});
  env->Reset();
  sim::Physics& physics = *env->physics();
  const int self = physics.model().NameToId(mjcf::Namespace::kMaterial, "self");
  physics.data().qpos[0] = std::numbers::pi;
  physics.data().qvel[0] = 0;
  env->Step(Eigen::VectorXd::Zero(1));
  const Eigen::Vector4d dim = physics.model().materials[self].rgba;
  physics.data().qpos[0] = 0;
  physics.data().qvel[0] = 0;
  env->Step(Eigen::VectorXd::Zero(1));
  const Eigen::Vector4d bright = physics.model().materials[self].rgba;
  EXPECT_NEAR(bright[0], 0.7, 1e-12);
  EXPECT_NEAR(dim[0], 0.35, 1e-12);
  EXPECT_EQ(dim[3], 1.0);
  for (const engine::GeomModel& geom : physics.model().geoms) {
    if (geom.material == self) EXPECT_EQ(geom.rgba, bright);
  }
}

double RewardAt(Environment& env, const std::vector<double>& qpos) {
  sim::Physics& physics = *env.physics();
  for (std::size_t i = 0; i < qpos.size(); ++i) physics.data().qpos[i] = qpos[i];
  physics.data().qvel.setZero();
  physics.data().ctrl.setZero();
  physics.Forward();
  return env.task().GetReward(physics);
}

TEST(PendulumTest, RewardWithinThirtyDegreesOfUpright) {
  auto env = Load("pendulum", "swingup");
  env->Reset();
  EXPECT_EQ(RewardAt(*env, {Radians(20)}), 1.0);
  EXPECT_EQ(RewardAt(*env, {Radians(-20)}), 1.0);
  EXPECT_EQ(RewardAt(*env, {Radians(45)}), 0.0);
  EXPECT_EQ(RewardAt(*env, {std::numbers::pi}), 0.0);
}

TEST(PendulumTest, ObservationIsPoleOrientation) {
  auto env = Load("pendulum", "swingup");
  env->Reset();
  RewardAt(*env, {Radians(60)});
  const rl::Observation obs = env->task().GetObservation(*env->physics());
  // Hinge about +y: the pole axis is (sin q, 0, cos q).
  EXPECT_NEAR(obs.At("orientation").data[0], std::cos(Radians(60)), 1e-12);
  EXPECT_NEAR(obs.At("orientation").data[1], std::sin(Radians(60)), 1e-12);
}

TEST(PendulumTest, GearIsSixthOfGravityTorque) {
  auto env = Load("pendulum", "swingup");
  env->Reset();
  sim::Physics& physics = *env->physics();
  const double max_torque = physics.model().actuators[0].gear;
  EXPECT_NEAR(max_torque, 9.81 * 0.5 / 6, 1e-12);
}

TEST(AcrobotTest, UprightTipReachesTarget) {
  auto smooth = Load("acrobot", "swingup");
  auto sparse = Load("acrobot", "swingup_sparse");
  smooth->Reset();
  sparse->Reset();
  EXPECT_EQ(RewardAt(*smooth, {0, 0}), 1.0);
  EXPECT_EQ(RewardAt(*sparse, {0, 0}), 1.0);
  EXPECT_EQ(RewardAt(*sparse, {0, 0.5}), 0.0);
  const double hanging = RewardAt(*smooth, {std::numbers::pi, 0});
  // Tip 4 m below the target: long-tail with unit margin past the 0.2 bound.
  const double scaled = (4.0 - 0.2) / 1.0;
  const double k = std::sqrt(1 / 0.1 - 1);
  EXPECT_NEAR(hanging, 1 / (1 + (k * scaled) * (k * scaled)), 1e-12);
}

TEST(CartpoleTest, UprightCenteredStateEarnsFullReward) {
  for (const char* task : {"balance", "balance_sparse", "swingup", "swingup_sparse"}) {
    auto env = Load("cartpole", task);
    env->Reset();
    EXPECT_EQ(RewardAt(*env, {0, 0}), 1.0) << task;
  }
  auto sparse = Load("cartpole", "balance_sparse");
  sparse->Reset();
  EXPECT_EQ(RewardAt(*sparse, {0.3, 0}), 0.0);
  EXPECT_EQ(RewardAt(*sparse, {0, 0.2}), 0.0);
}

TEST(CartpoleTest, SmoothRewardFactors) {
  auto env = Load("cartpole", "balance");
  env->Reset();
  // Pole horizontal: upright factor 1/2; cart at the origin; still.
  EXPECT_NEAR(RewardAt(*env, {0, std::numbers::pi / 2}), 0.5, 1e-12);
  // Hanging down gives zero.
  EXPECT_NEAR(RewardAt(*env, {0, std::numbers::pi}), 0.0, 1e-12);
}

TEST(CartpoleTest, ObservationLayout) {
  auto env = Load("cartpole", "two_poles");
  env->Reset();
  RewardAt(*env, {0.4, 0.3, 0.2});
  const rl::Observation obs = env->task().GetObservation(*env->physics());
  const std::vector<double>& p = obs.At("position").data;
  ASSERT_EQ(p.size(), 5u);
  EXPECT_NEAR(p[0], 0.4, 1e-12);
  EXPECT_NEAR(p[1], std::cos(0.3), 1e-12);
  EXPECT_NEAR(p[2], std::cos(0.5), 1e-12);
  EXPECT_NEAR(p[3], std::sin(0.3), 1e-12);
  EXPECT_NEAR(p[4], std::sin(0.5), 1e-12);
}

TEST(CartpoleTest, SwingUpStartsHanging) {
  auto env = Load("cartpole", "swingup", {.seed = 3});
  const rl::TimeStep ts = env->Reset();
  EXPECT_LT(ts.observation.At("position").data[1], -0.99);
  auto balance = Load("cartpole", "balance", {.seed = 3});
  EXPECT_GT(balance->Reset().observation.At("position").data[1], 0.99);
}

// Reads the action mixing of point_mass through the motor controls.
Eigen::Matrix2d ActionToControl(std::uint64_t seed, const std::string& task) {
  auto env = Load("point_mass", task, {.seed = seed});
  env->Reset();
  Eigen::Matrix2d gains;
  for (int col = 0; col < 2; ++col) {
    env->Step(Eigen::Vector2d::Unit(col));
    gains.col(col) = env->physics()->data().ctrl;
  }
  return gains;
}

TEST(PointMassTest, EasyPassesActionsThrough) {
  EXPECT_EQ(ActionToControl(1, "easy"), Eigen::Matrix2d::Identity());
}

TEST(PointMassTest, HardMixesActionsPerSeed) {
  const Eigen::Matrix2d a = ActionToControl(1, "hard");
  const Eigen::Matrix2d b = ActionToControl(2, "hard");
  EXPECT_NE(a, b);
  EXPECT_EQ(ActionToControl(1, "hard"), a);
  for (const Eigen::Matrix2d& g : {a, b}) {
    EXPECT_NEAR(g.row(0).norm(), 1, 1e-12);
    EXPECT_NEAR(g.row(1).norm(), 1, 1e-12);
  }
}

TEST(PointMassTest, RewardNearTargetWithSmallControl) {
  auto env = Load("point_mass", "easy");
  env->Reset();
  EXPECT_EQ(RewardAt(*env, {0, 0}), 1.0);
  EXPECT_EQ(RewardAt(*env, {0.01, 0.01}), 1.0);
  EXPECT_LT(RewardAt(*env, {0.1, 0.1}), 1e-6);
}

TEST(ReacherTest, TargetPlacedWithinReach) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto env = Load("reacher", "hard", {.seed = seed});
    const rl::TimeStep ts = env->Reset();
    const sim::Physics& physics = *env->physics();
    const int target = physics.model().NameToId(mjcf::Namespace::kGeom, "target");
    const double radius = physics.data().geom_xpos[target].head<2>().norm();
    EXPECT_GE(radius, 0.05);
    EXPECT_LE(radius, 0.20);
    EXPECT_EQ(physics.model().geoms[target].size[0], 0.015);
    const int finger = physics.model().NameToId(mjcf::Namespace::kGeom, "finger");
    const Eigen::Vector3d delta = physics.data().geom_xpos[target] - physics.data().geom_xpos[finger];
    EXPECT_THAT(ts.observation.At("to_target").data, ElementsAre(delta.x(), delta.y()));
  }
}

TEST(ReacherTest, RewardWhenFingerTouchesTarget) {
  auto env = Load("reacher", "easy", {.seed = 1});
  env->Reset();
  sim::Physics& physics = *env->physics();
  const int target = physics.model().NameToId(mjcf::Namespace::kGeom, "target");
  // Straight arm along +x puts the finger at x = 0.24.
  physics.mutable_model().geoms[target].pos = {0.24, 0.0, 0.01};
  EXPECT_EQ(RewardAt(*env, {0, 0}), 1.0);
  physics.mutable_model().geoms[target].pos = {0.0, 0.15, 0.01};
  EXPECT_EQ(RewardAt(*env, {0, 0}), 0.0);
}

TEST(SwimmerTest, ObservationLayout) {
  auto env = Load("swimmer", "swimmer6");
  const rl::ObservationSpec spec = env->observation_spec();
  EXPECT_THAT(spec.Keys(), ElementsAre("joints", "to_target", "body_velocities"));
  EXPECT_EQ(spec.At("joints").size(), 5u);
  EXPECT_EQ(spec.At("to_target").size(), 2u);
  EXPECT_EQ(spec.At("body_velocities").size(), 18u);
}

TEST(SwimmerTest, BodyVelocityMatchesFiniteDifference) {
  auto env = Load("swimmer", "swimmer6", {.seed = 2});
  env->Reset();
  sim::Physics& physics = *env->physics();
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (double& v : physics.data().qvel) v = normal(rng);
  physics.Forward();
  const Eigen::VectorXd q = physics.data().qpos;
  const Eigen::VectorXd qdot = physics.data().qvel;
  constexpr double kEps = 1e-6;
  for (int body = 1; body < physics.model().nbody(); ++body) {
    const auto [linear, angular] = BodyVelocity(physics, body);
    physics.data().qpos = q + kEps * qdot;
    physics.Forward();
    const Eigen::Vector3d p_plus = physics.data().xpos[body];
    const Eigen::Matrix3d r_plus = physics.data().xmat[body];
    physics.data().qpos = q - kEps * qdot;
    physics.Forward();
    const Eigen::Vector3d p_minus = physics.data().xpos[body];
    const Eigen::Matrix3d r_minus = physics.data().xmat[body];
    physics.data().qpos = q;
    physics.Forward();
    EXPECT_LT((linear - (p_plus - p_minus) / (2 * kEps)).norm(), 1e-6) << body;
    // R' R^T is the skew matrix of the angular velocity.
    const Eigen::Matrix3d omega =
        (r_plus - r_minus) / (2 * kEps) * physics.data().xmat[body].transpose();
    EXPECT_LT((angular - Eigen::Vector3d(omega(2, 1), omega(0, 2), omega(1, 0))).norm(), 1e-6)
        << body;
  }
}

TEST(SwimmerTest, RewardAtTarget) {
  auto env = Load("swimmer", "swimmer6", {.seed = 5});
  env->Reset();
  sim::Physics& physics = *env->physics();
  const int target = physics.model().NameToId(mjcf::Namespace::kGeom, "target");
  const int nose = physics.model().NameToId(mjcf::Namespace::kGeom, "nose");
  physics.mutable_model().geoms[target].pos = physics.data().geom_xpos[nose];
  physics.Forward();
  EXPECT_EQ(env->task().GetReward(physics), 1.0);
}

TEST(SwimmerTest, UndulationPropels) {
  auto env = Load("swimmer", "swimmer6", {.seed = 0});
  env->Reset();
  sim::Physics& physics = *env->physics();
  physics.data().qpos.setZero();
  physics.Forward();
  const Eigen::Vector3d start = physics.data().xpos[1];
  for (int t = 0; t < 250; ++t) {
    Eigen::VectorXd action(5);
    for (int i = 0; i < 5; ++i) {
      action[i] = std::sin(2 * std::numbers::pi * (t * 0.02 - i / 5.0));
    }
    env->Step(action);
  }
  EXPECT_GT((physics.data().xpos[1] - start).head<2>().norm(), 0.02);
}

}  // namespace
}  // namespace ctrlforge::suite
