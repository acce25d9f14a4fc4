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

#include "ctrlforge/composer/environment.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ctrlforge/composer/entity.h"
#include "ctrlforge/composer/task.h"
#include "ctrlforge/errors.h"
#include "composer/fixtures.h"

namespace ctrlforge::composer {
namespace {

using Log = std::vector<std::string>;

class TraceEntity : public Entity {
 public:
  TraceEntity(std::string name, Log* log) : name_(std::move(name)), log_(log) {}

  bool throw_in_after_substep = false;

  void InitializeEpisodeMjcf(RandomState&) override { Record("initialize_episode_mjcf"); }
  void InitializeEpisode(sim::Physics&, RandomState&) override { Record("initialize_episode"); }
  void BeforeStep(sim::Physics&, RandomState&) override { Record("before_step"); }
  void BeforeSubstep(sim::Physics&, RandomState&) override { Record("before_substep"); }
  void AfterSubstep(sim::Physics&, RandomState&) override {
    if (throw_in_after_substep) throw std::runtime_error("boom");
    Record("after_substep");
  }
  void AfterStep(sim::Physics&, RandomState&) override { Record("after_step"); }

 protected:
  void Build() override {
    auto model = mjcf::ModelRoot::Create(name_);
    model->worldbody().Add("geom", {{"type", "sphere"}, {"size", {0.05}}});
    set_mjcf_model(model);
  }

 private:
  void Record(const std::string& callback) { log_->push_back(name_ + ":" + callback); }

  std::string name_;
  Log* log_;
};

class TraceTask : public Task {
 public:
  TraceTask(Log* log, int substeps) : log_(log) {
    arena_ = MakeEntity<TraceEntity>("arena", log);
    a_ = MakeEntity<TraceEntity>("a", log);
    b_ = MakeEntity<TraceEntity>("b", log);
    c_ = MakeEntity<TraceEntity>("c", log);
    arena_->Attach(a_);
    a_->Attach(b_);
    arena_->Attach(c_);
    marker_ = arena_->mjcf_model()->worldbody().Add(
        "geom", {{"name", "marker"}, {"type", "sphere"}, {"size", {0.01}}});
    probe_ = Generic([log](sim::Physics&) {
      log->push_back("observe");
      return Eigen::VectorXd::Zero(1);
    });
    probe_->enabled = true;
    probe_->buffer_size = substeps + 1;
    set_control_timestep(substeps * physics_timestep());
  }

  std::shared_ptr<Entity> root_entity() override { return arena_; }
  std::vector<std::pair<std::string, ObservablePtr>> task_observables() override {
    return {{"probe", probe_}};
  }

  void InitializeEpisodeMjcf(RandomState&) override {
    log_->push_back("task:initialize_episode_mjcf");
    marker_->Set("size", {0.01 * ++episodes_});
  }
  void InitializeEpisode(sim::Physics& physics, RandomState&) override {
    log_->push_back("task:initialize_episode");
    // The edit made before compilation is visible in the new physics.
    double size = physics.Bind(marker_).Get("size")(0, 0);
    if (size != 0.01 * episodes_) log_->push_back("stale model");
  }
  void BeforeStep(sim::Physics& physics, const Eigen::VectorXd& action,
                  RandomState& rng) override {
    log_->push_back("task:before_step");
    Task::BeforeStep(physics, action, rng);
  }
  void BeforeSubstep(sim::Physics&, const Eigen::VectorXd&, RandomState&) override {
    log_->push_back("task:before_substep");
  }
  void AfterSubstep(sim::Physics&, RandomState&) override { log_->push_back("task:after_substep"); }
  void AfterStep(sim::Physics&, RandomState&) override { log_->push_back("task:after_step"); }
  double GetReward(sim::Physics&) override {
    log_->push_back("task:get_reward");
    return 0.5;
  }
  double GetDiscount(sim::Physics&) override {
    log_->push_back("task:get_discount");
    return 1.0;
  }
  bool ShouldTerminateEpisode(sim::Physics&) override {
    log_->push_back("task:should_terminate_episode");
    return false;
  }

  std::shared_ptr<TraceEntity> b() { return b_; }

 private:
  Log* log_;
  std::shared_ptr<TraceEntity> arena_, a_, b_, c_;
  mjcf::Element* marker_;
  ObservablePtr probe_;
  int episodes_ = 0;
};

void ExpectAll(Log& expected, const std::string& callback) {
  expected.push_back("task:" + callback);
  for (const char* name : {"arena", "a", "b", "c"}) expected.push_back(std::string(name) + ":" + callback);
}

TEST(EnvironmentTest, CallbackOrderMatchesLifecycle) {
  constexpr int kSubsteps = 3;
  Log log;
  Environment env(std::make_shared<TraceTask>(&log, kSubsteps));
  log.clear();  // the construction-time spec probe

  rl::TimeStep first = env.Reset();
  EXPECT_TRUE(first.first());
  Log expected;
  ExpectAll(expected, "initialize_episode_mjcf");
  ExpectAll(expected, "initialize_episode");
  expected.push_back("observe");
  EXPECT_EQ(log, expected);

  for (int step = 0; step < 2; ++step) {
    log.clear();
    rl::TimeStep ts = env.Step(Eigen::VectorXd(0));
    EXPECT_TRUE(ts.mid());
    EXPECT_EQ(ts.reward, 0.5);
    expected.clear();
    ExpectAll(expected, "before_step");
    for (int i = 0; i < kSubsteps; ++i) {
      ExpectAll(expected, "before_substep");
      ExpectAll(expected, "after_substep");
      if (i + 1 < kSubsteps) expected.push_back("observe");
    }
    ExpectAll(expected, "after_step");
    expected.push_back("observe");
    expected.push_back("task:get_reward");
    expected.push_back("task:get_discount");
    expected.push_back("task:should_terminate_episode");
    EXPECT_EQ(log, expected);
  }
}

TEST(EnvironmentTest, ModelIsRecompiledEveryEpisode) {
  Log log;
  Environment env(std::make_shared<TraceTask>(&log, 1));
  for (int i = 0; i < 3; ++i) env.Reset();
  EXPECT_EQ(std::count(log.begin(), log.end(), "stale model"), 0);
}

TEST(EnvironmentTest, CallbackErrorsNameCallbackAndOwner) {
  Log log;
  auto task = std::make_shared<TraceTask>(&log, 2);
  Environment env(task);
  env.Reset();
  task->b()->throw_in_after_substep = true;
  try {
    env.Step(Eigen::VectorXd(0));
    FAIL() << "expected CallbackError";
  } catch (const CallbackError& e) {
    EXPECT_EQ(e.callback(), "after_substep");
    EXPECT_EQ(e.owner(), "entity 'a/b'");
    EXPECT_NE(std::string(e.what()).find("boom"), std::string::npos);
  }
  // The failed episode is abandoned.
  task->b()->throw_in_after_substep = false;
  EXPECT_TRUE(env.Step(Eigen::VectorXd(0)).first());
}

TEST(EnvironmentTest, TimeLimitTruncatesWithUnitDiscount) {
  auto root = testing::MakeCounterEntity(testing::MakeCounterObservable());
  Environment env(std::make_shared<testing::SimpleTask>(root, 2), {.time_limit = 0.2});
  EXPECT_NEAR(env.control_timestep(), 0.02, 1e-15);
  EXPECT_EQ(env.substeps_per_step(), 2);
  EXPECT_TRUE(env.Reset().first());
  for (int i = 1; i <= 10; ++i) {
    rl::TimeStep ts = env.Step(Eigen::VectorXd(0));
    if (i < 10) {
      EXPECT_TRUE(ts.mid()) << i;
    } else {
      EXPECT_TRUE(ts.last());
      EXPECT_EQ(ts.discount, 1.0);
    }
  }
  EXPECT_NEAR(env.physics()->time(), 0.2, 1e-12);
  EXPECT_TRUE(env.Step(Eigen::VectorXd(0)).first());
  EXPECT_EQ(env.physics()->time(), 0.0);
}

class TerminatingTask : public testing::SimpleTask {
 public:
  using SimpleTask::SimpleTask;
  void AfterStep(sim::Physics&, RandomState&) override { done_ = ++steps_ >= 3; }
  double GetDiscount(sim::Physics&) override { return done_ ? 0.0 : 1.0; }
  bool ShouldTerminateEpisode(sim::Physics&) override { return done_; }
  void InitializeEpisode(sim::Physics&, RandomState&) override { steps_ = 0; }

 private:
  int steps_ = 0;
  bool done_ = false;
};

TEST(EnvironmentTest, TerminationUsesTaskDiscount) {
  auto root = testing::MakeCounterEntity(testing::MakeCounterObservable());
  Environment env(std::make_shared<TerminatingTask>(root, 1));
  env.Reset();
  EXPECT_TRUE(env.Step(Eigen::VectorXd(0)).mid());
  EXPECT_TRUE(env.Step(Eigen::VectorXd(0)).mid());
  rl::TimeStep last = env.Step(Eigen::VectorXd(0));
  EXPECT_TRUE(last.last());
  EXPECT_EQ(last.discount, 0.0);
  EXPECT_TRUE(env.Step(Eigen::VectorXd(0)).first());
}

TEST(EnvironmentTest, StepBeforeResetStartsEpisode) {
  auto root = testing::MakeCounterEntity(testing::MakeCounterObservable());
  Environment env(std::make_shared<testing::SimpleTask>(root, 1));
  EXPECT_TRUE(env.Step(Eigen::VectorXd(0)).first());
}

TEST(EnvironmentTest, RejectsIncommensurateControlTimestep) {
  auto root = testing::MakeCounterEntity(testing::MakeCounterObservable());
  auto task = std::make_shared<testing::SimpleTask>(root, 1);
  task->set_control_timestep(0.025);
  EXPECT_THROW(Environment{task}, InvalidArgumentError);
}

TEST(EnvironmentTest, ActionSpecFollowsActuators) {
  auto model = mjcf::ParseModel(R"(
    <mujoco model="arm">
      <worldbody>
        <body><joint name="j" type="hinge"/><geom type="capsule" fromto="0 0 0 0.3 0 0" size="0.02"/></body>
      </worldbody>
      <actuator>
        <motor joint="j" ctrlrange="-2 3" ctrllimited="true"/>
        <motor joint="j"/>
      </actuator>
    </mujoco>)");
  auto root = MakeEntity<ModelEntity>(model);
  Environment env(std::make_shared<testing::SimpleTask>(root, 2));
  rl::ArraySpec spec = env.action_spec();
  EXPECT_EQ(spec.shape(), std::vector<int>{2});
  EXPECT_EQ(spec.minimum()[0], -2);
  EXPECT_EQ(spec.maximum()[0], 3);
  EXPECT_TRUE(std::isinf(spec.maximum()[1]));
  env.Reset();
  env.Step(Eigen::Vector2d(1.5, -7));
  EXPECT_EQ(env.physics()->data().ctrl, Eigen::Vector2d(1.5, -7));
  EXPECT_THROW(env.Step(Eigen::Vector2d(4, 0)), SpecError);
  EXPECT_THROW(env.Step(Eigen::VectorXd(1)), SpecError);
}

// A task with randomness in every layer: model and physics variations,
// noisy observables with stochastic delays, and state-dependent reward.
class NoisyTask : public Task {
 public:
  NoisyTask() {
    auto model = mjcf::ParseModel(R"(
      <mujoco model="noisy">
        <option timestep="0.005"/>
        <worldbody>
          <body name="pole">
            <joint name="hinge" type="hinge" axis="0 1 0" damping="0.1"/>
            <geom name="bob" type="capsule" fromto="0 0 0 0 0 -0.5" size="0.05"/>
          </body>
        </worldbody>
        <actuator><motor joint="hinge" ctrlrange="-1 1" ctrllimited="true"/></actuator>
      </mujoco>)");
    joint_ = model->Find(mjcf::Namespace::kJoint, "hinge");
    auto qpos = MjcfFeature("qpos", joint_);
    qpos->enabled = true;
    qpos->corruptor = CorruptorFromVariation(noises::Additive(distributions::Normal(0.0, 0.01)));
    qpos->delay = IntParam(
        [](RandomState& rng) { return std::uniform_int_distribution<int>(0, 3)(rng); });
    qpos->buffer_size = 2;
    root_ = MakeEntity<ModelEntity>(
        model, std::vector<std::pair<std::string, ObservablePtr>>{{"qpos", qpos}});
    mjcf_variator_.Bind(model->Find(mjcf::Namespace::kGeom, "bob"), "size",
                        noises::Multiplicative(distributions::Uniform(0.9, 1.1)));
    physics_variator_.Bind(joint_, "qpos", distributions::Uniform(-0.5, 0.5));
    set_control_timestep(4 * physics_timestep());
  }
  std::shared_ptr<Entity> root_entity() override { return root_; }
  void InitializeEpisodeMjcf(RandomState& rng) override { mjcf_variator_.ApplyVariations(rng); }
  void InitializeEpisode(sim::Physics& physics, RandomState& rng) override {
    physics_variator_.ApplyVariations(physics, rng);
  }
  double GetReward(sim::Physics& physics) override {
    return std::cos(physics.Bind(joint_).GetVector("qpos")[0]);
  }

 private:
  std::shared_ptr<Entity> root_;
  const mjcf::Element* joint_;
  MjcfVariator mjcf_variator_;
  PhysicsVariator physics_variator_;
};

std::vector<double> RunEpisodes(std::uint64_t seed) {
  Environment env(std::make_shared<NoisyTask>(), {.time_limit = 0.3, .seed = seed});
  std::mt19937_64 agent(99);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> stream;
  for (int episode = 0; episode < 3; ++episode) {
    rl::TimeStep ts = env.Reset();
    while (true) {
      for (double v : ts.observation.At("noisy/qpos").data) stream.push_back(v);
      if (ts.reward) stream.push_back(*ts.reward);
      if (ts.last()) break;
      ts = env.Step(Eigen::VectorXd::Constant(1, u(agent)));
    }
  }
  return stream;
}

TEST(EnvironmentTest, EqualSeedsGiveIdenticalStreams) {
  std::vector<double> a = RunEpisodes(7);
  std::vector<double> b = RunEpisodes(7);
  ASSERT_EQ(a.size(), b.size());
  EXPECT_EQ(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)), 0);
  EXPECT_NE(a, RunEpisodes(8));
}

}  // namespace
}  // namespace ctrlforge::composer
