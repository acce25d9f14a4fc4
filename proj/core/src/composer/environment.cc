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

#include <cmath>
#include <string>
#include <utility>

#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/attr_value.h"

namespace ctrlforge::composer {
namespace {

template <typename F>
void Invoke(const char* callback, const std::string& owner, F&& f) {
  try {
    f();
  } catch (const CallbackError&) {
    throw;
  } catch (const std::exception& e) {
    throw CallbackError(e.what(), callback, owner);
  }
}

std::string OwnerName(const Entity& entity) {
  std::string prefix = entity.mjcf_model()->FullPrefix();
  if (!prefix.empty()) {
    prefix.pop_back();
    return "entity '" + prefix + "'";
  }
  return "entity '" + entity.name() + "'";
}

}  // namespace

Environment::Environment(std::shared_ptr<Task> task, EnvironmentOptions options)
    : task_(std::move(task)), options_(options), random_state_(options.seed) {
  if (task_ == nullptr || task_->root_entity() == nullptr) {
    throw InvalidArgumentError("task has no root entity");
  }
  Compile();
  const double h = physics_->timestep();
  control_timestep_ = task_->control_timestep() > 0 ? task_->control_timestep() : h;
  const double ratio = control_timestep_ / h;
  substeps_ = static_cast<int>(std::llround(ratio));
  if (substeps_ < 1 || std::abs(ratio - substeps_) > 1e-9 * ratio) {
    throw InvalidArgumentError("control timestep " + mjcf::FormatNumber(control_timestep_) +
                               " is not a multiple of the physics timestep " +
                               mjcf::FormatNumber(h));
  }
  if (!(options_.time_limit > 0)) throw InvalidArgumentError("time limit must be positive");
  if (std::isfinite(options_.time_limit)) {
    step_limit_ = static_cast<std::int64_t>(std::ceil(options_.time_limit / control_timestep_ - 1e-9));
  }
  action_spec_ = task_->ActionSpec(*physics_);
  MakeUpdater();
  observation_spec_ = updater_->MakeSpec(*physics_);
}

void Environment::Compile() {
  physics_.emplace(sim::Physics::FromModel(*task_->root_entity()->mjcf_model()));
}

void Environment::MakeUpdater() {
  std::vector<std::pair<std::string, ObservablePtr>> observables;
  for (auto& item : task_->task_observables()) observables.push_back(std::move(item));
  for (Entity* entity : task_->root_entity()->IterEntities()) {
    std::string prefix = entity->mjcf_model()->FullPrefix();
    if (prefix.empty() && !entity->mjcf_model()->model_name().empty()) {
      prefix = entity->mjcf_model()->model_name() + "/";
    }
    for (const auto& [name, obs] : entity->observables()) observables.emplace_back(prefix + name, obs);
  }
  rl::OrderedDict<bool> seen;
  for (const auto& [name, obs] : observables) {
    if (obs != nullptr && obs->enabled && seen.Contains(name)) {
      throw InvalidArgumentError("duplicate observation key '" + name + "'");
    }
    seen.Insert(name, true);
  }
  if (updater_) retired_source_calls_ += updater_->source_calls();
  updater_.emplace(std::move(observables), substeps_, options_.strip_singleton_obs_buffer_dim);
}

std::int64_t Environment::source_calls() const {
  return retired_source_calls_ + (updater_ ? updater_->source_calls() : 0);
}

template <typename TaskHook, typename EntityHook>
void Environment::RunHooks(const char* callback, TaskHook&& task_hook, EntityHook&& entity_hook) {
  Invoke(callback, "task", task_hook);
  for (Entity* entity : task_->root_entity()->IterEntities()) {
    Invoke(callback, OwnerName(*entity), [&] { entity_hook(*entity); });
  }
}

rl::TimeStep Environment::Reset() {
  reset_next_step_ = false;
  steps_ = 0;
  RunHooks(
      "initialize_episode_mjcf", [&] { task_->InitializeEpisodeMjcf(random_state_); },
      [&](Entity& e) { e.InitializeEpisodeMjcf(random_state_); });
  Compile();
  physics_->ResetContext([&](sim::Physics& physics) {
    RunHooks(
        "initialize_episode", [&] { task_->InitializeEpisode(physics, random_state_); },
        [&](Entity& e) { e.InitializeEpisode(physics, random_state_); });
  });
  action_spec_ = task_->ActionSpec(*physics_);
  MakeUpdater();
  updater_->Reset(*physics_, random_state_);
  observation_spec_ = updater_->Spec();
  return rl::Restart(updater_->GetObservation());
}

rl::TimeStep Environment::Step(const Eigen::VectorXd& action) {
  if (reset_next_step_) return Reset();
  action_spec_.Validate(action);
  sim::Physics& physics = *physics_;
  // An exception leaves the episode in an unknown state.
  reset_next_step_ = true;
  RunHooks(
      "before_step", [&] { task_->BeforeStep(physics, action, random_state_); },
      [&](Entity& e) { e.BeforeStep(physics, random_state_); });
  updater_->PrepareForNextControlStep(random_state_);
  for (int i = 0; i < substeps_; ++i) {
    RunHooks(
        "before_substep", [&] { task_->BeforeSubstep(physics, action, random_state_); },
        [&](Entity& e) { e.BeforeSubstep(physics, random_state_); });
    physics.Step();
    RunHooks(
        "after_substep", [&] { task_->AfterSubstep(physics, random_state_); },
        [&](Entity& e) { e.AfterSubstep(physics, random_state_); });
    if (i + 1 < substeps_) updater_->Update(physics, random_state_);
  }
  RunHooks(
      "after_step", [&] { task_->AfterStep(physics, random_state_); },
      [&](Entity& e) { e.AfterStep(physics, random_state_); });
  updater_->Update(physics, random_state_);

  double reward = 0;
  double discount = 1;
  bool terminate = false;
  Invoke("get_reward", "task", [&] { reward = task_->GetReward(physics); });
  Invoke("get_discount", "task", [&] { discount = task_->GetDiscount(physics); });
  Invoke("should_terminate_episode", "task",
         [&] { terminate = task_->ShouldTerminateEpisode(physics); });
  ++steps_;
  rl::Observation observation = updater_->GetObservation();
  if (terminate || steps_ >= step_limit_) {
    return rl::Truncation(reward, std::move(observation), discount);
  }
  reset_next_step_ = false;
  return rl::Transition(reward, std::move(observation), discount);
}

}  // namespace ctrlforge::composer
