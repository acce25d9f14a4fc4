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

#include <functional>
#include <map>
#include <string>

#include "ctrlforge/errors.h"
#include "ctrlforge/suite/suite.h"
#include "suite/common.h"

namespace ctrlforge::suite {
namespace {

using Loader = std::function<std::unique_ptr<Environment>(std::string_view, const LoadOptions&)>;

const std::map<std::string, Loader, std::less<>>& Domains() {
  static const auto* domains = new std::map<std::string, Loader, std::less<>>{
      {"acrobot", internal::LoadAcrobot},   {"cartpole", internal::LoadCartpole},
      {"lqr", internal::LoadLqr},           {"pendulum", internal::LoadPendulum},
      {"point_mass", internal::LoadPointMass}, {"reacher", internal::LoadReacher},
      {"swimmer", internal::LoadSwimmer},
  };
  return *domains;
}

}  // namespace

const std::vector<TaskEntry>& AllTasks() {
  const std::string b(kBenchmarking);
  const std::string e(kExtra);
  static const auto* tasks = new std::vector<TaskEntry>{
      {"acrobot", "swingup", b, 4, 1, 6},
      {"acrobot", "swingup_sparse", b, 4, 1, 6},
      {"cartpole", "balance", b, 4, 1, 5},
      {"cartpole", "balance_sparse", b, 4, 1, 5},
      {"cartpole", "swingup", b, 4, 1, 5},
      {"cartpole", "swingup_sparse", b, 4, 1, 5},
      {"cartpole", "two_poles", e, 6, 1, 8},
      {"cartpole", "three_poles", e, 8, 1, 11},
      {"pendulum", "swingup", b, 2, 1, 3},
      {"point_mass", "easy", b, 4, 2, 4},
      {"point_mass", "hard", e, 4, 2, 4},
      {"reacher", "easy", b, 4, 2, 6},
      {"reacher", "hard", b, 4, 2, 6},
      {"swimmer", "swimmer6", b, 16, 5, 25},
      {"swimmer", "swimmer15", b, 34, 14, 61},
      {"lqr", "lqr_2_1", e, 4, 1, 4},
      {"lqr", "lqr_6_2", e, 12, 2, 12},
  };
  return *tasks;
}

std::vector<TaskEntry> TasksWithTag(std::string_view tag) {
  if (tag != kAll && tag != kBenchmarking && tag != kExtra) {
    throw InvalidArgumentError("unknown tag '" + std::string(tag) +
                               "' (expected benchmarking, extra or all)");
  }
  std::vector<TaskEntry> out;
  for (const TaskEntry& entry : AllTasks()) {
    if (tag == kAll || entry.tag == tag) out.push_back(entry);
  }
  return out;
}

const TaskEntry& FindTask(std::string_view domain, std::string_view task) {
  for (const TaskEntry& entry : AllTasks()) {
    if (entry.domain == domain && entry.task == task) return entry;
  }
  throw UnknownTaskError("unknown task '" + std::string(domain) + ":" + std::string(task) + "'");
}

std::unique_ptr<Environment> Load(std::string_view domain, std::string_view task,
                                  const LoadOptions& options) {
  FindTask(domain, task);
  return Domains().find(domain)->second(task, options);
}

std::unique_ptr<Environment> Load(std::string_view id, const LoadOptions& options) {
  const std::size_t colon = id.find(':');
  if (colon == std::string_view::npos) {
    throw UnknownTaskError("task id '" + std::string(id) + "' is not of the form domain:task");
  }
  return Load(id.substr(0, colon), id.substr(colon + 1), options);
}

}  // namespace ctrlforge::suite
