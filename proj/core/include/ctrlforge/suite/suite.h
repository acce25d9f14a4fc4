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

// Benchmark task registry.

#ifndef CTRLFORGE_SUITE_SUITE_H_
#define CTRLFORGE_SUITE_SUITE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctrlforge/suite/base.h"

namespace ctrlforge::suite {

inline constexpr std::string_view kBenchmarking = "benchmarking";
inline constexpr std::string_view kExtra = "extra";
inline constexpr std::string_view kAll = "all";

struct TaskEntry {
  std::string domain;
  std::string task;
  std::string tag;  // kBenchmarking or kExtra
  // Documented state, action and observation sizes.
  int dim_state = 0;
  int dim_action = 0;
  int dim_observation = 0;

  std::string id() const { return domain + ":" + task; }
};

struct LoadOptions {
  std::uint64_t seed = 0;
  bool visualize_reward = false;
  // Domain parameters, e.g. {"num_poles", 4} for cartpole or {"n_links", 8}
  // for swimmer. Unknown keys throw InvalidArgumentError.
  std::map<std::string, double> task_kwargs;
  // Overrides the default episode length (seconds).
  std::optional<double> time_limit;
};

// Every registered task, in a fixed order.
const std::vector<TaskEntry>& AllTasks();
// `tag` is "benchmarking", "extra" or "all"; throws InvalidArgumentError
// otherwise.
std::vector<TaskEntry> TasksWithTag(std::string_view tag);
// Throws UnknownTaskError.
const TaskEntry& FindTask(std::string_view domain, std::string_view task);

// Throws UnknownTaskError or InvalidArgumentError (bad task_kwargs).
std::unique_ptr<Environment> Load(std::string_view domain, std::string_view task,
                                  const LoadOptions& options = {});
// `id` is "domain:task".
std::unique_ptr<Environment> Load(std::string_view id, const LoadOptions& options = {});

}  // namespace ctrlforge::suite

#endif  // CTRLFORGE_SUITE_SUITE_H_
