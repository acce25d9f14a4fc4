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

// Fixed policies used by the command-line tool.

#ifndef CTRLFORGE_TOOLS_CLI_POLICY_H_
#define CTRLFORGE_TOOLS_CLI_POLICY_H_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "ctrlforge/suite/base.h"

namespace ctrlforge::cli {

enum class PolicyKind { kRandom, kZero, kLqrOptimal };

// Throws InvalidArgumentError for unknown names.
PolicyKind ParsePolicy(std::string_view name);
std::string_view PolicyName(PolicyKind kind);

class Policy {
 public:
  // Throws InvalidArgumentError for kLqrOptimal on a non-LQR task.
  Policy(PolicyKind kind, suite::Environment& env, std::uint64_t seed);

  Eigen::VectorXd Act();

 private:
  PolicyKind kind_;
  suite::Environment& env_;
  std::mt19937_64 rng_;
};

}  // namespace ctrlforge::cli

#endif  // CTRLFORGE_TOOLS_CLI_POLICY_H_
