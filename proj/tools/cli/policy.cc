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

#include "cli/policy.h"

#include "ctrlforge/errors.h"
#include "ctrlforge/suite/lqr.h"

namespace ctrlforge::cli {

PolicyKind ParsePolicy(std::string_view name) {
  if (name == "random") return PolicyKind::kRandom;
  if (name == "zero") return PolicyKind::kZero;
  if (name == "lqr-optimal") return PolicyKind::kLqrOptimal;
  throw InvalidArgumentError("unknown policy '" + std::string(name) +
                             "' (expected random, zero or lqr-optimal)");
}

std::string_view PolicyName(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kRandom: return "random";
    case PolicyKind::kZero: return "zero";
    case PolicyKind::kLqrOptimal: return "lqr-optimal";
  }
  return "";
}

Policy::Policy(PolicyKind kind, suite::Environment& env, std::uint64_t seed)
    : kind_(kind), env_(env), rng_(seed) {
  if (kind == PolicyKind::kLqrOptimal && dynamic_cast<suite::LqrTask*>(&env.task()) == nullptr) {
    throw InvalidArgumentError("policy lqr-optimal is only available for lqr tasks");
  }
}

Eigen::VectorXd Policy::Act() {
  switch (kind_) {
    case PolicyKind::kRandom:
      return env_.action_spec().SampleUniform(rng_);
    case PolicyKind::kZero:
      return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(env_.action_spec().size()));
    case PolicyKind::kLqrOptimal:
      return static_cast<suite::LqrTask&>(env_.task()).OptimalAction(*env_.physics());
  }
  return {};
}

}  // namespace ctrlforge::cli
