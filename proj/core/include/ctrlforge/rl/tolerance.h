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

// Smooth reward shaping: 1 inside a target interval, decaying with distance
// outside it.

#ifndef CTRLFORGE_RL_TOLERANCE_H_
#define CTRLFORGE_RL_TOLERANCE_H_

#include <limits>
#include <string_view>

#include <Eigen/Core>

namespace ctrlforge::rl {

enum class Sigmoid {
  kGaussian,     // exp(-(k x)^2 / 2)
  kHyperbolic,   // 1 / cosh(k x)
  kLongTail,     // 1 / (1 + (k x)^2)
  kCosine,       // (1 + cos(pi k x)) / 2 for k x < 1, else 0
  kLinear,       // 1 - k x for k x < 1, else 0
  kQuadratic,    // 1 - (k x)^2 for k x < 1, else 0
  kTanhSquared,  // 1 - tanh(k x)^2
};

Sigmoid ParseSigmoid(std::string_view name);  // throws InvalidArgumentError
std::string_view SigmoidName(Sigmoid sigmoid);
bool HasFiniteSupport(Sigmoid sigmoid);

// Evaluates `sigmoid` at normalized distance x >= 0, with k chosen so that
// the value at x = 1 is `value_at_margin`. Infinite-support kinds require
// value_at_margin in (0, 1); finite-support kinds accept [0, 1).
double SigmoidValue(Sigmoid sigmoid, double x, double value_at_margin);

struct ToleranceOptions {
  double lower = 0;
  double upper = 0;
  double margin = 0;
  Sigmoid sigmoid = Sigmoid::kGaussian;
  double value_at_margin = 0.1;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// 1 for x in [lower, upper]. With margin 0 the result is 0 outside;
// otherwise SigmoidValue of distance / margin. Throws InvalidArgumentError
// for lower > upper, margin < 0 or an unsupported value_at_margin.
double Tolerance(double x, const ToleranceOptions& options);
Eigen::ArrayXd Tolerance(const Eigen::ArrayXd& x, const ToleranceOptions& options);

}  // namespace ctrlforge::rl

#endif  // CTRLFORGE_RL_TOLERANCE_H_
