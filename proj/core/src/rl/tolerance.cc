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

#include "ctrlforge/rl/tolerance.h"

#include <cmath>
#include <numbers>
#include <string>

#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/attr_value.h"

namespace ctrlforge::rl {
namespace {

constexpr std::pair<Sigmoid, std::string_view> kNames[] = {
    {Sigmoid::kGaussian, "gaussian"},   {Sigmoid::kHyperbolic, "hyperbolic"},
    {Sigmoid::kLongTail, "long_tail"},  {Sigmoid::kCosine, "cosine"},
    {Sigmoid::kLinear, "linear"},       {Sigmoid::kQuadratic, "quadratic"},
    {Sigmoid::kTanhSquared, "tanh_squared"},
};

void CheckValueAtMargin(Sigmoid sigmoid, double value_at_margin) {
  const bool finite = HasFiniteSupport(sigmoid);
  const bool ok = finite ? (value_at_margin >= 0 && value_at_margin < 1)
                         : (value_at_margin > 0 && value_at_margin < 1);
  if (!ok) {
    throw InvalidArgumentError(
        "value_at_margin = " + mjcf::FormatNumber(value_at_margin) + " is invalid for the " +
        std::string(SigmoidName(sigmoid)) + " sigmoid; it must lie in " +
        (finite ? "[0, 1)" : "(0, 1)"));
  }
}

}  // namespace

Sigmoid ParseSigmoid(std::string_view name) {
  for (const auto& [s, n] : kNames) {
    if (n == name) return s;
  }
  throw InvalidArgumentError("unknown sigmoid '" + std::string(name) + "'");
}

std::string_view SigmoidName(Sigmoid sigmoid) {
  for (const auto& [s, n] : kNames) {
    if (s == sigmoid) return n;
  }
  return "?";
}

bool HasFiniteSupport(Sigmoid sigmoid) {
  return sigmoid == Sigmoid::kCosine || sigmoid == Sigmoid::kLinear ||
         sigmoid == Sigmoid::kQuadratic;
}

double SigmoidValue(Sigmoid sigmoid, double x, double value_at_margin) {
  CheckValueAtMargin(sigmoid, value_at_margin);
  const double v = value_at_margin;
  switch (sigmoid) {
    case Sigmoid::kGaussian: {
      const double k = std::sqrt(-2 * std::log(v));
      return std::exp(-0.5 * (x * k) * (x * k));
    }
    case Sigmoid::kHyperbolic: {
      const double k = std::acosh(1 / v);
      return 1 / std::cosh(x * k);
    }
    case Sigmoid::kLongTail: {
      const double k = std::sqrt(1 / v - 1);
      return 1 / ((x * k) * (x * k) + 1);
    }
    case Sigmoid::kCosine: {
      const double kx = x * std::acos(2 * v - 1) / std::numbers::pi;
      return kx < 1 ? (1 + std::cos(std::numbers::pi * kx)) / 2 : 0.0;
    }
    case Sigmoid::kLinear: {
      const double kx = x * (1 - v);
      return kx < 1 ? 1 - kx : 0.0;
    }
    case Sigmoid::kQuadratic: {
      const double kx = x * std::sqrt(1 - v);
      return kx < 1 ? 1 - kx * kx : 0.0;
    }
    case Sigmoid::kTanhSquared: {
      const double k = std::atanh(std::sqrt(1 - v));
      const double t = std::tanh(x * k);
      return 1 - t * t;
    }
  }
  throw InvalidArgumentError("unknown sigmoid");
}

double Tolerance(double x, const ToleranceOptions& options) {
  if (!(options.lower <= options.upper)) {
    throw InvalidArgumentError("tolerance lower bound " + mjcf::FormatNumber(options.lower) +
                               " exceeds upper bound " + mjcf::FormatNumber(options.upper));
  }
  if (!(options.margin >= 0)) {
    throw InvalidArgumentError("tolerance margin " + mjcf::FormatNumber(options.margin) +
                               " is negative");
  }
  CheckValueAtMargin(options.sigmoid, options.value_at_margin);
  const bool in_bounds = options.lower <= x && x <= options.upper;
  if (in_bounds) return 1.0;
  if (options.margin == 0) return 0.0;
  const double d = (x < options.lower ? options.lower - x : x - options.upper) / options.margin;
  return SigmoidValue(options.sigmoid, d, options.value_at_margin);
}

Eigen::ArrayXd Tolerance(const Eigen::ArrayXd& x, const ToleranceOptions& options) {
  Eigen::ArrayXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = Tolerance(x[i], options);
  return out;
}

}  // namespace ctrlforge::rl
