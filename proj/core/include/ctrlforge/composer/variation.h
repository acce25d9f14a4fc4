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

// Seeded value generators for domain randomization and observation noise.

#ifndef CTRLFORGE_COMPOSER_VARIATION_H_
#define CTRLFORGE_COMPOSER_VARIATION_H_

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "ctrlforge/mjcf/element.h"
#include "ctrlforge/sim/physics.h"

namespace ctrlforge::composer {

using RandomState = std::mt19937_64;

// A generator of values, possibly depending on the initial value of the
// varied quantity and on the most recently generated one. Scalars are
// vectors of size 1 and broadcast in arithmetic.
class VariationBase {
 public:
  virtual ~VariationBase() = default;
  virtual Eigen::VectorXd operator()(const Eigen::VectorXd& initial_value,
                                     const Eigen::VectorXd& current_value,
                                     RandomState& random_state) const = 0;
};

// Shared handle to a variation; implicitly constructible from constants.
class Variation {
 public:
  Variation(double value);                   // NOLINT(runtime/explicit)
  Variation(const Eigen::VectorXd& value);   // NOLINT(runtime/explicit)
  Variation(std::shared_ptr<const VariationBase> impl);  // NOLINT(runtime/explicit)
  // Wraps a callable with the variation signature.
  static Variation FromFunction(
      std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&,
                                    RandomState&)>
          fn);

  Eigen::VectorXd operator()(const Eigen::VectorXd& initial_value,
                             const Eigen::VectorXd& current_value,
                             RandomState& random_state) const {
    return (*impl_)(initial_value, current_value, random_state);
  }
  // Evaluation without initial/current values (both empty).
  Eigen::VectorXd operator()(RandomState& random_state) const;
  double Scalar(RandomState& random_state) const;

 private:
  std::shared_ptr<const VariationBase> impl_;
};

// Elementwise arithmetic; the left operand is evaluated first.
Variation operator+(const Variation& a, const Variation& b);
Variation operator-(const Variation& a, const Variation& b);
Variation operator*(const Variation& a, const Variation& b);
Variation operator/(const Variation& a, const Variation& b);
Variation operator-(const Variation& a);

// Arbitrarily nested structure of constants and variations.
struct Nested {
  std::variant<Eigen::VectorXd, Variation, std::vector<Nested>> item;

  Nested(double value) : item(Eigen::VectorXd::Constant(1, value)) {}  // NOLINT
  Nested(Eigen::VectorXd value) : item(std::move(value)) {}            // NOLINT
  Nested(Variation value) : item(std::move(value)) {}                  // NOLINT
  Nested(std::vector<Nested> items) : item(std::move(items)) {}        // NOLINT
  Nested(std::initializer_list<Nested> items) : item(std::vector<Nested>(items)) {}

  bool is_leaf() const { return !std::holds_alternative<std::vector<Nested>>(item); }
  // Leaf value; throws InvalidArgumentError for lists or unevaluated leaves.
  const Eigen::VectorXd& value() const;
  double scalar() const { return value()[0]; }
  const std::vector<Nested>& items() const;
  const Nested& operator[](std::size_t i) const { return items().at(i); }
};

// Replaces every variation by a value drawn from `random_state`, visiting
// leaves depth-first in order. Constants pass through unchanged.
Nested Evaluate(const Nested& structure, RandomState& random_state);

// Varies attributes of model elements before compilation. Each binding
// remembers the attribute's value when first varied (initial value) and
// the last value it applied (current value).
class MjcfVariator {
 public:
  // Throws SchemaError if the attribute is not a numeric attribute of
  // `element`.
  void Bind(mjcf::Element* element, std::string attribute, Variation variation);
  void ApplyVariations(RandomState& random_state);
  void Clear() { bindings_.clear(); }

 private:
  struct Entry {
    mjcf::Element* element;
    std::string attribute;
    Variation variation;
    bool scalar = false;
    std::optional<Eigen::VectorXd> initial;
    Eigen::VectorXd current;
  };
  std::vector<Entry> bindings_;
};

// Varies fields of compiled elements through Physics bindings.
class PhysicsVariator {
 public:
  void Bind(const mjcf::Element* element, std::string field, Variation variation);
  // Throws BindingError if an element is not part of `physics` or the field
  // is not writable.
  void ApplyVariations(sim::Physics& physics, RandomState& random_state);
  void Clear() { bindings_.clear(); }

 private:
  struct Entry {
    const mjcf::Element* element;
    std::string field;
    Variation variation;
    std::optional<Eigen::VectorXd> initial;
    Eigen::VectorXd current;
  };
  std::vector<Entry> bindings_;
};

namespace distributions {

// Parameters may themselves be variations; they are evaluated before each
// draw, in argument order. Throw InvalidArgumentError for invalid parameters
// at draw time.
Variation Uniform(Variation low = 0.0, Variation high = 1.0);
Variation UniformInteger(Variation low, Variation high);  // [low, high)
Variation Normal(Variation loc = 0.0, Variation scale = 1.0);
Variation LogNormal(Variation mean = 0.0, Variation sigma = 1.0);
Variation Bernoulli(Variation prob = 0.5);
// Uniformly chosen element of `choices`.
Variation UniformChoice(std::vector<Variation> choices);

}  // namespace distributions

namespace noises {

// initial_value + sample, and initial_value * sample.
Variation Additive(Variation variation);
Variation Multiplicative(Variation variation);

}  // namespace noises

namespace deterministic {

Variation Constant(Eigen::VectorXd value);
// Cycles through `values`, one per evaluation.
Variation Sequence(std::vector<Eigen::VectorXd> values);

}  // namespace deterministic

namespace colors {

Variation Rgb(Variation r, Variation g, Variation b, Variation alpha = 1.0);
// Hue, saturation and value in [0, 1].
Variation Hsv(Variation h, Variation s, Variation v, Variation alpha = 1.0);
Variation Gray(Variation gray, Variation alpha = 1.0);

}  // namespace colors

namespace rotations {

// Scalar-first quaternion for a rotation by `angle` (radians) about z.
Variation Yaw(Variation angle);
Variation UniformYaw();

}  // namespace rotations

}  // namespace ctrlforge::composer

#endif  // CTRLFORGE_COMPOSER_VARIATION_H_
