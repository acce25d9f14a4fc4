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

#include "ctrlforge/composer/variation.h"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/attr_value.h"

namespace ctrlforge::composer {
namespace {

using Fn = std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&,
                                         RandomState&)>;

class FunctionVariation : public VariationBase {
 public:
  explicit FunctionVariation(Fn fn) : fn_(std::move(fn)) {}
  Eigen::VectorXd operator()(const Eigen::VectorXd& initial, const Eigen::VectorXd& current,
                             RandomState& random_state) const override {
    return fn_(initial, current, random_state);
  }

 private:
  Fn fn_;
};

// Broadcasts size-1 operands against the other operand.
Eigen::VectorXd Broadcast(const Eigen::VectorXd& v, Eigen::Index n) {
  if (v.size() == n) return v;
  if (v.size() == 1) return Eigen::VectorXd::Constant(n, v[0]);
  throw InvalidArgumentError("cannot broadcast a value of size " + std::to_string(v.size()) +
                             " to size " + std::to_string(n));
}

template <typename Op>
Variation Binary(const Variation& a, const Variation& b, Op op) {
  return Variation::FromFunction(
      [a, b, op](const Eigen::VectorXd& initial, const Eigen::VectorXd& current,
                 RandomState& rng) -> Eigen::VectorXd {
        Eigen::VectorXd x = a(initial, current, rng);
        Eigen::VectorXd y = b(initial, current, rng);
        const Eigen::Index n = std::max(x.size(), y.size());
        return op(Broadcast(x, n).array(), Broadcast(y, n).array()).matrix();
      });
}

// Evaluates the parameters in order, broadcast to a common size.
std::vector<Eigen::VectorXd> Params(const std::vector<Variation>& params,
                                    const Eigen::VectorXd& initial,
                                    const Eigen::VectorXd& current, RandomState& rng) {
  std::vector<Eigen::VectorXd> values;
  Eigen::Index n = 1;
  for (const Variation& p : params) {
    values.push_back(p(initial, current, rng));
    n = std::max(n, values.back().size());
  }
  for (Eigen::VectorXd& v : values) v = Broadcast(v, n);
  return values;
}

template <typename Draw>
Variation Distribution(std::vector<Variation> params, Draw draw) {
  return Variation::FromFunction(
      [params = std::move(params), draw](const Eigen::VectorXd& initial,
                                         const Eigen::VectorXd& current,
                                         RandomState& rng) -> Eigen::VectorXd {
        std::vector<Eigen::VectorXd> p = Params(params, initial, current, rng);
        Eigen::VectorXd out(p[0].size());
        for (Eigen::Index i = 0; i < out.size(); ++i) {
          std::vector<double> args;
          for (const Eigen::VectorXd& v : p) args.push_back(v[i]);
          out[i] = draw(args, rng);
        }
        return out;
      });
}

std::string Num(double x) { return mjcf::FormatNumber(x); }

}  // namespace

Variation::Variation(double value) : Variation(Eigen::VectorXd::Constant(1, value)) {}

Variation::Variation(const Eigen::VectorXd& value)
    : impl_(std::make_shared<FunctionVariation>(
          [value](const Eigen::VectorXd&, const Eigen::VectorXd&, RandomState&) {
            return value;
          })) {}

Variation::Variation(std::shared_ptr<const VariationBase> impl) : impl_(std::move(impl)) {
  if (impl_ == nullptr) throw InvalidArgumentError("null variation");
}

Variation Variation::FromFunction(Fn fn) {
  return Variation(std::make_shared<FunctionVariation>(std::move(fn)));
}

Eigen::VectorXd Variation::operator()(RandomState& random_state) const {
  return (*this)(Eigen::VectorXd(), Eigen::VectorXd(), random_state);
}

double Variation::Scalar(RandomState& random_state) const {
  Eigen::VectorXd v = (*this)(random_state);
  if (v.size() != 1) {
    throw InvalidArgumentError("expected a scalar, got " + std::to_string(v.size()) + " values");
  }
  return v[0];
}

Variation operator+(const Variation& a, const Variation& b) {
  return Binary(a, b, [](const auto& x, const auto& y) { return x + y; });
}
Variation operator-(const Variation& a, const Variation& b) {
  return Binary(a, b, [](const auto& x, const auto& y) { return x - y; });
}
Variation operator*(const Variation& a, const Variation& b) {
  return Binary(a, b, [](const auto& x, const auto& y) { return x * y; });
}
Variation operator/(const Variation& a, const Variation& b) {
  return Binary(a, b, [](const auto& x, const auto& y) { return x / y; });
}
Variation operator-(const Variation& a) { return Variation(0.0) - a; }

const Eigen::VectorXd& Nested::value() const {
  if (const auto* v = std::get_if<Eigen::VectorXd>(&item)) return *v;
  throw InvalidArgumentError(std::holds_alternative<Variation>(item)
                                 ? "structure holds an unevaluated variation"
                                 : "structure element is a list, not a value");
}

const std::vector<Nested>& Nested::items() const {
  if (const auto* v = std::get_if<std::vector<Nested>>(&item)) return *v;
  throw InvalidArgumentError("structure element is a value, not a list");
}

Nested Evaluate(const Nested& structure, RandomState& random_state) {
  if (const auto* v = std::get_if<Variation>(&structure.item)) return Nested((*v)(random_state));
  if (const auto* list = std::get_if<std::vector<Nested>>(&structure.item)) {
    std::vector<Nested> out;
    out.reserve(list->size());
    for (const Nested& n : *list) out.push_back(Evaluate(n, random_state));
    return Nested(std::move(out));
  }
  return structure;
}

void MjcfVariator::Bind(mjcf::Element* element, std::string attribute, Variation variation) {
  if (element == nullptr) throw InvalidArgumentError("cannot vary a null element");
  const mjcf::AttrSchema* schema = nullptr;
  for (const mjcf::AttrSchema& a : element->schema().attributes) {
    if (a.name == attribute) schema = &a;
  }
  if (schema == nullptr) {
    throw SchemaError("attribute '" + attribute + "' is not valid for " +
                      mjcf::Describe(*element));
  }
  const bool scalar = schema->kind == mjcf::AttrKind::kNumber;
  if (!scalar && schema->kind != mjcf::AttrKind::kArray) {
    throw SchemaError("attribute '" + attribute + "' of " + mjcf::Describe(*element) +
                      " is not numeric and cannot be varied");
  }
  bindings_.push_back({element, std::move(attribute), std::move(variation), scalar, {}, {}});
}

void MjcfVariator::ApplyVariations(RandomState& random_state) {
  for (Entry& e : bindings_) {
    if (!e.initial) {
      std::vector<double> values = e.element->GetArray(e.attribute, {});
      e.initial = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                    static_cast<Eigen::Index>(values.size()));
      e.current = *e.initial;
    }
    Eigen::VectorXd value = e.variation(*e.initial, e.current, random_state);
    if (e.scalar) {
      if (value.size() != 1) {
        throw InvalidArgumentError("variation of scalar attribute '" + e.attribute +
                                   "' produced " + std::to_string(value.size()) + " values");
      }
      e.element->Set(e.attribute, value[0]);
    } else {
      e.element->Set(e.attribute, std::vector<double>(value.data(), value.data() + value.size()));
    }
    e.current = value;
  }
}

void PhysicsVariator::Bind(const mjcf::Element* element, std::string field,
                           Variation variation) {
  if (element == nullptr) throw InvalidArgumentError("cannot vary a null element");
  bindings_.push_back({element, std::move(field), std::move(variation), {}, {}});
}

void PhysicsVariator::ApplyVariations(sim::Physics& physics, RandomState& random_state) {
  for (Entry& e : bindings_) {
    sim::Binding binding = physics.Bind(e.element);
    if (!e.initial) {
      e.initial = binding.Get(e.field).row(0).transpose();
      e.current = *e.initial;
    }
    Eigen::VectorXd value = Broadcast(e.variation(*e.initial, e.current, random_state),
                                      e.initial->size());
    binding.Set(e.field, value.transpose());
    e.current = value;
  }
}

namespace distributions {

Variation Uniform(Variation low, Variation high) {
  return Distribution({std::move(low), std::move(high)},
                      [](const std::vector<double>& p, RandomState& rng) {
                        if (!(p[0] <= p[1])) {
                          throw InvalidArgumentError("Uniform: low " + Num(p[0]) +
                                                     " exceeds high " + Num(p[1]));
                        }
                        if (p[0] == p[1]) return p[0];
                        return std::uniform_real_distribution<double>(p[0], p[1])(rng);
                      });
}

Variation UniformInteger(Variation low, Variation high) {
  return Distribution({std::move(low), std::move(high)},
                      [](const std::vector<double>& p, RandomState& rng) {
                        auto lo = static_cast<long long>(std::ceil(p[0]));
                        auto hi = static_cast<long long>(std::ceil(p[1])) - 1;
                        if (lo > hi) {
                          throw InvalidArgumentError("UniformInteger: empty range [" + Num(p[0]) +
                                                     ", " + Num(p[1]) + ")");
                        }
                        return static_cast<double>(
                            std::uniform_int_distribution<long long>(lo, hi)(rng));
                      });
}

Variation Normal(Variation loc, Variation scale) {
  return Distribution({std::move(loc), std::move(scale)},
                      [](const std::vector<double>& p, RandomState& rng) {
                        if (!(p[1] > 0)) {
                          throw InvalidArgumentError("Normal: scale must be positive, got " +
                                                     Num(p[1]));
                        }
                        return std::normal_distribution<double>(p[0], p[1])(rng);
                      });
}

Variation LogNormal(Variation mean, Variation sigma) {
  return Distribution({std::move(mean), std::move(sigma)},
                      [](const std::vector<double>& p, RandomState& rng) {
                        if (!(p[1] > 0)) {
                          throw InvalidArgumentError("LogNormal: sigma must be positive, got " +
                                                     Num(p[1]));
                        }
                        return std::lognormal_distribution<double>(p[0], p[1])(rng);
                      });
}

Variation Bernoulli(Variation prob) {
  return Distribution({std::move(prob)}, [](const std::vector<double>& p, RandomState& rng) {
    if (!(p[0] >= 0 && p[0] <= 1)) {
      throw InvalidArgumentError("Bernoulli: probability " + Num(p[0]) + " not in [0, 1]");
    }
    return std::bernoulli_distribution(p[0])(rng) ? 1.0 : 0.0;
  });
}

Variation UniformChoice(std::vector<Variation> choices) {
  if (choices.empty()) throw InvalidArgumentError("UniformChoice: no choices");
  return Variation::FromFunction(
      [choices = std::move(choices)](const Eigen::VectorXd& initial,
                                     const Eigen::VectorXd& current, RandomState& rng) {
        std::size_t i = std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng);
        return choices[i](initial, current, rng);
      });
}

}  // namespace distributions

namespace noises {

Variation Additive(Variation variation) {
  return Variation::FromFunction(
      [variation](const Eigen::VectorXd& initial, const Eigen::VectorXd& current,
                  RandomState& rng) -> Eigen::VectorXd {
        Eigen::VectorXd noise = variation(initial, current, rng);
        const Eigen::Index n = std::max(initial.size(), noise.size());
        return Broadcast(initial, n) + Broadcast(noise, n);
      });
}

Variation Multiplicative(Variation variation) {
  return Variation::FromFunction(
      [variation](const Eigen::VectorXd& initial, const Eigen::VectorXd& current,
                  RandomState& rng) -> Eigen::VectorXd {
        Eigen::VectorXd factor = variation(initial, current, rng);
        const Eigen::Index n = std::max(initial.size(), factor.size());
        return Broadcast(initial, n).cwiseProduct(Broadcast(factor, n));
      });
}

}  // namespace noises

namespace deterministic {

Variation Constant(Eigen::VectorXd value) { return Variation(value); }

Variation Sequence(std::vector<Eigen::VectorXd> values) {
  if (values.empty()) throw InvalidArgumentError("Sequence: no values");
  auto index = std::make_shared<std::size_t>(0);
  return Variation::FromFunction(
      [values = std::move(values), index](const Eigen::VectorXd&, const Eigen::VectorXd&,
                                          RandomState&) {
        const Eigen::VectorXd& v = values[*index % values.size()];
        ++*index;
        return v;
      });
}

}  // namespace deterministic

namespace colors {

Variation Rgb(Variation r, Variation g, Variation b, Variation alpha) {
  return Variation::FromFunction(
      [params = std::vector<Variation>{r, g, b, alpha}](
          const Eigen::VectorXd& initial, const Eigen::VectorXd& current, RandomState& rng) {
        Eigen::VectorXd rgba(4);
        for (int i = 0; i < 4; ++i) rgba[i] = params[i](initial, current, rng)[0];
        return rgba;
      });
}

Variation Hsv(Variation h, Variation s, Variation v, Variation alpha) {
  return Variation::FromFunction(
      [params = std::vector<Variation>{h, s, v, alpha}](
          const Eigen::VectorXd& initial, const Eigen::VectorXd& current, RandomState& rng) {
        double hsv[4];
        for (int i = 0; i < 4; ++i) hsv[i] = params[i](initial, current, rng)[0];
        const double hue = 6 * (hsv[0] - std::floor(hsv[0]));
        const double c = hsv[2] * hsv[1];
        const double x = c * (1 - std::abs(std::fmod(hue, 2.0) - 1));
        const double m = hsv[2] - c;
        double rgb[3];
        switch (static_cast<int>(hue) % 6) {
          case 0: rgb[0] = c, rgb[1] = x, rgb[2] = 0; break;
          case 1: rgb[0] = x, rgb[1] = c, rgb[2] = 0; break;
          case 2: rgb[0] = 0, rgb[1] = c, rgb[2] = x; break;
          case 3: rgb[0] = 0, rgb[1] = x, rgb[2] = c; break;
          case 4: rgb[0] = x, rgb[1] = 0, rgb[2] = c; break;
          default: rgb[0] = c, rgb[1] = 0, rgb[2] = x; break;
        }
        Eigen::VectorXd rgba(4);
        rgba << rgb[0] + m, rgb[1] + m, rgb[2] + m, hsv[3];
        return rgba;
      });
}

Variation Gray(Variation gray, Variation alpha) {
  return Variation::FromFunction(
      [gray, alpha](const Eigen::VectorXd& initial, const Eigen::VectorXd& current,
                    RandomState& rng) {
        const double g = gray(initial, current, rng)[0];
        Eigen::VectorXd rgba(4);
        rgba << g, g, g, alpha(initial, current, rng)[0];
        return rgba;
      });
}

}  // namespace colors

namespace rotations {

Variation Yaw(Variation angle) {
  return Variation::FromFunction(
      [angle](const Eigen::VectorXd& initial, const Eigen::VectorXd& current, RandomState& rng) {
        const double a = angle(initial, current, rng)[0];
        Eigen::VectorXd q(4);
        q << std::cos(a / 2), 0, 0, std::sin(a / 2);
        return q;
      });
}

Variation UniformYaw() { return Yaw(distributions::Uniform(0.0, 2 * std::numbers::pi)); }

}  // namespace rotations

}  // namespace ctrlforge::composer
