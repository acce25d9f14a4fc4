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

#include "ctrlforge/rl/array.h"

#include <cmath>
#include <limits>

#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/attr_value.h"

namespace ctrlforge::rl {
namespace {

std::string Label(const std::string& name) { return name.empty() ? "array" : name; }

}  // namespace

std::string_view DTypeName(DType dtype) {
  switch (dtype) {
    case DType::kFloat64: return "float64";
    case DType::kUint8: return "uint8";
  }
  return "?";
}

Array Array::Scalar(double value) { return {{}, DType::kFloat64, {value}}; }

Array Array::FromVector(const Eigen::VectorXd& v) {
  return {{static_cast<int>(v.size())}, DType::kFloat64, {v.data(), v.data() + v.size()}};
}

Array Array::Zeros(std::vector<int> shape, DType dtype) {
  std::size_t n = NumElements(shape);
  return {std::move(shape), dtype, std::vector<double>(n, 0.0)};
}

std::size_t NumElements(const std::vector<int>& shape) {
  std::size_t n = 1;
  for (int d : shape) n *= static_cast<std::size_t>(d);
  return n;
}

std::string ShapeString(const std::vector<int>& shape) {
  std::string s = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i > 0) s += ", ";
    s += std::to_string(shape[i]);
  }
  if (shape.size() == 1) s += ",";
  return s + ")";
}

ArraySpec::ArraySpec(std::vector<int> shape, DType dtype, std::string name)
    : shape_(std::move(shape)), dtype_(dtype), name_(std::move(name)) {
  for (int d : shape_) {
    if (d < 0) throw SpecError("negative dimension in shape " + ShapeString(shape_));
  }
}

ArraySpec::ArraySpec(std::vector<int> shape, DType dtype, std::vector<double> minimum,
                     std::vector<double> maximum, std::string name)
    : ArraySpec(std::move(shape), dtype, std::move(name)) {
  const std::size_t n = size();
  for (const auto* bound : {&minimum, &maximum}) {
    if (bound->size() != 1 && bound->size() != n) {
      throw SpecError(Label(name_) + ": bounds of length " + std::to_string(bound->size()) +
                      " do not broadcast to shape " + ShapeString(shape_));
    }
  }
  minimum_ = std::move(minimum);
  maximum_ = std::move(maximum);
  std::vector<double> lo = this->minimum();
  std::vector<double> hi = this->maximum();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lo[i] <= hi[i])) {
      throw SpecError(Label(name_) + ": minimum[" + std::to_string(i) + "] = " +
                      mjcf::FormatNumber(lo[i]) + " exceeds maximum " +
                      mjcf::FormatNumber(hi[i]));
    }
  }
}

std::vector<double> ArraySpec::minimum() const {
  if (!minimum_) return std::vector<double>(size(), -std::numeric_limits<double>::infinity());
  if (minimum_->size() == 1) return std::vector<double>(size(), (*minimum_)[0]);
  return *minimum_;
}

std::vector<double> ArraySpec::maximum() const {
  if (!maximum_) return std::vector<double>(size(), std::numeric_limits<double>::infinity());
  if (maximum_->size() == 1) return std::vector<double>(size(), (*maximum_)[0]);
  return *maximum_;
}

void ArraySpec::Validate(const Array& value) const {
  if (value.shape != shape_) {
    throw SpecError(Label(name_) + ": expected shape " + ShapeString(shape_) + ", got " +
                    ShapeString(value.shape));
  }
  if (value.dtype != dtype_) {
    throw SpecError(Label(name_) + ": expected dtype " + std::string(DTypeName(dtype_)) +
                    ", got " + std::string(DTypeName(value.dtype)));
  }
  if (value.data.size() != size()) {
    throw SpecError(Label(name_) + ": holds " + std::to_string(value.data.size()) +
                    " values for shape " + ShapeString(shape_));
  }
  Validate(Eigen::Map<const Eigen::VectorXd>(value.data.data(),
                                             static_cast<Eigen::Index>(value.data.size())));
}

void ArraySpec::Validate(const Eigen::VectorXd& value) const {
  if (static_cast<std::size_t>(value.size()) != size()) {
    throw SpecError(Label(name_) + ": expected " + std::to_string(size()) + " values, got " +
                    std::to_string(value.size()));
  }
  std::vector<double> lo = minimum();
  std::vector<double> hi = maximum();
  for (std::size_t i = 0; i < size(); ++i) {
    const double v = value[static_cast<Eigen::Index>(i)];
    const std::string at = Label(name_) + "[" + std::to_string(i) + "] = " + mjcf::FormatNumber(v);
    if (std::isnan(v)) throw SpecError(at + " is NaN");
    if (v < lo[i]) throw SpecError(at + " is below minimum " + mjcf::FormatNumber(lo[i]));
    if (v > hi[i]) throw SpecError(at + " exceeds maximum " + mjcf::FormatNumber(hi[i]));
    if (dtype_ == DType::kUint8 && (v != std::floor(v) || v < 0 || v > 255)) {
      throw SpecError(at + " is not a uint8 value");
    }
  }
}

Eigen::VectorXd ArraySpec::SampleUniform(std::mt19937_64& rng) const {
  std::vector<double> lo = minimum();
  std::vector<double> hi = maximum();
  Eigen::VectorXd out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    double a = std::isfinite(lo[i]) ? lo[i] : -1;
    double b = std::isfinite(hi[i]) ? hi[i] : 1;
    if (!std::isfinite(lo[i]) && std::isfinite(hi[i])) a = b - 2;
    if (std::isfinite(lo[i]) && !std::isfinite(hi[i])) b = a + 2;
    out[static_cast<Eigen::Index>(i)] = std::uniform_real_distribution<double>(a, b)(rng);
  }
  return out;
}

void ThrowUnknownKey(std::string_view key) {
  throw InvalidArgumentError("no entry named '" + std::string(key) + "'");
}

void ValidateObservation(const ObservationSpec& spec, const Observation& observation) {
  if (spec.Keys() != observation.Keys()) {
    std::string expected;
    for (const std::string& k : spec.Keys()) expected += " " + k;
    std::string got;
    for (const std::string& k : observation.Keys()) got += " " + k;
    throw SpecError("observation keys [" + got + " ] do not match spec [" + expected + " ]");
  }
  auto it = observation.begin();
  for (const auto& [key, s] : spec) {
    ArraySpec named(s.shape(), s.dtype(), key);
    named.Validate(it->second);
    ++it;
  }
}

}  // namespace ctrlforge::rl
