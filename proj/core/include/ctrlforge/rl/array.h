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

// Numeric arrays and the specs that describe them.

#ifndef CTRLFORGE_RL_ARRAY_H_
#define CTRLFORGE_RL_ARRAY_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace ctrlforge::rl {

enum class DType { kFloat64, kUint8 };

std::string_view DTypeName(DType dtype);

// Dense row-major array. Values are stored as doubles whatever the dtype;
// uint8 arrays hold integers in [0, 255].
struct Array {
  std::vector<int> shape;
  DType dtype = DType::kFloat64;
  std::vector<double> data;

  static Array Scalar(double value);
  static Array FromVector(const Eigen::VectorXd& v);
  static Array Zeros(std::vector<int> shape, DType dtype = DType::kFloat64);

  std::size_t size() const { return data.size(); }
  Eigen::Map<const Eigen::VectorXd> AsVector() const {
    return {data.data(), static_cast<Eigen::Index>(data.size())};
  }

  bool operator==(const Array&) const = default;
};

std::size_t NumElements(const std::vector<int>& shape);
std::string ShapeString(const std::vector<int>& shape);

// Shape, dtype and optional elementwise bounds. Bounds hold either one value
// (broadcast) or one value per element.
class ArraySpec {
 public:
  ArraySpec() = default;
  ArraySpec(std::vector<int> shape, DType dtype, std::string name = "");
  // Throws SpecError unless bounds broadcast to `shape` and minimum <= maximum.
  ArraySpec(std::vector<int> shape, DType dtype, std::vector<double> minimum,
            std::vector<double> maximum, std::string name = "");

  const std::vector<int>& shape() const { return shape_; }
  DType dtype() const { return dtype_; }
  const std::string& name() const { return name_; }
  std::size_t size() const { return NumElements(shape_); }
  bool bounded() const { return minimum_.has_value(); }
  // Per-element bounds, broadcast to size(); +-infinity when unbounded.
  std::vector<double> minimum() const;
  std::vector<double> maximum() const;

  // Throws SpecError naming the first offending element.
  void Validate(const Array& value) const;
  void Validate(const Eigen::VectorXd& value) const;

  Array Zeros() const { return Array::Zeros(shape_, dtype_); }
  // Uniform within the bounds; unbounded dimensions draw from [-1, 1].
  Eigen::VectorXd SampleUniform(std::mt19937_64& rng) const;

  bool operator==(const ArraySpec&) const = default;

 private:
  std::vector<int> shape_;
  DType dtype_ = DType::kFloat64;
  std::optional<std::vector<double>> minimum_;
  std::optional<std::vector<double>> maximum_;
  std::string name_;
};

// Map that iterates in insertion order.
template <typename T>
class OrderedDict {
 public:
  using value_type = std::pair<std::string, T>;

  void Insert(std::string key, T value) {
    if (T* existing = Find(key)) {
      *existing = std::move(value);
    } else {
      items_.emplace_back(std::move(key), std::move(value));
    }
  }
  bool Erase(std::string_view key) {
    for (auto it = items_.begin(); it != items_.end(); ++it) {
      if (it->first == key) {
        items_.erase(it);
        return true;
      }
    }
    return false;
  }
  T* Find(std::string_view key) {
    for (auto& [k, v] : items_) {
      if (k == key) return &v;
    }
    return nullptr;
  }
  const T* Find(std::string_view key) const {
    return const_cast<OrderedDict*>(this)->Find(key);
  }
  bool Contains(std::string_view key) const { return Find(key) != nullptr; }
  // Throws InvalidArgumentError for unknown keys.
  const T& At(std::string_view key) const;
  T& At(std::string_view key) {
    return const_cast<T&>(static_cast<const OrderedDict*>(this)->At(key));
  }

  std::vector<std::string> Keys() const {
    std::vector<std::string> keys;
    for (const auto& item : items_) keys.push_back(item.first);
    return keys;
  }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  auto begin() { return items_.begin(); }
  auto end() { return items_.end(); }

  bool operator==(const OrderedDict&) const = default;

 private:
  std::vector<value_type> items_;
};

[[noreturn]] void ThrowUnknownKey(std::string_view key);

template <typename T>
const T& OrderedDict<T>::At(std::string_view key) const {
  const T* value = Find(key);
  if (value == nullptr) ThrowUnknownKey(key);
  return *value;
}

using Observation = OrderedDict<Array>;
using ObservationSpec = OrderedDict<ArraySpec>;

// Throws SpecError if keys, order, shapes or dtypes differ.
void ValidateObservation(const ObservationSpec& spec, const Observation& observation);

}  // namespace ctrlforge::rl

#endif  // CTRLFORGE_RL_ARRAY_H_
