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

#ifndef CTRLFORGE_MJCF_ATTR_VALUE_H_
#define CTRLFORGE_MJCF_ATTR_VALUE_H_

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ctrlforge::mjcf {

class Element;

// A reference to another element that is still held by name.
struct NameRef {
  std::string name;
  bool operator==(const NameRef&) const = default;
};

// Value of an element attribute. Construction is permissive (a string may
// later be coerced into a number, array or name reference); Element::Set
// validates and normalizes it against the schema.
class AttrValue {
 public:
  using Storage =
      std::variant<std::string, double, std::vector<double>, Element*, NameRef>;

  AttrValue() = default;
  AttrValue(double v) : value_(v) {}                  // NOLINT
  AttrValue(int v) : value_(static_cast<double>(v)) {}  // NOLINT
  AttrValue(std::initializer_list<double> v)            // NOLINT
      : value_(std::vector<double>(v)) {}
  AttrValue(std::vector<double> v) : value_(std::move(v)) {}  // NOLINT
  AttrValue(const char* s) : value_(std::string(s)) {}        // NOLINT
  AttrValue(std::string s) : value_(std::move(s)) {}          // NOLINT
  AttrValue(std::string_view s) : value_(std::string(s)) {}   // NOLINT
  AttrValue(Element* e) : value_(e) {}                        // NOLINT
  AttrValue(NameRef r) : value_(std::move(r)) {}              // NOLINT

  bool is_string() const { return std::holds_alternative<std::string>(value_); }
  bool is_number() const { return std::holds_alternative<double>(value_); }
  bool is_array() const { return std::holds_alternative<std::vector<double>>(value_); }
  bool is_element() const { return std::holds_alternative<Element*>(value_); }
  bool is_name_ref() const { return std::holds_alternative<NameRef>(value_); }
  bool is_reference() const { return is_element() || is_name_ref(); }

  const std::string& AsString() const { return std::get<std::string>(value_); }
  double AsNumber() const;  // also accepts single-element arrays
  const std::vector<double>& AsArray() const {
    return std::get<std::vector<double>>(value_);
  }
  // Numbers are returned as a one-element vector.
  std::vector<double> AsVector() const;
  Element* AsElement() const { return std::get<Element*>(value_); }
  const NameRef& AsNameRef() const { return std::get<NameRef>(value_); }

  const Storage& storage() const { return value_; }

  bool operator==(const AttrValue&) const = default;

 private:
  Storage value_;
};

// Shortest decimal form that round-trips to the same double.
std::string FormatNumber(double v);
// Space-separated list of FormatNumber values.
std::string FormatArray(const std::vector<double>& v);
// Parses whitespace-separated decimal numbers; nullopt on malformed input.
std::optional<std::vector<double>> ParseNumbers(std::string_view text);

}  // namespace ctrlforge::mjcf

#endif  // CTRLFORGE_MJCF_ATTR_VALUE_H_
