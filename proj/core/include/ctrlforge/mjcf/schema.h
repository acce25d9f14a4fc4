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

// The supported subset of the MJCF modelling language.
//
// Every tag, attribute and parent/child relation accepted by the parser and
// by the programmatic API is listed here; anything else is a SchemaError.

#ifndef CTRLFORGE_MJCF_SCHEMA_H_
#define CTRLFORGE_MJCF_SCHEMA_H_

#include <optional>
#include <string_view>
#include <vector>

namespace ctrlforge::mjcf {

// Identifier namespaces. Full identifiers are unique per namespace.
enum class Namespace {
  kBody,
  kGeom,
  kSite,
  kJoint,
  kActuator,
  kSensor,
  kCamera,
  kLight,
  kMaterial,
  kTexture,
  kDefault,
};

inline constexpr int kNumNamespaces = 11;

std::string_view NamespaceName(Namespace ns);
// Throws SchemaError for unknown names.
Namespace ParseNamespace(std::string_view name);

enum class AttrKind {
  kString,     // free-form string (names)
  kKeyword,    // one of a fixed set of strings
  kNumber,     // double
  kInt,        // integer
  kArray,      // fixed-range-length list of doubles
  kReference,  // reference to another element, by element or by name
};

struct AttrSchema {
  std::string_view name;
  AttrKind kind = AttrKind::kString;
  int min_length = 1;
  int max_length = 1;
  std::vector<std::string_view> keywords;
  Namespace target = Namespace::kBody;  // for kReference
};

struct ElementSchema {
  std::string_view tag;
  // Namespace the element's name lives in; absent for unnamed section tags.
  std::optional<Namespace> ns;
  std::vector<AttrSchema> attributes;  // declaration order = output order
  std::vector<std::string_view> children;
  bool accepts_class = false;  // has a `class` attribute resolved to defaults

  // Returns -1 when `name` is not an attribute of this tag.
  int AttributeIndex(std::string_view name) const;
  bool AllowsChild(std::string_view child_tag) const;
};

// Returns nullptr for tags outside the supported subset.
const ElementSchema* FindSchema(std::string_view tag);

// Tags that may appear inside a <default> class.
bool IsDefaultableTag(std::string_view tag);

}  // namespace ctrlforge::mjcf

#endif  // CTRLFORGE_MJCF_SCHEMA_H_
