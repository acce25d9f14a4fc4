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

#ifndef CTRLFORGE_MJCF_XML_H_
#define CTRLFORGE_MJCF_XML_H_

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctrlforge/mjcf/element.h"

namespace ctrlforge::mjcf {

// Plain document tree with attribute values already rendered as text.
struct XmlNode {
  std::string tag;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlNode> children;

  bool operator==(const XmlNode&) const = default;
};

// Parses an MJCF document. Errors: XmlSyntaxError, SchemaError (with line and
// column), ReferenceError, DuplicateNameError.
std::shared_ptr<ModelRoot> ParseModel(std::string_view xml);
std::shared_ptr<ModelRoot> ParseModelFile(const std::string& path);

// Single self-contained document for `model` and everything attached to it.
// Identifiers of attached models carry their namespace prefix, elements of
// attached models name their default class explicitly, and angles are
// expressed in `model`'s compiler unit. Output is deterministic.
XmlNode Flatten(const ModelRoot& model);
std::string Serialize(const ModelRoot& model);
std::string ToXml(const XmlNode& node);

// True when both models flatten to the same document.
bool StructurallyEqual(const ModelRoot& a, const ModelRoot& b);

// Writes one file per element, holding its complete mutation log. Requires
// provenance tracking. Returns the number of files written.
int DumpProvenance(const ModelRoot& model, const std::string& directory);

}  // namespace ctrlforge::mjcf

#endif  // CTRLFORGE_MJCF_XML_H_
