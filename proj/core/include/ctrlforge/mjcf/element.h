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

// Mutable object model for MJCF documents.
//
// A ModelRoot owns a tree of Elements rooted at <mujoco>. Models compose by
// attaching one ModelRoot to a site or body of another; the child keeps its
// own tree and its own elements, and every identifier it exposes is prefixed
// by its attachment namespace ("leg/knee"). Elements are never moved or
// copied by attachment, so element references stay valid.
//
//   auto leg = ModelRoot::Create("leg");
//   Element* thigh = leg->worldbody().Add("body");
//   Element* hip = thigh->Add("joint", {{"axis", {0, 0, 1}}});
//   leg->actuator().Add("position", {{"joint", hip}, {"kp", 10}});
//   creature->worldbody().Add("site")->Attach(leg);

#ifndef CTRLFORGE_MJCF_ELEMENT_H_
#define CTRLFORGE_MJCF_ELEMENT_H_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <source_location>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ctrlforge/mjcf/attr_value.h"
#include "ctrlforge/mjcf/provenance.h"
#include "ctrlforge/mjcf/schema.h"

namespace ctrlforge::mjcf {

class ModelRoot;

using AttributeMap = std::vector<std::pair<std::string, AttrValue>>;

class Element {
 public:
  Element(const Element&) = delete;
  Element& operator=(const Element&) = delete;
  ~Element();

  std::string_view tag() const { return schema_->tag; }
  const ElementSchema& schema() const { return *schema_; }
  std::optional<Namespace> ns() const { return schema_->ns; }
  ModelRoot& owner() const { return *owner_; }
  Element* parent() const { return parent_; }
  std::vector<Element*> children() const;
  // Process-unique identity, stable for the element's lifetime.
  std::uint64_t serial() const { return serial_; }

  // Raw name as stored on this element ("" when unnamed). For <default>
  // elements this is the class name.
  std::string name() const;
  // Namespace-prefixed identifier relative to the outermost model.
  std::string FullIdentifier() const;
  // Identifier as seen from `scope`, which must contain this element.
  std::string IdentifierRelativeTo(const ModelRoot& scope) const;

  // Appends a child element. `attrs` keys are attribute names; `dclass` is an
  // alias for `class`.
  Element* Add(std::string_view tag, const AttributeMap& attrs = {},
               std::source_location loc = std::source_location::current());

  void Set(std::string_view attribute, AttrValue value,
           std::source_location loc = std::source_location::current());
  // Clears an explicit value, restoring the default-class value if any.
  void Remove(std::string_view attribute,
              std::source_location loc = std::source_location::current());

  bool Has(std::string_view attribute) const;
  const AttrValue* GetExplicit(std::string_view attribute) const;
  // Explicit value, else the value inherited through the default classes.
  std::optional<AttrValue> Get(std::string_view attribute) const;

  double GetNumber(std::string_view attribute, double fallback) const;
  std::vector<double> GetArray(std::string_view attribute,
                               std::vector<double> fallback) const;
  std::string GetString(std::string_view attribute, std::string fallback) const;
  // Resolves a reference attribute to its element; nullptr when unset.
  // Throws ReferenceError if a name cannot be resolved.
  Element* GetReference(std::string_view attribute) const;

  // The <default> class governing this element's attributes, or nullptr for
  // tags that do not take defaults.
  const Element* DefaultClass() const;
  // Parent class in the inheritance chain (crosses attachment boundaries).
  const Element* ParentClass() const;

  // For <default> elements: the per-tag defaults block, created on demand.
  Element& Defaults(std::string_view tag,
                    std::source_location loc = std::source_location::current());

  // Attaches `child` at this site or body and returns the attachment frame,
  // a body that hosts the child's world elements and accepts new children
  // (e.g. a joint) belonging to this model.
  Element* Attach(std::shared_ptr<ModelRoot> child,
                  std::source_location loc = std::source_location::current());
  bool is_attachment_frame() const { return attached_ != nullptr; }
  ModelRoot* attached_model() const { return attached_; }

  bool is_in_default_section() const;

  // Provenance (requires debug mode at owner construction).
  const ProvenanceRecord& LastModification() const;
  const ProvenanceRecord& AttributeProvenance(std::string_view attribute) const;
  const std::vector<ProvenanceRecord>& History() const;
  // 1-based line in the XML source this element was parsed from; 0 otherwise.
  int source_line() const { return source_line_; }

 private:
  friend class ModelRoot;
  friend class XmlBuilder;

  Element(const ElementSchema& schema, ModelRoot* owner, Element* parent);

  AttrValue Coerce(const AttrSchema& attr, AttrValue value) const;
  // `from_parser` permits "/" in names (flattened documents carry prefixed
  // names) and skips call-site recording.
  void SetInternal(std::string_view attribute, AttrValue value, bool from_parser,
                   const std::source_location& loc);
  void Record(std::string action, const std::source_location& loc);
  void RequireProvenance() const;
  Element* AddInternal(std::string_view tag);
  bool IsNameAttribute(const AttrSchema& attr) const;
  Element* Resolve(const AttrSchema& attr, const AttrValue& value) const;

  const ElementSchema* schema_;
  ModelRoot* owner_;
  Element* parent_;
  std::vector<std::unique_ptr<Element>> children_;
  std::vector<std::optional<AttrValue>> attrs_;
  ModelRoot* attached_ = nullptr;
  std::uint64_t serial_;
  int source_line_ = 0;
  std::vector<ProvenanceRecord> history_;
  std::unordered_map<std::string, std::size_t> attr_history_;
};

class ModelRoot : public std::enable_shared_from_this<ModelRoot> {
 public:
  static std::shared_ptr<ModelRoot> Create(
      std::string model_name = {},
      std::source_location loc = std::source_location::current());

  ModelRoot(const ModelRoot&) = delete;
  ModelRoot& operator=(const ModelRoot&) = delete;
  ~ModelRoot();

  std::string model_name() const;
  void set_model_name(std::string name,
                      std::source_location loc = std::source_location::current());

  Element& mujoco() { return *root_; }
  const Element& mujoco() const { return *root_; }
  Element& compiler() { return *sections_[0]; }
  Element& option() { return *sections_[1]; }
  Element& default_class() { return *sections_[2]; }
  Element& asset() { return *sections_[3]; }
  Element& worldbody() { return *sections_[4]; }
  Element& actuator() { return *sections_[5]; }
  Element& sensor() { return *sections_[6]; }
  const Element& compiler() const { return *sections_[0]; }
  const Element& option() const { return *sections_[1]; }
  const Element& default_class() const { return *sections_[2]; }
  const Element& asset() const { return *sections_[3]; }
  const Element& worldbody() const { return *sections_[4]; }
  const Element& actuator() const { return *sections_[5]; }
  const Element& sensor() const { return *sections_[6]; }

  // Exact identifier lookup, relative to this model (descends into attached
  // models through their prefixes). Returns nullptr when absent.
  Element* Find(Namespace ns, std::string_view identifier) const;
  Element* Find(std::string_view ns, std::string_view identifier) const;
  // All elements of a namespace in document order, including attached models.
  std::vector<Element*> FindAll(Namespace ns) const;
  std::vector<Element*> FindAll(std::string_view ns) const;

  // Attachment topology.
  ModelRoot* parent_model() const { return parent_model_; }
  Element* attachment_frame() const { return frame_; }
  const std::string& prefix() const { return prefix_; }
  // Prefix of this model's identifiers as seen from the outermost model,
  // e.g. "creature/leg_1/"; empty for an unattached model.
  std::string FullPrefix() const;
  // Prefix relative to `scope` (an ancestor model or this model).
  std::string PrefixRelativeTo(const ModelRoot& scope) const;
  const std::vector<std::shared_ptr<ModelRoot>>& attached_models() const {
    return attached_;
  }
  const ModelRoot& TopModel() const;
  bool Contains(const ModelRoot& other) const;

  bool debug() const { return debug_; }
  // Incremented on every mutation in this model or any attached descendant.
  std::uint64_t version() const { return version_; }

  // Radians per unit of angle-valued attributes in this model.
  double angle_scale() const;

  // Effective <option> value merged across this model and attached models.
  std::optional<AttrValue> EffectiveOption(std::string_view attribute) const;

  // Throws CompileError if attached models set conflicting <option> values
  // (possible when options are edited after attachment).
  void ValidateOptions() const;

  // Lookup among this model's own (unprefixed) names.
  Element* FindOwn(Namespace ns, std::string_view name) const;

 private:
  friend class Element;
  friend class XmlBuilder;

  ModelRoot(std::string model_name, const std::source_location& loc);
  void Register(Element* element, const std::string& name);
  void Unregister(Element* element, const std::string& name);
  void Touch();
  std::string UniquePrefix(const std::string& base) const;
  void CheckOptionCompatibility(const ModelRoot& child) const;
  void CollectAll(Namespace ns, std::vector<Element*>& out) const;
  void CollectWorld(const Element& element, Namespace ns,
                    std::vector<Element*>& out) const;

  bool debug_;
  std::unique_ptr<Element> root_;
  std::array<Element*, 7> sections_{};
  std::array<std::unordered_map<std::string, Element*>, kNumNamespaces> names_;
  std::vector<std::shared_ptr<ModelRoot>> attached_;
  ModelRoot* parent_model_ = nullptr;
  Element* frame_ = nullptr;
  std::string prefix_;
  std::uint64_t version_ = 0;
};

// Short human-readable label, e.g. `<joint name="leg/knee"> (line 12)`.
std::string Describe(const Element& element);
// Describe() plus the last recorded mutation site when tracking is enabled.
std::string DescribeWithProvenance(const Element& element);

}  // namespace ctrlforge::mjcf

#endif  // CTRLFORGE_MJCF_ELEMENT_H_
