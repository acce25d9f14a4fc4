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

#include "ctrlforge/mjcf/element.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

#include "ctrlforge/errors.h"

namespace ctrlforge::mjcf {
namespace {

std::atomic<std::uint64_t> g_next_serial{1};

constexpr std::string_view kOptionAttributes[] = {"timestep", "gravity", "integrator",
                                                  "density"};

std::string_view CanonicalAttribute(std::string_view name) {
  return name == "dclass" ? std::string_view("class") : name;
}

std::string ValueToString(const AttrValue& v) {
  if (v.is_string()) return v.AsString();
  if (v.is_number()) return FormatNumber(v.AsNumber());
  if (v.is_array()) return FormatArray(v.AsArray());
  if (v.is_name_ref()) return v.AsNameRef().name;
  Element* e = v.AsElement();
  return e ? Describe(*e) : "null";
}

std::string SchemaMessage(const Element& e, const std::string& what) {
  return what + " (in " + Describe(e) + ")";
}

}  // namespace

// ---------------------------------- Element ----------------------------------

Element::Element(const ElementSchema& schema, ModelRoot* owner, Element* parent)
    : schema_(&schema),
      owner_(owner),
      parent_(parent),
      attrs_(schema.attributes.size()),
      serial_(g_next_serial.fetch_add(1)) {}

Element::~Element() = default;

std::vector<Element*> Element::children() const {
  std::vector<Element*> out;
  out.reserve(children_.size());
  for (const auto& c : children_) out.push_back(c.get());
  return out;
}

bool Element::IsNameAttribute(const AttrSchema& attr) const {
  return attr.name == "name" || (tag() == "default" && attr.name == "class");
}

std::string Element::name() const {
  std::string_view attr = tag() == "default" ? "class" : "name";
  int idx = schema_->AttributeIndex(attr);
  if (idx < 0 || !attrs_[idx]) return {};
  return attrs_[idx]->AsString();
}

std::string Element::IdentifierRelativeTo(const ModelRoot& scope) const {
  if (attached_ != nullptr) return attached_->PrefixRelativeTo(scope);
  if (this == &owner_->default_class()) {
    if (owner_ == &scope) return "main";
    return owner_->PrefixRelativeTo(scope);
  }
  return owner_->PrefixRelativeTo(scope) + name();
}

std::string Element::FullIdentifier() const {
  return IdentifierRelativeTo(owner_->TopModel());
}

bool Element::is_in_default_section() const {
  for (const Element* e = this; e != nullptr; e = e->parent_) {
    if (e->tag() == "default") return true;
  }
  return false;
}

Element* Element::AddInternal(std::string_view child_tag) {
  const ElementSchema* schema = FindSchema(child_tag);
  if (schema == nullptr) {
    throw SchemaError(SchemaMessage(*this, "unknown element <" + std::string(child_tag) + ">"));
  }
  if (!schema_->AllowsChild(child_tag)) {
    throw SchemaError(SchemaMessage(
        *this, "<" + std::string(child_tag) + "> is not allowed inside <" +
                   std::string(tag()) + ">"));
  }
  if (tag() == "default" && IsDefaultableTag(child_tag)) {
    for (const auto& c : children_) {
      if (c->tag() == child_tag) {
        throw SchemaError(SchemaMessage(
            *this, "duplicate <" + std::string(child_tag) + "> block in default class"));
      }
    }
  }
  children_.push_back(std::unique_ptr<Element>(new Element(*schema, owner_, this)));
  owner_->Touch();
  return children_.back().get();
}

Element* Element::Add(std::string_view child_tag, const AttributeMap& attrs,
                      std::source_location loc) {
  Element* child = AddInternal(child_tag);
  child->Record("created", loc);
  try {
    for (const auto& [key, value] : attrs) {
      child->SetInternal(key, value, /*from_parser=*/false, loc);
    }
  } catch (...) {
    // Undo the partial insertion, including any name already registered.
    for (const AttrSchema& a : child->schema_->attributes) {
      int idx = child->schema_->AttributeIndex(a.name);
      if (child->IsNameAttribute(a) && child->attrs_[idx] && child->ns()) {
        owner_->Unregister(child, child->attrs_[idx]->AsString());
      }
    }
    children_.pop_back();
    throw;
  }
  return child;
}

AttrValue Element::Coerce(const AttrSchema& attr, AttrValue value) const {
  auto fail = [&](const std::string& expected) -> SchemaError {
    return SchemaError(SchemaMessage(*this, "invalid value '" + ValueToString(value) +
                                                "' for attribute '" + std::string(attr.name) +
                                                "': expected " + expected));
  };
  switch (attr.kind) {
    case AttrKind::kString:
      if (!value.is_string()) throw fail("a string");
      return value;
    case AttrKind::kKeyword: {
      if (!value.is_string()) throw fail("a keyword");
      for (std::string_view k : attr.keywords) {
        if (k == value.AsString()) return value;
      }
      std::string options;
      for (std::string_view k : attr.keywords) {
        options += options.empty() ? "" : "|";
        options += k;
      }
      throw fail("one of " + options);
    }
    case AttrKind::kNumber:
    case AttrKind::kInt: {
      double v = 0;
      if (value.is_number()) {
        v = value.AsNumber();
      } else if (value.is_array() && value.AsArray().size() == 1) {
        v = value.AsArray()[0];
      } else if (value.is_string()) {
        auto parsed = ParseNumbers(value.AsString());
        if (!parsed || parsed->size() != 1) throw fail("a number");
        v = (*parsed)[0];
      } else {
        throw fail("a number");
      }
      if (!std::isfinite(v)) throw fail("a finite number");
      if (attr.kind == AttrKind::kInt && v != std::floor(v)) throw fail("an integer");
      return v;
    }
    case AttrKind::kArray: {
      std::vector<double> v;
      if (value.is_number()) {
        v = {value.AsNumber()};
      } else if (value.is_array()) {
        v = value.AsArray();
      } else if (value.is_string()) {
        auto parsed = ParseNumbers(value.AsString());
        if (!parsed) throw fail("numbers");
        v = std::move(*parsed);
      } else {
        throw fail("numbers");
      }
      int n = static_cast<int>(v.size());
      if (n < attr.min_length || n > attr.max_length) {
        throw fail(attr.min_length == attr.max_length
                       ? std::to_string(attr.min_length) + " numbers"
                       : std::to_string(attr.min_length) + " to " +
                             std::to_string(attr.max_length) + " numbers");
      }
      for (double x : v) {
        if (!std::isfinite(x)) throw fail("finite numbers");
      }
      return v;
    }
    case AttrKind::kReference: {
      std::string what = "a reference to a " + std::string(NamespaceName(attr.target));
      if (value.is_string()) {
        if (value.AsString().empty()) throw fail(what);
        return NameRef{value.AsString()};
      }
      if (value.is_name_ref()) {
        if (value.AsNameRef().name.empty()) throw fail(what);
        return value;
      }
      if (value.is_element()) {
        Element* e = value.AsElement();
        if (e == nullptr || e->ns() != attr.target) throw fail(what);
        if (attr.target != Namespace::kDefault && e->is_in_default_section()) throw fail(what);
        if (attr.target != Namespace::kDefault && e->is_attachment_frame()) throw fail(what);
        return value;
      }
      throw fail(what);
    }
  }
  throw fail("a value");
}

void Element::SetInternal(std::string_view attribute, AttrValue value, bool from_parser,
                          const std::source_location& loc) {
  std::string_view key = CanonicalAttribute(attribute);
  int idx = schema_->AttributeIndex(key);
  if (idx < 0) {
    throw SchemaError(SchemaMessage(*this, "attribute '" + std::string(attribute) +
                                               "' is not valid for <" + std::string(tag()) +
                                               ">"));
  }
  const AttrSchema& attr = schema_->attributes[idx];
  AttrValue coerced = Coerce(attr, std::move(value));

  bool in_defaults = is_in_default_section();
  if (in_defaults && tag() != "default" && (key == "name" || key == "class")) {
    throw SchemaError(SchemaMessage(
        *this, "attribute '" + std::string(key) + "' is not allowed in a default class"));
  }
  if (IsNameAttribute(attr)) {
    const std::string& new_name = coerced.AsString();
    if (attached_ != nullptr) {
      throw SchemaError(SchemaMessage(*this, "attachment frames cannot be renamed"));
    }
    if (!from_parser && new_name.find('/') != std::string::npos) {
      throw SchemaError(SchemaMessage(*this, "name '" + new_name +
                                                 "' must not contain '/', which separates "
                                                 "attachment namespaces"));
    }
    if (this == &owner_->default_class()) {
      if (new_name != "main") {
        throw SchemaError(SchemaMessage(*this, "the top-level default class is 'main'"));
      }
      return;  // implicit name; nothing stored
    }
    std::string old_name = attrs_[idx] ? attrs_[idx]->AsString() : std::string();
    if (old_name != new_name && ns()) {
      if (!new_name.empty()) owner_->Register(this, new_name);
      if (!old_name.empty()) owner_->Unregister(this, old_name);
    }
    if (new_name.empty()) {
      attrs_[idx].reset();
      owner_->Touch();
      return;
    }
  }
  std::string action = "set " + std::string(key) + "=\"" + ValueToString(coerced) + "\"";
  attrs_[idx] = std::move(coerced);
  owner_->Touch();
  if (!from_parser) {
    Record(action, loc);
    attr_history_[std::string(key)] = history_.size() - 1;
  }
}

void Element::Set(std::string_view attribute, AttrValue value, std::source_location loc) {
  SetInternal(attribute, std::move(value), /*from_parser=*/false, loc);
}

void Element::Remove(std::string_view attribute, std::source_location loc) {
  std::string_view key = CanonicalAttribute(attribute);
  int idx = schema_->AttributeIndex(key);
  if (idx < 0) {
    throw SchemaError(SchemaMessage(*this, "attribute '" + std::string(attribute) +
                                               "' is not valid for <" + std::string(tag()) +
                                               ">"));
  }
  if (!attrs_[idx]) return;
  if (IsNameAttribute(schema_->attributes[idx]) && ns()) {
    owner_->Unregister(this, attrs_[idx]->AsString());
  }
  attrs_[idx].reset();
  owner_->Touch();
  Record("removed " + std::string(key), loc);
  if (owner_->debug_) attr_history_[std::string(key)] = history_.size() - 1;
}

bool Element::Has(std::string_view attribute) const { return GetExplicit(attribute) != nullptr; }

const AttrValue* Element::GetExplicit(std::string_view attribute) const {
  int idx = schema_->AttributeIndex(CanonicalAttribute(attribute));
  if (idx < 0) {
    throw SchemaError(SchemaMessage(*this, "attribute '" + std::string(attribute) +
                                               "' is not valid for <" + std::string(tag()) +
                                               ">"));
  }
  return attrs_[idx] ? &*attrs_[idx] : nullptr;
}

std::optional<AttrValue> Element::Get(std::string_view attribute) const {
  std::string_view key = CanonicalAttribute(attribute);
  if (const AttrValue* v = GetExplicit(key)) return *v;
  if (key == "name" || key == "class" || key == "childclass") return std::nullopt;
  int idx = schema_->AttributeIndex(key);
  for (const Element* cls = DefaultClass(); cls != nullptr; cls = cls->ParentClass()) {
    for (const auto& block : cls->children_) {
      if (block->tag() == tag() && block->attrs_[idx]) return *block->attrs_[idx];
    }
  }
  return std::nullopt;
}

double Element::GetNumber(std::string_view attribute, double fallback) const {
  auto v = Get(attribute);
  return v ? v->AsNumber() : fallback;
}

std::vector<double> Element::GetArray(std::string_view attribute,
                                      std::vector<double> fallback) const {
  auto v = Get(attribute);
  return v ? v->AsVector() : std::move(fallback);
}

std::string Element::GetString(std::string_view attribute, std::string fallback) const {
  auto v = Get(attribute);
  return v ? v->AsString() : std::move(fallback);
}

Element* Element::Resolve(const AttrSchema& attr, const AttrValue& value) const {
  if (value.is_element()) return value.AsElement();
  const std::string& ref = value.AsNameRef().name;
  Element* target = owner_->Find(attr.target, ref);
  if (target == nullptr) {
    throw ReferenceError(Describe(*this) + ": attribute '" + std::string(attr.name) +
                         "' refers to unknown " + std::string(NamespaceName(attr.target)) +
                         " '" + ref + "'");
  }
  return target;
}

Element* Element::GetReference(std::string_view attribute) const {
  std::string_view key = CanonicalAttribute(attribute);
  int idx = schema_->AttributeIndex(key);
  if (idx < 0 || schema_->attributes[idx].kind != AttrKind::kReference) {
    throw SchemaError(SchemaMessage(*this, "attribute '" + std::string(attribute) +
                                               "' is not a reference"));
  }
  auto v = Get(key);
  if (!v) return nullptr;
  return Resolve(schema_->attributes[idx], *v);
}

const Element* Element::DefaultClass() const {
  if (!schema_->accepts_class || is_in_default_section()) return nullptr;
  if (Element* cls = GetReference("class")) return cls;
  for (const Element* p = parent_; p != nullptr; p = p->parent_) {
    if (p->tag() == "body" && p->Has("childclass")) return p->GetReference("childclass");
  }
  return &owner_->default_class();
}

const Element* Element::ParentClass() const {
  if (tag() != "default") return nullptr;
  if (parent_ != nullptr && parent_->tag() == "default") return parent_;
  if (owner_->parent_model_ != nullptr) return &owner_->parent_model_->default_class();
  return nullptr;
}

Element& Element::Defaults(std::string_view block_tag, std::source_location loc) {
  if (tag() != "default") {
    throw SchemaError(SchemaMessage(*this, "defaults blocks exist only on <default>"));
  }
  if (!IsDefaultableTag(block_tag)) {
    throw SchemaError(SchemaMessage(*this, "<" + std::string(block_tag) +
                                               "> does not take default values"));
  }
  for (const auto& c : children_) {
    if (c->tag() == block_tag) return *c;
  }
  Element* block = AddInternal(block_tag);
  block->Record("created", loc);
  return *block;
}

Element* Element::Attach(std::shared_ptr<ModelRoot> child, std::source_location loc) {
  if (child == nullptr) throw InvalidArgumentError("cannot attach a null model");
  if (tag() != "site" && tag() != "body") {
    throw AttachmentError("attachment host must be a site or body, got " + Describe(*this));
  }
  if (is_in_default_section()) {
    throw AttachmentError("cannot attach to an element of a default class");
  }
  if (child->parent_model_ != nullptr) {
    throw AttachmentError("model '" + child->model_name() + "' is already attached at " +
                          Describe(*child->frame_));
  }
  if (child->Contains(*owner_)) {
    throw AttachmentError("attaching model '" + child->model_name() + "' to " +
                          Describe(*this) + " would create a cycle");
  }
  owner_->TopModel().CheckOptionCompatibility(*child);

  std::string base = child->model_name();
  if (base.empty()) base = "model";
  std::string prefix = owner_->UniquePrefix(base);

  Element* frame = nullptr;
  if (tag() == "body") {
    frame = AddInternal("body");
  } else {
    auto& siblings = parent_->children_;
    auto it = std::find_if(siblings.begin(), siblings.end(),
                           [this](const auto& p) { return p.get() == this; });
    it = siblings.insert(std::next(it), std::unique_ptr<Element>(new Element(
                                            *FindSchema("body"), owner_, parent_)));
    frame = it->get();
    for (std::string_view key : {"pos", "quat", "euler"}) {
      if (auto v = Get(key)) frame->attrs_[frame->schema_->AttributeIndex(key)] = *v;
    }
  }
  frame->attached_ = child.get();
  frame->Record("created by attaching model '" + child->model_name() + "' as '" + prefix + "'",
                loc);
  Record("attached model '" + child->model_name() + "'", loc);

  child->parent_model_ = owner_;
  child->frame_ = frame;
  child->prefix_ = prefix;
  owner_->attached_.push_back(std::move(child));
  owner_->Touch();
  return frame;
}

void Element::Record(std::string action, const std::source_location& loc) {
  if (!owner_->debug_) return;
  history_.push_back(ProvenanceRecord::FromLocation(std::move(action), loc));
}

void Element::RequireProvenance() const {
  if (!owner_->debug_) {
    throw ProvenanceUnavailableError(
        "provenance tracking was disabled when this model was created; re-run with " +
        std::string(kDebugEnvVar) + "=1 (or call SetDebugMode(true) first) to record "
        "mutation sites");
  }
}

const ProvenanceRecord& Element::LastModification() const {
  RequireProvenance();
  if (history_.empty()) throw InvalidArgumentError(Describe(*this) + " has no history");
  return history_.back();
}

const ProvenanceRecord& Element::AttributeProvenance(std::string_view attribute) const {
  RequireProvenance();
  std::string key(CanonicalAttribute(attribute));
  if (schema_->AttributeIndex(key) < 0) {
    throw SchemaError(SchemaMessage(*this, "attribute '" + key + "' is not valid for <" +
                                               std::string(tag()) + ">"));
  }
  auto it = attr_history_.find(key);
  if (it == attr_history_.end()) {
    throw InvalidArgumentError(Describe(*this) + ": attribute '" + key +
                               "' has no recorded modification");
  }
  return history_[it->second];
}

const std::vector<ProvenanceRecord>& Element::History() const {
  RequireProvenance();
  return history_;
}

std::string Describe(const Element& element) {
  std::string out = "<" + std::string(element.tag());
  std::string id;
  try {
    if (element.is_attachment_frame() || !element.name().empty()) id = element.FullIdentifier();
  } catch (const Error&) {
    id = element.name();
  }
  if (!id.empty()) {
    out += element.tag() == "default" ? " class=\"" : " name=\"";
    out += id + "\"";
  }
  out += ">";
  if (element.source_line() > 0) out += " (line " + std::to_string(element.source_line()) + ")";
  return out;
}

std::string DescribeWithProvenance(const Element& element) {
  std::string out = Describe(element);
  if (element.owner().debug()) {
    const auto& history = element.History();
    if (!history.empty()) out += ", last modified at " + ToString(history.back());
  }
  return out;
}

// --------------------------------- ModelRoot ---------------------------------

ModelRoot::ModelRoot(std::string model_name, const std::source_location& loc)
    : debug_(DebugModeEnabled()) {
  root_.reset(new Element(*FindSchema("mujoco"), this, nullptr));
  root_->Record("created", loc);
  int i = 0;
  for (std::string_view section :
       {"compiler", "option", "default", "asset", "worldbody", "actuator", "sensor"}) {
    sections_[i++] = root_->AddInternal(section);
  }
  if (!model_name.empty()) root_->SetInternal("model", model_name, false, loc);
  version_ = 0;
}

ModelRoot::~ModelRoot() {
  for (auto& child : attached_) {
    child->parent_model_ = nullptr;
    child->frame_ = nullptr;
    child->prefix_.clear();
  }
}

std::shared_ptr<ModelRoot> ModelRoot::Create(std::string model_name, std::source_location loc) {
  return std::shared_ptr<ModelRoot>(new ModelRoot(std::move(model_name), loc));
}

std::string ModelRoot::model_name() const { return root_->GetString("model", ""); }

void ModelRoot::set_model_name(std::string name, std::source_location loc) {
  root_->Set("model", std::move(name), loc);
}

void ModelRoot::Register(Element* element, const std::string& name) {
  auto& table = names_[static_cast<int>(*element->ns())];
  if (auto it = table.find(name); it != table.end() && it->second != element) {
    throw DuplicateNameError("duplicate " + std::string(NamespaceName(*element->ns())) +
                             " name '" + name + "'");
  }
  if (auto slash = name.find('/'); slash != std::string::npos) {
    std::string head = name.substr(0, slash);
    for (const auto& child : attached_) {
      if (child->prefix_ == head) {
        throw DuplicateNameError("name '" + name + "' collides with attachment namespace '" +
                                 head + "/'");
      }
    }
  }
  table[name] = element;
}

void ModelRoot::Unregister(Element* element, const std::string& name) {
  auto& table = names_[static_cast<int>(*element->ns())];
  if (auto it = table.find(name); it != table.end() && it->second == element) table.erase(it);
}

void ModelRoot::Touch() {
  for (ModelRoot* m = this; m != nullptr; m = m->parent_model_) ++m->version_;
}

std::string ModelRoot::UniquePrefix(const std::string& base) const {
  for (int k = 0;; ++k) {
    std::string candidate = k == 0 ? base : base + "_" + std::to_string(k);
    bool taken = std::any_of(attached_.begin(), attached_.end(),
                             [&](const auto& c) { return c->prefix_ == candidate; });
    std::string with_slash = candidate + "/";
    for (const auto& table : names_) {
      for (const auto& [name, element] : table) {
        if (name.compare(0, with_slash.size(), with_slash) == 0) taken = true;
      }
    }
    if (!taken) return candidate;
  }
}

std::optional<AttrValue> ModelRoot::EffectiveOption(std::string_view attribute) const {
  if (const AttrValue* v = option().GetExplicit(attribute)) return *v;
  for (const auto& child : attached_) {
    if (auto v = child->EffectiveOption(attribute)) return v;
  }
  return std::nullopt;
}

void ModelRoot::CheckOptionCompatibility(const ModelRoot& child) const {
  for (std::string_view key : kOptionAttributes) {
    auto mine = EffectiveOption(key);
    auto theirs = child.EffectiveOption(key);
    if (mine && theirs && !(*mine == *theirs)) {
      throw AttachmentError("cannot attach model '" + child.model_name() +
                            "': conflicting <option> " + std::string(key) + " (\"" +
                            ValueToString(*mine) + "\" vs \"" + ValueToString(*theirs) +
                            "\")");
    }
  }
}

void ModelRoot::ValidateOptions() const {
  for (std::string_view key : kOptionAttributes) {
    std::optional<AttrValue> seen;
    std::vector<const ModelRoot*> stack = {this};
    while (!stack.empty()) {
      const ModelRoot* m = stack.back();
      stack.pop_back();
      if (const AttrValue* v = m->option().GetExplicit(key)) {
        if (seen && !(*seen == *v)) {
          throw CompileError("conflicting <option> " + std::string(key) +
                             " between attached models (\"" + ValueToString(*seen) +
                             "\" vs \"" + ValueToString(*v) + "\")");
        }
        seen = *v;
      }
      for (const auto& c : m->attached_) stack.push_back(c.get());
    }
  }
}

double ModelRoot::angle_scale() const {
  return compiler().GetString("angle", "degree") == "radian" ? 1.0 : std::numbers::pi / 180.0;
}

const ModelRoot& ModelRoot::TopModel() const {
  const ModelRoot* m = this;
  while (m->parent_model_ != nullptr) m = m->parent_model_;
  return *m;
}

bool ModelRoot::Contains(const ModelRoot& other) const {
  for (const ModelRoot* m = &other; m != nullptr; m = m->parent_model_) {
    if (m == this) return true;
  }
  return false;
}

std::string ModelRoot::PrefixRelativeTo(const ModelRoot& scope) const {
  std::string out;
  for (const ModelRoot* m = this; m != &scope; m = m->parent_model_) {
    if (m->parent_model_ == nullptr) {
      throw ReferenceError("model '" + model_name() + "' is not part of model '" +
                           scope.model_name() + "'");
    }
    out = m->prefix_ + "/" + out;
  }
  return out;
}

std::string ModelRoot::FullPrefix() const { return PrefixRelativeTo(TopModel()); }

Element* ModelRoot::FindOwn(Namespace ns, std::string_view name) const {
  const auto& table = names_[static_cast<int>(ns)];
  auto it = table.find(std::string(name));
  return it == table.end() ? nullptr : it->second;
}

Element* ModelRoot::Find(Namespace ns, std::string_view identifier) const {
  if (ns == Namespace::kDefault && identifier == "main") return sections_[2];
  if (Element* e = FindOwn(ns, identifier)) return e;
  auto slash = identifier.find('/');
  if (slash == std::string_view::npos) return nullptr;
  std::string_view head = identifier.substr(0, slash);
  std::string_view rest = identifier.substr(slash + 1);
  for (const auto& child : attached_) {
    if (child->prefix_ != head) continue;
    if (rest.empty()) {
      if (ns == Namespace::kBody) return child->frame_;
      if (ns == Namespace::kDefault) return child->sections_[2];
      return nullptr;
    }
    return child->Find(ns, rest);
  }
  return nullptr;
}

Element* ModelRoot::Find(std::string_view ns, std::string_view identifier) const {
  return Find(ParseNamespace(ns), identifier);
}

void ModelRoot::CollectWorld(const Element& element, Namespace ns,
                             std::vector<Element*>& out) const {
  for (const auto& c : element.children_) {
    if (c->ns() == ns) out.push_back(c.get());
    CollectWorld(*c, ns, out);
  }
  if (element.attached_ != nullptr) {
    element.attached_->CollectWorld(element.attached_->worldbody(), ns, out);
  }
}

namespace {

void CollectSubtree(const Element& element, Namespace ns, std::vector<Element*>& out) {
  for (Element* c : element.children()) {
    if (c->ns() == ns) out.push_back(c);
    CollectSubtree(*c, ns, out);
  }
}

bool IsWorldNamespace(Namespace ns) {
  switch (ns) {
    case Namespace::kBody:
    case Namespace::kGeom:
    case Namespace::kSite:
    case Namespace::kJoint:
    case Namespace::kCamera:
    case Namespace::kLight:
      return true;
    default:
      return false;
  }
}

}  // namespace

void ModelRoot::CollectAll(Namespace ns, std::vector<Element*>& out) const {
  switch (ns) {
    case Namespace::kActuator:
      CollectSubtree(actuator(), ns, out);
      break;
    case Namespace::kSensor:
      CollectSubtree(sensor(), ns, out);
      break;
    case Namespace::kMaterial:
    case Namespace::kTexture:
      CollectSubtree(asset(), ns, out);
      break;
    case Namespace::kDefault:
      CollectSubtree(default_class(), ns, out);
      break;
    default:
      break;
  }
  for (const auto& child : attached_) {
    if (ns == Namespace::kDefault) out.push_back(child->sections_[2]);
    child->CollectAll(ns, out);
  }
}

std::vector<Element*> ModelRoot::FindAll(Namespace ns) const {
  std::vector<Element*> out;
  if (IsWorldNamespace(ns)) {
    CollectWorld(worldbody(), ns, out);
  } else {
    CollectAll(ns, out);
  }
  return out;
}

std::vector<Element*> ModelRoot::FindAll(std::string_view ns) const {
  return FindAll(ParseNamespace(ns));
}

}  // namespace ctrlforge::mjcf
