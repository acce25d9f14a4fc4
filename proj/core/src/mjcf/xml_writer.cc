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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>

#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/xml.h"

namespace ctrlforge::mjcf {
namespace {

bool IsAngleAttribute(const Element& e, std::string_view key) {
  if (key == "euler") return true;
  if (e.tag() == "joint" && (key == "range" || key == "ref" || key == "springref")) {
    return e.GetString("type", "hinge") != "slide";
  }
  return false;
}

void CollectElements(const Element& e, std::vector<const Element*>& out) {
  out.push_back(&e);
  for (const Element* c : e.children()) CollectElements(*c, out);
  if (e.tag() == "mujoco") {
    for (const auto& child : e.owner().attached_models()) CollectElements(child->mujoco(), out);
  }
}

class Flattener {
 public:
  explicit Flattener(const ModelRoot& scope)
      : scope_(scope), root_scale_(scope.angle_scale()) {}

  XmlNode Run() {
    NameUnnamedReferenceTargets();
    XmlNode root{"mujoco", {}, {}};
    std::string name = scope_.model_name();
    if (!name.empty()) root.attributes.emplace_back("model", name);

    XmlNode compiler = EmitElement(scope_.compiler());
    if (!compiler.attributes.empty()) root.children.push_back(std::move(compiler));

    XmlNode option{"option", {}, {}};
    for (const AttrSchema& attr : scope_.option().schema().attributes) {
      if (auto v = scope_.EffectiveOption(attr.name)) {
        option.attributes.emplace_back(std::string(attr.name), Render(*v));
      }
    }
    if (!option.attributes.empty()) root.children.push_back(std::move(option));

    XmlNode defaults = EmitDefault(scope_.default_class());
    if (!defaults.children.empty()) root.children.push_back(std::move(defaults));

    XmlNode asset{"asset", {}, {}};
    EmitSection(scope_, &ModelRoot::asset, asset);
    if (!asset.children.empty()) root.children.push_back(std::move(asset));

    XmlNode world{"worldbody", {}, {}};
    EmitChildren(scope_.worldbody(), world);
    root.children.push_back(std::move(world));

    XmlNode actuator{"actuator", {}, {}};
    EmitSection(scope_, &ModelRoot::actuator, actuator);
    if (!actuator.children.empty()) root.children.push_back(std::move(actuator));

    XmlNode sensor{"sensor", {}, {}};
    EmitSection(scope_, &ModelRoot::sensor, sensor);
    if (!sensor.children.empty()) root.children.push_back(std::move(sensor));
    return root;
  }

 private:
  using SectionGetter = const Element& (ModelRoot::*)() const;

  // Referenced elements need a name in the document; unnamed ones get a
  // generated, collision-free "unnamed_<kind>_<k>".
  void NameUnnamedReferenceTargets() {
    std::vector<const Element*> elements;
    CollectElements(scope_.mujoco(), elements);
    std::set<const Element*> targets;
    for (const Element* e : elements) {
      for (const AttrSchema& attr : e->schema().attributes) {
        if (attr.kind != AttrKind::kReference || !e->Has(attr.name)) continue;
        const Element* t = e->GetReference(attr.name);
        if (t->name().empty() && !t->is_attachment_frame() &&
            t != &t->owner().default_class()) {
          targets.insert(t);
        }
      }
    }
    if (targets.empty()) return;
    for (int k = 0; k < kNumNamespaces; ++k) {
      auto ns = static_cast<Namespace>(k);
      int counter = 0;
      for (const Element* e : scope_.FindAll(ns)) {
        if (!targets.count(e)) continue;
        std::string name;
        do {
          name = "unnamed_" + std::string(NamespaceName(ns)) + "_" + std::to_string(counter++);
        } while (scope_.Find(ns, name) != nullptr);
        generated_[e] = name;
      }
    }
  }

  std::string Id(const Element& e) const {
    if (auto it = generated_.find(&e); it != generated_.end()) return it->second;
    return e.IdentifierRelativeTo(scope_);
  }

  void EmitSection(const ModelRoot& model, SectionGetter getter, XmlNode& out) {
    EmitChildren((model.*getter)(), out);
    for (const auto& child : model.attached_models()) EmitSection(*child, getter, out);
  }

  void EmitChildren(const Element& parent, XmlNode& out) {
    for (const Element* c : parent.children()) out.children.push_back(EmitTree(*c));
    if (parent.is_attachment_frame()) {
      for (const Element* c : parent.attached_model()->worldbody().children()) {
        out.children.push_back(EmitTree(*c));
      }
    }
  }

  XmlNode EmitTree(const Element& e) {
    XmlNode node = EmitElement(e);
    EmitChildren(e, node);
    return node;
  }

  XmlNode EmitDefault(const Element& cls) {
    XmlNode node = EmitElement(cls);
    if (&cls == &cls.owner().default_class() && &cls.owner() != &scope_) {
      node.attributes.emplace_back("class", cls.IdentifierRelativeTo(scope_));
    }
    for (const Element* c : cls.children()) {
      node.children.push_back(c->tag() == "default" ? EmitDefault(*c) : EmitElement(*c));
    }
    if (&cls == &cls.owner().default_class()) {
      for (const auto& child : cls.owner().attached_models()) {
        node.children.push_back(EmitDefault(child->default_class()));
      }
    }
    return node;
  }

  XmlNode EmitElement(const Element& e) {
    XmlNode node{std::string(e.tag()), {}, {}};
    const ModelRoot& owner = e.owner();
    const bool foreign = &owner != &scope_;
    const double factor = owner.angle_scale() / root_scale_;
    const bool in_defaults = e.is_in_default_section();
    for (const AttrSchema& attr : e.schema().attributes) {
      const std::string key(attr.name);
      const bool is_name = key == "name" || (e.tag() == "default" && key == "class");
      if (is_name) {
        if (e.is_attachment_frame() || !e.name().empty() || generated_.count(&e)) {
          node.attributes.emplace_back(key, Id(e));
        }
        continue;
      }
      if (key == "class" && e.schema().accepts_class && !in_defaults) {
        if (foreign) {
          node.attributes.emplace_back(key, e.DefaultClass()->IdentifierRelativeTo(scope_));
        } else if (e.Has(key)) {
          node.attributes.emplace_back(key, Id(*e.GetReference(key)));
        }
        continue;
      }
      if (e.tag() == "compiler" && key == "angle" && foreign) continue;
      if (attr.kind == AttrKind::kReference) {
        if (e.Has(key)) node.attributes.emplace_back(key, Id(*e.GetReference(key)));
        continue;
      }
      if (factor != 1.0 && IsAngleAttribute(e, key)) {
        std::optional<AttrValue> v = e.Get(key);
        if (!v) continue;
        std::vector<double> scaled = v->AsVector();
        for (double& x : scaled) x *= factor;
        node.attributes.emplace_back(key, v->is_number() ? FormatNumber(scaled[0])
                                                         : FormatArray(scaled));
        continue;
      }
      if (const AttrValue* v = e.GetExplicit(key)) node.attributes.emplace_back(key, Render(*v));
    }
    return node;
  }

  static std::string Render(const AttrValue& v) {
    if (v.is_string()) return v.AsString();
    if (v.is_number()) return FormatNumber(v.AsNumber());
    if (v.is_array()) return FormatArray(v.AsArray());
    throw ReferenceError("unresolved reference value");
  }

  const ModelRoot& scope_;
  double root_scale_;
  std::map<const Element*, std::string> generated_;
};

void Escape(const std::string& text, std::string& out) {
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
}

void Write(const XmlNode& node, int depth, std::string& out) {
  out.append(2 * depth, ' ');
  out += '<';
  out += node.tag;
  for (const auto& [key, value] : node.attributes) {
    out += ' ';
    out += key;
    out += "=\"";
    Escape(value, out);
    out += '"';
  }
  if (node.children.empty()) {
    out += "/>\n";
    return;
  }
  out += ">\n";
  for (const XmlNode& c : node.children) Write(c, depth + 1, out);
  out.append(2 * depth, ' ');
  out += "</" + node.tag + ">\n";
}

std::string SanitizeFileName(const std::string& text) {
  std::string out;
  for (char c : text) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  return out;
}

}  // namespace

XmlNode Flatten(const ModelRoot& model) { return Flattener(model).Run(); }

std::string ToXml(const XmlNode& node) {
  std::string out;
  Write(node, 0, out);
  return out;
}

std::string Serialize(const ModelRoot& model) { return ToXml(Flatten(model)); }

bool StructurallyEqual(const ModelRoot& a, const ModelRoot& b) {
  return Flatten(a) == Flatten(b);
}

int DumpProvenance(const ModelRoot& model, const std::string& directory) {
  model.mujoco().History();  // throws ProvenanceUnavailableError when disabled
  std::filesystem::create_directories(directory);
  std::vector<const Element*> elements;
  CollectElements(model.mujoco(), elements);
  int index = 0;
  for (const Element* e : elements) {
    std::string id = e->is_attachment_frame() || !e->name().empty() ? e->FullIdentifier() : "";
    char prefix[16];
    std::snprintf(prefix, sizeof(prefix), "%05d_", index++);
    std::string file = std::string(prefix) + std::string(e->tag());
    if (!id.empty()) file += "_" + SanitizeFileName(id);
    std::ofstream out(std::filesystem::path(directory) / (file + ".log"));
    if (!out) throw Error("cannot write provenance file in '" + directory + "'");
    out << Describe(*e) << "\n";
    const auto& history = e->owner().debug() ? e->History() : std::vector<ProvenanceRecord>{};
    for (const ProvenanceRecord& r : history) out << "  " << ToString(r) << "\n";
  }
  return index;
}

}  // namespace ctrlforge::mjcf
