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

#include "ctrlforge/mjcf/schema.h"

#include <algorithm>
#include <array>
#include <string>

#include "ctrlforge/errors.h"

namespace ctrlforge::mjcf {
namespace {

using K = AttrKind;
using N = Namespace;

AttrSchema Make(std::string_view name, AttrKind kind, int min_len = 1, int max_len = 1) {
  AttrSchema a;
  a.name = name;
  a.kind = kind;
  a.min_length = min_len;
  a.max_length = max_len;
  return a;
}

AttrSchema Str(std::string_view name) { return Make(name, K::kString); }
AttrSchema Num(std::string_view name) { return Make(name, K::kNumber); }
AttrSchema Int(std::string_view name) { return Make(name, K::kInt); }
AttrSchema Arr(std::string_view name, int min_len, int max_len) {
  return Make(name, K::kArray, min_len, max_len);
}
AttrSchema Arr(std::string_view name, int len) { return Arr(name, len, len); }
AttrSchema Kw(std::string_view name, std::vector<std::string_view> words) {
  AttrSchema a = Make(name, K::kKeyword);
  a.keywords = std::move(words);
  return a;
}
AttrSchema Ref(std::string_view name, Namespace target) {
  AttrSchema a = Make(name, K::kReference);
  a.target = target;
  return a;
}

const std::vector<std::string_view> kBool = {"false", "true"};
const std::vector<std::string_view> kLimited = {"false", "true", "auto"};

std::vector<ElementSchema> BuildSchemas() {
  std::vector<ElementSchema> s;
  s.push_back({"mujoco",
               std::nullopt,
               {Str("model")},
               {"compiler", "option", "default", "asset", "worldbody",
                "actuator", "sensor"}});
  s.push_back({"compiler",
               std::nullopt,
               {Kw("angle", {"degree", "radian"})},
               {}});
  s.push_back({"option",
               std::nullopt,
               {Num("timestep"), Arr("gravity", 3), Kw("integrator", {"Euler", "RK4"}),
                Num("density")},
               {}});
  s.push_back({"default",
               N::kDefault,
               {Str("class")},
               {"default", "joint", "geom", "site", "motor", "position", "camera",
                "light"}});
  s.push_back({"asset", std::nullopt, {}, {"texture", "material"}});
  s.push_back({"texture",
               N::kTexture,
               {Str("name"), Kw("type", {"2d", "cube", "skybox"}),
                Kw("builtin", {"none", "checker", "gradient", "flat"}), Int("width"),
                Int("height"), Arr("rgb1", 3), Arr("rgb2", 3)},
               {}});
  s.push_back({"material",
               N::kMaterial,
               {Str("name"), Ref("texture", N::kTexture), Arr("texrepeat", 2),
                Arr("rgba", 4), Num("reflectance"), Num("emission"), Num("specular"),
                Num("shininess")},
               {}});
  s.push_back({"worldbody", std::nullopt, {}, {"body", "geom", "site", "light", "camera"}});
  s.push_back({"body",
               N::kBody,
               {Str("name"), Ref("childclass", N::kDefault), Arr("pos", 3), Arr("quat", 4),
                Arr("euler", 3)},
               {"body", "joint", "freejoint", "geom", "site", "light", "camera"}});
  ElementSchema joint{"joint",
                      N::kJoint,
                      {Str("name"), Ref("class", N::kDefault), Kw("type", {"hinge", "slide"}),
                       Arr("pos", 3), Arr("axis", 3), Num("damping"), Num("stiffness"),
                       Num("springref"), Num("ref"), Num("armature"),
                       Kw("limited", kLimited), Arr("range", 2)},
                      {}};
  joint.accepts_class = true;
  s.push_back(joint);
  s.push_back({"freejoint", N::kJoint, {Str("name")}, {}});
  ElementSchema geom{
      "geom",
      N::kGeom,
      {Str("name"), Ref("class", N::kDefault),
       Kw("type", {"plane", "sphere", "capsule", "cylinder", "box", "ellipsoid"}),
       Arr("size", 1, 3), Arr("fromto", 6), Arr("pos", 3), Arr("quat", 4), Arr("euler", 3),
       Arr("rgba", 4), Ref("material", N::kMaterial), Num("density"), Num("mass"),
       Num("dragcoef"), Int("group")},
      {}};
  geom.accepts_class = true;
  s.push_back(geom);
  ElementSchema site{"site",
                     N::kSite,
                     {Str("name"), Ref("class", N::kDefault),
                      Kw("type", {"sphere", "capsule", "ellipsoid", "cylinder", "box"}),
                      Arr("size", 1, 3), Arr("pos", 3), Arr("quat", 4), Arr("euler", 3),
                      Arr("rgba", 4), Int("group")},
                     {}};
  site.accepts_class = true;
  s.push_back(site);
  ElementSchema light{"light",
                      N::kLight,
                      {Str("name"), Ref("class", N::kDefault), Arr("pos", 3), Arr("dir", 3),
                       Kw("directional", kBool), Arr("diffuse", 3), Arr("ambient", 3)},
                      {}};
  light.accepts_class = true;
  s.push_back(light);
  ElementSchema camera{"camera",
                       N::kCamera,
                       {Str("name"), Ref("class", N::kDefault), Arr("pos", 3),
                        Arr("quat", 4), Arr("euler", 3), Arr("xyaxes", 6), Num("fovy")},
                       {}};
  camera.accepts_class = true;
  s.push_back(camera);
  s.push_back({"actuator", std::nullopt, {}, {"motor", "position"}});
  ElementSchema motor{"motor",
                      N::kActuator,
                      {Str("name"), Ref("class", N::kDefault), Ref("joint", N::kJoint),
                       Arr("gear", 1, 6), Kw("ctrllimited", kLimited), Arr("ctrlrange", 2)},
                      {}};
  motor.accepts_class = true;
  s.push_back(motor);
  ElementSchema position{"position",
                         N::kActuator,
                         {Str("name"), Ref("class", N::kDefault), Ref("joint", N::kJoint),
                          Num("kp"), Num("kv"), Arr("gear", 1, 6),
                          Kw("ctrllimited", kLimited), Arr("ctrlrange", 2)},
                         {}};
  position.accepts_class = true;
  s.push_back(position);
  s.push_back({"sensor", std::nullopt, {}, {"jointpos", "jointvel"}});
  s.push_back({"jointpos", N::kSensor, {Str("name"), Ref("joint", N::kJoint)}, {}});
  s.push_back({"jointvel", N::kSensor, {Str("name"), Ref("joint", N::kJoint)}, {}});
  return s;
}

const std::vector<ElementSchema>& Schemas() {
  static const std::vector<ElementSchema> schemas = BuildSchemas();
  return schemas;
}

constexpr std::array<std::string_view, kNumNamespaces> kNamespaceNames = {
    "body",   "geom",  "site",     "joint",   "actuator", "sensor",
    "camera", "light", "material", "texture", "default"};

}  // namespace

std::string_view NamespaceName(Namespace ns) {
  return kNamespaceNames[static_cast<int>(ns)];
}

Namespace ParseNamespace(std::string_view name) {
  for (int i = 0; i < kNumNamespaces; ++i) {
    if (kNamespaceNames[i] == name) return static_cast<Namespace>(i);
  }
  throw SchemaError("unknown namespace '" + std::string(name) + "'");
}

int ElementSchema::AttributeIndex(std::string_view name) const {
  for (int i = 0; i < static_cast<int>(attributes.size()); ++i) {
    if (attributes[i].name == name) return i;
  }
  return -1;
}

bool ElementSchema::AllowsChild(std::string_view child_tag) const {
  return std::find(children.begin(), children.end(), child_tag) != children.end();
}

const ElementSchema* FindSchema(std::string_view tag) {
  for (const ElementSchema& s : Schemas()) {
    if (s.tag == tag) return &s;
  }
  return nullptr;
}

bool IsDefaultableTag(std::string_view tag) {
  return tag == "joint" || tag == "geom" || tag == "site" || tag == "motor" ||
         tag == "position" || tag == "camera" || tag == "light";
}

}  // namespace ctrlforge::mjcf
