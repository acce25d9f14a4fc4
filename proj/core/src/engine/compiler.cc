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

#include "ctrlforge/engine/compiler.h"

#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Cholesky>

#include "ctrlforge/engine/data.h"
#include "ctrlforge/engine/dynamics.h"
#include "ctrlforge/engine/inertia.h"
#include "ctrlforge/engine/rotation.h"
#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/provenance.h"
#include "ctrlforge/mjcf/xml.h"

namespace ctrlforge::engine {
namespace {

using mjcf::Element;
using mjcf::Namespace;

[[noreturn]] void Fail(const Element& e, const std::string& message) {
  throw CompileError(mjcf::DescribeWithProvenance(e) + ": " + message);
}

Eigen::Vector3d Vec3(const Element& e, std::string_view attr, const Eigen::Vector3d& fallback) {
  std::optional<mjcf::AttrValue> v = e.Get(attr);
  if (!v) return fallback;
  std::vector<double> x = v->AsVector();
  if (x.size() != 3) Fail(e, "attribute '" + std::string(attr) + "' needs 3 numbers");
  return {x[0], x[1], x[2]};
}

Eigen::Vector4d Vec4(const Element& e, std::string_view attr, const Eigen::Vector4d& fallback) {
  std::optional<mjcf::AttrValue> v = e.Get(attr);
  if (!v) return fallback;
  std::vector<double> x = v->AsVector();
  return {x[0], x[1], x[2], x[3]};
}

std::array<double, 2> Range(const Element& e, std::string_view attr, double scale) {
  std::vector<double> r = e.GetArray(attr, {0, 0});
  return {r[0] * scale, r[1] * scale};
}

bool IsLimited(const Element& e, std::string_view flag, std::string_view range) {
  std::string limited = e.GetString(flag, "auto");
  if (limited == "auto") return e.Get(range).has_value();
  return limited == "true";
}

std::optional<mjcf::AttrValue> GetIfDeclared(const Element& e, std::string_view attr) {
  if (e.schema().AttributeIndex(attr) < 0) return std::nullopt;
  return e.Get(attr);
}

// Orientation from quat, euler or xyaxes, whichever is present (in that
// order of precedence).
Quat Orientation(const Element& e) {
  try {
    if (std::optional<mjcf::AttrValue> q = GetIfDeclared(e, "quat")) {
      std::vector<double> x = q->AsVector();
      return MakeQuat(x[0], x[1], x[2], x[3]);
    }
    if (GetIfDeclared(e, "euler")) {
      return EulerToQuat(Vec3(e, "euler", Eigen::Vector3d::Zero()) * e.owner().angle_scale());
    }
    if (std::optional<mjcf::AttrValue> xy = GetIfDeclared(e, "xyaxes")) {
      std::vector<double> x = xy->AsVector();
      return QuatFromXYAxes({x[0], x[1], x[2]}, {x[3], x[4], x[5]});
    }
  } catch (const InvalidArgumentError& err) {
    Fail(e, err.what());
  }
  return Quat::Identity();
}

GeomType ParseGeomType(const std::string& type) {
  if (type == "plane") return GeomType::kPlane;
  if (type == "capsule") return GeomType::kCapsule;
  if (type == "cylinder") return GeomType::kCylinder;
  if (type == "box") return GeomType::kBox;
  if (type == "ellipsoid") return GeomType::kEllipsoid;
  return GeomType::kSphere;
}

int RequiredSizes(GeomType type) {
  switch (type) {
    case GeomType::kPlane: return 0;
    case GeomType::kSphere: return 1;
    case GeomType::kCapsule:
    case GeomType::kCylinder: return 2;
    default: return 3;
  }
}

class Compiler {
 public:
  explicit Compiler(const mjcf::ModelRoot& scope) : scope_(scope) {}

  CompiledModel Run() {
    scope_.ValidateOptions();
    CompileOptions();
    CompileAssets();

    BodyModel world;
    world.parent = -1;
    AddName(Namespace::kBody, "world", scope_.worldbody().serial());
    m_.bodies.push_back(world);
    last_dof_.push_back(-1);
    CompileChildren(scope_.worldbody(), 0);

    for (int b = m_.nbody() - 1; b >= 0; --b) {
      m_.bodies[b].subtree_mass += m_.bodies[b].mass;
      if (b > 0) m_.bodies[m_.bodies[b].parent].subtree_mass += m_.bodies[b].subtree_mass;
    }
    for (int j = 0; j < m_.njnt(); ++j) {
      if (m_.bodies[m_.joints[j].body].subtree_mass <= 0) {
        Fail(*joint_elements_[j], "joint moves a body subtree without mass");
      }
    }

    CompileActuators();
    CompileSensors();
    m_.IndexNames();
    CheckMassMatrix();
    return std::move(m_);
  }

 private:
  void AddName(Namespace ns, std::string name, std::uint64_t serial) {
    m_.names[static_cast<int>(ns)].push_back(std::move(name));
    m_.serials[static_cast<int>(ns)].push_back(serial);
  }

  void AddName(Namespace ns, const Element& e) {
    std::string id = e.is_attachment_frame() || !e.name().empty() ? e.IdentifierRelativeTo(scope_)
                                                                  : std::string();
    AddName(ns, std::move(id), e.serial());
  }

  int IdOf(Namespace ns, const Element& ref, const Element& user) {
    const auto& serials = m_.serials[static_cast<int>(ns)];
    for (std::size_t i = 0; i < serials.size(); ++i) {
      if (serials[i] == ref.serial()) return static_cast<int>(i);
    }
    Fail(user, "references " + mjcf::Describe(ref) + ", which is outside the compiled model");
  }

  void CompileOptions() {
    if (auto v = scope_.EffectiveOption("timestep")) m_.opt.timestep = v->AsNumber();
    if (auto v = scope_.EffectiveOption("gravity")) {
      std::vector<double> g = v->AsVector();
      m_.opt.gravity = {g[0], g[1], g[2]};
    }
    if (auto v = scope_.EffectiveOption("integrator")) {
      m_.opt.integrator = v->AsString() == "RK4" ? Integrator::kRK4 : Integrator::kEuler;
    }
    if (auto v = scope_.EffectiveOption("density")) m_.opt.density = v->AsNumber();
    if (!(m_.opt.timestep > 0) || !std::isfinite(m_.opt.timestep)) {
      Fail(scope_.option(), "timestep must be positive");
    }
    if (m_.opt.density < 0) Fail(scope_.option(), "density must be non-negative");
  }

  void CompileAssets() {
    for (const Element* e : scope_.FindAll(Namespace::kTexture)) {
      TextureModel t;
      t.checker = e->GetString("builtin", "none") == "checker";
      t.rgb1 = Vec3(*e, "rgb1", t.rgb1);
      t.rgb2 = Vec3(*e, "rgb2", t.rgb2);
      m_.textures.push_back(t);
      AddName(Namespace::kTexture, *e);
    }
    for (const Element* e : scope_.FindAll(Namespace::kMaterial)) {
      MaterialModel mat;
      mat.rgba = Vec4(*e, "rgba", mat.rgba);
      std::vector<double> repeat = e->GetArray("texrepeat", {1, 1});
      mat.texrepeat = {repeat[0], repeat[1]};
      if (const Element* tex = e->GetReference("texture")) {
        mat.texture = IdOf(Namespace::kTexture, *tex, *e);
      }
      m_.materials.push_back(mat);
      AddName(Namespace::kMaterial, *e);
    }
  }

  std::vector<const Element*> ChildrenOf(const Element& e) {
    std::vector<const Element*> out;
    for (const Element* c : e.children()) out.push_back(c);
    if (e.is_attachment_frame()) {
      for (const Element* c : e.attached_model()->worldbody().children()) out.push_back(c);
    }
    return out;
  }

  void CompileChildren(const Element& body_el, int body) {
    std::vector<const Element*> children = ChildrenOf(body_el);
    BodyModel& b = m_.bodies[body];
    b.jnt_adr = m_.njnt();
    for (const Element* c : children) {
      if (c->tag() == "freejoint") Fail(*c, "free joints are not supported");
      if (c->tag() == "joint") CompileJoint(*c, body);
    }
    m_.bodies[body].jnt_num = m_.njnt() - m_.bodies[body].jnt_adr;
    if (m_.bodies[body].jnt_num > 0) last_dof_[body] = m_.njnt() - 1;

    for (const Element* c : children) {
      std::string_view tag = c->tag();
      if (tag == "geom") {
        CompileGeom(*c, body);
      } else if (tag == "site") {
        CompileSite(*c, body);
      } else if (tag == "camera") {
        CompileCamera(*c, body);
      } else if (tag == "light") {
        CompileLight(*c, body);
      }
    }
    for (const Element* c : children) {
      if (c->tag() == "body") CompileBody(*c, body);
    }
  }

  void CompileBody(const Element& e, int parent) {
    BodyModel b;
    b.parent = parent;
    b.pos = Vec3(e, "pos", Eigen::Vector3d::Zero());
    b.quat = Orientation(e);
    int id = m_.nbody();
    m_.bodies.push_back(b);
    last_dof_.push_back(last_dof_[parent]);
    AddName(Namespace::kBody, e);
    body_mass_.emplace_back();
    CompileChildren(e, id);
    FinishMass(id);
  }

  void CompileJoint(const Element& e, int body) {
    JointModel j;
    j.type = e.GetString("type", "hinge") == "slide" ? JointType::kSlide : JointType::kHinge;
    const double scale = j.type == JointType::kHinge ? e.owner().angle_scale() : 1.0;
    j.body = body;
    j.pos = Vec3(e, "pos", Eigen::Vector3d::Zero());
    Eigen::Vector3d axis = Vec3(e, "axis", Eigen::Vector3d::UnitZ());
    if (axis.norm() < 1e-12) Fail(e, "joint axis has zero length");
    j.axis = axis.normalized();
    j.damping = e.GetNumber("damping", 0);
    j.stiffness = e.GetNumber("stiffness", 0);
    j.springref = e.GetNumber("springref", 0) * scale;
    j.qpos0 = e.GetNumber("ref", 0) * scale;
    j.armature = e.GetNumber("armature", 0);
    if (j.damping < 0 || j.stiffness < 0 || j.armature < 0) {
      Fail(e, "damping, stiffness and armature must be non-negative");
    }
    j.limited = IsLimited(e, "limited", "range");
    j.range = Range(e, "range", scale);
    if (j.limited && j.range[0] > j.range[1]) Fail(e, "joint range is inverted");
    int id = m_.njnt();
    j.parent_dof = id > m_.bodies[body].jnt_adr ? id - 1 : last_dof_[m_.bodies[body].parent];
    m_.joints.push_back(j);
    joint_elements_.push_back(&e);
    AddName(Namespace::kJoint, e);
  }

  void CompileGeom(const Element& e, int body) {
    GeomModel g;
    g.type = ParseGeomType(e.GetString("type", "sphere"));
    g.body = body;
    std::vector<double> size = e.GetArray("size", {});
    g.pos = Vec3(e, "pos", Eigen::Vector3d::Zero());
    g.quat = Orientation(e);
    if (std::optional<mjcf::AttrValue> ft = e.Get("fromto")) {
      if (g.type != GeomType::kCapsule && g.type != GeomType::kCylinder) {
        Fail(e, "fromto is only supported for capsules and cylinders");
      }
      std::vector<double> x = ft->AsVector();
      Eigen::Vector3d a(x[0], x[1], x[2]);
      Eigen::Vector3d b(x[3], x[4], x[5]);
      if ((b - a).norm() < 1e-12) Fail(e, "fromto endpoints coincide");
      if (size.empty()) Fail(e, "fromto requires a radius in size");
      g.pos = 0.5 * (a + b);
      g.quat = QuatFromZAxis(b - a);
      size.resize(1);
      size.push_back(0.5 * (b - a).norm());
    }
    if (static_cast<int>(size.size()) < RequiredSizes(g.type)) {
      Fail(e, "size needs " + std::to_string(RequiredSizes(g.type)) + " values for type " +
                  e.GetString("type", "sphere"));
    }
    for (std::size_t i = 0; i < size.size() && i < 3; ++i) g.size[i] = size[i];
    if (const Element* mat = e.GetReference("material")) {
      g.material = IdOf(Namespace::kMaterial, *mat, e);
    }
    if (std::optional<mjcf::AttrValue> rgba = e.Get("rgba")) {
      g.rgba = Vec4(e, "rgba", g.rgba);
    } else if (g.material >= 0) {
      g.rgba = m_.materials[g.material].rgba;
    }
    g.dragcoef = e.GetNumber("dragcoef", 1);
    g.group = static_cast<int>(e.GetNumber("group", 0));

    if (g.type != GeomType::kPlane && body > 0) {
      MassProperties props;
      try {
        if (std::optional<mjcf::AttrValue> mass = e.Get("mass")) {
          props = GeomInertiaFromMass(g.type, g.size, mass->AsNumber());
        } else {
          props = GeomInertia(g.type, g.size, e.GetNumber("density", 1000));
        }
      } catch (const InvalidArgumentError& err) {
        Fail(e, err.what());
      }
      g.mass = props.mass;
      Eigen::Matrix3d r = g.quat.toRotationMatrix();
      body_mass_.back().push_back({props.mass, g.pos, r * props.inertia * r.transpose()});
    }
    m_.geoms.push_back(g);
    AddName(Namespace::kGeom, e);
  }

  void CompileSite(const Element& e, int body) {
    SiteModel s;
    s.body = body;
    std::vector<double> size = e.GetArray("size", {0.005});
    for (std::size_t i = 0; i < 3; ++i) s.size[i] = i < size.size() ? size[i] : size[0];
    s.pos = Vec3(e, "pos", Eigen::Vector3d::Zero());
    s.quat = Orientation(e);
    s.rgba = Vec4(e, "rgba", s.rgba);
    m_.sites.push_back(s);
    AddName(Namespace::kSite, e);
  }

  void CompileCamera(const Element& e, int body) {
    CameraModel c;
    c.body = body;
    c.pos = Vec3(e, "pos", Eigen::Vector3d::Zero());
    c.quat = Orientation(e);
    c.fovy = e.GetNumber("fovy", 45);
    if (!(c.fovy > 0 && c.fovy < 180)) Fail(e, "fovy must lie in (0, 180)");
    m_.cameras.push_back(c);
    AddName(Namespace::kCamera, e);
  }

  void CompileLight(const Element& e, int body) {
    LightModel l;
    l.body = body;
    l.pos = Vec3(e, "pos", Eigen::Vector3d::Zero());
    l.dir = Vec3(e, "dir", l.dir);
    if (l.dir.norm() < 1e-12) Fail(e, "light direction has zero length");
    l.directional = e.GetString("directional", "false") == "true";
    l.diffuse = Vec3(e, "diffuse", l.diffuse);
    l.ambient = Vec3(e, "ambient", l.ambient);
    m_.lights.push_back(l);
    AddName(Namespace::kLight, e);
  }

  struct Part {
    double mass;
    Eigen::Vector3d com;
    Eigen::Matrix3d inertia;  // about com, body axes
  };

  void FinishMass(int body) {
    std::vector<Part> parts = std::move(body_mass_.back());
    body_mass_.pop_back();
    BodyModel& b = m_.bodies[body];
    double mass = 0;
    Eigen::Vector3d com = Eigen::Vector3d::Zero();
    for (const Part& p : parts) {
      mass += p.mass;
      com += p.mass * p.com;
    }
    if (mass <= 0) return;
    com /= mass;
    Eigen::Matrix3d inertia = Eigen::Matrix3d::Zero();
    for (const Part& p : parts) {
      Eigen::Vector3d d = p.com - com;
      inertia += p.inertia + p.mass * (d.squaredNorm() * Eigen::Matrix3d::Identity() - d * d.transpose());
    }
    b.mass = mass;
    b.ipos = com;
    b.inertia = inertia;
  }

  void CompileActuators() {
    for (const Element* e : scope_.FindAll(Namespace::kActuator)) {
      ActuatorModel a;
      a.type = e->tag() == "position" ? ActuatorType::kPosition : ActuatorType::kMotor;
      const Element* joint = e->GetReference("joint");
      if (joint == nullptr) Fail(*e, "actuator has no joint");
      a.joint = IdOf(Namespace::kJoint, *joint, *e);
      a.gear = e->GetArray("gear", {1})[0];
      if (a.type == ActuatorType::kPosition) {
        a.kp = e->GetNumber("kp", 1);
        a.kv = e->GetNumber("kv", 0);
      }
      if (a.kp < 0 || a.kv < 0) Fail(*e, "kp and kv must be non-negative");
      a.ctrllimited = IsLimited(*e, "ctrllimited", "ctrlrange");
      a.ctrlrange = Range(*e, "ctrlrange", 1.0);
      if (a.ctrllimited && a.ctrlrange[0] > a.ctrlrange[1]) Fail(*e, "ctrlrange is inverted");
      m_.actuators.push_back(a);
      AddName(Namespace::kActuator, *e);
    }
  }

  void CompileSensors() {
    for (const Element* e : scope_.FindAll(Namespace::kSensor)) {
      SensorModel s;
      s.type = e->tag() == "jointvel" ? SensorType::kJointVel : SensorType::kJointPos;
      const Element* joint = e->GetReference("joint");
      if (joint == nullptr) Fail(*e, "sensor has no joint");
      s.joint = IdOf(Namespace::kJoint, *joint, *e);
      m_.sensors.push_back(s);
      AddName(Namespace::kSensor, *e);
    }
  }

  // A joint can move mass yet contribute no inertia (e.g. a point mass on
  // a hinge axis); the factorization at the reference pose catches it.
  void CheckMassMatrix() {
    if (m_.nv() == 0) return;
    Data d(m_);
    Kinematics(m_, d);
    Eigen::LLT<Eigen::MatrixXd> llt(MassMatrix(m_, d));
    if (llt.info() != Eigen::Success || llt.matrixLLT().diagonal().minCoeff() < 1e-12) {
      throw CompileError("mass matrix is singular at the reference configuration; " +
                         std::string("some joint moves no inertia"));
    }
  }

  const mjcf::ModelRoot& scope_;
  CompiledModel m_;
  std::vector<int> last_dof_;
  std::vector<const Element*> joint_elements_;
  std::vector<std::vector<Part>> body_mass_;
};

}  // namespace

CompiledModel Compile(const mjcf::ModelRoot& model) {
  try {
    return Compiler(model).Run();
  } catch (const CompileError&) {
    std::optional<std::string> dir = mjcf::DebugDumpDir();
    if (dir && model.debug()) mjcf::DumpProvenance(model, *dir);
    throw;
  }
}

}  // namespace ctrlforge::engine
