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

#include "ctrlforge/sim/binding.h"

#include <functional>
#include <string>

#include "ctrlforge/errors.h"
#include "ctrlforge/sim/physics.h"

namespace ctrlforge::sim {
namespace {

using mjcf::Namespace;

struct Accessor {
  std::string_view name;
  int width = 1;
  bool writable = false;
  // Contiguous storage of `width` doubles for element `id`.
  std::function<double*(Physics&, int)> ptr;
  // Used instead of `ptr` when the storage layout differs from the output.
  std::function<void(Physics&, int, double*)> get;
  std::function<void(Physics&, int, const double*)> set;
};

double* P(double& x) { return &x; }
double* P(Eigen::Vector3d& v) { return v.data(); }
double* P(Eigen::Vector4d& v) { return v.data(); }
double* P(engine::Vector6d& v) { return v.data(); }
double* P(std::array<double, 2>& v) { return v.data(); }

#define CF_DATA(field, expr, w, rw) \
  Accessor{field, w, rw, [](Physics& p, int i) { return P(expr(p.data(), i)); }, {}, {}}
#define CF_MODEL(field, expr, w) \
  Accessor{field, w, true, [](Physics& p, int i) { return P(expr(p.mutable_model(), i)); }, {}, {}}

Accessor QuatAccessor(std::string_view name, bool writable,
                      std::function<Eigen::Quaterniond&(Physics&, int)> quat) {
  Accessor a{name, 4, writable, {}, {}, {}};
  a.get = [quat](Physics& p, int i, double* out) {
    const Eigen::Quaterniond& q = quat(p, i);
    out[0] = q.w();
    out[1] = q.x();
    out[2] = q.y();
    out[3] = q.z();
  };
  if (writable) {
    a.set = [quat](Physics& p, int i, const double* in) {
      quat(p, i) = Eigen::Quaterniond(in[0], in[1], in[2], in[3]).normalized();
    };
  }
  return a;
}

Accessor MatAccessor(std::string_view name, std::function<Eigen::Matrix3d&(Physics&, int)> mat) {
  Accessor a{name, 9, false, {}, {}, {}};
  a.get = [mat](Physics& p, int i, double* out) {
    const Eigen::Matrix3d& m = mat(p, i);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) out[3 * r + c] = m(r, c);
    }
  };
  return a;
}

std::vector<Accessor> AccessorsFor(Namespace ns) {
  switch (ns) {
    case Namespace::kBody:
      return {
          CF_DATA("xpos", [](engine::Data& d, int i) -> auto& { return d.xpos[i]; }, 3, false),
          QuatAccessor("xquat", false, [](Physics& p, int i) -> auto& { return p.data().xquat[i]; }),
          MatAccessor("xmat", [](Physics& p, int i) -> auto& { return p.data().xmat[i]; }),
          CF_DATA("xipos", [](engine::Data& d, int i) -> auto& { return d.xipos[i]; }, 3, false),
          CF_DATA("xfrc_applied",
                  [](engine::Data& d, int i) -> auto& { return d.xfrc_applied[i]; }, 6, true),
          CF_MODEL("mass", [](engine::CompiledModel& m, int i) -> auto& { return m.bodies[i].mass; }, 1),
          CF_MODEL("pos", [](engine::CompiledModel& m, int i) -> auto& { return m.bodies[i].pos; }, 3),
          QuatAccessor("quat", true,
                       [](Physics& p, int i) -> auto& { return p.mutable_model().bodies[i].quat; }),
      };
    case Namespace::kJoint:
      return {
          CF_DATA("qpos", [](engine::Data& d, int i) -> auto& { return d.qpos[i]; }, 1, true),
          CF_DATA("qvel", [](engine::Data& d, int i) -> auto& { return d.qvel[i]; }, 1, true),
          CF_DATA("qacc", [](engine::Data& d, int i) -> auto& { return d.qacc[i]; }, 1, false),
          CF_DATA("qfrc_applied", [](engine::Data& d, int i) -> auto& { return d.qfrc_applied[i]; },
                  1, true),
          CF_DATA("xanchor", [](engine::Data& d, int i) -> auto& { return d.xanchor[i]; }, 3, false),
          CF_DATA("xaxis", [](engine::Data& d, int i) -> auto& { return d.xaxis[i]; }, 3, false),
          CF_MODEL("damping", [](engine::CompiledModel& m, int i) -> auto& { return m.joints[i].damping; }, 1),
          CF_MODEL("stiffness", [](engine::CompiledModel& m, int i) -> auto& { return m.joints[i].stiffness; }, 1),
          CF_MODEL("springref", [](engine::CompiledModel& m, int i) -> auto& { return m.joints[i].springref; }, 1),
          CF_MODEL("armature", [](engine::CompiledModel& m, int i) -> auto& { return m.joints[i].armature; }, 1),
          CF_MODEL("qpos0", [](engine::CompiledModel& m, int i) -> auto& { return m.joints[i].qpos0; }, 1),
          CF_MODEL("range", [](engine::CompiledModel& m, int i) -> auto& { return m.joints[i].range; }, 2),
      };
    case Namespace::kGeom:
      return {
          CF_DATA("xpos", [](engine::Data& d, int i) -> auto& { return d.geom_xpos[i]; }, 3, false),
          MatAccessor("xmat", [](Physics& p, int i) -> auto& { return p.data().geom_xmat[i]; }),
          CF_MODEL("rgba", [](engine::CompiledModel& m, int i) -> auto& { return m.geoms[i].rgba; }, 4),
          CF_MODEL("size", [](engine::CompiledModel& m, int i) -> auto& { return m.geoms[i].size; }, 3),
          CF_MODEL("pos", [](engine::CompiledModel& m, int i) -> auto& { return m.geoms[i].pos; }, 3),
          CF_MODEL("dragcoef", [](engine::CompiledModel& m, int i) -> auto& { return m.geoms[i].dragcoef; }, 1),
      };
    case Namespace::kSite:
      return {
          CF_DATA("xpos", [](engine::Data& d, int i) -> auto& { return d.site_xpos[i]; }, 3, false),
          MatAccessor("xmat", [](Physics& p, int i) -> auto& { return p.data().site_xmat[i]; }),
          CF_MODEL("pos", [](engine::CompiledModel& m, int i) -> auto& { return m.sites[i].pos; }, 3),
          CF_MODEL("size", [](engine::CompiledModel& m, int i) -> auto& { return m.sites[i].size; }, 3),
          CF_MODEL("rgba", [](engine::CompiledModel& m, int i) -> auto& { return m.sites[i].rgba; }, 4),
      };
    case Namespace::kActuator:
      return {
          CF_DATA("ctrl", [](engine::Data& d, int i) -> auto& { return d.ctrl[i]; }, 1, true),
          CF_DATA("force", [](engine::Data& d, int i) -> auto& { return d.actuator_force[i]; }, 1, false),
          CF_MODEL("gear", [](engine::CompiledModel& m, int i) -> auto& { return m.actuators[i].gear; }, 1),
          CF_MODEL("kp", [](engine::CompiledModel& m, int i) -> auto& { return m.actuators[i].kp; }, 1),
          CF_MODEL("kv", [](engine::CompiledModel& m, int i) -> auto& { return m.actuators[i].kv; }, 1),
          CF_MODEL("ctrlrange", [](engine::CompiledModel& m, int i) -> auto& { return m.actuators[i].ctrlrange; }, 2),
      };
    case Namespace::kSensor:
      return {
          CF_DATA("sensordata", [](engine::Data& d, int i) -> auto& { return d.sensordata[i]; }, 1, false),
      };
    case Namespace::kCamera:
      return {
          CF_DATA("xpos", [](engine::Data& d, int i) -> auto& { return d.cam_xpos[i]; }, 3, false),
          MatAccessor("xmat", [](Physics& p, int i) -> auto& { return p.data().cam_xmat[i]; }),
          CF_MODEL("pos", [](engine::CompiledModel& m, int i) -> auto& { return m.cameras[i].pos; }, 3),
          CF_MODEL("fovy", [](engine::CompiledModel& m, int i) -> auto& { return m.cameras[i].fovy; }, 1),
      };
    case Namespace::kLight:
      return {
          CF_DATA("xpos", [](engine::Data& d, int i) -> auto& { return d.light_xpos[i]; }, 3, false),
          CF_DATA("xdir", [](engine::Data& d, int i) -> auto& { return d.light_xdir[i]; }, 3, false),
          CF_MODEL("pos", [](engine::CompiledModel& m, int i) -> auto& { return m.lights[i].pos; }, 3),
          CF_MODEL("dir", [](engine::CompiledModel& m, int i) -> auto& { return m.lights[i].dir; }, 3),
          CF_MODEL("diffuse", [](engine::CompiledModel& m, int i) -> auto& { return m.lights[i].diffuse; }, 3),
      };
    case Namespace::kMaterial:
      return {
          CF_MODEL("rgba", [](engine::CompiledModel& m, int i) -> auto& { return m.materials[i].rgba; }, 4),
      };
    case Namespace::kTexture:
      return {
          CF_MODEL("rgb1", [](engine::CompiledModel& m, int i) -> auto& { return m.textures[i].rgb1; }, 3),
          CF_MODEL("rgb2", [](engine::CompiledModel& m, int i) -> auto& { return m.textures[i].rgb2; }, 3),
      };
    case Namespace::kDefault:
      return {};
  }
  return {};
}

#undef CF_DATA
#undef CF_MODEL

const Accessor& Find(Namespace ns, std::string_view field) {
  static const auto tables = [] {
    std::vector<std::vector<Accessor>> t;
    for (int k = 0; k < mjcf::kNumNamespaces; ++k) t.push_back(AccessorsFor(static_cast<Namespace>(k)));
    return t;
  }();
  for (const Accessor& a : tables[static_cast<int>(ns)]) {
    if (a.name == field) return a;
  }
  throw BindingError("no field '" + std::string(field) + "' for " +
                     std::string(mjcf::NamespaceName(ns)) + " elements");
}

}  // namespace

Binding::Binding(Physics& physics, const std::vector<const mjcf::Element*>& elements)
    : physics_(&physics) {
  for (const mjcf::Element* e : elements) {
    if (e == nullptr) throw BindingError("cannot bind a null element");
    std::optional<Namespace> ns = e->ns();
    if (!ns || *ns == Namespace::kDefault) {
      throw BindingError("<" + std::string(e->tag()) + "> elements cannot be bound");
    }
    if (ns_ && *ns_ != *ns) {
      throw BindingError("cannot bind a mix of " + std::string(mjcf::NamespaceName(*ns_)) +
                         " and " + std::string(mjcf::NamespaceName(*ns)) + " elements");
    }
    ns_ = ns;
    int id = physics.model().SerialToId(*ns, e->serial());
    if (id < 0) {
      throw BindingError(mjcf::Describe(*e) + " is not part of the compiled model");
    }
    ids_.push_back(id);
  }
}

Eigen::MatrixXd Binding::Get(std::string_view field) const {
  if (!ns_) return Eigen::MatrixXd(0, 0);
  const Accessor& a = Find(*ns_, field);
  Eigen::MatrixXd out(ids_.size(), a.width);
  std::vector<double> row(a.width);
  for (std::size_t r = 0; r < ids_.size(); ++r) {
    if (a.get) {
      a.get(*physics_, ids_[r], row.data());
    } else {
      const double* p = a.ptr(*physics_, ids_[r]);
      std::copy(p, p + a.width, row.begin());
    }
    for (int c = 0; c < a.width; ++c) out(r, c) = row[c];
  }
  return out;
}

void Binding::Set(std::string_view field, const Eigen::MatrixXd& values) {
  if (!ns_) {
    if (values.size() != 0) throw BindingError("cannot write values through an empty binding");
    return;
  }
  const Accessor& a = Find(*ns_, field);
  if (!a.writable) throw BindingError("field '" + std::string(field) + "' is read-only");
  if (values.rows() != static_cast<Eigen::Index>(ids_.size()) || values.cols() != a.width) {
    throw BindingError("expected " + std::to_string(ids_.size()) + "x" + std::to_string(a.width) +
                       " values for '" + std::string(field) + "', got " +
                       std::to_string(values.rows()) + "x" + std::to_string(values.cols()));
  }
  std::vector<double> row(a.width);
  for (std::size_t r = 0; r < ids_.size(); ++r) {
    for (int c = 0; c < a.width; ++c) row[c] = values(r, c);
    if (a.set) {
      a.set(*physics_, ids_[r], row.data());
    } else {
      std::copy(row.begin(), row.end(), a.ptr(*physics_, ids_[r]));
    }
  }
}

Eigen::VectorXd Binding::GetVector(std::string_view field) const {
  Eigen::MatrixXd m = Get(field);
  if (m.cols() > 1) throw BindingError("field '" + std::string(field) + "' is not scalar");
  return m.size() == 0 ? Eigen::VectorXd(0) : Eigen::VectorXd(m.col(0));
}

void Binding::SetVector(std::string_view field, const Eigen::VectorXd& values) {
  Set(field, Eigen::MatrixXd(values));
}

std::vector<std::string_view> Binding::Fields() const {
  std::vector<std::string_view> names;
  if (!ns_) return names;
  for (const Accessor& a : AccessorsFor(*ns_)) names.push_back(a.name);
  return names;
}

}  // namespace ctrlforge::sim
