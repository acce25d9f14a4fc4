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

#include "ctrlforge/sim/named_view.h"

#include <array>

#include "ctrlforge/errors.h"
#include "ctrlforge/sim/physics.h"

namespace ctrlforge::sim {
namespace {

using mjcf::Namespace;

struct FieldInfo {
  Field field;
  std::string_view name;
  Namespace ns;
  std::vector<std::string> columns;
};

const std::vector<FieldInfo>& Fields() {
  static const std::vector<FieldInfo> fields = {
      {Field::kQpos, "qpos", Namespace::kJoint, {}},
      {Field::kQvel, "qvel", Namespace::kJoint, {}},
      {Field::kQacc, "qacc", Namespace::kJoint, {}},
      {Field::kQfrcApplied, "qfrc_applied", Namespace::kJoint, {}},
      {Field::kCtrl, "ctrl", Namespace::kActuator, {}},
      {Field::kActuatorForce, "actuator_force", Namespace::kActuator, {}},
      {Field::kSensorData, "sensordata", Namespace::kSensor, {}},
      {Field::kXpos, "xpos", Namespace::kBody, {"x", "y", "z"}},
      {Field::kXipos, "xipos", Namespace::kBody, {"x", "y", "z"}},
      {Field::kXfrcApplied, "xfrc_applied", Namespace::kBody, {"fx", "fy", "fz", "tx", "ty", "tz"}},
      {Field::kGeomXpos, "geom_xpos", Namespace::kGeom, {"x", "y", "z"}},
      {Field::kSiteXpos, "site_xpos", Namespace::kSite, {"x", "y", "z"}},
  };
  return fields;
}

const FieldInfo& Info(Field field) {
  for (const FieldInfo& f : Fields()) {
    if (f.field == field) return f;
  }
  throw InvalidArgumentError("unknown field");
}

static_assert(sizeof(Eigen::Vector3d) == 3 * sizeof(double));
static_assert(sizeof(engine::Vector6d) == 6 * sizeof(double));

}  // namespace

Field ParseField(std::string_view name) {
  for (const FieldInfo& f : Fields()) {
    if (f.name == name) return f.field;
  }
  throw InvalidArgumentError("unknown field '" + std::string(name) + "'");
}

std::string_view FieldName(Field field) { return Info(field).name; }

NamedView::NamedView(Physics& physics, Field field)
    : physics_(&physics), field_(field), ns_(Info(field).ns), columns_(Info(field).columns) {
  rows_ = physics.model().Count(ns_);
}

const std::vector<std::string>& NamedView::row_names() const {
  return physics_->model().names[static_cast<int>(ns_)];
}

int NamedView::RowIndex(std::string_view name) const {
  return physics_->Name2Id(name, ns_);
}

int NamedView::ColumnIndex(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == name) return static_cast<int>(i);
  }
  throw UnknownNameError("field " + std::string(FieldName(field_)) + " has no column '" +
                         std::string(name) + "'");
}

double* NamedView::base() const {
  engine::Data& d = physics_->data();
  switch (field_) {
    case Field::kQpos: return d.qpos.data();
    case Field::kQvel: return d.qvel.data();
    case Field::kQacc: return d.qacc.data();
    case Field::kQfrcApplied: return d.qfrc_applied.data();
    case Field::kCtrl: return d.ctrl.data();
    case Field::kActuatorForce: return d.actuator_force.data();
    case Field::kSensorData: return d.sensordata.data();
    case Field::kXpos: return d.xpos.data()->data();
    case Field::kXipos: return d.xipos.data()->data();
    case Field::kXfrcApplied: return d.xfrc_applied.data()->data();
    case Field::kGeomXpos: return d.geom_xpos.data()->data();
    case Field::kSiteXpos: return d.site_xpos.data()->data();
  }
  return nullptr;
}

void NamedView::CheckRow(int row) const {
  if (row < 0 || row >= rows_) {
    throw IndexError(std::string(FieldName(field_)) + " row " + std::to_string(row) +
                     " out of range [0, " + std::to_string(rows_) + ")");
  }
}

std::span<double> NamedView::operator[](std::string_view row) const {
  return (*this)[RowIndex(row)];
}

std::span<double> NamedView::operator[](int row) const {
  CheckRow(row);
  std::size_t width = columns_.empty() ? 1 : columns_.size();
  return {base() + row * width, width};
}

double& NamedView::operator()(std::string_view row, std::string_view column) const {
  return (*this)(RowIndex(row), ColumnIndex(column));
}

double& NamedView::operator()(int row, int column) const {
  std::span<double> r = (*this)[row];
  if (column < 0 || column >= static_cast<int>(r.size())) {
    throw IndexError("column " + std::to_string(column) + " out of range");
  }
  return r[column];
}

}  // namespace ctrlforge::sim
