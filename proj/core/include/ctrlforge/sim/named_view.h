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

// Name-indexed views onto simulation arrays.

#ifndef CTRLFORGE_SIM_NAMED_VIEW_H_
#define CTRLFORGE_SIM_NAMED_VIEW_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctrlforge/mjcf/schema.h"

namespace ctrlforge::sim {

class Physics;

enum class Field {
  kQpos,           // rows: joints
  kQvel,           // rows: joints
  kQacc,           // rows: joints
  kQfrcApplied,    // rows: joints
  kCtrl,           // rows: actuators
  kActuatorForce,  // rows: actuators
  kSensorData,     // rows: sensors
  kXpos,           // rows: bodies; columns x, y, z
  kXipos,          // rows: bodies; columns x, y, z
  kXfrcApplied,    // rows: bodies; columns fx, fy, fz, tx, ty, tz
  kGeomXpos,       // rows: geoms; columns x, y, z
  kSiteXpos,       // rows: sites; columns x, y, z
};

// Parses names such as "qpos" or "geom_xpos". Throws InvalidArgumentError.
Field ParseField(std::string_view name);
std::string_view FieldName(Field field);

// Rows can be addressed by element identifier or index; reads and writes go
// straight to the underlying array, so a view is invalidated by anything
// that reallocates the Physics (e.g. moving it).
class NamedView {
 public:
  NamedView(Physics& physics, Field field);

  Field field() const { return field_; }
  mjcf::Namespace row_namespace() const { return ns_; }
  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(columns_.size()); }
  const std::vector<std::string>& row_names() const;
  const std::vector<std::string>& column_names() const { return columns_; }

  // Throw UnknownNameError / IndexError.
  int RowIndex(std::string_view name) const;
  int ColumnIndex(std::string_view name) const;

  std::span<double> operator[](std::string_view row) const;
  std::span<double> operator[](int row) const;
  double& operator()(std::string_view row, std::string_view column) const;
  double& operator()(int row, int column) const;

 private:
  double* base() const;
  void CheckRow(int row) const;

  Physics* physics_;
  Field field_;
  mjcf::Namespace ns_;
  int rows_;
  std::vector<std::string> columns_;
};

}  // namespace ctrlforge::sim

#endif  // CTRLFORGE_SIM_NAMED_VIEW_H_
