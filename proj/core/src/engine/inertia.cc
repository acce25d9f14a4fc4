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

#include "ctrlforge/engine/inertia.h"

#include <cmath>
#include <numbers>
#include <string>

#include "ctrlforge/errors.h"

namespace ctrlforge::engine {
namespace {

constexpr double kPi = std::numbers::pi;

int SizeCount(GeomType type) {
  switch (type) {
    case GeomType::kSphere:
      return 1;
    case GeomType::kCapsule:
    case GeomType::kCylinder:
      return 2;
    default:
      return 3;
  }
}

void CheckSize(GeomType type, const Eigen::Vector3d& size) {
  if (type == GeomType::kPlane) return;
  for (int i = 0; i < SizeCount(type); ++i) {
    if (!(size[i] > 0)) {
      throw InvalidArgumentError("geom size must be positive, got " + std::to_string(size[i]));
    }
  }
}

// Inertia of a unit-density solid; scaled by the caller.
MassProperties UnitDensity(GeomType type, const Eigen::Vector3d& s) {
  MassProperties p;
  Eigen::Vector3d d = Eigen::Vector3d::Zero();
  switch (type) {
    case GeomType::kPlane:
      return p;
    case GeomType::kSphere: {
      double r = s[0];
      p.mass = 4.0 / 3.0 * kPi * r * r * r;
      d.setConstant(0.4 * p.mass * r * r);
      break;
    }
    case GeomType::kCylinder: {
      double r = s[0], h = s[1];
      p.mass = kPi * r * r * 2 * h;
      d.x() = d.y() = p.mass * (3 * r * r + 4 * h * h) / 12;
      d.z() = 0.5 * p.mass * r * r;
      break;
    }
    case GeomType::kCapsule: {
      double r = s[0], h = s[1];
      double mc = kPi * r * r * 2 * h;
      double ms = 4.0 / 3.0 * kPi * r * r * r;
      p.mass = mc + ms;
      d.x() = d.y() = mc * (r * r / 4 + h * h / 3) + ms * (0.4 * r * r + h * h + 0.75 * h * r);
      d.z() = 0.5 * mc * r * r + 0.4 * ms * r * r;
      break;
    }
    case GeomType::kBox: {
      double a = s[0], b = s[1], c = s[2];
      p.mass = 8 * a * b * c;
      d.x() = p.mass * (b * b + c * c) / 3;
      d.y() = p.mass * (a * a + c * c) / 3;
      d.z() = p.mass * (a * a + b * b) / 3;
      break;
    }
    case GeomType::kEllipsoid: {
      double a = s[0], b = s[1], c = s[2];
      p.mass = 4.0 / 3.0 * kPi * a * b * c;
      d.x() = p.mass * (b * b + c * c) / 5;
      d.y() = p.mass * (a * a + c * c) / 5;
      d.z() = p.mass * (a * a + b * b) / 5;
      break;
    }
  }
  p.inertia = d.asDiagonal();
  return p;
}

}  // namespace

double GeomVolume(GeomType type, const Eigen::Vector3d& size) {
  CheckSize(type, size);
  return UnitDensity(type, size).mass;
}

MassProperties GeomInertia(GeomType type, const Eigen::Vector3d& size, double density) {
  CheckSize(type, size);
  if (!(density >= 0)) throw InvalidArgumentError("density must be non-negative");
  MassProperties p = UnitDensity(type, size);
  p.mass *= density;
  p.inertia *= density;
  return p;
}

MassProperties GeomInertiaFromMass(GeomType type, const Eigen::Vector3d& size, double mass) {
  CheckSize(type, size);
  if (!(mass >= 0)) throw InvalidArgumentError("mass must be non-negative");
  MassProperties p = UnitDensity(type, size);
  if (p.mass == 0) return p;
  double scale = mass / p.mass;
  p.mass = mass;
  p.inertia *= scale;
  return p;
}

Eigen::Vector3d ProjectedAreas(GeomType type, const Eigen::Vector3d& s) {
  switch (type) {
    case GeomType::kPlane:
      return Eigen::Vector3d::Zero();
    case GeomType::kSphere:
      return Eigen::Vector3d::Constant(kPi * s[0] * s[0]);
    case GeomType::kCylinder: {
      double side = 4 * s[0] * s[1];
      return {side, side, kPi * s[0] * s[0]};
    }
    case GeomType::kCapsule: {
      double side = 4 * s[0] * s[1] + kPi * s[0] * s[0];
      return {side, side, kPi * s[0] * s[0]};
    }
    case GeomType::kBox:
      return {4 * s[1] * s[2], 4 * s[0] * s[2], 4 * s[0] * s[1]};
    case GeomType::kEllipsoid:
      return {kPi * s[1] * s[2], kPi * s[0] * s[2], kPi * s[0] * s[1]};
  }
  return Eigen::Vector3d::Zero();
}

}  // namespace ctrlforge::engine
