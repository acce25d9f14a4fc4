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

#include "ctrlforge/engine/rotation.h"

#include <cmath>

#include "ctrlforge/errors.h"

namespace ctrlforge::engine {

Quat MakeQuat(double w, double x, double y, double z) {
  double norm = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(norm > 0) || !std::isfinite(norm)) {
    throw InvalidArgumentError("quaternion must be finite and non-zero");
  }
  return Quat(w / norm, x / norm, y / norm, z / norm);
}

Eigen::Matrix3d QuatToMat(const Quat& q) {
  return MakeQuat(q.w(), q.x(), q.y(), q.z()).toRotationMatrix();
}

Quat EulerToQuat(const Eigen::Vector3d& angles) {
  Quat q = AxisAngle(Eigen::Vector3d::UnitX(), angles.x()) *
           AxisAngle(Eigen::Vector3d::UnitY(), angles.y()) *
           AxisAngle(Eigen::Vector3d::UnitZ(), angles.z());
  return q.normalized();
}

Quat AxisAngle(const Eigen::Vector3d& axis, double angle) {
  double n = axis.norm();
  if (!(n > 0)) throw InvalidArgumentError("rotation axis must be non-zero");
  Eigen::Vector3d u = axis / n;
  double s = std::sin(angle / 2);
  return Quat(std::cos(angle / 2), s * u.x(), s * u.y(), s * u.z());
}

Quat QuatFromZAxis(const Eigen::Vector3d& direction) {
  if (!(direction.norm() > 0)) throw InvalidArgumentError("direction must be non-zero");
  return Quat::FromTwoVectors(Eigen::Vector3d::UnitZ(), direction).normalized();
}

Quat QuatFromXYAxes(const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
  Eigen::Vector3d ex = x.normalized();
  Eigen::Vector3d ey = y - ex * ex.dot(y);
  if (!(x.norm() > 0) || !(ey.norm() > 0)) {
    throw InvalidArgumentError("xyaxes must be non-zero and non-parallel");
  }
  ey.normalize();
  Eigen::Matrix3d r;
  r.col(0) = ex;
  r.col(1) = ey;
  r.col(2) = ex.cross(ey);
  return Quat(r).normalized();
}

}  // namespace ctrlforge::engine
