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

// Rotation helpers. Quaternions follow the (w, x, y, z) convention of the
// model language and are normalized on construction.

#ifndef CTRLFORGE_ENGINE_ROTATION_H_
#define CTRLFORGE_ENGINE_ROTATION_H_

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace ctrlforge::engine {

using Quat = Eigen::Quaterniond;

// Throws InvalidArgumentError for a zero (or non-finite) quaternion.
Quat MakeQuat(double w, double x, double y, double z);

Eigen::Matrix3d QuatToMat(const Quat& q);

// Intrinsic x-y-z sequence: rotate about x, then about the new y, then about
// the new z. Angles in radians.
Quat EulerToQuat(const Eigen::Vector3d& angles);

Quat AxisAngle(const Eigen::Vector3d& axis, double angle);

// Minimal rotation taking +z onto `direction` (which need not be unit).
Quat QuatFromZAxis(const Eigen::Vector3d& direction);

// Frame whose x and y axes are given (orthogonalized), as in `xyaxes`.
Quat QuatFromXYAxes(const Eigen::Vector3d& x, const Eigen::Vector3d& y);

}  // namespace ctrlforge::engine

#endif  // CTRLFORGE_ENGINE_ROTATION_H_
