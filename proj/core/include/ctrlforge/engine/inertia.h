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

// Mass properties and cross sections of uniform solid primitives.

#ifndef CTRLFORGE_ENGINE_INERTIA_H_
#define CTRLFORGE_ENGINE_INERTIA_H_

#include <Eigen/Core>

#include "ctrlforge/engine/model.h"

namespace ctrlforge::engine {

struct MassProperties {
  double mass = 0;
  // Rotational inertia about the center of mass, in the primitive's frame.
  Eigen::Matrix3d inertia = Eigen::Matrix3d::Zero();
};

// `size` uses the model-language convention: sphere (r), capsule and cylinder
// (r, half-length along z), box (half-extents), ellipsoid (radii). Planes
// are massless. Throws InvalidArgumentError for non-positive size or
// density.
double GeomVolume(GeomType type, const Eigen::Vector3d& size);
MassProperties GeomInertia(GeomType type, const Eigen::Vector3d& size, double density);
// Same shape with a prescribed total mass.
MassProperties GeomInertiaFromMass(GeomType type, const Eigen::Vector3d& size, double mass);

// Areas of the silhouettes seen along the local x, y and z axes.
Eigen::Vector3d ProjectedAreas(GeomType type, const Eigen::Vector3d& size);

}  // namespace ctrlforge::engine

#endif  // CTRLFORGE_ENGINE_INERTIA_H_
