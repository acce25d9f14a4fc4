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

// Software z-buffer renderer for the geom primitives of a compiled model.

#ifndef CTRLFORGE_SIM_RENDER_H_
#define CTRLFORGE_SIM_RENDER_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ctrlforge/engine/data.h"
#include "ctrlforge/engine/model.h"

namespace ctrlforge::sim {

enum class RenderMode { kRgb, kDepth, kSegmentation };

// Orbit camera around a look-at point. Angles in degrees; elevation < 0
// looks down.
struct FreeCamera {
  Eigen::Vector3d lookat = Eigen::Vector3d::Zero();
  double distance = 3;
  double azimuth = 90;
  double elevation = -30;
  double fovy = 45;
};

// Row-major images; pixel (row 0, col 0) is the top-left corner.
struct Frame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;     // height * width * 3
  std::vector<float> depth;          // meters along the view axis; 0 = background
  std::vector<int> segmentation;     // geom index; -1 = background
};

inline constexpr std::uint8_t kBackground[3] = {40, 48, 60};

// Frames the model's geoms at its reference configuration.
FreeCamera DefaultFreeCamera(const engine::CompiledModel& model);

class Renderer {
 public:
  explicit Renderer(const engine::CompiledModel& model);

  // `camera` < 0 selects `free_camera`; otherwise a model camera index.
  Frame Render(const engine::CompiledModel& model, const engine::Data& data, int width,
               int height, int camera, const FreeCamera& free_camera) const;

  struct Triangle {
    Eigen::Vector3d v[3];  // geom frame
    int color = 0;         // 0: geom color, 1/2: checker colors
  };

 private:
  std::vector<std::vector<Triangle>> meshes_;  // per geom
};

// Primitive mesh in the geom frame; exposed for tests.
std::vector<Renderer::Triangle> TessellateGeom(const engine::CompiledModel& model, int geom);

// Visualizations of non-color buffers as RGB.
std::vector<std::uint8_t> DepthToRgb(const Frame& frame);
std::vector<std::uint8_t> SegmentationToRgb(const Frame& frame);

// Writes width x height RGB bytes. Throws Error on I/O failure.
void WritePpm(const std::string& path, int width, int height,
              const std::vector<std::uint8_t>& rgb);
void WritePng(const std::string& path, int width, int height,
              const std::vector<std::uint8_t>& rgb);

}  // namespace ctrlforge::sim

#endif  // CTRLFORGE_SIM_RENDER_H_
