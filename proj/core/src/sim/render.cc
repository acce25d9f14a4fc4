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

#include "ctrlforge/sim/render.h"

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>

#include "ctrlforge/engine/dynamics.h"
#include "ctrlforge/errors.h"

namespace ctrlforge::sim {
namespace {

using engine::GeomType;
using Eigen::Vector3d;
using std::numbers::pi;

constexpr int kSlices = 24;
constexpr int kStacks = 16;
constexpr double kNear = 0.01;
constexpr double kInfinitePlaneSize = 20;
constexpr double kHeadlightAmbient = 0.1;
constexpr double kHeadlightDiffuse = 0.4;

using Mesh = std::vector<Renderer::Triangle>;

void AddTriangle(Mesh& mesh, const Vector3d& a, const Vector3d& b, const Vector3d& c,
                 int color = 0) {
  if ((b - a).cross(c - a).squaredNorm() < 1e-30) return;
  mesh.push_back({{a, b, c}, color});
}

void AddQuad(Mesh& mesh, const Vector3d& a, const Vector3d& b, const Vector3d& c,
             const Vector3d& d, int color = 0) {
  AddTriangle(mesh, a, b, c, color);
  AddTriangle(mesh, a, c, d, color);
}

Vector3d SpherePoint(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Sphere band between polar angles [theta0, theta1], scaled and offset.
void AddSphereBand(Mesh& mesh, double theta0, double theta1, int stacks, const Vector3d& scale,
                   const Vector3d& offset) {
  for (int i = 0; i < stacks; ++i) {
    double t0 = theta0 + (theta1 - theta0) * i / stacks;
    double t1 = theta0 + (theta1 - theta0) * (i + 1) / stacks;
    for (int j = 0; j < kSlices; ++j) {
      double p0 = 2 * pi * j / kSlices;
      double p1 = 2 * pi * (j + 1) / kSlices;
      AddQuad(mesh, offset + scale.cwiseProduct(SpherePoint(t0, p0)),
              offset + scale.cwiseProduct(SpherePoint(t1, p0)),
              offset + scale.cwiseProduct(SpherePoint(t1, p1)),
              offset + scale.cwiseProduct(SpherePoint(t0, p1)));
    }
  }
}

void AddCylinderSide(Mesh& mesh, double r, double h) {
  for (int j = 0; j < kSlices; ++j) {
    double p0 = 2 * pi * j / kSlices;
    double p1 = 2 * pi * (j + 1) / kSlices;
    Vector3d a(r * std::cos(p0), r * std::sin(p0), 0);
    Vector3d b(r * std::cos(p1), r * std::sin(p1), 0);
    Vector3d up(0, 0, h);
    AddQuad(mesh, a - up, b - up, b + up, a + up);
  }
}

double BoundingRadius(const engine::GeomModel& g) {
  switch (g.type) {
    case GeomType::kSphere: return g.size[0];
    case GeomType::kCapsule: return g.size[0] + g.size[1];
    case GeomType::kCylinder: return std::hypot(g.size[0], g.size[1]);
    case GeomType::kBox: return g.size.norm();
    case GeomType::kEllipsoid: return g.size.maxCoeff();
    case GeomType::kPlane: return 0;
  }
  return 0;
}

// Clips a polygon (camera frame, looking along -z) against z <= -kNear.
std::vector<Vector3d> ClipNear(const std::vector<Vector3d>& poly) {
  std::vector<Vector3d> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vector3d& a = poly[i];
    const Vector3d& b = poly[(i + 1) % poly.size()];
    bool a_in = -a.z() >= kNear;
    bool b_in = -b.z() >= kNear;
    if (a_in) out.push_back(a);
    if (a_in != b_in) {
      double t = (-kNear - a.z()) / (b.z() - a.z());
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

}  // namespace

std::vector<Renderer::Triangle> TessellateGeom(const engine::CompiledModel& model, int geom) {
  const engine::GeomModel& g = model.geoms[geom];
  Mesh mesh;
  const Vector3d& s = g.size;
  switch (g.type) {
    case GeomType::kSphere:
      AddSphereBand(mesh, 0, pi, kStacks, Vector3d::Constant(s[0]), Vector3d::Zero());
      break;
    case GeomType::kEllipsoid:
      AddSphereBand(mesh, 0, pi, kStacks, s, Vector3d::Zero());
      break;
    case GeomType::kCapsule:
      AddSphereBand(mesh, 0, pi / 2, kStacks / 2, Vector3d::Constant(s[0]), {0, 0, s[1]});
      AddSphereBand(mesh, pi / 2, pi, kStacks / 2, Vector3d::Constant(s[0]), {0, 0, -s[1]});
      AddCylinderSide(mesh, s[0], s[1]);
      break;
    case GeomType::kCylinder:
      AddCylinderSide(mesh, s[0], s[1]);
      for (int j = 0; j < kSlices; ++j) {
        double p0 = 2 * pi * j / kSlices;
        double p1 = 2 * pi * (j + 1) / kSlices;
        Vector3d a(s[0] * std::cos(p0), s[0] * std::sin(p0), 0);
        Vector3d b(s[0] * std::cos(p1), s[0] * std::sin(p1), 0);
        Vector3d up(0, 0, s[1]);
        AddTriangle(mesh, up, a + up, b + up);
        AddTriangle(mesh, -up, b - up, a - up);
      }
      break;
    case GeomType::kBox: {
      auto corner = [&](int i) {
        return Vector3d((i & 1 ? 1 : -1) * s[0], (i & 2 ? 1 : -1) * s[1], (i & 4 ? 1 : -1) * s[2]);
      };
      constexpr std::array<std::array<int, 4>, 6> faces = {
          {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}}};
      for (const auto& f : faces) AddQuad(mesh, corner(f[0]), corner(f[1]), corner(f[2]), corner(f[3]));
      break;
    }
    case GeomType::kPlane: {
      double hx = s[0] > 0 ? s[0] : kInfinitePlaneSize;
      double hy = s[1] > 0 ? s[1] : kInfinitePlaneSize;
      int cells = 1;
      bool checker = false;
      if (g.material >= 0 && model.materials[g.material].texture >= 0) {
        const engine::MaterialModel& mat = model.materials[g.material];
        checker = model.textures[mat.texture].checker;
        cells = std::clamp(static_cast<int>(std::lround(2 * mat.texrepeat[0])), 2, 40);
      }
      for (int i = 0; i < cells; ++i) {
        for (int j = 0; j < cells; ++j) {
          double x0 = -hx + 2 * hx * i / cells, x1 = -hx + 2 * hx * (i + 1) / cells;
          double y0 = -hy + 2 * hy * j / cells, y1 = -hy + 2 * hy * (j + 1) / cells;
          int color = checker ? 1 + (i + j) % 2 : 0;
          AddQuad(mesh, {x0, y0, 0}, {x1, y0, 0}, {x1, y1, 0}, {x0, y1, 0}, color);
        }
      }
      break;
    }
  }
  return mesh;
}

FreeCamera DefaultFreeCamera(const engine::CompiledModel& model) {
  engine::Data data(model);
  engine::Kinematics(model, data);
  Vector3d lo = Vector3d::Constant(std::numeric_limits<double>::infinity());
  Vector3d hi = -lo;
  for (int g = 0; g < model.ngeom(); ++g) {
    if (model.geoms[g].type == GeomType::kPlane) continue;
    double r = BoundingRadius(model.geoms[g]);
    lo = lo.cwiseMin(data.geom_xpos[g] - Vector3d::Constant(r));
    hi = hi.cwiseMax(data.geom_xpos[g] + Vector3d::Constant(r));
  }
  FreeCamera cam;
  double radius = 1;
  if (lo.allFinite()) {
    cam.lookat = 0.5 * (lo + hi);
    radius = std::max(0.5 * (hi - lo).norm(), 1e-3);
  }
  cam.distance = 1.2 * radius / std::sin(cam.fovy * pi / 360);
  return cam;
}

Renderer::Renderer(const engine::CompiledModel& model) {
  for (int g = 0; g < model.ngeom(); ++g) meshes_.push_back(TessellateGeom(model, g));
}

Frame Renderer::Render(const engine::CompiledModel& model, const engine::Data& data, int width,
                       int height, int camera, const FreeCamera& free_camera) const {
  if (width < 1 || height < 1) throw InvalidArgumentError("image size must be at least 1x1");
  Vector3d eye;
  Eigen::Matrix3d rot;  // columns: right, up, backward
  double fovy;
  if (camera < 0) {
    double az = free_camera.azimuth * pi / 180;
    double el = free_camera.elevation * pi / 180;
    Vector3d forward(std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el));
    Vector3d right = forward.cross(Vector3d::UnitZ());
    if (right.norm() < 1e-9) right = Vector3d::UnitX();
    right.normalize();
    Vector3d up = right.cross(forward);
    eye = free_camera.lookat - free_camera.distance * forward;
    rot.col(0) = right;
    rot.col(1) = up;
    rot.col(2) = -forward;
    fovy = free_camera.fovy;
  } else {
    if (camera >= static_cast<int>(model.cameras.size())) {
      throw UnknownNameError("camera index " + std::to_string(camera) + " out of range");
    }
    eye = data.cam_xpos[camera];
    rot = data.cam_xmat[camera];
    fovy = model.cameras[camera].fovy;
  }
  const double focal = 0.5 * height / std::tan(fovy * pi / 360);
  const double cx = 0.5 * width, cy = 0.5 * height;

  Frame frame;
  frame.width = width;
  frame.height = height;
  const std::size_t npix = static_cast<std::size_t>(width) * height;
  frame.rgb.resize(npix * 3);
  for (std::size_t i = 0; i < npix; ++i) std::copy(kBackground, kBackground + 3, &frame.rgb[3 * i]);
  frame.depth.assign(npix, 0.0f);
  frame.segmentation.assign(npix, -1);
  std::vector<double> zbuf(npix, std::numeric_limits<double>::infinity());

  for (int g = 0; g < model.ngeom(); ++g) {
    const engine::GeomModel& geom = model.geoms[g];
    if (geom.rgba[3] <= 0) continue;
    const Eigen::Matrix3d& gm = data.geom_xmat[g];
    const Vector3d& gp = data.geom_xpos[g];
    std::array<Vector3d, 3> colors;
    colors[0] = geom.rgba.head<3>();
    if (geom.material >= 0 && model.materials[geom.material].texture >= 0) {
      const engine::MaterialModel& mat = model.materials[geom.material];
      const engine::TextureModel& tex = model.textures[mat.texture];
      colors[1] = tex.rgb1.cwiseProduct(geom.rgba.head<3>());
      colors[2] = tex.rgb2.cwiseProduct(geom.rgba.head<3>());
    }
    for (const Triangle& tri : meshes_[g]) {
      std::array<Vector3d, 3> world;
      for (int k = 0; k < 3; ++k) world[k] = gp + gm * tri.v[k];
      Vector3d normal = (world[1] - world[0]).cross(world[2] - world[0]).normalized();
      Vector3d centroid = (world[0] + world[1] + world[2]) / 3;
      Vector3d to_eye = eye - centroid;
      if (normal.dot(to_eye) < 0) normal = -normal;

      // Flat shading: headlight plus model lights.
      Vector3d light = Vector3d::Constant(kHeadlightAmbient);
      light += kHeadlightDiffuse * std::max(0.0, normal.dot(to_eye.normalized())) *
               Vector3d::Ones();
      for (std::size_t l = 0; l < model.lights.size(); ++l) {
        const engine::LightModel& lm = model.lights[l];
        Vector3d dir = lm.directional ? Vector3d(-data.light_xdir[l])
                                      : Vector3d((data.light_xpos[l] - centroid).normalized());
        light += lm.ambient + lm.diffuse * std::max(0.0, normal.dot(dir));
      }
      Vector3d color = colors[tri.color].cwiseProduct(light).cwiseMin(1.0).cwiseMax(0.0);
      std::array<std::uint8_t, 3> rgb;
      for (int c = 0; c < 3; ++c) rgb[c] = static_cast<std::uint8_t>(std::lround(255 * color[c]));

      std::vector<Vector3d> poly;
      for (int k = 0; k < 3; ++k) poly.push_back(rot.transpose() * (world[k] - eye));
      poly = ClipNear(poly);
      if (poly.size() < 3) continue;
      // Screen coordinates with inverse depth.
      std::vector<Vector3d> screen;
      for (const Vector3d& p : poly) {
        double z = -p.z();
        screen.emplace_back(cx + focal * p.x() / z, cy - focal * p.y() / z, 1 / z);
      }
      for (std::size_t k = 1; k + 1 < screen.size(); ++k) {
        const Vector3d& a = screen[0];
        const Vector3d& b = screen[k];
        const Vector3d& c = screen[k + 1];
        double area = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
        if (std::abs(area) < 1e-12) continue;
        int x0 = std::max(0, static_cast<int>(std::floor(std::min({a.x(), b.x(), c.x()}))));
        int x1 = std::min(width - 1, static_cast<int>(std::ceil(std::max({a.x(), b.x(), c.x()}))));
        int y0 = std::max(0, static_cast<int>(std::floor(std::min({a.y(), b.y(), c.y()}))));
        int y1 = std::min(height - 1, static_cast<int>(std::ceil(std::max({a.y(), b.y(), c.y()}))));
        for (int y = y0; y <= y1; ++y) {
          double py = y + 0.5;
          for (int x = x0; x <= x1; ++x) {
            double px = x + 0.5;
            double w0 = ((b.x() - px) * (c.y() - py) - (b.y() - py) * (c.x() - px)) / area;
            double w1 = ((c.x() - px) * (a.y() - py) - (c.y() - py) * (a.x() - px)) / area;
            double w2 = 1 - w0 - w1;
            if (w0 < 0 || w1 < 0 || w2 < 0) continue;
            double inv_z = w0 * a.z() + w1 * b.z() + w2 * c.z();
            double depth = 1 / inv_z;
            std::size_t idx = static_cast<std::size_t>(y) * width + x;
            if (depth >= zbuf[idx]) continue;
            zbuf[idx] = depth;
            frame.depth[idx] = static_cast<float>(depth);
            frame.segmentation[idx] = g;
            std::copy(rgb.begin(), rgb.end(), &frame.rgb[3 * idx]);
          }
        }
      }
    }
  }
  return frame;
}

std::vector<std::uint8_t> DepthToRgb(const Frame& frame) {
  float far = 0;
  for (float d : frame.depth) far = std::max(far, d);
  std::vector<std::uint8_t> out(frame.depth.size() * 3, 0);
  if (far <= 0) return out;
  for (std::size_t i = 0; i < frame.depth.size(); ++i) {
    if (frame.depth[i] <= 0) continue;
    auto v = static_cast<std::uint8_t>(std::lround(255 * (1 - 0.8 * frame.depth[i] / far)));
    out[3 * i] = out[3 * i + 1] = out[3 * i + 2] = v;
  }
  return out;
}

std::vector<std::uint8_t> SegmentationToRgb(const Frame& frame) {
  std::vector<std::uint8_t> out(frame.segmentation.size() * 3, 0);
  for (std::size_t i = 0; i < frame.segmentation.size(); ++i) {
    int id = frame.segmentation[i];
    if (id < 0) continue;
    out[3 * i] = static_cast<std::uint8_t>((id * 97 + 67) % 256);
    out[3 * i + 1] = static_cast<std::uint8_t>((id * 59 + 131) % 256);
    out[3 * i + 2] = static_cast<std::uint8_t>((id * 157 + 199) % 256);
  }
  return out;
}

void WritePpm(const std::string& path, int width, int height,
              const std::vector<std::uint8_t>& rgb) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << "P6\n" << width << " " << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
  if (!out) throw Error("failed writing '" + path + "'");
}

void WritePng(const std::string& path, int width, int height,
              const std::vector<std::uint8_t>& rgb) {
  std::FILE* file = std::fopen(path.c_str(), "wb");
  if (file == nullptr) throw Error("cannot open '" + path + "' for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (png == nullptr || info == nullptr || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(file);
    throw Error("failed writing PNG '" + path + "'");
  }
  png_init_io(png, file);
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height; ++y) {
    png_write_row(png, const_cast<png_bytep>(&rgb[static_cast<std::size_t>(y) * width * 3]));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(file);
}

}  // namespace ctrlforge::sim
