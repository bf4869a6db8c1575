// Copyright 2026 The tactile-sim Authors
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

#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tactile/geom/pose.hpp"

namespace tactile::geom {

// Regular height grid. Node (ix, iy) sits at (x0 + ix*cell, y0 + iy*cell);
// heights are row-major in iy.
class Heightfield {
 public:
  Heightfield(int nx, int ny, double cell, double x0, double y0, std::vector<double> heights);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double cell() const { return cell_; }
  double x0() const { return x0_; }
  double y0() const { return y0_; }
  double node(int ix, int iy) const { return h_[static_cast<std::size_t>(iy) * nx_ + ix]; }
  const std::vector<double>& heights() const { return h_; }

  // Bilinear height; queries outside the grid clamp to the border.
  double height(double x, double y) const;

  // Upward unit normal at a node from central differences of the grid
  // (one-sided on the border).
  Vec3 node_normal(int ix, int iy) const;

  // Bilinear blend of node gradients, normalized.
  Vec3 normal(double x, double y) const;

  // Lipschitz bound on the bilinear interpolant.
  double slope_bound() const { return slope_bound_; }

 private:
  Vec2 node_gradient(int ix, int iy) const;

  int nx_, ny_;
  double cell_, x0_, y0_;
  std::vector<double> h_;
  double slope_bound_ = 0.0;
};

enum class ShapeKind { kPlane, kBox, kSphere, kEdge, kHeightfield };

// Analytic signed-distance shape. Negative inside. Local frames:
//   Plane: solid z <= 0.
//   Box: centered, half-extents.
//   Sphere: centered.
//   Edge: step whose raised top face is z = 0 over y <= 0, with a vertical
//     wall at y = 0 dropping to a floor at z = -height.
//   Heightfield: solid below z = h(x, y).
class SdfShape {
 public:
  static SdfShape plane(const Pose& pose = {});
  static SdfShape box(const Vec3& half_extents, const Pose& pose = {});
  static SdfShape sphere(double radius, const Pose& pose = {});
  static SdfShape edge(double height, const Pose& pose = {});
  static SdfShape heightfield(std::shared_ptr<const Heightfield> field, const Pose& pose = {});

  ShapeKind kind() const { return kind_; }
  const Pose& pose() const { return pose_; }
  void set_pose(const Pose& pose);

  const Vec3& half_extents() const { return dims_; }
  double radius() const { return dims_.x(); }
  double edge_height() const { return dims_.x(); }
  const std::shared_ptr<const Heightfield>& field() const { return field_; }

  // Diffuse color used by the scene renderer, components in [0, 1].
  Vec3 albedo = Vec3(0.8, 0.8, 0.8);

  double eval(const Vec3& world_point) const { return eval_local(to_local(world_point)); }
  double eval_local(const Vec3& p) const;
  Vec3 to_local(const Vec3& world_point) const { return rot_t_ * (world_point - pose_.position); }

 private:
  SdfShape(ShapeKind kind, const Vec3& dims, const Pose& pose);

  ShapeKind kind_;
  Vec3 dims_;
  Pose pose_;
  Mat3 rot_t_;
  std::shared_ptr<const Heightfield> field_;
};

double sdf_eval(const SdfShape& shape, const Vec3& point);

// Union of shapes; +infinity for an empty list.
double scene_sdf(std::span<const SdfShape> scene, const Vec3& point);

struct RaycastParams {
  double step_factor = 0.99;
  int max_steps = 256;
  double epsilon = 1e-6;
};

// Sphere-traced first hit along origin + t * direction, t in [0, max_dist].
// Returns 0 when the origin is already inside or on the surface.
std::optional<double> raycast(const SdfShape& shape, const Vec3& origin, const Vec3& direction,
                              double max_dist, const RaycastParams& params = {});
std::optional<double> raycast(std::span<const SdfShape> scene, const Vec3& origin,
                              const Vec3& direction, double max_dist,
                              const RaycastParams& params = {});

// Gradient of the scene SDF by central differences, normalized.
Vec3 sdf_normal(std::span<const SdfShape> scene, const Vec3& point, double h = 1e-6);

}  // namespace tactile::geom
