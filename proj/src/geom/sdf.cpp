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

#include "tactile/geom/sdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tactile::geom {

Heightfield::Heightfield(int nx, int ny, double cell, double x0, double y0,
                         std::vector<double> heights)
    : nx_(nx), ny_(ny), cell_(cell), x0_(x0), y0_(y0), h_(std::move(heights)) {
  if (nx < 2 || ny < 2 || !(cell > 0.0) ||
      h_.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
    throw std::invalid_argument("heightfield: bad grid dimensions");
  }
  double gx = 0.0, gy = 0.0;
  for (int iy = 0; iy < ny_; ++iy)
    for (int ix = 0; ix + 1 < nx_; ++ix)
      gx = std::max(gx, std::abs(node(ix + 1, iy) - node(ix, iy)) / cell_);
  for (int iy = 0; iy + 1 < ny_; ++iy)
    for (int ix = 0; ix < nx_; ++ix)
      gy = std::max(gy, std::abs(node(ix, iy + 1) - node(ix, iy)) / cell_);
  slope_bound_ = std::hypot(gx, gy);
}

double Heightfield::height(double x, double y) const {
  const double fx = std::clamp((x - x0_) / cell_, 0.0, static_cast<double>(nx_ - 1));
  const double fy = std::clamp((y - y0_) / cell_, 0.0, static_cast<double>(ny_ - 1));
  const int ix = std::min(static_cast<int>(fx), nx_ - 2);
  const int iy = std::min(static_cast<int>(fy), ny_ - 2);
  const double tx = fx - ix, ty = fy - iy;
  const double h00 = node(ix, iy), h10 = node(ix + 1, iy);
  const double h01 = node(ix, iy + 1), h11 = node(ix + 1, iy + 1);
  return (h00 * (1 - tx) + h10 * tx) * (1 - ty) + (h01 * (1 - tx) + h11 * tx) * ty;
}

Vec2 Heightfield::node_gradient(int ix, int iy) const {
  const int xl = std::max(ix - 1, 0), xr = std::min(ix + 1, nx_ - 1);
  const int yl = std::max(iy - 1, 0), yr = std::min(iy + 1, ny_ - 1);
  return {(node(xr, iy) - node(xl, iy)) / ((xr - xl) * cell_),
          (node(ix, yr) - node(ix, yl)) / ((yr - yl) * cell_)};
}

Vec3 Heightfield::node_normal(int ix, int iy) const {
  const Vec2 g = node_gradient(ix, iy);
  return Vec3(-g.x(), -g.y(), 1.0).normalized();
}

Vec3 Heightfield::normal(double x, double y) const {
  const double fx = std::clamp((x - x0_) / cell_, 0.0, static_cast<double>(nx_ - 1));
  const double fy = std::clamp((y - y0_) / cell_, 0.0, static_cast<double>(ny_ - 1));
  const int ix = std::min(static_cast<int>(fx), nx_ - 2);
  const int iy = std::min(static_cast<int>(fy), ny_ - 2);
  const double tx = fx - ix, ty = fy - iy;
  const Vec2 g = (node_gradient(ix, iy) * (1 - tx) + node_gradient(ix + 1, iy) * tx) * (1 - ty) +
                 (node_gradient(ix, iy + 1) * (1 - tx) + node_gradient(ix + 1, iy + 1) * tx) * ty;
  return Vec3(-g.x(), -g.y(), 1.0).normalized();
}

SdfShape::SdfShape(ShapeKind kind, const Vec3& dims, const Pose& pose)
    : kind_(kind), dims_(dims) {
  set_pose(pose);
}

SdfShape SdfShape::plane(const Pose& pose) { return {ShapeKind::kPlane, Vec3::Zero(), pose}; }

SdfShape SdfShape::box(const Vec3& half_extents, const Pose& pose) {
  if ((half_extents.array() <= 0.0).any()) throw std::invalid_argument("box: half-extents <= 0");
  return {ShapeKind::kBox, half_extents, pose};
}

SdfShape SdfShape::sphere(double radius, const Pose& pose) {
  if (!(radius > 0.0)) throw std::invalid_argument("sphere: radius <= 0");
  return {ShapeKind::kSphere, Vec3(radius, 0, 0), pose};
}

SdfShape SdfShape::edge(double height, const Pose& pose) {
  if (!(height > 0.0)) throw std::invalid_argument("edge: height <= 0");
  return {ShapeKind::kEdge, Vec3(height, 0, 0), pose};
}

SdfShape SdfShape::heightfield(std::shared_ptr<const Heightfield> field, const Pose& pose) {
  if (!field) throw std::invalid_argument("heightfield: null grid");
  SdfShape s{ShapeKind::kHeightfield, Vec3::Zero(), pose};
  s.field_ = std::move(field);
  return s;
}

void SdfShape::set_pose(const Pose& pose) {
  pose_ = pose;
  rot_t_ = pose.rotation().transpose();
}

double SdfShape::eval_local(const Vec3& p) const {
  switch (kind_) {
    case ShapeKind::kPlane:
      return p.z();
    case ShapeKind::kSphere:
      return p.norm() - dims_.x();
    case ShapeKind::kBox: {
      const Vec3 q = p.cwiseAbs() - dims_;
      return q.cwiseMax(0.0).norm() + std::min(q.maxCoeff(), 0.0);
    }
    case ShapeKind::kEdge: {
      const double oy = std::max(p.y(), 0.0), oz = std::max(p.z(), 0.0);
      const double top = std::hypot(oy, oz) + std::min(std::max(p.y(), p.z()), 0.0);
      return std::min(top, p.z() + dims_.x());
    }
    case ShapeKind::kHeightfield: {
      const double s = field_->slope_bound();
      return (p.z() - field_->height(p.x(), p.y())) / std::sqrt(1.0 + s * s);
    }
  }
  return std::numeric_limits<double>::infinity();
}

double sdf_eval(const SdfShape& shape, const Vec3& point) { return shape.eval(point); }

double scene_sdf(std::span<const SdfShape> scene, const Vec3& point) {
  double d = std::numeric_limits<double>::infinity();
  for (const SdfShape& s : scene) d = std::min(d, s.eval(point));
  return d;
}

namespace {

template <class F>
std::optional<double> march(const F& sdf, const Vec3& origin, const Vec3& dir, double max_dist,
                            const RaycastParams& params) {
  double t = 0.0;
  for (int step = 0; step < params.max_steps; ++step) {
    double d = sdf(origin + t * dir);
    if (step == 0 && d <= 0.0) return 0.0;
    if (d < params.epsilon) {
      // Unit steps cannot cross the surface and tighten the residual far
      // below epsilon; they converge slowly only for grazing rays.
      for (int k = 0; k < 64 && d > 1e-13; ++k) {
        t += d;
        d = sdf(origin + t * dir);
      }
      if (t > max_dist) return std::nullopt;
      return std::max(t, 0.0);
    }
    t += params.step_factor * d;
    if (t > max_dist) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> raycast(const SdfShape& shape, const Vec3& origin, const Vec3& direction,
                              double max_dist, const RaycastParams& params) {
  // Marching in the local frame avoids re-transforming every sample.
  const Vec3 lo = shape.to_local(origin);
  const Vec3 ld = shape.to_local(origin + direction) - lo;
  return march([&](const Vec3& p) { return shape.eval_local(p); }, lo, ld, max_dist, params);
}

std::optional<double> raycast(std::span<const SdfShape> scene, const Vec3& origin,
                              const Vec3& direction, double max_dist,
                              const RaycastParams& params) {
  if (scene.empty()) return std::nullopt;
  if (scene.size() == 1) return raycast(scene.front(), origin, direction, max_dist, params);
  return march([&](const Vec3& p) { return scene_sdf(scene, p); }, origin, direction, max_dist,
               params);
}

Vec3 sdf_normal(std::span<const SdfShape> scene, const Vec3& point, double h) {
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    Vec3 e = Vec3::Zero();
    e[i] = h;
    g[i] = scene_sdf(scene, point + e) - scene_sdf(scene, point - e);
  }
  return g.normalized();
}

}  // namespace tactile::geom
