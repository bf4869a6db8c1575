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

#include "tactile/render/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tactile/util/errors.hpp"
#include "tactile/util/parallel.hpp"

namespace tactile::render {

using geom::Vec3;

void CameraSpec::validate() const {
  if (!(fov_deg > 10.0 && fov_deg < 120.0)) throw ConfigError("camera: fov must be in (10, 120)");
  if (resolution < 1) throw ConfigError("camera: resolution must be >= 1");
  if (std::abs(light_dir.norm() - 1.0) > 1e-9) throw ConfigError("camera: light_dir must be unit");
}

geom::Pose look_at(const Vec3& eye, const Vec3& target, const Vec3& up) {
  const Vec3 back = (eye - target).normalized();
  Vec3 right = up.cross(back);
  if (right.norm() < 1e-12) right = Vec3::UnitY().cross(back);
  right.normalize();
  const Vec3 true_up = back.cross(right);
  geom::Mat3 r;
  r.col(0) = right;
  r.col(1) = true_up;
  r.col(2) = back;
  geom::Pose p;
  p.position = eye;
  p.orientation = geom::Quat(r).normalized();
  return p;
}

RgbImage render_rgb(std::span<const geom::SdfShape> scene, const CameraSpec& camera, int threads) {
  camera.validate();
  const int n = camera.resolution;
  RgbImage out(n, n, 3, camera.background);
  const geom::Mat3 rot = camera.pose.rotation();
  const double half = std::tan(geom::deg2rad(camera.fov_deg) * 0.5);
  util::parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t row) {
    const int i = static_cast<int>(row);
    for (int j = 0; j < n; ++j) {
      const double u = ((j + 0.5) / n * 2.0 - 1.0) * half;
      const double v = (1.0 - (i + 0.5) / n * 2.0) * half;
      const Vec3 dir = (rot * Vec3(u, v, -1.0)).normalized();
      const auto t = geom::raycast(scene, camera.pose.position, dir, camera.max_distance);
      if (!t) continue;
      const Vec3 p = camera.pose.position + *t * dir;
      const Vec3 normal = geom::sdf_normal(scene, p);
      // Color of the closest shape at the hit point.
      const geom::SdfShape* nearest = &scene.front();
      double best = std::numeric_limits<double>::infinity();
      for (const auto& s : scene) {
        const double d = std::abs(s.eval(p));
        if (d < best) {
          best = d;
          nearest = &s;
        }
      }
      const double lambert = std::max(0.0, normal.dot(camera.light_dir));
      for (int c = 0; c < 3; ++c) {
        const double shade = std::min(nearest->albedo[c] * lambert + camera.ambient, 1.0);
        out.at(c, i, j) = static_cast<std::uint8_t>(std::floor(shade * 255.0 + 0.5));
      }
    }
  });
  return out;
}

ByteImage compose_rgbt(const RgbImage& rgb, const TactileImage& tactile) {
  if (rgb.channels != 3 || tactile.channels != 1 || rgb.width != tactile.width ||
      rgb.height != tactile.height)
    throw std::invalid_argument("compose_rgbt: resolution mismatch");
  ByteImage out(rgb.width, rgb.height, 4);
  std::copy(rgb.data.begin(), rgb.data.end(), out.data.begin());
  std::copy(tactile.data.begin(), tactile.data.end(), out.data.begin() + 3 * out.plane_size());
  return out;
}

RgbImage extract_rgb(const ByteImage& rgbt) {
  if (rgbt.channels != 4) throw std::invalid_argument("extract_rgb: expected 4 channels");
  RgbImage out(rgbt.width, rgbt.height, 3);
  std::copy(rgbt.data.begin(), rgbt.data.begin() + 3 * rgbt.plane_size(), out.data.begin());
  return out;
}

TactileImage extract_tactile(const ByteImage& rgbt) {
  if (rgbt.channels != 4) throw std::invalid_argument("extract_tactile: expected 4 channels");
  TactileImage out(rgbt.width, rgbt.height, 1);
  std::copy(rgbt.data.begin() + 3 * rgbt.plane_size(), rgbt.data.end(), out.data.begin());
  return out;
}

}  // namespace tactile::render
