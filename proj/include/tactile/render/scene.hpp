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

#include <span>

#include "tactile/geom/pose.hpp"
#include "tactile/geom/sdf.hpp"
#include "tactile/render/image.hpp"

namespace tactile::render {

// Pinhole camera looking along its local -z with +y up.
struct CameraSpec {
  geom::Pose pose;
  double fov_deg = 45.0;
  int resolution = 128;
  geom::Vec3 light_dir = geom::Vec3(0.3, -0.4, 0.866).normalized();  // toward the light
  double ambient = 0.2;
  std::uint8_t background = 128;
  double max_distance = 5.0;

  void validate() const;  // throws ConfigError
};

// Camera at `eye` looking at `target`, with world +z as the up hint.
geom::Pose look_at(const geom::Vec3& eye, const geom::Vec3& target,
                   const geom::Vec3& up = geom::Vec3::UnitZ());

// Lambertian shading: channel = albedo * max(0, n.l) + ambient, clamped to 1.
RgbImage render_rgb(std::span<const geom::SdfShape> scene, const CameraSpec& camera,
                    int threads = 1);

// [R, G, B, T] planes. Throws std::invalid_argument on size mismatch.
ByteImage compose_rgbt(const RgbImage& rgb, const TactileImage& tactile);
RgbImage extract_rgb(const ByteImage& rgbt);
TactileImage extract_tactile(const ByteImage& rgbt);

}  // namespace tactile::render
