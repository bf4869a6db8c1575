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

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "tactile/geom/pose.hpp"
#include "tactile/geom/sdf.hpp"

namespace tactile::noise {

struct NoiseField {
  std::uint64_t seed = 0;
  double frequency = 5.0;  // cycles per meter for the first octave
  int octaves = 2;
  double amplitude = 0.01;  // meters
};

// Seeded 2-D simplex noise. Octave k runs at frequency * 2^k with weight
// 0.5^k; the weighted sum is normalized so |value| <= amplitude.
class SimplexNoise {
 public:
  explicit SimplexNoise(const NoiseField& field);

  double operator()(double x, double y) const;
  const NoiseField& field() const { return field_; }

  // Single octave on the unit lattice, in [-1, 1].
  double unit(double x, double y) const;

 private:
  NoiseField field_;
  std::array<std::uint8_t, 512> perm_{};
  std::vector<geom::Vec2> offsets_;
};

double noise2(const NoiseField& field, double x, double y);

struct Surface {
  std::shared_ptr<const geom::Heightfield> grid;
  geom::SdfShape shape;

  double height(double x, double y) const { return grid->height(x, y); }
  geom::Vec3 normal(double x, double y) const { return grid->normal(x, y); }
};

// Heightfield sampling the noise on a grid_n x grid_n lattice spanning
// [-extent/2, extent/2]^2.
Surface generate_surface(const NoiseField& field, double extent = 0.30, int grid_n = 64);

// Waypoints at x_i = i * length / (n - 1), y_i = noise(x_i, 0) - noise(0, 0),
// headings (Rz) along the forward difference.
std::vector<geom::Pose> generate_trajectory(const NoiseField& field, double length = 0.30,
                                            int n_waypoints = 16);

}  // namespace tactile::noise
