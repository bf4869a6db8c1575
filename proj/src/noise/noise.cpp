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

#include "tactile/noise/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tactile/util/rng.hpp"

namespace tactile::noise {
namespace {

const double kF2 = 0.5 * (std::sqrt(3.0) - 1.0);
const double kG2 = (3.0 - std::sqrt(3.0)) / 6.0;
// Upper bound of the raw kernel sum with unit gradients (numerical maximum
// is about 0.01008).
constexpr double kRawBound = 0.0102;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kGrad[8][2] = {{1, 0},          {kInvSqrt2, kInvSqrt2},  {0, 1},
                                {-kInvSqrt2, kInvSqrt2}, {-1, 0}, {-kInvSqrt2, -kInvSqrt2},
                                {0, -1},         {kInvSqrt2, -kInvSqrt2}};

}  // namespace

SimplexNoise::SimplexNoise(const NoiseField& field) : field_(field) {
  if (field.octaves < 1) throw std::invalid_argument("noise: octaves < 1");
  util::Rng rng(util::mix_seed(field.seed, 0x6e6f697365ULL));
  std::array<std::uint8_t, 256> p;
  std::iota(p.begin(), p.end(), 0);
  for (int i = 255; i > 0; --i) {
    const auto j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
    std::swap(p[i], p[j]);
  }
  for (int i = 0; i < 512; ++i) perm_[i] = p[i & 255];
  for (int k = 0; k < field.octaves; ++k) {
    offsets_.emplace_back(static_cast<double>(rng.next_u64() % 4096) + 0.5 * k,
                          static_cast<double>(rng.next_u64() % 4096) + 0.25 * k);
  }
}

double SimplexNoise::unit(double x, double y) const {
  const double s = (x + y) * kF2;
  const double fi = std::floor(x + s), fj = std::floor(y + s);
  const double t = (fi + fj) * kG2;
  const double x0 = x - (fi - t), y0 = y - (fj - t);
  const int i1 = x0 > y0 ? 1 : 0, j1 = 1 - i1;
  const double xs[3] = {x0, x0 - i1 + kG2, x0 - 1.0 + 2.0 * kG2};
  const double ys[3] = {y0, y0 - j1 + kG2, y0 - 1.0 + 2.0 * kG2};
  const int ii = static_cast<int>(static_cast<long long>(fi) & 255);
  const int jj = static_cast<int>(static_cast<long long>(fj) & 255);
  const int gi[3] = {perm_[ii + perm_[jj]] & 7, perm_[ii + i1 + perm_[jj + j1]] & 7,
                     perm_[ii + 1 + perm_[jj + 1]] & 7};
  double sum = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double r = 0.5 - xs[c] * xs[c] - ys[c] * ys[c];
    if (r > 0.0) {
      const double r2 = r * r;
      sum += r2 * r2 * (kGrad[gi[c]][0] * xs[c] + kGrad[gi[c]][1] * ys[c]);
    }
  }
  return std::clamp(sum / kRawBound, -1.0, 1.0);
}

double SimplexNoise::operator()(double x, double y) const {
  double total = 0.0, weight = 0.0, w = 1.0, f = field_.frequency;
  for (int k = 0; k < field_.octaves; ++k) {
    total += w * unit(x * f + offsets_[k].x(), y * f + offsets_[k].y());
    weight += w;
    w *= 0.5;
    f *= 2.0;
  }
  return field_.amplitude * total / weight;
}

double noise2(const NoiseField& field, double x, double y) { return SimplexNoise(field)(x, y); }

Surface generate_surface(const NoiseField& field, double extent, int grid_n) {
  if (grid_n < 16) throw std::invalid_argument("generate_surface: grid_n < 16");
  if (!(extent > 0.0)) throw std::invalid_argument("generate_surface: extent <= 0");
  const SimplexNoise noise(field);
  const double cell = extent / (grid_n - 1);
  const double x0 = -0.5 * extent;
  std::vector<double> h(static_cast<std::size_t>(grid_n) * grid_n);
  for (int iy = 0; iy < grid_n; ++iy)
    for (int ix = 0; ix < grid_n; ++ix)
      h[static_cast<std::size_t>(iy) * grid_n + ix] = noise(x0 + ix * cell, x0 + iy * cell);
  auto grid = std::make_shared<const geom::Heightfield>(grid_n, grid_n, cell, x0, x0, std::move(h));
  return {grid, geom::SdfShape::heightfield(grid)};
}

std::vector<geom::Pose> generate_trajectory(const NoiseField& field, double length,
                                            int n_waypoints) {
  if (n_waypoints < 2) throw std::invalid_argument("generate_trajectory: n_waypoints < 2");
  const SimplexNoise noise(field);
  const double y_origin = noise(0.0, 0.0);
  std::vector<geom::Vec2> pts(n_waypoints);
  for (int i = 0; i < n_waypoints; ++i) {
    const double x = i * length / (n_waypoints - 1);
    pts[i] = {x, noise(x, 0.0) - y_origin};
  }
  pts.front().y() = 0.0;
  std::vector<geom::Pose> out(n_waypoints);
  for (int i = 0; i < n_waypoints; ++i) {
    const int a = i + 1 < n_waypoints ? i : i - 1;
    const geom::Vec2 d = pts[a + 1] - pts[a];
    const double heading = geom::rad2deg(std::atan2(d.y(), d.x()));
    out[i] = geom::Pose::from_euler_deg({pts[i].x(), pts[i].y(), 0.0}, {0.0, 0.0, heading});
  }
  return out;
}

}  // namespace tactile::noise
