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

#include <vector>

#include "tactile/geom/pose.hpp"
#include "tactile/render/image.hpp"

namespace tactile::data {

// Mean SSIM over all valid 11x11 Gaussian windows (sigma 1.5, K1 0.01,
// K2 0.03, L 255), averaged over channels. Symmetric bit for bit.
// Throws std::invalid_argument on a shape mismatch or images under 11 px.
double ssim(const render::ByteImage& a, const render::ByteImage& b);

struct TrajectoryMetric {
  std::vector<double> distances;  // meters, one per path point
  double mean = 0.0;
  double max = 0.0;
};

double point_segment_distance(const geom::Vec3& p, const geom::Vec3& a, const geom::Vec3& b);

// Distance from each path point to the nearest segment of the ground-truth
// polyline (closed adds the last-to-first segment). A single ground-truth
// point is treated as a degenerate segment. Throws std::invalid_argument on an
// empty path or ground truth.
TrajectoryMetric trajectory_error(const std::vector<geom::Vec3>& path,
                                  const std::vector<geom::Vec3>& ground_truth, bool closed = false);

// Trailing moving average; entries before the first full window average what
// exists. Throws std::invalid_argument for window < 1.
std::vector<double> smooth_curve(const std::vector<double>& values, int window = 50);

}  // namespace tactile::data
