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

#include <cmath>
#include <span>
#include <vector>

#include "tactile/dynamics/control.hpp"
#include "tactile/geom/pose.hpp"

namespace tactile::envs::detail {

// Places action values on the enabled axes, in axis order.
inline dynamics::Action6 expand_action(std::span<const double> action,
                                       const std::array<bool, 6>& axes) {
  dynamics::Action6 out{};
  std::size_t k = 0;
  for (int i = 0; i < 6 && k < action.size(); ++i)
    if (axes[i]) out[i] = action[k++];
  return out;
}

inline void append(std::vector<double>& v, const geom::Vec3& x, double scale) {
  for (int i = 0; i < 3; ++i) v.push_back(x[i] / scale);
}

inline void append_euler(std::vector<double>& v, const geom::Pose& p) {
  append(v, p.euler_deg(), 180.0);
}

inline geom::Vec2 rotate2(const geom::Vec2& v, double deg) {
  const double r = geom::deg2rad(deg);
  const double c = std::cos(r), s = std::sin(r);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

inline double wrap_deg(double d) { return std::remainder(d, 360.0); }

inline std::vector<double> clamp_unit(std::vector<double> a) {
  for (double& x : a) x = std::fmax(-1.0, std::fmin(1.0, x));
  return a;
}

}  // namespace tactile::envs::detail
