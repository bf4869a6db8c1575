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

#include "tactile/dynamics/control.hpp"

#include <algorithm>
#include <cmath>

#include "tactile/util/errors.hpp"

namespace tactile::dynamics {

using geom::Vec3;

void ControlConfig::validate() const {
  if (!(rate_hz > 0.0)) throw ConfigError("control: rate must be > 0");
  if (!(max_linear > 0.0) || !(max_angular_deg > 0.0))
    throw ConfigError("control: velocity limits must be > 0");
}

geom::Twist action_to_twist(const Action6& action, const ControlConfig& cfg) {
  Action6 a{};
  for (int i = 0; i < 6; ++i) {
    const double v = std::isfinite(action[i]) ? action[i] : 0.0;
    a[i] = cfg.axes[i] ? std::clamp(v, -1.0, 1.0) : 0.0;
  }
  geom::Twist t;
  t.linear = Vec3(a[0], a[1], a[2]) * cfg.max_linear;
  t.angular = Vec3(a[3], a[4], a[5]) * cfg.max_angular_deg;
  if (t.linear.norm() > cfg.max_linear) t.linear *= cfg.max_linear / t.linear.norm();
  if (t.angular.norm() > cfg.max_angular_deg) t.angular *= cfg.max_angular_deg / t.angular.norm();
  return t;
}

ControlResult apply_velocity_action(const geom::Pose& tcp, const Action6& action,
                                    const ControlConfig& cfg) {
  const double dt = cfg.dt();
  ControlResult out;
  out.twist = action_to_twist(action, cfg);
  out.tcp = tcp;
  out.tcp.position += out.twist.linear * dt;
  const Vec3 w = out.twist.angular * geom::deg2rad(dt);
  const double angle = w.norm();
  if (angle > 0.0) {
    const geom::Quat dq(Eigen::AngleAxisd(angle, w / angle));
    out.tcp.orientation = (dq * tcp.orientation).normalized();
  }
  return out;
}

}  // namespace tactile::dynamics
