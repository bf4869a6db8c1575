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

#include "tactile/geom/pose.hpp"

namespace tactile::dynamics {

enum Axis { kX = 0, kY, kZ, kRx, kRy, kRz };

using Action6 = std::array<double, 6>;

struct ControlConfig {
  double rate_hz = 10.0;
  double max_linear = 0.010;      // m/s
  double max_angular_deg = 5.0;   // deg/s
  std::array<bool, 6> axes = {true, true, true, true, true, true};

  double dt() const { return 1.0 / rate_hz; }
  void validate() const;  // throws ConfigError
};

struct ControlResult {
  geom::Pose tcp;
  geom::Twist twist;
};

// Velocity command in [-1, 1] per axis (inputs are clamped), expressed in
// the work frame that `tcp` is given in. Linear and angular norms are
// clipped to the limits; rotation is about the TCP position.
ControlResult apply_velocity_action(const geom::Pose& tcp, const Action6& action,
                                    const ControlConfig& cfg);

// Twist the action produces before integration.
geom::Twist action_to_twist(const Action6& action, const ControlConfig& cfg);

}  // namespace tactile::dynamics
