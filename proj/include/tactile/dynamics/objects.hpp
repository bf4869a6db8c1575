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

#include "tactile/geom/pose.hpp"

namespace tactile::dynamics {

// Ball resting on the plane z = ground_z, driven by a flat tip from above.
struct BallState {
  geom::Vec3 position = geom::Vec3::Zero();
  double radius = 0.004;
  geom::Vec3 velocity = geom::Vec3::Zero();          // m/s
  geom::Vec3 angular_velocity = geom::Vec3::Zero();  // rad/s
};

struct BallParams {
  double ground_z = 0.0;
  double tip_radius = 0.020;
  double contact_tolerance = 0.0002;
};

// Pure rolling between two parallel planes: while the tip face is within
// one diameter (plus tolerance) of the ground and over the ball, the ball
// center moves at half the tip's planar velocity. Otherwise it stops.
// `tip` is the flat tip's TCP (face center) at the start of the step.
BallState step_ball_roll(const geom::Pose& tip, const BallState& ball,
                         const geom::Twist& tip_twist, double dt, const BallParams& params = {});

bool ball_in_contact(const geom::Pose& tip, const BallState& ball, const BallParams& params);

// Planar box sliding on its support plane.
struct BoxState {
  geom::Vec2 position = geom::Vec2::Zero();
  double yaw_deg = 0.0;
  geom::Vec3 half_extents = geom::Vec3(0.025, 0.025, 0.025);
  geom::Vec2 velocity = geom::Vec2::Zero();  // m/s, from the last step
  double yaw_rate_deg = 0.0;
};

// Pusher-slider model with a single rotation gain. A penetration p of the
// pusher into the box at contact point c (box center o, push direction u)
// translates the box by p along u and rotates it by
//   kappa * p * cross(c - o, u) / l^2
// where l is the friction-adjusted rotation length (max planar half-extent
// when left at 0).
struct PushParams {
  double kappa = 0.5;
  double rotation_length = 0.0;
  int resolve_iterations = 8;
};

// `pusher_center` is the pusher disk center at the start of the step; it
// moves by pusher_twist.linear * dt.
BoxState step_push(const geom::Vec2& pusher_center, double pusher_radius, const BoxState& box,
                   const geom::Twist& pusher_twist, double dt, const PushParams& params = {});

// Signed distance from a planar point to the box outline (negative inside)
// and the outward normal at the closest boundary point.
double box_sdf_2d(const BoxState& box, const geom::Vec2& p, geom::Vec2* normal = nullptr);

// Inverted pendulum on a moving base, one decoupled pendulum per axis.
// tilt.x leans toward +x, tilt.y toward +y.
struct PoleState {
  geom::Vec2 tilt_deg = geom::Vec2::Zero();
  geom::Vec2 tilt_rate_deg = geom::Vec2::Zero();
  double length = 0.10;
  geom::Vec2 base_velocity = geom::Vec2::Zero();  // from the previous step
};

struct BalanceParams {
  double gravity = 9.81;
  double substep_hz = 100.0;
};

// tilt'' = (g/L) sin(tilt) - (a/L) cos(tilt), a = finite-differenced base
// acceleration over dt, integrated with semi-implicit Euler substeps.
PoleState step_balance(const geom::Vec2& base_velocity, const PoleState& pole, double dt,
                       const BalanceParams& params = {});

// Per-unit-mass energy of one axis, 0.5 L^2 w^2 - g L cos(theta), with theta
// measured from the hanging position (theta = pi - tilt).
double pendulum_energy(double length, double tilt_rad, double rate_rad, double gravity = 9.81);

}  // namespace tactile::dynamics
