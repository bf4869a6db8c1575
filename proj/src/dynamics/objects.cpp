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

#include "tactile/dynamics/objects.hpp"

#include <algorithm>
#include <cmath>

namespace tactile::dynamics {

using geom::Vec2;
using geom::Vec3;

namespace {

constexpr double kContactEps = 1e-9;

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec2 rotate2(const Vec2& v, double rad) {
  const double c = std::cos(rad), s = std::sin(rad);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

}  // namespace

bool ball_in_contact(const geom::Pose& tip, const BallState& ball, const BallParams& params) {
  const double gap = tip.position.z() - (params.ground_z + 2.0 * ball.radius);
  const double planar = (tip.position.head<2>() - ball.position.head<2>()).norm();
  return gap <= params.contact_tolerance && planar < params.tip_radius;
}

BallState step_ball_roll(const geom::Pose& tip, const BallState& ball,
                         const geom::Twist& tip_twist, double dt, const BallParams& params) {
  BallState out = ball;
  out.position.z() = params.ground_z + ball.radius;
  if (!ball_in_contact(tip, ball, params)) {
    out.velocity.setZero();
    out.angular_velocity.setZero();
    return out;
  }
  out.velocity = Vec3(0.5 * tip_twist.linear.x(), 0.5 * tip_twist.linear.y(), 0.0);
  out.position += out.velocity * dt;
  out.angular_velocity = Vec3::UnitZ().cross(out.velocity) / ball.radius;
  return out;
}

double box_sdf_2d(const BoxState& box, const Vec2& p, Vec2* normal) {
  const double yaw = geom::deg2rad(box.yaw_deg);
  const Vec2 local = rotate2(p - box.position, -yaw);
  const Vec2 h = box.half_extents.head<2>();
  const Vec2 q = local.cwiseAbs() - h;
  double d;
  Vec2 n_local;
  if (q.x() > 0.0 || q.y() > 0.0) {
    const Vec2 out = q.cwiseMax(0.0);
    d = out.norm();
    n_local = Vec2(std::copysign(out.x(), local.x()), std::copysign(out.y(), local.y())) / d;
  } else {
    d = std::max(q.x(), q.y());
    n_local = q.x() > q.y() ? Vec2(std::copysign(1.0, local.x()), 0.0)
                            : Vec2(0.0, std::copysign(1.0, local.y()));
  }
  if (normal != nullptr) *normal = rotate2(n_local, yaw);
  return d;
}

BoxState step_push(const Vec2& pusher_center, double pusher_radius, const BoxState& box,
                   const geom::Twist& pusher_twist, double dt, const PushParams& params) {
  BoxState out = box;
  out.velocity.setZero();
  out.yaw_rate_deg = 0.0;
  const Vec2 p = pusher_center + pusher_twist.linear.head<2>() * dt;
  Vec2 n;
  const double s = box_sdf_2d(box, p, &n) - pusher_radius;
  if (s < -kContactEps) {
    const double pen = -s;
    const Vec2 push_dir = -n;
    const Vec2 contact = p - n * (s + pusher_radius);
    const double l = params.rotation_length > 0.0
                         ? params.rotation_length
                         : std::max(box.half_extents.x(), box.half_extents.y());
    const double dtheta = params.kappa * pen * cross2(contact - box.position, push_dir) / (l * l);
    out.position += push_dir * pen;
    out.yaw_deg += geom::rad2deg(dtheta);
    for (int k = 0; k < params.resolve_iterations; ++k) {
      Vec2 nk;
      const double sk = box_sdf_2d(out, p, &nk) - pusher_radius;
      if (sk >= 0.0) break;
      out.position += nk * sk;
    }
  }
  if (dt > 0.0) {
    out.velocity = (out.position - box.position) / dt;
    out.yaw_rate_deg = (out.yaw_deg - box.yaw_deg) / dt;
  }
  return out;
}

PoleState step_balance(const Vec2& base_velocity, const PoleState& pole, double dt,
                       const BalanceParams& params) {
  PoleState out = pole;
  const int substeps = std::max(1, static_cast<int>(std::lround(dt * params.substep_hz)));
  const double h = dt / substeps;
  const Vec2 accel = dt > 0.0 ? Vec2((base_velocity - pole.base_velocity) / dt) : Vec2(Vec2::Zero());
  const double g_l = params.gravity / pole.length;
  for (int axis = 0; axis < 2; ++axis) {
    double th = geom::deg2rad(pole.tilt_deg[axis]);
    double w = geom::deg2rad(pole.tilt_rate_deg[axis]);
    for (int k = 0; k < substeps; ++k) {
      const double alpha = g_l * std::sin(th) - accel[axis] / pole.length * std::cos(th);
      w += alpha * h;
      th += w * h;
    }
    out.tilt_deg[axis] = geom::rad2deg(th);
    out.tilt_rate_deg[axis] = geom::rad2deg(w);
  }
  out.base_velocity = base_velocity;
  return out;
}

double pendulum_energy(double length, double tilt_rad, double rate_rad, double gravity) {
  const double theta = geom::kPi - tilt_rad;
  return 0.5 * length * length * rate_rad * rate_rad - gravity * length * std::cos(theta);
}

}  // namespace tactile::dynamics
