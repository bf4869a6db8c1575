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

#include <cmath>

#include "common.hpp"
#include "tactile/envs/tasks.hpp"

namespace tactile::envs {

using geom::Vec2;
using geom::Vec3;

namespace {
constexpr double kSurfaceExtent = 0.30;
constexpr int kSurfaceGrid = 64;
constexpr double kGoalTolerance = 0.010;

geom::Quat align_tip(const Vec3& normal) {
  return geom::Quat::FromTwoVectors(Vec3::UnitZ(), normal).normalized();
}
}  // namespace

SurfaceFollowEnv::SurfaceFollowEnv(EnvConfig cfg) : Env(std::move(cfg)) {}

void SurfaceFollowEnv::on_reset(util::Rng& rng) {
  noise::NoiseField field;
  field.seed = rng.next_u64();
  field.frequency = cfg_.surface_frequency;
  field.octaves = cfg_.surface_octaves;
  field.amplitude = cfg_.surface_amplitude;
  surface_ = std::make_unique<noise::Surface>(noise::generate_surface(field, kSurfaceExtent, kSurfaceGrid));
  const double theta = rng.uniform(0.0, 2.0 * geom::kPi);
  direction_ = Vec2(std::cos(theta), std::sin(theta));
  const double tp = cfg_.target_penetration;
  tcp_ = geom::Pose{Vec3(0, 0, surface_->height(0, 0) - tp), align_tip(surface_->normal(0, 0))};
  const Vec2 g = direction_ * cfg_.surface_goal_distance;
  goal_ = Vec3(g.x(), g.y(), surface_->height(g.x(), g.y()) - tp);
}

double SurfaceFollowEnv::depth_error() const {
  const Vec3& p = tcp_.position;
  return std::fabs(surface_->height(p.x(), p.y()) - p.z() - cfg_.target_penetration);
}

double SurfaceFollowEnv::cosine_error() const {
  const Vec3& p = tcp_.position;
  return 1.0 - (tcp_.rotation() * Vec3::UnitZ()).dot(surface_->normal(p.x(), p.y()));
}

void SurfaceFollowEnv::on_step(std::span<const double> action) {
  auto res = dynamics::apply_velocity_action(
      tcp_, detail::expand_action(action, cfg_.control.axes), cfg_.control);
  const Vec2 planar = direction_ * cfg_.control.max_linear;
  res.tcp.position.head<2>() += planar * cfg_.control.dt();
  res.twist.linear.head<2>() = planar;
  tcp_ = res.tcp;
  tcp_twist_ = res.twist;
}

void SurfaceFollowEnv::score(StepResult& r) const {
  const double depth = depth_error(), cosine = cosine_error();
  const double goal_dist = (tcp_.position - goal_).norm();
  r.reward = -(distance_scale() * depth + cosine);
  r.info.metrics["depth_error"] = depth;
  r.info.metrics["cosine_error"] = cosine;
  r.info.metrics["goal_distance"] = goal_dist;
  if (goal_dist < kGoalTolerance) {
    r.done = true;
    r.info.success = true;
    r.info.termination = "goal";
  }
}

std::vector<double> SurfaceFollowEnv::oracle_action() const {
  const double dt = cfg_.control.dt();
  const Vec2 next = tcp_.position.head<2>() + direction_ * cfg_.control.max_linear * dt;
  const double z_target = surface_->height(next.x(), next.y()) - cfg_.target_penetration;
  const double vz = (z_target - tcp_.position.z()) / (cfg_.control.max_linear * dt);

  const Vec3 axis = tcp_.rotation() * Vec3::UnitZ();
  const Vec3 n = surface_->normal(next.x(), next.y());
  const Vec3 c = axis.cross(n);
  const double angle = std::atan2(c.norm(), axis.dot(n));
  Vec3 w = Vec3::Zero();
  if (c.norm() > 1e-12) w = c.normalized() * geom::rad2deg(angle) / dt / cfg_.control.max_angular_deg;
  return detail::clamp_unit({vz, w.x(), w.y()});
}

std::vector<double> SurfaceFollowEnv::env_state() const {
  std::vector<double> s;
  const Vec3& p = tcp_.position;
  detail::append(s, p, kPositionScale);
  detail::append_euler(s, tcp_);
  detail::append(s, tcp_twist_.linear, cfg_.control.max_linear);
  detail::append(s, tcp_twist_.angular, cfg_.control.max_angular_deg);
  detail::append(s, goal_, kPositionScale);
  s.push_back(surface_->height(p.x(), p.y()) / kPositionScale);
  detail::append(s, surface_->normal(p.x(), p.y()), 1.0);
  return s;
}

std::vector<std::string> SurfaceFollowEnv::env_state_layout() const {
  return {"tcp_x",  "tcp_y",  "tcp_z",  "tcp_rx", "tcp_ry",   "tcp_rz", "tcp_vx",
          "tcp_vy", "tcp_vz", "tcp_wx", "tcp_wy", "tcp_wz",   "goal_x", "goal_y",
          "goal_z", "surface_z", "surface_nx", "surface_ny", "surface_nz"};
}

std::vector<geom::SdfShape> SurfaceFollowEnv::contact_scene() const { return {surface_->shape}; }

render::CameraSpec SurfaceFollowEnv::camera() const {
  render::CameraSpec cam;
  cam.pose = render::look_at(Vec3(-0.14, -0.14, 0.14), Vec3(0.0, 0.0, 0.0));
  return cam;
}

}  // namespace tactile::envs
