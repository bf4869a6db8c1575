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
constexpr double kTipPitchDeg = -90.0;  // local -z points along +x at zero yaw

Vec2 heading(double yaw_deg) { return detail::rotate2(Vec2::UnitX(), yaw_deg); }
}  // namespace

ObjectPushEnv::ObjectPushEnv(EnvConfig cfg) : Env(std::move(cfg)) {}

void ObjectPushEnv::set_tcp(const Vec2& xy, double yaw_deg) {
  yaw_deg_ = detail::wrap_deg(yaw_deg);
  tcp_ = geom::Pose::from_euler_deg(Vec3(xy.x(), xy.y(), cfg_.push_cube_half),
                                    Vec3(0.0, kTipPitchDeg, yaw_deg_));
}

Vec2 ObjectPushEnv::pusher_center() const {
  return tcp_.position.head<2>() - heading(yaw_deg_) * cfg_.sensor.radius;
}

geom::Pose ObjectPushEnv::object_pose() const {
  return geom::Pose::from_euler_deg(Vec3(box_.position.x(), box_.position.y(), box_.half_extents.z()),
                                    Vec3(0.0, 0.0, box_.yaw_deg));
}

void ObjectPushEnv::on_reset(util::Rng& rng) {
  const double a = cfg_.push_cube_half;
  box_ = {};
  box_.half_extents = Vec3(a, a, a);
  box_.position = Vec2(0.0, rng.uniform(-cfg_.push_init_offset, cfg_.push_init_offset));
  box_.yaw_deg = rng.uniform(-cfg_.push_init_yaw_deg, cfg_.push_init_yaw_deg);

  noise::NoiseField field;
  field.seed = rng.next_u64();
  field.octaves = 1;
  field.frequency = cfg_.push_trajectory_frequency;
  field.amplitude = cfg_.push_trajectory_amplitude;
  const auto traj = noise::generate_trajectory(field, cfg_.push_trajectory_length, cfg_.push_waypoints);
  goals_.assign(traj.begin() + 1, traj.end());
  goal_index_ = 0;

  // Start with the pusher disk just touching the rear face.
  const double rp = pusher_radius();
  Vec2 c(box_.position.x() - 4.0 * a, box_.position.y());
  for (int i = 0; i < 64; ++i) {
    const double s = dynamics::box_sdf_2d(box_, c) - rp;
    if (std::fabs(s) < 1e-10) break;
    c.x() += s;
  }
  set_tcp(c + Vec2::UnitX() * cfg_.sensor.radius, 0.0);
}

void ObjectPushEnv::advance_goals() {
  const int last = static_cast<int>(goals_.size()) - 1;
  while (goal_index_ < last) {
    const geom::Pose& g = goals_[goal_index_];
    const Vec2 d = box_.position - g.position.head<2>();
    const Vec2 h = heading(g.euler_deg().z());
    if (d.norm() < cfg_.push_goal_radius || d.dot(h) > 0.0) {
      ++goal_index_;
    } else {
      break;
    }
  }
}

void ObjectPushEnv::score(StepResult& r) const {
  const geom::Pose& g = goals_[goal_index_];
  const double dist = (box_.position - g.position.head<2>()).norm();
  const double yaw_err = 1.0 - std::cos(geom::deg2rad(box_.yaw_deg - g.euler_deg().z()));
  Vec2 n;
  dynamics::box_sdf_2d(box_, pusher_center(), &n);
  const double face_err = 1.0 - heading(yaw_deg_).dot(-n);
  r.reward = -(distance_scale() * dist + yaw_err + face_err);
  r.info.metrics["goal_distance"] = dist;
  r.info.metrics["goal_index"] = goal_index_;
  r.info.metrics["yaw_error"] = yaw_err;
  r.info.metrics["face_error"] = face_err;
  if (goal_index_ == static_cast<int>(goals_.size()) - 1 && dist < cfg_.push_goal_radius) {
    r.done = true;
    r.info.success = true;
    r.info.termination = "goal";
  }
}

void ObjectPushEnv::on_step(std::span<const double> action) {
  const double dt = cfg_.control.dt();
  const geom::Twist cmd =
      dynamics::action_to_twist(detail::expand_action(action, cfg_.control.axes), cfg_.control);
  const Vec2 fwd = heading(yaw_deg_);
  const Vec2 lateral(-fwd.y(), fwd.x());
  const Vec2 v = fwd * cfg_.control.max_linear + lateral * cmd.linear.y();
  const double yaw_rate = cmd.angular.z();

  const Vec2 before = pusher_center();
  set_tcp(tcp_.position.head<2>() + v * dt, yaw_deg_ + yaw_rate * dt);
  geom::Twist pusher;
  pusher.linear.head<2>() = (pusher_center() - before) / dt;
  dynamics::PushParams params;
  params.kappa = cfg_.push_kappa;
  box_ = dynamics::step_push(before, pusher_radius(), box_, pusher, dt, params);

  tcp_twist_.linear = Vec3(v.x(), v.y(), 0.0);
  tcp_twist_.angular = Vec3(0.0, 0.0, yaw_rate);
  advance_goals();
}

std::vector<double> ObjectPushEnv::oracle_action() const {
  const double dt = cfg_.control.dt();
  const Vec2 target = goals_[goal_index_].position.head<2>();
  const Vec2 u = (target - box_.position).normalized();
  const Vec2 desired = box_.position - u * (box_.half_extents.x() + pusher_radius());
  const Vec2 fwd = heading(yaw_deg_);
  const Vec2 lateral(-fwd.y(), fwd.x());
  const double ay = (desired - pusher_center()).dot(lateral) / (cfg_.control.max_linear * dt);
  const double yaw_err = detail::wrap_deg(geom::rad2deg(std::atan2(u.y(), u.x())) - yaw_deg_);
  const double arz = yaw_err / (cfg_.control.max_angular_deg * dt);
  return detail::clamp_unit({ay, arz});
}

std::vector<double> ObjectPushEnv::image_extras() const {
  std::vector<double> s;
  const geom::Pose& g = goals_[goal_index_];
  detail::append(s, tcp_.position, kPositionScale);
  detail::append(s, Vec3(0.0, kTipPitchDeg, yaw_deg_), 180.0);
  detail::append(s, g.position + Vec3(0, 0, cfg_.push_cube_half), kPositionScale);
  detail::append(s, Vec3(0.0, 0.0, g.euler_deg().z()), 180.0);
  return s;
}

std::vector<double> ObjectPushEnv::env_state() const {
  std::vector<double> s;
  detail::append(s, tcp_.position, kPositionScale);
  detail::append(s, Vec3(0.0, kTipPitchDeg, yaw_deg_), 180.0);
  detail::append(s, tcp_twist_.linear, cfg_.control.max_linear);
  detail::append(s, tcp_twist_.angular, cfg_.control.max_angular_deg);
  detail::append(s, object_pose().position, kPositionScale);
  detail::append(s, Vec3(0.0, 0.0, box_.yaw_deg), 180.0);
  detail::append(s, Vec3(box_.velocity.x(), box_.velocity.y(), 0.0), cfg_.control.max_linear);
  detail::append(s, Vec3(0.0, 0.0, box_.yaw_rate_deg), cfg_.control.max_angular_deg);
  const auto extras = image_extras();
  s.insert(s.end(), extras.begin() + 6, extras.end());
  return s;
}

std::vector<std::string> ObjectPushEnv::env_state_layout() const {
  return {"tcp_x",  "tcp_y",  "tcp_z",  "tcp_rx", "tcp_ry", "tcp_rz", "tcp_vx", "tcp_vy",
          "tcp_vz", "tcp_wx", "tcp_wy", "tcp_wz", "obj_x",  "obj_y",  "obj_z",  "obj_rx",
          "obj_ry", "obj_rz", "obj_vx", "obj_vy", "obj_vz", "obj_wx", "obj_wy", "obj_wz",
          "goal_x", "goal_y", "goal_z", "goal_rx", "goal_ry", "goal_rz"};
}

std::vector<geom::SdfShape> ObjectPushEnv::contact_scene() const {
  geom::SdfShape cube = geom::SdfShape::box(box_.half_extents, object_pose());
  cube.albedo = Vec3(0.9, 0.7, 0.2);
  return {cube};
}

std::vector<geom::SdfShape> ObjectPushEnv::visual_scene() const {
  auto scene = Env::visual_scene();
  scene.push_back(geom::SdfShape::plane());
  return scene;
}

render::CameraSpec ObjectPushEnv::camera() const {
  render::CameraSpec cam;
  const Vec3 c = object_pose().position;
  cam.pose = render::look_at(c + Vec3(-0.12, -0.10, 0.14), Vec3(c.x(), c.y(), 0.0));
  return cam;
}

}  // namespace tactile::envs
