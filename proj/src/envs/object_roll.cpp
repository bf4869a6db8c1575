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
constexpr double kGoalTolerance = 0.001;
constexpr double kMinStartSeparation = 0.002;

Vec2 sample_disk(util::Rng& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform(0.0, 1.0));
  const double a = rng.uniform(0.0, 2.0 * geom::kPi);
  return {r * std::cos(a), r * std::sin(a)};
}
}  // namespace

ObjectRollEnv::ObjectRollEnv(EnvConfig cfg) : Env(std::move(cfg)) {}

void ObjectRollEnv::on_reset(util::Rng& rng) {
  ball_ = {};
  ball_.radius = 0.5 * rng.uniform(cfg_.ball_diameter_min, cfg_.ball_diameter_max);
  embed_ = rng.uniform(cfg_.roll_embed_min, cfg_.roll_embed_max);
  Vec2 start, goal;
  do {
    start = sample_disk(rng, cfg_.roll_start_radius);
    goal = sample_disk(rng, cfg_.roll_goal_radius);
  } while ((start - goal).norm() < kMinStartSeparation);
  tcp_ = geom::Pose{Vec3(0, 0, 2.0 * ball_.radius - embed_), geom::Quat::Identity()};
  ball_.position = Vec3(start.x(), start.y(), ball_.radius);
  ball_orientation_ = geom::Quat::Identity();
  goal_ = goal;
}

Vec2 ObjectRollEnv::ball_offset() const {
  return (tcp_.rotation().transpose() * (ball_.position - tcp_.position)).head<2>();
}

geom::Pose ObjectRollEnv::object_pose() const { return {ball_.position, ball_orientation_}; }

void ObjectRollEnv::on_step(std::span<const double> action) {
  const geom::Pose before = tcp_;
  const auto res = dynamics::apply_velocity_action(
      tcp_, detail::expand_action(action, cfg_.control.axes), cfg_.control);
  tcp_ = res.tcp;
  tcp_twist_ = res.twist;
  dynamics::BallParams params;
  params.tip_radius = cfg_.sensor.radius;
  const double dt = cfg_.control.dt();
  ball_ = dynamics::step_ball_roll(before, ball_, res.twist, dt, params);
  const Vec3 w = ball_.angular_velocity * dt;
  if (w.norm() > 0.0)
    ball_orientation_ =
        (geom::Quat(Eigen::AngleAxisd(w.norm(), w.normalized())) * ball_orientation_).normalized();
}

void ObjectRollEnv::score(StepResult& r) const {
  dynamics::BallParams params;
  params.tip_radius = cfg_.sensor.radius;
  const double d = goal_distance();
  r.reward = -distance_scale() * d;
  r.info.metrics["goal_distance"] = d;
  r.info.metrics["in_contact"] = dynamics::ball_in_contact(tcp_, ball_, params) ? 1.0 : 0.0;
  if (d < kGoalTolerance) {
    r.done = true;
    r.info.success = true;
    r.info.termination = "goal";
  }
}

std::vector<double> ObjectRollEnv::oracle_action() const {
  // The ball moves at half the tip speed, so relative to the tip it moves back at half speed.
  const Vec2 v = 2.0 * (ball_offset() - goal_) / cfg_.control.dt();
  Vec2 a = v / cfg_.control.max_linear;
  if (a.norm() > 1.0) a.normalize();
  return {a.x(), a.y()};
}

std::vector<double> ObjectRollEnv::image_extras() const {
  return {goal_.x() / kPositionScale, goal_.y() / kPositionScale, 0.0};
}

std::vector<double> ObjectRollEnv::env_state() const {
  std::vector<double> s;
  detail::append(s, tcp_.position, kPositionScale);
  detail::append_euler(s, tcp_);
  detail::append(s, tcp_twist_.linear, cfg_.control.max_linear);
  detail::append(s, tcp_twist_.angular, cfg_.control.max_angular_deg);
  detail::append(s, ball_.position, kPositionScale);
  detail::append_euler(s, object_pose());
  detail::append(s, ball_.velocity, cfg_.control.max_linear);
  detail::append(s, ball_.angular_velocity, cfg_.control.max_linear / ball_.radius);
  const auto extras = image_extras();
  s.insert(s.end(), extras.begin(), extras.end());
  s.push_back(ball_.radius / kBallRadiusScale);
  return s;
}

std::vector<std::string> ObjectRollEnv::env_state_layout() const {
  return {"tcp_x",  "tcp_y",  "tcp_z",  "tcp_rx", "tcp_ry", "tcp_rz", "tcp_vx", "tcp_vy",
          "tcp_vz", "tcp_wx", "tcp_wy", "tcp_wz", "obj_x",  "obj_y",  "obj_z",  "obj_rx",
          "obj_ry", "obj_rz", "obj_vx", "obj_vy", "obj_vz", "obj_wx", "obj_wy", "obj_wz",
          "goal_x", "goal_y", "goal_z", "obj_radius"};
}

std::vector<geom::SdfShape> ObjectRollEnv::contact_scene() const {
  geom::SdfShape ball = geom::SdfShape::sphere(ball_.radius, object_pose());
  ball.albedo = Vec3(0.9, 0.4, 0.2);
  return {ball};
}

std::vector<geom::SdfShape> ObjectRollEnv::visual_scene() const {
  auto scene = Env::visual_scene();
  scene.push_back(geom::SdfShape::plane());
  return scene;
}

render::CameraSpec ObjectRollEnv::camera() const {
  render::CameraSpec cam;
  const Vec3 c = tcp_.position;
  cam.pose = render::look_at(c + Vec3(-0.05, -0.05, 0.04), Vec3(c.x(), c.y(), 0.0));
  return cam;
}

}  // namespace tactile::envs
