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
constexpr double kStimulusHeight = 0.010;
constexpr double kPursuitAhead = 0.003;
constexpr double kGoalTolerance = 0.010;
}  // namespace

EdgeFollowEnv::EdgeFollowEnv(EnvConfig cfg) : Env(std::move(cfg)) {}

Vec2 EdgeFollowEnv::to_world2(const Vec2& local) const { return detail::rotate2(local, angle_deg_); }
Vec2 EdgeFollowEnv::to_local2(const Vec2& world) const { return detail::rotate2(world, -angle_deg_); }

void EdgeFollowEnv::on_reset(util::Rng& rng) {
  angle_deg_ = rng.uniform(0.0, 360.0);
  embed_ = rng.uniform(cfg_.embed_min, cfg_.embed_max);
  Vec2 start;
  if (cfg_.edge_shape == EdgeShape::kStraight) {
    const double d = cfg_.edge_goal_distance;
    path_ = std::make_unique<Polyline>(std::vector<Vec2>{{-d, 0.0}, {d, 0.0}}, false);
    start = Vec2::Zero();
  } else {
    const double a = cfg_.edge_square_half;
    path_ = std::make_unique<Polyline>(
        std::vector<Vec2>{{0.0, -a}, {a, -a}, {a, a}, {-a, a}, {-a, -a}}, true);
    start = Vec2(0.0, -a);
  }
  progress_ = path_->project(start);
  const Vec2 w = to_world2(start);
  tcp_ = geom::Pose{Vec3(w.x(), w.y(), -embed_), geom::Quat::Identity()};
}

double EdgeFollowEnv::goal_arclength() const {
  if (!path_->closed()) return path_->length();
  return std::fmin(progress_ + cfg_.edge_lookahead, path_->length());
}

Vec3 EdgeFollowEnv::goal() const {
  const Vec2 g = to_world2(path_->point(goal_arclength()));
  return Vec3(g.x(), g.y(), -embed_);
}

double EdgeFollowEnv::edge_distance() const {
  const Vec2 p = to_local2(tcp_.position.head<2>());
  return path_->closed() ? path_->distance(p) : std::fabs(p.y());
}

std::vector<Vec2> EdgeFollowEnv::outline_world(int samples_per_side) const {
  std::vector<Vec2> out;
  const auto& pts = path_->points();
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (int k = 0; k < samples_per_side; ++k)
      out.push_back(to_world2(pts[i - 1] + (pts[i] - pts[i - 1]) * (double(k) / samples_per_side)));
  out.push_back(to_world2(pts.back()));
  return out;
}

void EdgeFollowEnv::score(StepResult& r) const {
  const double goal_dist = (tcp_.position - goal()).norm();
  const double edge_dist = edge_distance();
  r.reward = -distance_scale() * (goal_dist + edge_dist);
  r.info.metrics["goal_distance"] = goal_dist;
  r.info.metrics["edge_distance"] = edge_dist;
  const bool final_goal = goal_arclength() >= path_->length();
  if (final_goal && goal_dist < kGoalTolerance) {
    r.done = true;
    r.info.success = true;
    r.info.termination = "goal";
  }
}

void EdgeFollowEnv::on_step(std::span<const double> action) {
  const auto res = dynamics::apply_velocity_action(
      tcp_, detail::expand_action(action, cfg_.control.axes), cfg_.control);
  tcp_ = res.tcp;
  tcp_twist_ = res.twist;
  on_tcp_set();
}

void EdgeFollowEnv::on_tcp_set() {
  const double s = path_->project(to_local2(tcp_.position.head<2>()));
  if (path_->closed()) {
    const double len = path_->length();
    progress_ += std::remainder(s - std::fmod(progress_, len), len);
  } else {
    progress_ = s;
  }
}

std::vector<double> EdgeFollowEnv::oracle_action() const {
  const double target_s = std::fmin(progress_ + kPursuitAhead, goal_arclength());
  const Vec2 target = to_world2(path_->point(target_s));
  Vec2 v = (target - tcp_.position.head<2>()) / (cfg_.control.max_linear * cfg_.control.dt());
  if (v.norm() > 1.0) v.normalize();
  return {v.x(), v.y()};
}

std::vector<double> EdgeFollowEnv::env_state() const {
  std::vector<double> s;
  detail::append(s, tcp_.position, kPositionScale);
  detail::append(s, tcp_twist_.linear, cfg_.control.max_linear);
  detail::append(s, goal(), kPositionScale);
  s.push_back(std::cos(geom::deg2rad(angle_deg_)));
  s.push_back(std::sin(geom::deg2rad(angle_deg_)));
  return s;
}

std::vector<std::string> EdgeFollowEnv::env_state_layout() const {
  return {"tcp_x", "tcp_y", "tcp_z", "tcp_vx", "tcp_vy", "tcp_vz",
          "goal_x", "goal_y", "goal_z", "edge_cos", "edge_sin"};
}

std::vector<geom::SdfShape> EdgeFollowEnv::contact_scene() const {
  const geom::Pose rot = geom::Pose::from_euler_deg(Vec3::Zero(), Vec3(0, 0, angle_deg_));
  if (cfg_.edge_shape == EdgeShape::kStraight) return {geom::SdfShape::edge(kStimulusHeight, rot)};
  const double a = cfg_.edge_square_half;
  geom::Pose p = rot;
  p.position = Vec3(0, 0, -kStimulusHeight / 2);
  return {geom::SdfShape::box(Vec3(a, a, kStimulusHeight / 2), p)};
}

render::CameraSpec EdgeFollowEnv::camera() const {
  render::CameraSpec cam;
  cam.pose = render::look_at(Vec3(-0.09, -0.09, 0.11), Vec3(0.0, 0.0, -0.005));
  return cam;
}

}  // namespace tactile::envs
