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

#include <memory>
#include <vector>

#include "tactile/dynamics/objects.hpp"
#include "tactile/envs/env.hpp"
#include "tactile/noise/noise.hpp"

namespace tactile::envs {

// Open or closed 2-D polyline parameterized by arclength.
class Polyline {
 public:
  Polyline(std::vector<geom::Vec2> points, bool closed);
  double length() const { return length_; }
  bool closed() const { return closed_; }
  geom::Vec2 point(double s) const;  // wraps when closed, clamps otherwise
  double project(const geom::Vec2& p) const;  // arclength of the nearest point
  double distance(const geom::Vec2& p) const;
  const std::vector<geom::Vec2>& points() const { return pts_; }

 private:
  std::vector<geom::Vec2> pts_;  // closed polylines repeat the first point at the end
  std::vector<double> cum_;
  double length_ = 0.0;
  bool closed_;
};

// Slide along a raised edge (straight) or around a raised square.
class EdgeFollowEnv : public Env {
 public:
  explicit EdgeFollowEnv(EnvConfig cfg);
  int action_dim() const override { return 2; }
  std::vector<double> env_state() const override;
  std::vector<std::string> env_state_layout() const override;
  std::vector<double> oracle_action() const override;
  std::vector<geom::SdfShape> contact_scene() const override;
  render::CameraSpec camera() const override;

  geom::Vec3 goal() const;
  double edge_angle_deg() const { return angle_deg_; }
  double embed() const { return embed_; }
  // Planar distance from the TCP to the edge line or shape outline.
  double edge_distance() const;
  // World-frame outline of the stimulus edge.
  std::vector<geom::Vec2> outline_world(int samples_per_side = 16) const;

 protected:
  void on_reset(util::Rng& rng) override;
  void on_step(std::span<const double> action) override;
  void score(StepResult& result) const override;

 private:
  geom::Vec2 to_world2(const geom::Vec2& local) const;
  geom::Vec2 to_local2(const geom::Vec2& world) const;
  double goal_arclength() const;
  void on_tcp_set() override;

  double angle_deg_ = 0.0;
  double embed_ = 0.002;
  std::unique_ptr<Polyline> path_;  // edge frame
  double progress_ = 0.0;           // unwrapped arclength of the nearest outline point
};

// Keep the tip pressed normal to a procedurally generated surface.
class SurfaceFollowEnv : public Env {
 public:
  explicit SurfaceFollowEnv(EnvConfig cfg);
  int action_dim() const override { return 3; }
  std::vector<double> env_state() const override;
  std::vector<std::string> env_state_layout() const override;
  std::vector<double> oracle_action() const override;
  std::vector<geom::SdfShape> contact_scene() const override;
  render::CameraSpec camera() const override;

  geom::Vec3 goal() const { return goal_; }
  const noise::Surface& surface() const { return *surface_; }
  double depth_error() const;
  double cosine_error() const;

 protected:
  void on_reset(util::Rng& rng) override;
  void on_step(std::span<const double> action) override;
  void score(StepResult& result) const override;

 private:
  std::unique_ptr<noise::Surface> surface_;
  geom::Vec2 direction_ = geom::Vec2::UnitX();
  geom::Vec3 goal_ = geom::Vec3::Zero();
};

// Roll a small ball under a flat tip to a goal fixed in the tip frame.
class ObjectRollEnv : public Env {
 public:
  explicit ObjectRollEnv(EnvConfig cfg);
  int action_dim() const override { return 2; }
  std::vector<double> env_state() const override;
  std::vector<std::string> env_state_layout() const override;
  std::vector<double> oracle_action() const override;
  std::vector<geom::SdfShape> contact_scene() const override;
  render::CameraSpec camera() const override;
  geom::Pose object_pose() const override;
  std::vector<geom::SdfShape> visual_scene() const override;

  const dynamics::BallState& ball() const { return ball_; }
  geom::Vec2 goal_offset() const { return goal_; }
  // Planar ball position relative to the TCP.
  geom::Vec2 ball_offset() const;
  double goal_distance() const { return (ball_offset() - goal_).norm(); }
  void set_ball(const dynamics::BallState& ball) { ball_ = ball; }

 protected:
  std::vector<double> image_extras() const override;
  void on_reset(util::Rng& rng) override;
  void on_step(std::span<const double> action) override;
  void score(StepResult& result) const override;

 private:
  dynamics::BallState ball_;
  geom::Quat ball_orientation_ = geom::Quat::Identity();
  geom::Vec2 goal_ = geom::Vec2::Zero();
  double embed_ = 0.001;
};

// Push a cube along a sequence of goals with a side-facing tip.
class ObjectPushEnv : public Env {
 public:
  explicit ObjectPushEnv(EnvConfig cfg);
  int action_dim() const override { return 2; }
  std::vector<double> env_state() const override;
  std::vector<std::string> env_state_layout() const override;
  std::vector<double> oracle_action() const override;
  std::vector<geom::SdfShape> contact_scene() const override;
  render::CameraSpec camera() const override;
  geom::Pose object_pose() const override;
  std::vector<geom::SdfShape> visual_scene() const override;

  const dynamics::BoxState& box() const { return box_; }
  const std::vector<geom::Pose>& goals() const { return goals_; }
  int goal_index() const { return goal_index_; }
  void set_goal_index(int i) { goal_index_ = i; }
  double tcp_yaw_deg() const { return yaw_deg_; }
  geom::Vec2 pusher_center() const;
  double pusher_radius() const { return cfg_.sensor.radius - cfg_.push_contact_penetration; }
  void set_box(const dynamics::BoxState& box) { box_ = box; }
  // Places the TCP at a planar position with the tip facing along yaw.
  void set_tcp(const geom::Vec2& xy, double yaw_deg);

 protected:
  std::vector<double> image_extras() const override;
  void on_reset(util::Rng& rng) override;
  void on_step(std::span<const double> action) override;
  void score(StepResult& result) const override;

 private:
  void advance_goals();

  dynamics::BoxState box_;
  double yaw_deg_ = 0.0;
  std::vector<geom::Pose> goals_;
  int goal_index_ = 0;
};

// Balance a pole on an upward-facing tip by moving it in the plane.
class ObjectBalanceEnv : public Env {
 public:
  explicit ObjectBalanceEnv(EnvConfig cfg);
  int action_dim() const override { return 2; }
  std::vector<double> env_state() const override;
  std::vector<std::string> env_state_layout() const override;
  std::vector<double> oracle_action() const override;
  std::vector<geom::SdfShape> contact_scene() const override;
  render::CameraSpec camera() const override;
  geom::Pose object_pose() const override;

  const dynamics::PoleState& pole() const { return pole_; }
  void set_pole(const dynamics::PoleState& pole) { pole_ = pole; }
  double tilt_magnitude_deg() const;

 protected:
  void on_reset(util::Rng& rng) override;
  void on_step(std::span<const double> action) override;
  void score(StepResult& result) const override;

 private:
  dynamics::PoleState pole_;
  Eigen::Matrix<double, 1, 3> gain_;  // per-axis feedback on (tilt, rate, velocity)
};

}  // namespace tactile::envs
