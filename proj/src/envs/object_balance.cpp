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

using Mat3x3 = Eigen::Matrix3d;
using Vec3x1 = Eigen::Vector3d;

// Linearizes one axis of the pole around upright, with state (tilt rad, rate rad/s,
// previous base velocity) and the commanded base velocity as input, then solves the
// discrete Riccati equation by fixed-point iteration.
Eigen::Matrix<double, 1, 3> balance_gain(double length, double dt) {
  auto f = [&](const Vec3x1& x, double u) {
    dynamics::PoleState p;
    p.length = length;
    p.tilt_deg.x() = geom::rad2deg(x(0));
    p.tilt_rate_deg.x() = geom::rad2deg(x(1));
    p.base_velocity.x() = x(2);
    const auto q = dynamics::step_balance(Vec2(u, 0.0), p, dt);
    return Vec3x1(geom::deg2rad(q.tilt_deg.x()), geom::deg2rad(q.tilt_rate_deg.x()), u);
  };
  constexpr double eps = 1e-7;
  Mat3x3 a;
  for (int j = 0; j < 3; ++j) a.col(j) = f(Vec3x1::Unit(j) * eps, 0.0) / eps;
  const Vec3x1 b = f(Vec3x1::Zero(), eps) / eps;
  const Mat3x3 q = Vec3x1(1.0, 0.01, 0.05).asDiagonal();
  const double r = 0.5;
  Mat3x3 p = q;
  for (int it = 0; it < 5000; ++it) {
    const double s = r + b.dot(p * b);
    const Eigen::RowVector3d k = (b.transpose() * p * a) / s;
    p = q + a.transpose() * p * a - a.transpose() * p * b * k;
  }
  return (b.transpose() * p * a) / (r + b.dot(p * b));
}

}  // namespace

ObjectBalanceEnv::ObjectBalanceEnv(EnvConfig cfg) : Env(std::move(cfg)) {
  gain_ = balance_gain(cfg_.pole_length, cfg_.control.dt());
}

void ObjectBalanceEnv::on_reset(util::Rng& rng) {
  tcp_ = geom::Pose::from_euler_deg(Vec3::Zero(), Vec3(180.0, 0.0, 0.0));
  pole_ = {};
  pole_.length = cfg_.pole_length;
  const double p = cfg_.perturbation_deg_s;
  pole_.tilt_rate_deg = Vec2(rng.uniform(-p, p), rng.uniform(-p, p));
}

double ObjectBalanceEnv::tilt_magnitude_deg() const {
  const Vec3 axis = object_pose().rotation() * Vec3::UnitZ();
  return geom::rad2deg(std::acos(std::clamp(axis.z(), -1.0, 1.0)));
}

geom::Pose ObjectBalanceEnv::object_pose() const {
  const double tx = geom::deg2rad(pole_.tilt_deg.x()), ty = geom::deg2rad(pole_.tilt_deg.y());
  const Vec3 axis = Vec3(std::sin(tx) * std::cos(ty), std::sin(ty) * std::cos(tx),
                         std::cos(tx) * std::cos(ty)).normalized();
  const Vec3 center = tcp_.position + axis * (0.5 * cfg_.pole_length - cfg_.pole_embed);
  return {center, geom::Quat::FromTwoVectors(Vec3::UnitZ(), axis).normalized()};
}

void ObjectBalanceEnv::on_step(std::span<const double> action) {
  const auto res = dynamics::apply_velocity_action(
      tcp_, detail::expand_action(action, cfg_.control.axes), cfg_.control);
  tcp_ = res.tcp;
  tcp_twist_ = res.twist;
  pole_ = dynamics::step_balance(res.twist.linear.head<2>(), pole_, cfg_.control.dt());
}

void ObjectBalanceEnv::score(StepResult& r) const {
  const double tilt = tilt_magnitude_deg();
  r.reward = 1.0;
  r.info.metrics["tilt_deg"] = tilt;
  if (!(tilt <= cfg_.tilt_limit_deg)) {
    r.done = true;
    r.info.termination = "tilt";
  }
}

std::vector<double> ObjectBalanceEnv::oracle_action() const {
  std::vector<double> a(2);
  for (int i = 0; i < 2; ++i) {
    const Eigen::Vector3d x(geom::deg2rad(pole_.tilt_deg[i]), geom::deg2rad(pole_.tilt_rate_deg[i]),
                            pole_.base_velocity[i]);
    a[i] = -gain_.dot(x) / cfg_.control.max_linear;
  }
  return detail::clamp_unit(a);
}

std::vector<double> ObjectBalanceEnv::env_state() const {
  std::vector<double> s;
  const geom::Pose obj = object_pose();
  detail::append(s, tcp_.position, kPositionScale);
  detail::append_euler(s, tcp_);
  detail::append(s, tcp_twist_.linear, cfg_.control.max_linear);
  detail::append(s, tcp_twist_.angular, cfg_.control.max_angular_deg);
  detail::append(s, obj.position, kPositionScale);
  detail::append(s, Vec3(pole_.tilt_deg.x(), pole_.tilt_deg.y(), 0.0), 180.0);
  const Vec2 top_rate = pole_.base_velocity + geom::deg2rad(1.0) * pole_.tilt_rate_deg * 0.5 * cfg_.pole_length;
  detail::append(s, Vec3(top_rate.x(), top_rate.y(), 0.0), cfg_.control.max_linear);
  detail::append(s, Vec3(pole_.tilt_rate_deg.x(), pole_.tilt_rate_deg.y(), 0.0), 180.0);
  return s;
}

std::vector<std::string> ObjectBalanceEnv::env_state_layout() const {
  return {"tcp_x",  "tcp_y",  "tcp_z",  "tcp_rx", "tcp_ry", "tcp_rz", "tcp_vx", "tcp_vy",
          "tcp_vz", "tcp_wx", "tcp_wy", "tcp_wz", "obj_x",  "obj_y",  "obj_z",  "obj_rx",
          "obj_ry", "obj_rz", "obj_vx", "obj_vy", "obj_vz", "obj_wx", "obj_wy", "obj_wz"};
}

std::vector<geom::SdfShape> ObjectBalanceEnv::contact_scene() const {
  const double w = cfg_.pole_half_width;
  geom::SdfShape pole = geom::SdfShape::box(Vec3(w, w, 0.5 * cfg_.pole_length), object_pose());
  pole.albedo = Vec3(0.3, 0.8, 0.3);
  return {pole};
}

render::CameraSpec ObjectBalanceEnv::camera() const {
  render::CameraSpec cam;
  const Vec3 c = tcp_.position;
  cam.pose = render::look_at(c + Vec3(-0.20, -0.20, 0.10), c + Vec3(0, 0, 0.03));
  return cam;
}

}  // namespace tactile::envs
