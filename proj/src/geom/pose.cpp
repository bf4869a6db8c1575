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

#include "tactile/geom/pose.hpp"

#include <algorithm>
#include <cmath>

namespace tactile::geom {
namespace {

constexpr double kSnap = 1e-14;

double snap(double v) {
  if (std::abs(v) < kSnap) return 0.0;
  if (std::abs(v - 1.0) < kSnap) return 1.0;
  if (std::abs(v + 1.0) < kSnap) return -1.0;
  return v;
}

Quat normalized(const Quat& q) {
  Quat out = q.normalized();
  if (out.w() < 0.0) out.coeffs() *= -1.0;
  return out;
}

}  // namespace

Mat3 euler_deg_to_matrix(const Vec3& rxyz_deg) {
  const double cx = std::cos(deg2rad(rxyz_deg.x())), sx = std::sin(deg2rad(rxyz_deg.x()));
  const double cy = std::cos(deg2rad(rxyz_deg.y())), sy = std::sin(deg2rad(rxyz_deg.y()));
  const double cz = std::cos(deg2rad(rxyz_deg.z())), sz = std::sin(deg2rad(rxyz_deg.z()));
  Mat3 rx, ry, rz;
  rx << 1, 0, 0, 0, snap(cx), snap(-sx), 0, snap(sx), snap(cx);
  ry << snap(cy), 0, snap(sy), 0, 1, 0, snap(-sy), 0, snap(cy);
  rz << snap(cz), snap(-sz), 0, snap(sz), snap(cz), 0, 0, 0, 1;
  Mat3 r = rz * ry * rx;
  for (int i = 0; i < 9; ++i) r.data()[i] = snap(r.data()[i]);
  return r;
}

Vec3 matrix_to_euler_deg(const Mat3& r) {
  const double ry = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  double rx, rz;
  if (std::abs(r(2, 0)) < 1.0 - 1e-12) {
    rx = std::atan2(r(2, 1), r(2, 2));
    rz = std::atan2(r(1, 0), r(0, 0));
  } else {
    // Gimbal lock: fold all yaw into Rz.
    rx = 0.0;
    rz = std::atan2(-r(0, 1), r(1, 1));
  }
  return {rad2deg(rx), rad2deg(ry), rad2deg(rz)};
}

Pose Pose::from_euler_deg(const Vec3& position, const Vec3& rxyz_deg) {
  Pose p;
  p.position = position;
  p.orientation = normalized(Quat(euler_deg_to_matrix(rxyz_deg)));
  return p;
}

Mat3 Pose::rotation() const {
  Mat3 r = orientation.toRotationMatrix();
  for (int i = 0; i < 9; ++i) r.data()[i] = snap(r.data()[i]);
  return r;
}

Pose compose(const Pose& a, const Pose& b) {
  Pose out;
  out.position = a.rotation() * b.position + a.position;
  out.orientation = normalized(a.orientation * b.orientation);
  return out;
}

Pose inverse(const Pose& p) {
  Pose out;
  out.orientation = normalized(p.orientation.conjugate());
  out.position = -(out.rotation() * p.position);
  return out;
}

Pose to_workframe(const Pose& world_pose, const Pose& workframe) {
  return compose(inverse(workframe), world_pose);
}

Pose from_workframe(const Pose& relative, const Pose& workframe) {
  return compose(workframe, relative);
}

double pose_distance_inf(const Pose& a, const Pose& b) {
  const double dp = (a.position - b.position).cwiseAbs().maxCoeff();
  const double dr = (a.rotation() - b.rotation()).cwiseAbs().maxCoeff();
  return std::max(dp, dr);
}

std::array<double, 6> to_mm_deg(const Pose& p) {
  const Vec3 e = p.euler_deg();
  return {p.position.x() * 1e3, p.position.y() * 1e3, p.position.z() * 1e3, e.x(), e.y(), e.z()};
}

Pose from_mm_deg(const std::array<double, 6>& v) {
  return Pose::from_euler_deg(Vec3(v[0], v[1], v[2]) * 1e-3, Vec3(v[3], v[4], v[5]));
}

}  // namespace tactile::geom
