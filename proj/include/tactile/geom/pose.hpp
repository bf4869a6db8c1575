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

#include <Eigen/Geometry>

namespace tactile::geom {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;

constexpr double kPi = 3.14159265358979323846;
inline constexpr double deg2rad(double d) { return d * (kPi / 180.0); }
inline constexpr double rad2deg(double r) { return r * (180.0 / kPi); }

// Rotation matrix for extrinsic XYZ Euler angles in degrees (R = Rz * Ry * Rx).
Mat3 euler_deg_to_matrix(const Vec3& rxyz_deg);

// Inverse of euler_deg_to_matrix, with Ry in [-90, 90].
Vec3 matrix_to_euler_deg(const Mat3& r);

// Rigid transform. Position in meters; orientation a unit quaternion.
struct Pose {
  Vec3 position = Vec3::Zero();
  Quat orientation = Quat::Identity();

  static Pose identity() { return {}; }
  static Pose from_euler_deg(const Vec3& position, const Vec3& rxyz_deg);

  Vec3 euler_deg() const { return matrix_to_euler_deg(rotation()); }

  // Entries within 1e-14 of 0 or +-1 are snapped, so quarter turns are exact.
  Mat3 rotation() const;

  Vec3 transform_point(const Vec3& p) const { return rotation() * p + position; }
  Vec3 inverse_transform_point(const Vec3& p) const {
    return rotation().transpose() * (p - position);
  }
};

// Velocity command. Linear in m/s, angular in deg/s.
struct Twist {
  Vec3 linear = Vec3::Zero();
  Vec3 angular = Vec3::Zero();
};

// a * b: applies b, then a.
Pose compose(const Pose& a, const Pose& b);
Pose inverse(const Pose& p);

// Pose expressed relative to a work frame, and back.
Pose to_workframe(const Pose& world_pose, const Pose& workframe);
Pose from_workframe(const Pose& relative, const Pose& workframe);

// Largest absolute difference in position (m) and in rotation matrix entries.
double pose_distance_inf(const Pose& a, const Pose& b);

// (x_mm, y_mm, z_mm, Rx_deg, Ry_deg, Rz_deg)
std::array<double, 6> to_mm_deg(const Pose& p);
Pose from_mm_deg(const std::array<double, 6>& v);

}  // namespace tactile::geom
