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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tactile/envs/tasks.hpp"

namespace tactile::envs {

using geom::Vec2;

Polyline::Polyline(std::vector<Vec2> points, bool closed) : pts_(std::move(points)), closed_(closed) {
  if (pts_.size() < 2) throw std::invalid_argument("polyline needs at least two points");
  if (closed_) pts_.push_back(pts_.front());
  cum_.assign(pts_.size(), 0.0);
  for (std::size_t i = 1; i < pts_.size(); ++i) cum_[i] = cum_[i - 1] + (pts_[i] - pts_[i - 1]).norm();
  length_ = cum_.back();
  if (!(length_ > 0.0)) throw std::invalid_argument("polyline has zero length");
}

Vec2 Polyline::point(double s) const {
  if (closed_) {
    s = std::fmod(s, length_);
    if (s < 0.0) s += length_;
  } else {
    s = std::clamp(s, 0.0, length_);
  }
  auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
  std::size_t i = static_cast<std::size_t>(it - cum_.begin());
  i = std::clamp<std::size_t>(i, 1, pts_.size() - 1);
  const double seg = cum_[i] - cum_[i - 1];
  const double t = seg > 0.0 ? (s - cum_[i - 1]) / seg : 0.0;
  return pts_[i - 1] + (pts_[i] - pts_[i - 1]) * t;
}

double Polyline::project(const Vec2& p) const {
  double best = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  for (std::size_t i = 1; i < pts_.size(); ++i) {
    const Vec2 a = pts_[i - 1], ab = pts_[i] - pts_[i - 1];
    const double len2 = ab.squaredNorm();
    const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    const double d = (a + ab * t - p).squaredNorm();
    if (d < best) {
      best = d;
      best_s = cum_[i - 1] + t * (cum_[i] - cum_[i - 1]);
    }
  }
  return best_s;
}

double Polyline::distance(const Vec2& p) const { return (point(project(p)) - p).norm(); }

}  // namespace tactile::envs
