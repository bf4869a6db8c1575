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

#include "tactile/data/metrics.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace tactile::data {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

std::array<double, kWindow> gaussian_taps() {
  std::array<double, kWindow> w{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kWindow / 2;
    w[i] = std::exp(-d * d / (2.0 * kSigma * kSigma));
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

// Separable valid-mode filtering of one plane.
std::vector<double> filter_valid(const std::vector<double>& img, int w, int h,
                                 const std::array<double, kWindow>& taps) {
  const int ow = w - kWindow + 1, oh = h - kWindow + 1;
  std::vector<double> rows(static_cast<std::size_t>(h) * ow);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < ow; ++c) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) s += taps[k] * img[static_cast<std::size_t>(r) * w + c + k];
      rows[static_cast<std::size_t>(r) * ow + c] = s;
    }
  std::vector<double> out(static_cast<std::size_t>(oh) * ow);
  for (int r = 0; r < oh; ++r)
    for (int c = 0; c < ow; ++c) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) s += taps[k] * rows[static_cast<std::size_t>(r + k) * ow + c];
      out[static_cast<std::size_t>(r) * ow + c] = s;
    }
  return out;
}

}  // namespace

double ssim(const render::ByteImage& a, const render::ByteImage& b) {
  if (!a.same_shape(b))
    throw std::invalid_argument(fmt::format("ssim: shapes differ ({}x{}x{} vs {}x{}x{})", a.width,
                                            a.height, a.channels, b.width, b.height, b.channels));
  if (a.width < kWindow || a.height < kWindow)
    throw std::invalid_argument("ssim: images must be at least 11x11");
  static const auto taps = gaussian_taps();
  const std::size_t plane = a.plane_size();
  double total = 0.0;
  for (int c = 0; c < a.channels; ++c) {
    std::vector<double> x(plane), y(plane), xx(plane), yy(plane), xy(plane);
    for (std::size_t i = 0; i < plane; ++i) {
      x[i] = a.plane(c)[i];
      y[i] = b.plane(c)[i];
      xx[i] = x[i] * x[i];
      yy[i] = y[i] * y[i];
      xy[i] = x[i] * y[i];
    }
    const auto mx = filter_valid(x, a.width, a.height, taps);
    const auto my = filter_valid(y, a.width, a.height, taps);
    const auto exx = filter_valid(xx, a.width, a.height, taps);
    const auto eyy = filter_valid(yy, a.width, a.height, taps);
    const auto exy = filter_valid(xy, a.width, a.height, taps);
    // Every term is written so that swapping a and b gives identical rounding.
    double sum = 0.0;
    for (std::size_t i = 0; i < mx.size(); ++i) {
      const double sx = exx[i] - mx[i] * mx[i];
      const double sy = eyy[i] - my[i] * my[i];
      const double sxy = exy[i] - mx[i] * my[i];
      const double num = (2.0 * (mx[i] * my[i]) + kC1) * (2.0 * sxy + kC2);
      const double den = (mx[i] * mx[i] + my[i] * my[i] + kC1) * (sx + sy + kC2);
      sum += num / den;
    }
    total += sum / static_cast<double>(mx.size());
  }
  return total / a.channels;
}

double point_segment_distance(const geom::Vec3& p, const geom::Vec3& a, const geom::Vec3& b) {
  const geom::Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = (p - a).dot(ab) / len2;
  if (t <= 0.0) return (p - a).norm();
  if (t >= 1.0) return (p - b).norm();
  // Perpendicular distance; exactly zero for points on an axis-aligned segment.
  return ab.cross(p - a).norm() / std::sqrt(len2);
}

TrajectoryMetric trajectory_error(const std::vector<geom::Vec3>& path,
                                  const std::vector<geom::Vec3>& ground_truth, bool closed) {
  if (ground_truth.empty()) throw std::invalid_argument("trajectory_error: empty ground truth");
  if (path.empty()) throw std::invalid_argument("trajectory_error: empty path");
  const std::size_t n = ground_truth.size();
  const std::size_t segments = n == 1 ? 1 : (closed ? n : n - 1);
  TrajectoryMetric m;
  m.distances.reserve(path.size());
  for (const auto& p : path) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < segments; ++s)
      best = std::min(best, point_segment_distance(p, ground_truth[s], ground_truth[(s + 1) % n]));
    m.distances.push_back(best);
    m.mean += best;
    m.max = std::max(m.max, best);
  }
  m.mean /= static_cast<double>(path.size());
  return m;
}

std::vector<double> smooth_curve(const std::vector<double>& values, int window) {
  if (window < 1) throw std::invalid_argument("smooth_curve: window must be >= 1");
  // Summed per window rather than as a running total so each entry is
  // independent of earlier rounding.
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t n = std::min<std::size_t>(i + 1, static_cast<std::size_t>(window));
    double sum = 0.0;
    for (std::size_t k = i + 1 - n; k <= i; ++k) sum += values[k];
    out[i] = sum / static_cast<double>(n);
  }
  return out;
}

}  // namespace tactile::data
