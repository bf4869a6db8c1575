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

#include "tactile/render/tactile.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "tactile/simd/kernels.hpp"
#include "tactile/util/errors.hpp"
#include "tactile/util/parallel.hpp"

namespace tactile::render {
namespace {

using geom::Vec3;

double pixel_x(const SensorSpec& s, int j) { return (j + 0.5 - 0.5 * s.resolution) * s.pixel_size(); }
double pixel_y(const SensorSpec& s, int i) { return (0.5 * s.resolution - i - 0.5) * s.pixel_size(); }

using SpecKey = std::tuple<int, double, int, int>;
SpecKey key_of(const SensorSpec& s) {
  return {static_cast<int>(s.tip), s.radius, s.resolution, s.border_width};
}

struct Cached {
  std::shared_ptr<const DepthImage> reference;
  std::shared_ptr<const SensorMasks> masks;
};

Cached build(const SensorSpec& s) {
  const int n = s.resolution;
  auto ref = std::make_shared<DepthImage>(n, n, 1, static_cast<float>(s.far_plane()));
  auto masks = std::make_shared<SensorMasks>();
  masks->inside.assign(static_cast<std::size_t>(n) * n, 0);
  masks->border.assign(static_cast<std::size_t>(n) * n, 0);
  const double r = s.radius;
  const double inner = r - s.border_width * s.pixel_size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double rho = std::hypot(pixel_x(s, j), pixel_y(s, i));
      if (rho >= r) continue;
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      ref->data[k] = static_cast<float>(s.tip == TipKind::kFlat ? r : std::sqrt(r * r - rho * rho));
      if (rho < inner) {
        masks->inside[k] = 1;
      } else {
        masks->border[k] = 1;
      }
    }
  }
  return {ref, masks};
}

const Cached& cached(const SensorSpec& s) {
  static std::mutex mu;
  static std::map<SpecKey, Cached> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key_of(s));
  if (it == cache.end()) it = cache.emplace(key_of(s), build(s)).first;
  return it->second;
}

// Rays for one row. limit[j] < 0 skips the pixel (leaves the far plane).
void trace_row(std::span<const geom::SdfShape> scene, const geom::Pose& pose,
               const SensorSpec& s, int i, const float* limit, float* out) {
  const geom::Mat3 rot = pose.rotation();
  const Vec3 dir = rot * Vec3(0.0, 0.0, -1.0);
  const double far = s.far_plane();
  for (int j = 0; j < s.resolution; ++j) {
    out[j] = static_cast<float>(far);
    if (limit != nullptr && limit[j] < 0.0f) continue;
    const double max_dist = limit != nullptr ? limit[j] : far;
    const Vec3 origin = rot * Vec3(pixel_x(s, j), pixel_y(s, i), s.radius) + pose.position;
    if (const auto t = geom::raycast(scene, origin, dir, max_dist)) {
      out[j] = static_cast<float>(std::min(*t, far));
    }
  }
}

}  // namespace

void SensorSpec::validate() const {
  if (!(radius > 0.0)) throw ConfigError("sensor: radius must be > 0");
  if (resolution < 8) throw ConfigError("sensor: resolution must be >= 8");
  if (!(max_penetration > 0.0)) throw ConfigError("sensor: max_penetration must be > 0");
  if (!(tolerance >= 0.0)) throw ConfigError("sensor: tolerance must be >= 0");
  if (border_width < 0 || 2 * border_width >= resolution)
    throw ConfigError("sensor: bad border width");
}

std::shared_ptr<const DepthImage> reference_depth(const SensorSpec& spec) {
  spec.validate();
  return cached(spec).reference;
}

std::shared_ptr<const SensorMasks> sensor_masks(const SensorSpec& spec) {
  spec.validate();
  return cached(spec).masks;
}

DepthImage capture_depth(std::span<const geom::SdfShape> scene, const geom::Pose& sensor_pose,
                         const SensorSpec& spec, int threads) {
  spec.validate();
  const int n = spec.resolution;
  DepthImage out(n, n);
  util::parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    trace_row(scene, sensor_pose, spec, static_cast<int>(i), nullptr,
              out.data.data() + i * static_cast<std::size_t>(n));
  });
  return out;
}

DepthImage penetration_map(const DepthImage& current, const DepthImage& reference) {
  if (!current.same_shape(reference))
    throw std::invalid_argument("penetration_map: resolution mismatch");
  DepthImage out(current.width, current.height, current.channels);
  simd::kernels().penetration(reference.data.data(), current.data.data(), out.data.data(),
                              out.data.size());
  return out;
}

TactileImage to_tactile_image(const DepthImage& penetration, const SensorSpec& spec) {
  const auto masks = sensor_masks(spec);
  if (penetration.width != spec.resolution || penetration.height != spec.resolution ||
      penetration.channels != 1)
    throw std::invalid_argument("to_tactile_image: resolution mismatch");
  TactileImage out(spec.resolution, spec.resolution);
  simd::kernels().quantize(penetration.data.data(), out.data.size(),
                           static_cast<float>(1.0 / spec.max_penetration),
                           static_cast<float>(spec.tolerance), out.data.data());
  for (std::size_t k = 0; k < out.data.size(); ++k) {
    if (masks->border[k]) {
      out.data[k] = spec.border_intensity;
    } else if (!masks->inside[k]) {
      out.data[k] = 0;
    }
  }
  return out;
}

double intensity_to_depth(std::uint8_t value, const SensorSpec& spec) {
  return static_cast<double>(value) / 255.0 * spec.max_penetration;
}

TactileSensor::TactileSensor(const SensorSpec& spec)
    : spec_(spec), reference_(reference_depth(spec)), masks_(sensor_masks(spec)) {}

TactileImage TactileSensor::render(std::span<const geom::SdfShape> scene,
                                   const geom::Pose& sensor_pose, int threads) const {
  return render(scene, sensor_pose, nullptr, threads);
}

TactileImage TactileSensor::render(std::span<const geom::SdfShape> scene,
                                   const geom::Pose& sensor_pose, DepthImage* penetration,
                                   int threads) const {
  const int n = spec_.resolution;
  const std::size_t total = static_cast<std::size_t>(n) * n;
  // Ray limits: reference depth plus a margin inside the tip, -1 outside.
  thread_local std::vector<float> limit;
  limit.assign(total, -1.0f);
  for (std::size_t k = 0; k < total; ++k) {
    if (masks_->inside[k]) limit[k] = reference_->data[k] + 1e-5f;
  }
  DepthImage current(n, n);
  const float* limits = limit.data();
  util::parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    trace_row(scene, sensor_pose, spec_, static_cast<int>(i), limits + i * n,
              current.data.data() + i * static_cast<std::size_t>(n));
  });
  DepthImage pen = penetration_map(current, *reference_);
  TactileImage out = to_tactile_image(pen, spec_);
  if (penetration != nullptr) *penetration = std::move(pen);
  return out;
}

}  // namespace tactile::render
