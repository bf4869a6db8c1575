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
#include <span>
#include <vector>

#include "tactile/geom/pose.hpp"
#include "tactile/geom/sdf.hpp"
#include "tactile/render/image.hpp"

namespace tactile::render {

enum class TipKind { kHemisphere, kFlat };

// Sensor frame: the TCP sits at the tip apex (hemisphere) or face center
// (flat), the tip points along local -z and the orthographic camera plane is
// at local z = +radius. Pixel (i, j) looks along -z from
//   x = (j + 0.5 - N/2) * px,  y = (N/2 - i - 0.5) * px,  px = 2 * radius / N.
struct SensorSpec {
  TipKind tip = TipKind::kHemisphere;
  double radius = 0.020;
  int resolution = 128;
  double max_penetration = 0.005;
  double tolerance = 1e-4;  // on penetration / max_penetration
  int border_width = 2;
  std::uint8_t border_intensity = 255;

  double footprint() const { return 2.0 * radius; }
  double pixel_size() const { return footprint() / resolution; }
  double far_plane() const { return 2.0 * footprint(); }
  void validate() const;  // throws ConfigError
  bool operator==(const SensorSpec&) const = default;
};

// Per-pixel masks derived from the spec. Pixel centers at radial offset
// rho < radius - border_width * px are inside, those up to radius are border.
struct SensorMasks {
  std::vector<std::uint8_t> inside;
  std::vector<std::uint8_t> border;
};

// Cached per spec; the returned objects are immutable and shareable.
std::shared_ptr<const DepthImage> reference_depth(const SensorSpec& spec);
std::shared_ptr<const SensorMasks> sensor_masks(const SensorSpec& spec);

// One orthographic ray per pixel; misses report far_plane().
DepthImage capture_depth(std::span<const geom::SdfShape> scene, const geom::Pose& sensor_pose,
                         const SensorSpec& spec, int threads = 1);

// max(reference - current, 0). Throws std::invalid_argument on shape mismatch.
DepthImage penetration_map(const DepthImage& current, const DepthImage& reference);

TactileImage to_tactile_image(const DepthImage& penetration, const SensorSpec& spec);

// Penetration depth that quantizes back to the given intensity.
double intensity_to_depth(std::uint8_t value, const SensorSpec& spec);

// Renders tactile images for a fixed spec. Equivalent to
// to_tactile_image(penetration_map(capture_depth(...), reference)), but rays
// stop at the reference depth and pixels outside the tip are skipped.
class TactileSensor {
 public:
  explicit TactileSensor(const SensorSpec& spec = {});

  const SensorSpec& spec() const { return spec_; }
  const DepthImage& reference() const { return *reference_; }
  const SensorMasks& masks() const { return *masks_; }

  TactileImage render(std::span<const geom::SdfShape> scene, const geom::Pose& sensor_pose,
                      int threads = 1) const;
  // Same as render(), also returning the penetration map.
  TactileImage render(std::span<const geom::SdfShape> scene, const geom::Pose& sensor_pose,
                      DepthImage* penetration, int threads = 1) const;

 private:
  SensorSpec spec_;
  std::shared_ptr<const DepthImage> reference_;
  std::shared_ptr<const SensorMasks> masks_;
};

}  // namespace tactile::render
