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
#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "tactile/geom/pose.hpp"
#include "tactile/geom/sdf.hpp"
#include "tactile/render/image.hpp"
#include "tactile/render/tactile.hpp"
#include "tactile/util/config.hpp"

namespace tactile::data {

enum class DatasetTask { kEdge, kSurface, kProbe };
std::string to_string(DatasetTask t);
DatasetTask parse_dataset_task(const std::string& s);  // edge|surface|probe, ConfigError otherwise

// Sampling ranges in meters and degrees. Poses are sensor poses relative to
// the stimulus; z is the depth pressed past first contact.
struct CollectionSpec {
  DatasetTask task = DatasetTask::kEdge;
  int n_train = 5000;
  int n_val = 2000;
  render::SensorSpec sensor = default_sensor();

  // Edge: sensor yaw, signed offset across the edge, depth.
  double edge_rz_min = -179.0, edge_rz_max = 180.0;
  double edge_offset = 0.006;
  double edge_z_min = 0.0035, edge_z_max = 0.0055;
  double edge_height = 0.01;
  // Surface: tilt about x and y, depth into a plane.
  double surface_tilt = 15.0;
  double surface_z_min = 0.002, surface_z_max = 0.005;
  // Probe: sphere radii on a grid, centers uniform in a disk, fixed depth.
  double probe_r_min = 0.002, probe_r_max = 0.006, probe_r_step = 0.0005;
  double probe_disk_radius = 0.0075;
  double probe_depth = 0.0015;

  static render::SensorSpec default_sensor();
  void validate() const;  // throws ConfigError
  static CollectionSpec from_config(const util::Config& cfg);  // collect.* keys, mm/deg
  void to_config(util::Config& cfg) const;
  static std::vector<std::string> known_keys();
  // Label column names written after the pose columns.
  std::vector<std::string> label_names() const;
};

struct Sample {
  int id = 0;
  geom::Pose sensor_pose;              // sensor (TCP) pose in the stimulus frame
  std::array<double, 6> pose_mm_deg{};  // x, y, z (mm), rx, ry, rz (deg) as sampled
  std::vector<double> labels;
  double probe_radius = 0.0;  // probe task only
  geom::Vec2 probe_center = geom::Vec2::Zero();
};

enum class Split { kTrain, kVal };
const char* split_name(Split s);

// Independent draws per sample; sample i depends only on (seed, split, i).
Sample draw_sample(const CollectionSpec& spec, std::uint64_t seed, Split split, int index);
std::vector<geom::SdfShape> sample_scene(const CollectionSpec& spec, const Sample& s);
render::TactileImage render_sample(const CollectionSpec& spec, const Sample& s,
                                   const render::TactileSensor& sensor);

struct DatasetSummary {
  int n_train = 0;
  int n_val = 0;
  std::uint64_t content_hash = 0;  // over every image and label file, in order
  bool interrupted = false;
};

// Writes <dir>/{train,val}/images/NNNNN.png and <dir>/{train,val}/poses.csv.
// Rendering runs over `threads` workers; files are written in index order.
// Setting *stop ends collection after the current chunk, leaving valid
// (shorter) index files. Throws IoError when the directory cannot be written.
DatasetSummary collect_dataset(const CollectionSpec& spec, std::uint64_t seed, const std::string& dir,
                               int threads = 1, const std::atomic<bool>* stop = nullptr);

struct LoadedSplit {
  std::vector<render::ByteImage> images;
  std::vector<std::string> label_names;
  std::vector<std::vector<double>> labels;  // one row per image
};
LoadedSplit load_split(const std::string& dir, Split split);

}  // namespace tactile::data
