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

#include "tactile/data/dataset.hpp"

#include <cmath>
#include <filesystem>

#include <fmt/format.h>

#include "tactile/util/csv.hpp"
#include "tactile/util/errors.hpp"
#include "tactile/util/hash.hpp"
#include "tactile/util/parallel.hpp"
#include "tactile/util/rng.hpp"

namespace tactile::data {

namespace fs = std::filesystem;

namespace {

constexpr double kMm = 1e-3;
constexpr int kChunk = 256;

const std::vector<std::string> kPoseColumns = {"x_mm", "y_mm", "z_mm", "rx_deg", "ry_deg", "rz_deg"};

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

std::string to_string(DatasetTask t) {
  switch (t) {
    case DatasetTask::kEdge: return "edge";
    case DatasetTask::kSurface: return "surface";
    case DatasetTask::kProbe: return "probe";
  }
  return "?";
}

DatasetTask parse_dataset_task(const std::string& s) {
  for (auto t : {DatasetTask::kEdge, DatasetTask::kSurface, DatasetTask::kProbe})
    if (to_string(t) == s) return t;
  throw ConfigError(fmt::format("unknown dataset task '{}' (expected edge, surface or probe)", s));
}

const char* split_name(Split s) { return s == Split::kTrain ? "train" : "val"; }

render::SensorSpec CollectionSpec::default_sensor() {
  render::SensorSpec s;
  s.resolution = 64;
  return s;
}

void CollectionSpec::validate() const {
  sensor.validate();
  require(n_train >= 0 && n_val >= 0, "collect: sample counts must be >= 0");
  require(edge_rz_min <= edge_rz_max, "collect: edge yaw range is empty");
  require(edge_offset >= 0.0, "collect.edge_offset_mm must be >= 0");
  require(0.0 <= edge_z_min && edge_z_min <= edge_z_max, "collect: edge depth range is invalid");
  require(edge_height > 0.0, "collect.edge_height_mm must be > 0");
  require(surface_tilt >= 0.0 && surface_tilt < 90.0, "collect.surface_tilt_deg must be in [0, 90)");
  require(0.0 <= surface_z_min && surface_z_min <= surface_z_max, "collect: surface depth range is invalid");
  require(0.0 < probe_r_min && probe_r_min <= probe_r_max && probe_r_step > 0.0,
          "collect: probe radius grid is invalid");
  require(probe_disk_radius >= 0.0 && probe_disk_radius < sensor.radius,
          "collect.probe_disk_radius_mm must be in [0, sensor radius)");
  require(probe_depth > 0.0, "collect.probe_depth_mm must be > 0");
}

CollectionSpec CollectionSpec::from_config(const util::Config& cfg) {
  CollectionSpec c;
  c.task = parse_dataset_task(cfg.get_string("collect.task", to_string(c.task)));
  c.n_train = static_cast<int>(cfg.get_int("collect.n_train", c.n_train));
  c.n_val = static_cast<int>(cfg.get_int("collect.n_val", c.n_val));
  c.sensor.resolution = static_cast<int>(cfg.get_int("collect.resolution", c.sensor.resolution));
  c.sensor.radius = cfg.get_double("sensor.radius_mm", c.sensor.radius / kMm) * kMm;
  c.sensor.max_penetration = cfg.get_double("sensor.max_penetration_mm", c.sensor.max_penetration / kMm) * kMm;
  const auto tip = cfg.get_string("sensor.tip", c.sensor.tip == render::TipKind::kFlat ? "flat" : "hemisphere");
  if (tip == "flat")
    c.sensor.tip = render::TipKind::kFlat;
  else if (tip == "hemisphere")
    c.sensor.tip = render::TipKind::kHemisphere;
  else
    throw ConfigError(fmt::format("sensor.tip: unknown tip '{}'", tip));
  auto mm = [&](const char* key, double& v) { v = cfg.get_double(key, v / kMm) * kMm; };
  c.edge_rz_min = cfg.get_double("collect.edge_rz_min_deg", c.edge_rz_min);
  c.edge_rz_max = cfg.get_double("collect.edge_rz_max_deg", c.edge_rz_max);
  mm("collect.edge_offset_mm", c.edge_offset);
  mm("collect.edge_z_min_mm", c.edge_z_min);
  mm("collect.edge_z_max_mm", c.edge_z_max);
  mm("collect.edge_height_mm", c.edge_height);
  c.surface_tilt = cfg.get_double("collect.surface_tilt_deg", c.surface_tilt);
  mm("collect.surface_z_min_mm", c.surface_z_min);
  mm("collect.surface_z_max_mm", c.surface_z_max);
  mm("collect.probe_r_min_mm", c.probe_r_min);
  mm("collect.probe_r_max_mm", c.probe_r_max);
  mm("collect.probe_r_step_mm", c.probe_r_step);
  mm("collect.probe_disk_radius_mm", c.probe_disk_radius);
  mm("collect.probe_depth_mm", c.probe_depth);
  c.validate();
  return c;
}

void CollectionSpec::to_config(util::Config& cfg) const {
  auto num = [](double v) { return fmt::format("{}", v); };
  cfg.set("collect.task", to_string(task));
  cfg.set("collect.n_train", std::to_string(n_train));
  cfg.set("collect.n_val", std::to_string(n_val));
  cfg.set("collect.resolution", std::to_string(sensor.resolution));
  cfg.set("sensor.radius_mm", num(sensor.radius / kMm));
  cfg.set("sensor.max_penetration_mm", num(sensor.max_penetration / kMm));
  cfg.set("sensor.tip", sensor.tip == render::TipKind::kFlat ? "flat" : "hemisphere");
  cfg.set("collect.edge_rz_min_deg", num(edge_rz_min));
  cfg.set("collect.edge_rz_max_deg", num(edge_rz_max));
  cfg.set("collect.edge_offset_mm", num(edge_offset / kMm));
  cfg.set("collect.edge_z_min_mm", num(edge_z_min / kMm));
  cfg.set("collect.edge_z_max_mm", num(edge_z_max / kMm));
  cfg.set("collect.edge_height_mm", num(edge_height / kMm));
  cfg.set("collect.surface_tilt_deg", num(surface_tilt));
  cfg.set("collect.surface_z_min_mm", num(surface_z_min / kMm));
  cfg.set("collect.surface_z_max_mm", num(surface_z_max / kMm));
  cfg.set("collect.probe_r_min_mm", num(probe_r_min / kMm));
  cfg.set("collect.probe_r_max_mm", num(probe_r_max / kMm));
  cfg.set("collect.probe_r_step_mm", num(probe_r_step / kMm));
  cfg.set("collect.probe_disk_radius_mm", num(probe_disk_radius / kMm));
  cfg.set("collect.probe_depth_mm", num(probe_depth / kMm));
}

std::vector<std::string> CollectionSpec::known_keys() {
  return {"collect.task",           "collect.n_train",          "collect.n_val",
          "collect.resolution",     "sensor.radius_mm",         "sensor.max_penetration_mm",
          "sensor.tip",             "collect.edge_rz_min_deg",  "collect.edge_rz_max_deg",
          "collect.edge_offset_mm", "collect.edge_z_min_mm",    "collect.edge_z_max_mm",
          "collect.edge_height_mm", "collect.surface_tilt_deg", "collect.surface_z_min_mm",
          "collect.surface_z_max_mm", "collect.probe_r_min_mm", "collect.probe_r_max_mm",
          "collect.probe_r_step_mm", "collect.probe_disk_radius_mm", "collect.probe_depth_mm"};
}

std::vector<std::string> CollectionSpec::label_names() const {
  switch (task) {
    case DatasetTask::kEdge: return {"r_mm", "theta_rad"};
    case DatasetTask::kSurface: return {"depth_mm", "rx_deg", "ry_deg"};
    case DatasetTask::kProbe: return {"x_mm", "y_mm", "radius_mm"};
  }
  return {};
}

Sample draw_sample(const CollectionSpec& spec, std::uint64_t seed, Split split, int index) {
  util::Rng rng(util::mix_seed(util::mix_seed(seed, split == Split::kTrain ? 1 : 2),
                               static_cast<std::uint64_t>(index)));
  Sample s;
  s.id = index;
  auto& p = s.pose_mm_deg;
  switch (spec.task) {
    case DatasetTask::kEdge: {
      const double rz = rng.uniform(spec.edge_rz_min, spec.edge_rz_max);
      const double y = rng.uniform(-spec.edge_offset, spec.edge_offset);
      const double z = rng.uniform(spec.edge_z_min, spec.edge_z_max);
      p = {0.0, y / kMm, z / kMm, 0.0, 0.0, rz};
      s.sensor_pose = geom::Pose::from_euler_deg(geom::Vec3(0.0, y, -z), geom::Vec3(0.0, 0.0, rz));
      s.labels = {y / kMm, geom::deg2rad(rz)};
      break;
    }
    case DatasetTask::kSurface: {
      const double rx = rng.uniform(-spec.surface_tilt, spec.surface_tilt);
      const double ry = rng.uniform(-spec.surface_tilt, spec.surface_tilt);
      const double z = rng.uniform(spec.surface_z_min, spec.surface_z_max);
      p = {0.0, 0.0, z / kMm, rx, ry, 0.0};
      s.sensor_pose = geom::Pose::from_euler_deg(geom::Vec3(0.0, 0.0, -z), geom::Vec3(rx, ry, 0.0));
      s.labels = {z / kMm, rx, ry};
      break;
    }
    case DatasetTask::kProbe: {
      const int steps = static_cast<int>(std::floor((spec.probe_r_max - spec.probe_r_min) / spec.probe_r_step + 1e-9));
      s.probe_radius = spec.probe_r_min + spec.probe_r_step * rng.uniform_int(0, steps);
      const double rho = spec.probe_disk_radius * std::sqrt(rng.uniform(0.0, 1.0));
      const double phi = rng.uniform(-M_PI, M_PI);
      s.probe_center = geom::Vec2(rho * std::cos(phi), rho * std::sin(phi));
      p = {s.probe_center.x() / kMm, s.probe_center.y() / kMm, spec.probe_depth / kMm, 0.0, 0.0, 0.0};
      s.sensor_pose = geom::Pose::identity();
      s.labels = {p[0], p[1], s.probe_radius / kMm};
      break;
    }
  }
  return s;
}

std::vector<geom::SdfShape> sample_scene(const CollectionSpec& spec, const Sample& s) {
  switch (spec.task) {
    case DatasetTask::kEdge: return {geom::SdfShape::edge(spec.edge_height)};
    case DatasetTask::kSurface: return {geom::SdfShape::plane()};
    case DatasetTask::kProbe: {
      // The probe top rises `probe_depth` past the tip surface above its center.
      const double rho = s.probe_center.norm();
      const double rt = spec.sensor.radius;
      const double tip_z = spec.sensor.tip == render::TipKind::kHemisphere ? rt - std::sqrt(rt * rt - rho * rho) : 0.0;
      const geom::Vec3 c(s.probe_center.x(), s.probe_center.y(), tip_z + spec.probe_depth - s.probe_radius);
      return {geom::SdfShape::sphere(s.probe_radius, geom::Pose::from_euler_deg(c, geom::Vec3::Zero()))};
    }
  }
  return {};
}

render::TactileImage render_sample(const CollectionSpec& spec, const Sample& s,
                                   const render::TactileSensor& sensor) {
  const auto scene = sample_scene(spec, s);
  return sensor.render(scene, s.sensor_pose);
}

DatasetSummary collect_dataset(const CollectionSpec& spec, std::uint64_t seed, const std::string& dir,
                               int threads, const std::atomic<bool>* stop) {
  spec.validate();
  const render::TactileSensor sensor(spec.sensor);
  DatasetSummary summary;
  util::Fnv1a content;
  for (Split split : {Split::kTrain, Split::kVal}) {
    const int n = split == Split::kTrain ? spec.n_train : spec.n_val;
    const fs::path root = fs::path(dir) / split_name(split);
    std::error_code ec;
    fs::create_directories(root / "images", ec);
    if (ec) throw IoError(fmt::format("cannot create '{}': {}", (root / "images").string(), ec.message()));
    std::vector<std::string> header = {"id", "image"};
    header.insert(header.end(), kPoseColumns.begin(), kPoseColumns.end());
    for (const auto& l : spec.label_names()) header.push_back(l);
    header.push_back("domain");
    {
      util::CsvWriter csv((root / "poses.csv").string(), header);
      int written = 0;
      for (int start = 0; start < n; start += kChunk) {
        if (stop != nullptr && stop->load()) {
          summary.interrupted = true;
          break;
        }
        const int count = std::min(kChunk, n - start);
        std::vector<Sample> samples(static_cast<std::size_t>(count));
        std::vector<render::TactileImage> images(static_cast<std::size_t>(count));
        util::parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t k) {
          samples[k] = draw_sample(spec, seed, split, start + static_cast<int>(k));
          images[k] = render_sample(spec, samples[k], sensor);
        });
        for (int k = 0; k < count; ++k) {
          const auto& s = samples[k];
          const std::string name = fmt::format("images/{:05d}.png", s.id);
          const std::string file = (root / name).string();
          render::write_png(file, images[k]);
          const std::uint64_t h = util::hash_file(file);
          content.update(&h, sizeof h);
          csv.cell(s.id).cell(name);
          for (double v : s.pose_mm_deg) csv.cell(v);
          for (double v : s.labels) csv.cell(v);
          csv.cell("sim");
          csv.end_row();
          ++written;
        }
      }
      (split == Split::kTrain ? summary.n_train : summary.n_val) = written;
    }
    const std::uint64_t h = util::hash_file((root / "poses.csv").string());
    content.update(&h, sizeof h);
  }
  summary.content_hash = content.digest();
  return summary;
}

LoadedSplit load_split(const std::string& dir, Split split) {
  const fs::path root = fs::path(dir) / split_name(split);
  const auto table = util::read_csv((root / "poses.csv").string());
  const int image_col = table.column("image");
  const int first_label = table.column("rz_deg") + 1;
  const int domain_col = table.column("domain");
  if (image_col < 0 || first_label <= 0 || domain_col < first_label)
    throw IoError(fmt::format("'{}' is not a dataset index", (root / "poses.csv").string()));
  LoadedSplit out;
  out.label_names.assign(table.header.begin() + first_label, table.header.begin() + domain_col);
  for (const auto& row : table.rows) {
    out.images.push_back(render::read_png((root / row[image_col]).string()));
    std::vector<double> labels;
    for (int c = first_label; c < domain_col; ++c) labels.push_back(std::stod(row[c]));
    out.labels.push_back(std::move(labels));
  }
  return out;
}

}  // namespace tactile::data
