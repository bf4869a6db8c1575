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
#include <filesystem>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "support/gen.hpp"
#include "tactile/data/dataset.hpp"
#include "tactile/data/metrics.hpp"
#include "tactile/rl/supervised.hpp"
#include "tactile/util/csv.hpp"
#include "tactile/util/errors.hpp"
#include "tactile/util/hash.hpp"

using namespace tactile;
using namespace tactile::data;
using geom::Vec3;

namespace {

render::ByteImage random_image(util::Rng& rng, int w, int h, int c = 1) {
  render::ByteImage img(w, h, c);
  for (auto& v : img.data) v = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  return img;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("tactile_test_data_" + name);
  std::filesystem::remove_all(p);
  return p;
}

CollectionSpec small_spec(DatasetTask task, int n_train, int n_val) {
  CollectionSpec s;
  s.task = task;
  s.n_train = n_train;
  s.n_val = n_val;
  s.sensor.resolution = 32;
  return s;
}

}  // namespace

TEST_CASE("ssim identity, constants and symmetry") {
  util::Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_image(rng, rng.uniform_int(11, 40), rng.uniform_int(11, 40));
    CHECK(ssim(a, a) == 1.0);
  }
  const render::ByteImage zeros(16, 16, 1, 0), full(16, 16, 1, 255);
  const double c1 = (0.01 * 255) * (0.01 * 255);
  CHECK(std::fabs(ssim(zeros, full) - c1 / (255.0 * 255.0 + c1)) < 1e-8);
  for (int trial = 0; trial < 20; ++trial) {
    const int w = rng.uniform_int(11, 40), h = rng.uniform_int(11, 40), c = rng.uniform_int(1, 3);
    const auto a = random_image(rng, w, h, c), b = random_image(rng, w, h, c);
    const double ab = ssim(a, b);
    CHECK(ab == ssim(b, a));
    CHECK(ab <= 1.0);
    CHECK(ab >= -1.0);
  }
  CHECK_THROWS_AS(ssim(render::ByteImage(16, 16), render::ByteImage(16, 17)), std::invalid_argument);
  CHECK_THROWS_AS(ssim(render::ByteImage(10, 10), render::ByteImage(10, 10)), std::invalid_argument);
}

TEST_CASE("ssim is unchanged by translating both images together") {
  util::Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto pa = random_image(rng, 12, 12), pb = random_image(rng, 12, 12);
    auto place = [&](const render::ByteImage& p, int dx, int dy) {
      render::ByteImage canvas(60, 60, 1, 0);
      for (int r = 0; r < 12; ++r)
        for (int c = 0; c < 12; ++c) canvas.at(r + 16 + dy, c + 16 + dx) = p.at(r, c);
      return canvas;
    };
    const int dx = rng.uniform_int(-5, 5), dy = rng.uniform_int(-5, 5);
    const double base = ssim(place(pa, 0, 0), place(pb, 0, 0));
    const double moved = ssim(place(pa, dx, dy), place(pb, dx, dy));
    CHECK(moved == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("trajectory error") {
  const std::vector<Vec3> seg = {Vec3(0, 0, 0), Vec3(0.1, 0, 0)};
  auto on = trajectory_error({Vec3(0.02, 0, 0), Vec3(0.07, 0, 0)}, seg);
  CHECK(on.mean == 0.0);
  auto off = trajectory_error({Vec3(0.05, 0.003, 0)}, seg);
  CHECK(off.mean == doctest::Approx(0.003).epsilon(1e-12));
  // Closed square: the point near the closing side only sees it when closed.
  const std::vector<Vec3> sq = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)};
  CHECK(trajectory_error({Vec3(-0.1, 0.5, 0)}, sq, true).mean == doctest::Approx(0.1));
  CHECK(trajectory_error({Vec3(-0.1, 0.5, 0)}, sq, false).mean > 0.1);
  CHECK_THROWS_AS(trajectory_error({Vec3::Zero()}, {}), std::invalid_argument);
  CHECK_THROWS_AS(trajectory_error({}, seg), std::invalid_argument);
}

TEST_CASE("property: trajectory error is rigid-motion invariant, nonnegative, mean <= max") {
  util::Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Vec3> gt, path;
    for (int i = 0, n = rng.uniform_int(1, 8); i < n; ++i) gt.push_back(testing::random_vec3(rng, -0.1, 0.1));
    for (int i = 0, n = rng.uniform_int(1, 20); i < n; ++i) path.push_back(testing::random_vec3(rng, -0.1, 0.1));
    const bool closed = rng.uniform_int(0, 1) == 1;
    const auto base = trajectory_error(path, gt, closed);
    const auto pose = testing::random_pose(rng, 0.5);
    std::vector<Vec3> gt2, path2;
    for (const auto& p : gt) gt2.push_back(pose.transform_point(p));
    for (const auto& p : path) path2.push_back(pose.transform_point(p));
    const auto moved = trajectory_error(path2, gt2, closed);
    CHECK(std::fabs(moved.mean - base.mean) < 1e-9);
    CHECK(base.mean <= base.max);
    for (double d : base.distances) CHECK(d >= 0.0);
  }
}

TEST_CASE("smooth curve") {
  const std::vector<double> v = {1, 5, -2, 7, 3};
  CHECK(smooth_curve(v, 1) == v);
  const std::vector<double> c(100, 2.5);
  CHECK(smooth_curve(c, 50) == c);
  std::vector<double> step(120, 0.0);
  for (std::size_t i = 40; i < step.size(); ++i) step[i] = 1.0;
  const auto s = smooth_curve(step, 50);
  for (int i = 0; i < 40; ++i) CHECK(s[i] == 0.0);
  for (int i = 40; i < 90; ++i) CHECK(s[i] == doctest::Approx((i - 39) / double(std::min(i + 1, 50))).epsilon(1e-12));
  for (int i = 89; i < 120; ++i) CHECK(s[i] == 1.0);
  CHECK_THROWS_AS(smooth_curve(v, 0), std::invalid_argument);
}

TEST_CASE("sampled poses stay inside the configured ranges") {
  for (auto task : {DatasetTask::kEdge, DatasetTask::kSurface, DatasetTask::kProbe}) {
    const auto spec = small_spec(task, 0, 0);
    for (int i = 0; i < 3000; ++i) {
      const auto s = draw_sample(spec, 5, i % 2 ? Split::kTrain : Split::kVal, i);
      const auto& p = s.pose_mm_deg;
      switch (task) {
        case DatasetTask::kEdge:
          CHECK(p[5] >= -179.0);
          CHECK(p[5] <= 180.0);
          CHECK(std::fabs(p[1]) <= 6.0);
          CHECK(p[2] >= 3.5);
          CHECK(p[2] <= 5.5);
          CHECK(s.labels[0] == p[1]);
          CHECK(s.labels[1] == doctest::Approx(p[5] * M_PI / 180.0));
          break;
        case DatasetTask::kSurface:
          CHECK(std::fabs(p[3]) <= 15.0);
          CHECK(std::fabs(p[4]) <= 15.0);
          CHECK(p[2] >= 2.0);
          CHECK(p[2] <= 5.0);
          break;
        case DatasetTask::kProbe: {
          CHECK(std::hypot(p[0], p[1]) <= 7.5 + 1e-12);
          const double steps = (s.labels[2] - 2.0) / 0.5;
          CHECK(std::fabs(steps - std::round(steps)) < 1e-9);
          CHECK(s.labels[2] >= 2.0 - 1e-12);
          CHECK(s.labels[2] <= 6.0 + 1e-12);
          break;
        }
      }
    }
  }
}

TEST_CASE("every sample makes contact") {
  for (auto task : {DatasetTask::kEdge, DatasetTask::kSurface, DatasetTask::kProbe}) {
    const auto spec = small_spec(task, 0, 0);
    const render::TactileSensor sensor(spec.sensor);
    const auto& border = sensor.masks().border;
    for (int i = 0; i < 50; ++i) {
      const auto img = render_sample(spec, draw_sample(spec, 9, Split::kTrain, i), sensor);
      int lit = 0;
      for (std::size_t k = 0; k < img.data.size(); ++k)
        if (!border[k] && img.data[k] > 0) ++lit;
      CHECK(lit > 0);
    }
  }
}

TEST_CASE("edge images at yaw 0 and 180 are half-turn rotations") {
  auto spec = small_spec(DatasetTask::kEdge, 0, 0);
  const render::TactileSensor sensor(spec.sensor);
  util::Rng rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    Sample s = draw_sample(spec, 1, Split::kTrain, trial);
    const double y = s.pose_mm_deg[1] * 1e-3, z = s.pose_mm_deg[2] * 1e-3;
    s.sensor_pose = geom::Pose::from_euler_deg(Vec3(0, y, -z), Vec3(0, 0, 0));
    const auto a = render_sample(spec, s, sensor);
    for (double yaw : {90.0, 180.0}) {
      s.sensor_pose = geom::Pose::from_euler_deg(Vec3(0, y, -z), Vec3(0, 0, yaw));
      auto expect = a;
      // Turning the sensor by +q turns the image content by -q.
      for (int k = 0; k < (yaw == 90.0 ? 3 : 2); ++k) expect = render::rotate90(expect);
      CHECK(render_sample(spec, s, sensor) == expect);
    }
  }
}

TEST_CASE("dataset collection is reproducible and indexed") {
  const auto spec = small_spec(DatasetTask::kEdge, 40, 12);
  const auto d1 = temp_dir("a"), d2 = temp_dir("b");
  const auto s1 = collect_dataset(spec, 11, d1.string(), 1);
  const auto s2 = collect_dataset(spec, 11, d2.string(), 3);
  CHECK(s1.content_hash == s2.content_hash);
  CHECK(s1.n_train == 40);
  CHECK(s1.n_val == 12);
  CHECK(util::hash_file((d1 / "train/poses.csv").string()) == util::hash_file((d2 / "train/poses.csv").string()));
  const auto split = load_split(d1.string(), Split::kVal);
  CHECK(split.images.size() == 12);
  CHECK(split.label_names == std::vector<std::string>{"r_mm", "theta_rad"});
  CHECK(split.images[0].width == 32);
  const auto table = util::read_csv((d1 / "val/poses.csv").string());
  CHECK(table.rows[3][table.column("domain")] == "sim");
  const auto other = collect_dataset(spec, 12, d2.string(), 1);
  CHECK(other.content_hash != s1.content_hash);
  std::filesystem::remove_all(d1);
  std::filesystem::remove_all(d2);
}

TEST_CASE("empty dataset is valid") {
  const auto dir = temp_dir("empty");
  const auto s = collect_dataset(small_spec(DatasetTask::kProbe, 0, 0), 1, dir.string());
  CHECK(s.n_train == 0);
  const auto split = load_split(dir.string(), Split::kTrain);
  CHECK(split.images.empty());
  CHECK(split.label_names == std::vector<std::string>{"x_mm", "y_mm", "radius_mm"});
  std::filesystem::remove_all(dir);
}

TEST_CASE("unwritable dataset directory is an I/O error") {
  const auto file = temp_dir("blocker");
  std::ofstream(file.string()) << "x";
  CHECK_THROWS_AS(collect_dataset(small_spec(DatasetTask::kEdge, 1, 0), 1, (file / "sub").string()), IoError);
  std::filesystem::remove_all(file);
}

TEST_CASE("collection config round trip and validation") {
  auto spec = small_spec(DatasetTask::kSurface, 10, 5);
  spec.surface_tilt = 10.0;
  util::Config cfg;
  spec.to_config(cfg);
  const auto back = CollectionSpec::from_config(cfg);
  CHECK(back.task == DatasetTask::kSurface);
  CHECK(back.surface_tilt == 10.0);
  CHECK(back.sensor.resolution == 32);
  CHECK(back.edge_offset == doctest::Approx(0.006));
  cfg.set("collect.task", "cylinder");
  CHECK_THROWS_AS(CollectionSpec::from_config(cfg), ConfigError);
}

TEST_CASE("supervised regression rejects tiny datasets and beats the mean predictor") {
  const auto dir = temp_dir("sup");
  auto spec = small_spec(DatasetTask::kEdge, 300, 100);
  collect_dataset(spec, 3, dir.string());
  const auto train = load_split(dir.string(), Split::kTrain);
  const auto val = load_split(dir.string(), Split::kVal);
  rl::SupervisedConfig cfg;
  cfg.conv_channels = {8, 16, 16};
  cfg.fc_layers = {64};
  cfg.epochs = 4;
  data::LoadedSplit tiny = val;
  tiny.images.resize(99);
  tiny.labels.resize(99);
  CHECK_THROWS_AS(rl::supervised_edge_regression(train, tiny, cfg, 1), ConfigError);
  const auto r = rl::supervised_edge_regression(train, val, cfg, 1);
  CHECK(r.mae_theta_rad < r.baseline_mae_theta_rad);
  CHECK(r.mae_r_mm < r.baseline_mae_r_mm);
  CHECK(r.pred_r_mm.size() == 100);
  std::filesystem::remove_all(dir);
}

TEST_CASE("angle error wraps") {
  CHECK(rl::angle_error(3.1, -3.1) == doctest::Approx(2 * M_PI - 6.2));
  CHECK(rl::angle_error(0.5, 0.2) == doctest::Approx(0.3));
}
