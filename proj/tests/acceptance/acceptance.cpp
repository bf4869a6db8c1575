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

// Acceptance suite. Each criterion prints one line:
//
//   [PASS] C4 gae/ppo oracles: ... (0.4 s)
//
// Usage: tactile_acceptance [all | N ...]. Exit status is nonzero when any
// selected criterion fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "tactile/cli/cli.hpp"
#include "tactile/data/metrics.hpp"
#include "tactile/geom/pose.hpp"
#include "tactile/geom/sdf.hpp"
#include "tactile/noise/noise.hpp"
#include "tactile/render/image.hpp"
#include "tactile/render/tactile.hpp"
#include "tactile/rl/grad_check.hpp"
#include "tactile/rl/policy.hpp"
#include "tactile/rl/ppo.hpp"
#include "tactile/util/csv.hpp"
#include "tactile/util/rng.hpp"

namespace fs = std::filesystem;
using namespace tactile;
using geom::Pose;
using geom::SdfShape;
using geom::Vec3;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back((ok ? "" : "FAILED ") + what);
  }
};

class Workspace {
 public:
  Workspace() {
    root_ = fs::temp_directory_path() / fmt::format("tactile_acceptance_{}", ::getpid());
    fs::remove_all(root_);
    fs::create_directories(root_);
    log_.open(root_ / "cli.log");
  }
  ~Workspace() {
    log_.close();
    if (std::getenv("TACTILE_ACCEPTANCE_KEEP") == nullptr) fs::remove_all(root_);
  }
  std::string dir(const std::string& name) const { return (root_ / name).string(); }

  // Runs the CLI in-process; returns the exit code.
  int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "tactile");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream err;
    log_ << "$";
    for (const auto& a : args) log_ << ' ' << a;
    log_ << '\n';
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), log_, err);
    log_ << err.str() << std::flush;
    last_error_ = err.str();
    return code;
  }
  const std::string& last_error() const { return last_error_; }

 private:
  fs::path root_;
  std::ofstream log_;
  std::string last_error_;
};

double summary(const std::string& run_dir, const std::string& metric) {
  const auto t = util::read_csv((fs::path(run_dir) / "summary.csv").string());
  for (const auto& row : t.rows)
    if (row[0] == metric) return std::stod(row[1]);
  throw std::runtime_error(fmt::format("{}: no '{}' in summary.csv", run_dir, metric));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

double pixel_x(const render::SensorSpec& s, int j) { return (j + 0.5 - 0.5 * s.resolution) * s.pixel_size(); }
double pixel_y(const render::SensorSpec& s, int i) { return (0.5 * s.resolution - i - 0.5) * s.pixel_size(); }

// ---- C1 --------------------------------------------------------------------

Outcome renderer_correctness(Workspace&) {
  Outcome o;
  util::Rng rng(101);

  int border_only = 0;
  for (auto tip : {render::TipKind::kHemisphere, render::TipKind::kFlat}) {
    render::SensorSpec spec;
    spec.tip = tip;
    spec.resolution = 64;
    const render::TactileSensor sensor(spec);
    const auto masks = render::sensor_masks(spec);
    for (int k = 0; k < 10; ++k) {
      // Stimuli strictly below the tip surface (z < 0 is away from the tip).
      const double gap = rng.uniform(1e-4, 5e-3);
      std::vector<SdfShape> scene = {
          SdfShape::plane(Pose::from_euler_deg({0, 0, -gap}, {0, 0, 0})),
          SdfShape::sphere(0.004, Pose::from_euler_deg({rng.uniform(-0.01, 0.01), 0, -gap - 0.004}, {0, 0, 0}))};
      const auto img = sensor.render(scene, Pose::identity());
      bool ok = true;
      for (std::size_t p = 0; p < img.data.size(); ++p) ok &= img.data[p] == (masks->border[p] ? 255 : 0);
      border_only += ok;
    }
  }
  o.expect(border_only == 20, fmt::format("{}/20 zero-contact renders border-only", border_only));

  render::SensorSpec flat;
  flat.tip = render::TipKind::kFlat;
  flat.resolution = 96;
  const render::TactileSensor sensor(flat);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double depth = rng.uniform(2e-4, 4.5e-3);
    const double r = rng.uniform(1.5e-3, 0.015);
    const double cx = rng.uniform(-0.004, 0.004), cy = rng.uniform(-0.004, 0.004);
    const auto sphere = SdfShape::sphere(r, Pose::from_euler_deg({cx, cy, depth - r}, {0, 0, 0}));
    render::DepthImage pen;
    sensor.render(std::span(&sphere, 1), Pose::identity(), &pen);
    double peak = 0.0, oracle = 0.0;
    for (int i = 0; i < flat.resolution; ++i) {
      for (int j = 0; j < flat.resolution; ++j) {
        if (!sensor.masks().inside[i * flat.resolution + j]) continue;
        peak = std::max(peak, double(pen.at(i, j)));
        const double d2 = std::pow(pixel_x(flat, j) - cx, 2) + std::pow(pixel_y(flat, i) - cy, 2);
        if (d2 < r * r) oracle = std::max(oracle, depth - r + std::sqrt(r * r - d2));
      }
    }
    worst = std::max(worst, std::abs(peak - oracle));
  }
  o.expect(worst < 1e-6, fmt::format("flat-tip sphere peak error {:.2e} m over 50 cases", worst));

  render::SensorSpec spec;
  render::DepthImage pen(spec.resolution, spec.resolution, 1, 0.0f);
  const int c = spec.resolution / 2;
  pen.at(c, c) = 0.002f;
  const int v = render::to_tactile_image(pen, spec).at(c, c);
  o.expect(v == 102, fmt::format("0.002/0.005 -> {}", v));
  return o;
}

// ---- C2 --------------------------------------------------------------------

Outcome renderer_equivariance(Workspace&) {
  Outcome o;
  util::Rng rng(202);
  int exact = 0, total = 0;
  for (auto tip : {render::TipKind::kHemisphere, render::TipKind::kFlat}) {
    render::SensorSpec spec;
    spec.tip = tip;
    spec.resolution = 64;
    const render::TactileSensor sensor(spec);
    for (int trial = 0; trial < 4; ++trial) {
      const double depth = rng.uniform(5e-4, 3e-3), off = rng.uniform(-0.006, 0.006), yaw0 = rng.uniform(-45, 45);
      const Vec3 bump(rng.uniform(-0.008, 0.008), rng.uniform(-0.008, 0.008), 0.0);
      auto scene = [&](int quarter) {
        const Pose frame = Pose::from_euler_deg({0, 0, -depth}, {0, 0, 90.0 * quarter});
        const Pose local = Pose::from_euler_deg({0, off, 0}, {0, 0, yaw0});
        return std::vector<SdfShape>{
            SdfShape::edge(0.005, geom::compose(frame, local)),
            SdfShape::sphere(0.002, geom::compose(frame, Pose::from_euler_deg(bump, {0, 0, 0})))};
      };
      auto img = sensor.render(scene(0), Pose::identity());
      for (int q = 1; q <= 4; ++q) {
        img = render::rotate90(img);
        ++total;
        exact += sensor.render(scene(q), Pose::identity()) == img;
      }
    }
  }
  o.expect(exact == total, fmt::format("{}/{} quarter-turn renders exactly rotated", exact, total));

  render::SensorSpec spec;
  const render::TactileSensor sensor(spec);
  const auto surface = noise::generate_surface({.seed = 9, .amplitude = 0.003});
  const std::vector<SdfShape> scene = {
      SdfShape::heightfield(surface.grid, Pose::from_euler_deg({0.001, -0.002, -0.0025}, {0, 0, 17})),
      SdfShape::sphere(0.004, Pose::from_euler_deg({0.005, 0.003, -0.003}, {0, 0, 0}))};
  const Pose pose = Pose::from_euler_deg({0.0004, 0.0, 0.0}, {3, -4, 25});
  const auto ref = sensor.render(scene, pose, 1);
  bool same = sensor.render(scene, pose, 1) == ref;
  for (int t : {2, 3, 4, 8}) same &= sensor.render(scene, pose, t) == ref;
  o.expect(same, "bit-identical re-renders with 1, 2, 3, 4 and 8 threads");
  return o;
}

// ---- C3 --------------------------------------------------------------------

Outcome throughput(Workspace& ws) {
  Outcome o;
  const auto dir = ws.dir("c3_bench");
  const int code = ws.cli({"bench", "--resolution", "128", "--frames", "100", "-o", dir});
  if (code != 0) {
    o.expect(false, fmt::format("bench exit {}: {}", code, ws.last_error()));
    return o;
  }
  const auto t = util::read_csv((fs::path(dir) / "timing.csv").string());
  const double single = std::stod(t.rows.at(0).at(t.column("fps")));
  const double multi = std::stod(t.rows.at(1).at(t.column("fps")));
  o.expect(std::isfinite(single) && single >= 100.0, fmt::format("{:.0f} fps single-thread at 128x128", single));
  o.notes.push_back(fmt::format("{:.0f} fps with {} threads", multi, t.rows.at(1).at(t.column("threads"))));
  return o;
}

// ---- C4 --------------------------------------------------------------------

std::vector<double> brute_force_gae(const std::vector<double>& r, const std::vector<double>& v,
                                    const std::vector<std::uint8_t>& d, double boot, double g, double l) {
  const std::size_t n = r.size();
  std::vector<double> adv(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    double weight = 1.0;
    for (std::size_t k = t; k < n; ++k) {
      const double next = k + 1 < n ? v[k + 1] : boot;
      adv[t] += weight * (r[k] + g * next * (1.0 - d[k]) - v[k]);
      if (d[k]) break;
      weight *= g * l;
    }
  }
  return adv;
}

Outcome gae_ppo_oracles(Workspace&) {
  Outcome o;
  util::Rng rng(404);
  double worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const int n = static_cast<int>(rng.uniform_int(1, 64));
    std::vector<double> r(n), v(n);
    std::vector<std::uint8_t> d(n);
    for (int t = 0; t < n; ++t) {
      r[t] = rng.normal(0.0, 2.0);
      v[t] = rng.normal(0.0, 2.0);
      d[t] = rng.uniform(0.0, 1.0) < 0.1;
    }
    const double boot = rng.normal(), g = rng.uniform(0.5, 1.0), l = rng.uniform(0.0, 1.0);
    const auto fast = rl::gae(r, v, d, boot, g, l);
    const auto slow = brute_force_gae(r, v, d, boot, g, l);
    for (int t = 0; t < n; ++t) {
      worst = std::max(worst, std::abs(fast.advantages[t] - slow[t]));
      worst = std::max(worst, std::abs(fast.returns[t] - (slow[t] + v[t])));
    }
  }
  o.expect(worst <= 1e-10, fmt::format("GAE max error {:.1e} on 1000 sequences", worst));

  struct Row {
    double ratio, adv, objective;
    bool clipped;
  };
  const Row table[] = {
      {1.5, 1.0, 1.2, true},    {1.5, -1.0, -1.5, false}, {0.5, 1.0, 0.5, false}, {0.5, -1.0, -0.8, true},
      {1.1, 2.0, 2.2, false},   {0.9, -2.0, -1.8, false}, {1.0, 0.0, 0.0, false}, {1.25, 4.0, 4.8, true},
      {0.75, -4.0, -3.2, true}, {1.2, 1.0, 1.2, false},
  };
  int exact = 0;
  for (const auto& row : table)
    exact += rl::clipped_objective(row.ratio, row.adv, 0.2) == row.objective &&
             rl::clip_active(row.ratio, row.adv, 0.2) == row.clipped;
  o.expect(exact == 10, fmt::format("clip case table {}/10 exact", exact));
  o.expect(-rl::clipped_objective(1.5, 1.0, 0.2) == -1.2, "ratio 1.5, A=+1 gives loss -1.2");
  return o;
}

// ---- C5 --------------------------------------------------------------------

Outcome gradient_fidelity(Workspace&) {
  Outcome o;
  rl::NetworkSpec spec;
  spec.conv_filters = {4, 8, 8};
  spec.conv_kernels = {8, 4, 3};
  spec.conv_strides = {4, 2, 1};
  spec.conv_features = 16;
  spec.state_layers = {8, 8};
  spec.head_layers = {12, 12};
  double worst = 0.0;
  std::size_t checked = 0;
  for (std::uint64_t seed : {1u, 2u}) {
    rl::ActorCritic<double> net(spec, {2, 36, 36, 4}, 2, seed);
    util::Rng rng(500 + seed);
    nn::Tensor<double> img({3, 2, 36, 36}), st({3, 4});
    for (auto& x : img.data) x = rng.uniform(0.0, 1.0);
    for (auto& x : st.data) x = rng.normal();
    const auto r = rl::grad_check(net, img, st);
    worst = std::max(worst, r.max_rel_error);
    checked += r.checked;
  }
  o.expect(worst < 1e-4, fmt::format("max relative error {:.2e} over {} parameters (float64)", worst, checked));
  return o;
}

// ---- C6 --------------------------------------------------------------------

Outcome scripted_oracles(Workspace& ws) {
  Outcome o;
  auto metrics = [&](const std::string& name, std::vector<std::string> args) -> std::string {
    const auto dir = ws.dir("c6_" + name);
    args.insert(args.begin(), "metrics");
    args.insert(args.end(), {"--set", "metrics.policy=oracle", "-o", dir});
    const int code = ws.cli(args);
    if (code != 0) throw std::runtime_error(name + ": " + ws.last_error());
    return dir;
  };
  const auto edge = metrics("edge", {"--env", "edge_follow", "--set", "edge.shape=square", "--episodes", "10"});
  const double d = summary(edge, "mean_path_distance_mm");
  o.expect(d < 2.0, fmt::format("edge square mean distance {:.3f} mm", d));

  const auto surf = metrics("surface", {"--env", "surface_follow", "--episodes", "10"});
  const double depth = summary(surf, "mean_depth_error") * 1000.0;
  const double cosine = summary(surf, "mean_cosine_error");
  o.expect(depth < 1.0, fmt::format("surface depth error {:.3g} mm", depth));
  o.expect(cosine < 0.005, fmt::format("cosine error {:.3g}", cosine));

  const auto roll = metrics("roll", {"--env", "object_roll", "--episodes", "100"});
  const double reached = summary(roll, "success_rate") * 100.0;
  o.expect(reached >= 95.0, fmt::format("roll reached 1 mm in {:.0f}/100", reached));
  return o;
}

// ---- C7 / C8 ---------------------------------------------------------------

struct TrainEval {
  double success = 0.0, ret = 0.0, length = 0.0, seconds = 0.0;
};

TrainEval train_run(Workspace& ws, const std::string& name, std::vector<std::string> args) {
  const auto dir = ws.dir(name);
  args.insert(args.begin(), "train");
  args.insert(args.end(), {"-o", dir});
  const auto t0 = std::chrono::steady_clock::now();
  const int code = ws.cli(args);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (code != 0) throw std::runtime_error(name + ": " + ws.last_error());
  return {summary(dir, "eval_success_rate"), summary(dir, "eval_mean_return"), summary(dir, "eval_mean_length"), secs};
}

TrainEval baseline_run(Workspace& ws, const std::string& name, const std::string& seed,
                       std::vector<std::string> args) {
  const auto dir = ws.dir(name);
  args.insert(args.begin(), "eval");
  args.insert(args.end(), {"--episodes", "10", "--seed", seed, "-o", dir});
  if (ws.cli(args) != 0) throw std::runtime_error(name + ": " + ws.last_error());
  return {summary(dir, "success_rate"), summary(dir, "mean_return"), summary(dir, "mean_length"), 0.0};
}

Outcome desk_learning(Workspace& ws) {
  Outcome o;
  for (const std::string seed : {"1", "2", "3"}) {
    const auto run = train_run(ws, "c7_edge_s" + seed,
                               {"--env", "edge_follow", "--steps", "100000", "--seed", seed, "--set", "env.obs=env_state"});
    const auto random = baseline_run(ws, "c7_random_s" + seed, seed,
                                     {"--env", "edge_follow", "--set", "env.obs=env_state", "--set", "eval.policy=random"});
    // Returns are negative distances: "3x the baseline" means a third of its cost.
    o.expect(run.success >= 0.8, fmt::format("seed {}: success {:.2f}", seed, run.success));
    o.expect(run.ret >= random.ret / 3.0,
             fmt::format("return {:.3f} vs random {:.3f} ({:.1f}x better)", run.ret, random.ret, random.ret / run.ret));
    o.expect(run.seconds < 1800.0, fmt::format("{:.0f} s", run.seconds));
  }
  const auto bal = train_run(ws, "c7_balance", {"--env", "object_balance", "--steps", "100000", "--seed", "1"});
  const auto still = baseline_run(ws, "c7_balance_zero", "1", {"--env", "object_balance", "--set", "eval.policy=zero"});
  o.expect(bal.length >= 2.0 * still.length,
           fmt::format("balance length {:.1f} vs no-action {:.1f}", bal.length, still.length));
  o.expect(bal.seconds < 1800.0, fmt::format("{:.0f} s", bal.seconds));
  return o;
}

Outcome tactile_learning(Workspace& ws) {
  Outcome o;
  const auto run = train_run(ws, "c8_edge_tactile",
                             {"--env", "edge_follow", "--set", "env.obs=tactile", "--set", "env.image_size=64",
                              "--steps", "150000", "--seed", "1"});
  o.expect(run.success >= 0.6, fmt::format("64x64 tactile success {:.2f} (return {:.3f})", run.success, run.ret));
  o.expect(run.seconds < 7200.0, fmt::format("{:.0f} s", run.seconds));
  return o;
}

// ---- C9 --------------------------------------------------------------------

Outcome supervised(Workspace& ws) {
  Outcome o;
  const auto ds = ws.dir("c9_dataset");
  const auto t0 = std::chrono::steady_clock::now();
  if (ws.cli({"collect", "--task", "edge", "--set", "collect.n_train=5000", "--set", "collect.n_val=2000", "--seed",
              "7", "-o", ds}) != 0)
    throw std::runtime_error("collect: " + ws.last_error());
  const auto reg = ws.dir("c9_regress");
  if (ws.cli({"regress", "--set", "regress.dataset=" + ds, "--seed", "1", "-o", reg}) != 0)
    throw std::runtime_error("regress: " + ws.last_error());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double theta = summary(reg, "mae_theta_rad"), r = summary(reg, "mae_r_mm");
  o.expect(theta < 0.10, fmt::format("MAE theta {:.4f} rad", theta));
  o.expect(r < 0.3, fmt::format("MAE r {:.4f} mm", r));
  o.expect(secs < 1800.0, fmt::format("{:.0f} s", secs));
  return o;
}

// ---- C10 -------------------------------------------------------------------

Outcome ssim_suite(Workspace&) {
  Outcome o;
  util::Rng rng(1010);
  auto random_image = [&](int w, int h, int c) {
    render::ByteImage img(w, h, c);
    for (auto& p : img.data) p = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
    return img;
  };
  int identity = 0, symmetric = 0;
  for (int k = 0; k < 20; ++k) {
    const int w = static_cast<int>(rng.uniform_int(11, 48)), h = static_cast<int>(rng.uniform_int(11, 48));
    const int c = k % 2 == 0 ? 1 : 3;
    const auto a = random_image(w, h, c), b = random_image(w, h, c);
    identity += data::ssim(a, a) == 1.0;
    symmetric += data::ssim(a, b) == data::ssim(b, a);
  }
  o.expect(identity == 20, fmt::format("identity exact {}/20", identity));
  o.expect(symmetric == 20, fmt::format("symmetry bit-exact {}/20", symmetric));

  double worst = 0.0;
  const double c1 = std::pow(0.01 * 255, 2);
  for (int k = 0; k < 20; ++k) {
    const int va = static_cast<int>(rng.uniform_int(0, 255)), vb = static_cast<int>(rng.uniform_int(0, 255));
    const render::ByteImage a(24, 24, 1, static_cast<std::uint8_t>(va)), b(24, 24, 1, static_cast<std::uint8_t>(vb));
    const double closed = (2.0 * va * vb + c1) / (double(va) * va + double(vb) * vb + c1);
    worst = std::max(worst, std::abs(data::ssim(a, b) - closed));
  }
  o.expect(worst < 1e-8, fmt::format("constant pairs within {:.1e} of closed form", worst));
  return o;
}

// ---- C11 -------------------------------------------------------------------

Outcome reproducibility(Workspace& ws) {
  Outcome o;
  const auto ds = ws.dir("c11_dataset");
  const std::vector<std::vector<std::string>> runs = {
      {"train", "--env", "edge_follow", "--steps", "4100", "--set", "train.eval_every=2050", "--set",
       "train.eval_episodes=3", "--seed", "5", "-j", "4"},
      {"train", "--env", "object_roll", "--set", "env.obs=tactile", "--set", "env.image_size=48", "--steps", "200", "--set", "ppo.epoch_steps=100", "--set", "ppo.n_envs=2",
       "--set", "train.eval_episodes=2", "--seed", "6", "-j", "2"},
      {"eval", "--env", "surface_follow", "--set", "eval.policy=random", "--episodes", "3", "--seed", "2", "-j", "3"},
      {"render", "--env", "object_push", "--steps", "40", "--set", "render.policy=random", "--seed", "4"},
      {"metrics", "--env", "object_balance", "--episodes", "2", "--seed", "8"},
      {"collect", "--task", "edge", "--set", "collect.n_train=150", "--set", "collect.n_val=100", "--seed", "3", "-j",
       "4", "-o", ds},
      {"regress", "--set", "regress.dataset=" + ds, "--set", "sup.epochs=1", "--set", "sup.fc_layers=64",
       "--set", "sup.conv_channels=4,4,4,4", "--seed", "9"},
      {"bench", "--resolution", "64", "--frames", "100", "-j", "2"},
  };
  int index = 0;
  for (auto args : runs) {
    const std::string name = args[0];
    auto out = std::find(args.begin(), args.end(), "-o");
    std::string first;
    if (out == args.end()) {
      first = ws.dir(fmt::format("c11_{}_{}", index, name));
      args.insert(args.end(), {"-o", first});
    } else {
      first = *(out + 1);
    }
    const std::string again = first + "_rerun";
    ++index;
    if (ws.cli(args) != 0) {
      o.expect(false, name + ": " + ws.last_error());
      continue;
    }
    const int code = ws.cli({"rerun", first, "-o", again, "--verify"});
    int csvs = 0, identical = 0;
    for (const auto& e : fs::recursive_directory_iterator(first)) {
      if (e.path().extension() != ".csv") continue;
      const auto rel = fs::relative(e.path(), first);
      if (rel == "timing.csv") continue;
      ++csvs;
      identical += slurp(e.path()) == slurp(fs::path(again) / rel);
    }
    o.expect(code == 0 && csvs > 0 && identical == csvs,
             fmt::format("{}: {}/{} CSVs identical", name, identical, csvs));
  }
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;  // 0 when bounded by the runs themselves
  std::function<Outcome(Workspace&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "renderer correctness", 10.0, renderer_correctness},
      {2, "renderer equivariance and determinism", 10.0, renderer_equivariance},
      {3, "rendering throughput", 60.0, throughput},
      {4, "gae/ppo oracle equivalence", 5.0, gae_ppo_oracles},
      {5, "gradient fidelity", 60.0, gradient_fidelity},
      {6, "scripted oracles", 120.0, scripted_oracles},
      {7, "state-observation learning", 0.0, desk_learning},
      {8, "tactile-observation learning", 7200.0, tactile_learning},
      {9, "supervised edge regression", 1800.0, supervised},
      {10, "ssim", 1.0, ssim_suite},
      {11, "reproducibility from manifests", 0.0, reproducibility},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "all") {
      for (const auto& c : criteria) selected.push_back(c.id);
    } else {
      selected.push_back(std::stoi(a));
    }
  }
  if (selected.empty())
    for (const auto& c : criteria) selected.push_back(c.id);

  Workspace ws;
  int failures = 0;
  for (int id : selected) {
    auto it = std::find_if(criteria.begin(), criteria.end(), [&](const Criterion& c) { return c.id == id; });
    if (it == criteria.end()) {
      std::cerr << "unknown criterion " << id << '\n';
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it->run(ws);
    } catch (const std::exception& e) {
      o.expect(false, e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (it->limit_seconds > 0.0 && secs >= it->limit_seconds)
      o.expect(false, fmt::format("runtime over {:.0f} s", it->limit_seconds));
    std::string notes;
    for (const auto& n : o.notes) notes += (notes.empty() ? "" : "; ") + n;
    std::cout << fmt::format("[{}] C{} {}: {} ({:.1f} s)", o.pass ? "PASS" : "FAIL", it->id, it->title, notes, secs)
              << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
