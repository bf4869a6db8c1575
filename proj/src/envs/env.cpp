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

#include "tactile/envs/env.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "tactile/envs/tasks.hpp"
#include "tactile/util/errors.hpp"

namespace tactile::envs {

namespace {

struct DoubleKey {
  const char* key;
  double EnvConfig::*field;
  double scale;  // config value * scale = stored value
};

constexpr double kMm = 1e-3;

const std::vector<DoubleKey>& double_keys() {
  static const std::vector<DoubleKey> keys = {
      {"edge.goal_distance_mm", &EnvConfig::edge_goal_distance, kMm},
      {"edge.square_half_mm", &EnvConfig::edge_square_half, kMm},
      {"edge.lookahead_mm", &EnvConfig::edge_lookahead, kMm},
      {"edge.embed_min_mm", &EnvConfig::embed_min, kMm},
      {"edge.embed_max_mm", &EnvConfig::embed_max, kMm},
      {"surface.goal_distance_mm", &EnvConfig::surface_goal_distance, kMm},
      {"surface.target_penetration_mm", &EnvConfig::target_penetration, kMm},
      {"surface.amplitude_mm", &EnvConfig::surface_amplitude, kMm},
      {"surface.frequency", &EnvConfig::surface_frequency, 1.0},
      {"roll.diameter_min_mm", &EnvConfig::ball_diameter_min, kMm},
      {"roll.diameter_max_mm", &EnvConfig::ball_diameter_max, kMm},
      {"roll.start_radius_mm", &EnvConfig::roll_start_radius, kMm},
      {"roll.goal_radius_mm", &EnvConfig::roll_goal_radius, kMm},
      {"roll.embed_min_mm", &EnvConfig::roll_embed_min, kMm},
      {"roll.embed_max_mm", &EnvConfig::roll_embed_max, kMm},
      {"push.trajectory_length_mm", &EnvConfig::push_trajectory_length, kMm},
      {"push.trajectory_amplitude_mm", &EnvConfig::push_trajectory_amplitude, kMm},
      {"push.trajectory_frequency", &EnvConfig::push_trajectory_frequency, 1.0},
      {"push.kappa", &EnvConfig::push_kappa, 1.0},
      {"push.goal_radius_mm", &EnvConfig::push_goal_radius, kMm},
      {"push.contact_penetration_mm", &EnvConfig::push_contact_penetration, kMm},
      {"push.cube_half_mm", &EnvConfig::push_cube_half, kMm},
      {"push.init_offset_mm", &EnvConfig::push_init_offset, kMm},
      {"push.init_yaw_deg", &EnvConfig::push_init_yaw_deg, 1.0},
      {"balance.pole_length_mm", &EnvConfig::pole_length, kMm},
      {"balance.pole_half_width_mm", &EnvConfig::pole_half_width, kMm},
      {"balance.embed_mm", &EnvConfig::pole_embed, kMm},
      {"balance.perturbation_deg_s", &EnvConfig::perturbation_deg_s, 1.0},
      {"balance.tilt_limit_deg", &EnvConfig::tilt_limit_deg, 1.0},
  };
  return keys;
}

const char* kAxisNames[6] = {"x", "y", "z", "rx", "ry", "rz"};

std::array<bool, 6> parse_axes(const std::string& s) {
  std::array<bool, 6> axes{};
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = std::min(s.find(',', start), s.size());
    const std::string name = s.substr(start, end - start);
    const auto* it = std::find(std::begin(kAxisNames), std::end(kAxisNames), name);
    if (it == std::end(kAxisNames)) throw ConfigError(fmt::format("unknown axis '{}'", name));
    axes[static_cast<std::size_t>(it - std::begin(kAxisNames))] = true;
    start = end + 1;
  }
  return axes;
}

std::string format_axes(const std::array<bool, 6>& axes) {
  std::string out;
  for (int i = 0; i < 6; ++i) {
    if (!axes[i]) continue;
    if (!out.empty()) out += ',';
    out += kAxisNames[i];
  }
  return out;
}

int image_channels(ObsMode mode) {
  switch (mode) {
    case ObsMode::kEnvState: return 0;
    case ObsMode::kTactile: return 1;
    case ObsMode::kVisual: return 3;
    case ObsMode::kVisuoTactile: return 4;
  }
  return 0;
}

}  // namespace

std::string to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::kEdgeFollow: return "edge_follow";
    case EnvKind::kSurfaceFollow: return "surface_follow";
    case EnvKind::kObjectRoll: return "object_roll";
    case EnvKind::kObjectPush: return "object_push";
    case EnvKind::kObjectBalance: return "object_balance";
  }
  return "?";
}

std::string to_string(ObsMode mode) {
  switch (mode) {
    case ObsMode::kEnvState: return "env_state";
    case ObsMode::kTactile: return "tactile";
    case ObsMode::kVisual: return "visual";
    case ObsMode::kVisuoTactile: return "visuotactile";
  }
  return "?";
}

EnvKind parse_env_kind(const std::string& s) {
  for (EnvKind k : {EnvKind::kEdgeFollow, EnvKind::kSurfaceFollow, EnvKind::kObjectRoll,
                    EnvKind::kObjectPush, EnvKind::kObjectBalance})
    if (to_string(k) == s) return k;
  throw ConfigError(fmt::format("unknown environment '{}'", s));
}

ObsMode parse_obs_mode(const std::string& s) {
  for (ObsMode m : {ObsMode::kEnvState, ObsMode::kTactile, ObsMode::kVisual, ObsMode::kVisuoTactile})
    if (to_string(m) == s) return m;
  throw ConfigError(fmt::format("unknown observation mode '{}'", s));
}

EnvConfig EnvConfig::defaults(EnvKind kind) {
  EnvConfig c;
  c.kind = kind;
  c.sensor.resolution = c.image_size;
  auto& axes = c.control.axes;
  axes.fill(false);
  switch (kind) {
    case EnvKind::kEdgeFollow:
      axes[dynamics::kX] = axes[dynamics::kY] = true;
      break;
    case EnvKind::kSurfaceFollow:
      axes[dynamics::kZ] = axes[dynamics::kRx] = axes[dynamics::kRy] = true;
      break;
    case EnvKind::kObjectRoll:
      axes[dynamics::kX] = axes[dynamics::kY] = true;
      c.sensor.tip = render::TipKind::kFlat;
      break;
    case EnvKind::kObjectPush:
      axes[dynamics::kY] = axes[dynamics::kRz] = true;
      break;
    case EnvKind::kObjectBalance:
      axes[dynamics::kX] = axes[dynamics::kY] = true;
      c.history = 2;
      c.control.max_linear = 0.20;
      break;
  }
  return c;
}

EnvConfig EnvConfig::from_config(const util::Config& cfg) {
  EnvConfig c = defaults(parse_env_kind(cfg.get_string("env.kind", "edge_follow")));
  c.mode = parse_obs_mode(cfg.get_string("env.obs", to_string(c.mode)));
  c.max_steps = static_cast<int>(cfg.get_int("env.max_steps", c.max_steps));
  c.image_size = static_cast<int>(cfg.get_int("env.image_size", c.image_size));
  c.history = static_cast<int>(cfg.get_int("env.history", c.history));
  c.reward_mm = cfg.get_bool("env.reward_mm", c.reward_mm);

  c.control.rate_hz = cfg.get_double("control.rate_hz", c.control.rate_hz);
  c.control.max_linear = cfg.get_double("control.max_linear_mm_s", c.control.max_linear / kMm) * kMm;
  c.control.max_angular_deg = cfg.get_double("control.max_angular_deg_s", c.control.max_angular_deg);
  if (auto axes = cfg.find("control.axes")) c.control.axes = parse_axes(*axes);

  const std::string tip = cfg.get_string(
      "sensor.tip", c.sensor.tip == render::TipKind::kFlat ? "flat" : "hemisphere");
  if (tip == "flat") {
    c.sensor.tip = render::TipKind::kFlat;
  } else if (tip == "hemisphere") {
    c.sensor.tip = render::TipKind::kHemisphere;
  } else {
    throw ConfigError(fmt::format("sensor.tip: unknown tip '{}'", tip));
  }
  c.sensor.radius = cfg.get_double("sensor.radius_mm", c.sensor.radius / kMm) * kMm;
  c.sensor.max_penetration =
      cfg.get_double("sensor.max_penetration_mm", c.sensor.max_penetration / kMm) * kMm;
  c.sensor.tolerance = cfg.get_double("sensor.tolerance", c.sensor.tolerance);
  c.sensor.border_width = static_cast<int>(cfg.get_int("sensor.border_width", c.sensor.border_width));
  c.sensor.resolution = c.image_size;

  const std::string shape = cfg.get_string("edge.shape", "straight");
  if (shape == "straight") {
    c.edge_shape = EdgeShape::kStraight;
  } else if (shape == "square") {
    c.edge_shape = EdgeShape::kSquare;
  } else {
    throw ConfigError(fmt::format("edge.shape: unknown shape '{}'", shape));
  }
  c.surface_octaves = static_cast<int>(cfg.get_int("surface.octaves", c.surface_octaves));
  c.push_waypoints = static_cast<int>(cfg.get_int("push.waypoints", c.push_waypoints));
  for (const auto& k : double_keys()) {
    c.*k.field = cfg.get_double(k.key, c.*k.field / k.scale) * k.scale;
  }
  c.validate();
  return c;
}

util::Config EnvConfig::to_config() const {
  util::Config out;
  out.set("env.kind", to_string(kind));
  out.set("env.obs", to_string(mode));
  out.set("env.max_steps", std::to_string(max_steps));
  out.set("env.image_size", std::to_string(image_size));
  out.set("env.history", std::to_string(history));
  out.set("env.reward_mm", reward_mm ? "true" : "false");
  out.set("control.rate_hz", fmt::format("{}", control.rate_hz));
  out.set("control.max_linear_mm_s", fmt::format("{}", control.max_linear / kMm));
  out.set("control.max_angular_deg_s", fmt::format("{}", control.max_angular_deg));
  out.set("control.axes", format_axes(control.axes));
  out.set("sensor.tip", sensor.tip == render::TipKind::kFlat ? "flat" : "hemisphere");
  out.set("sensor.radius_mm", fmt::format("{}", sensor.radius / kMm));
  out.set("sensor.max_penetration_mm", fmt::format("{}", sensor.max_penetration / kMm));
  out.set("sensor.tolerance", fmt::format("{}", sensor.tolerance));
  out.set("sensor.border_width", std::to_string(sensor.border_width));
  out.set("edge.shape", edge_shape == EdgeShape::kSquare ? "square" : "straight");
  out.set("surface.octaves", std::to_string(surface_octaves));
  out.set("push.waypoints", std::to_string(push_waypoints));
  for (const auto& k : double_keys()) out.set(k.key, fmt::format("{}", this->*k.field / k.scale));
  return out;
}

std::vector<std::string> EnvConfig::known_keys() {
  std::vector<std::string> keys = {
      "env.kind", "env.obs", "env.max_steps", "env.image_size", "env.history", "env.reward_mm",
      "control.rate_hz", "control.max_linear_mm_s", "control.max_angular_deg_s", "control.axes",
      "sensor.tip", "sensor.radius_mm", "sensor.max_penetration_mm", "sensor.tolerance",
      "sensor.border_width", "edge.shape", "surface.octaves", "push.waypoints"};
  for (const auto& k : double_keys()) keys.emplace_back(k.key);
  return keys;
}

void EnvConfig::validate() const {
  control.validate();
  sensor.validate();
  if (max_steps < 1) throw ConfigError("env.max_steps must be >= 1");
  if (image_size < 8) throw ConfigError("env.image_size must be >= 8");
  if (history < 1 || history > 8) throw ConfigError("env.history must be in [1, 8]");
  if (sensor.resolution != image_size)
    throw ConfigError("sensor resolution must equal env.image_size");
  if (!(embed_min > 0.0) || embed_max < embed_min) throw ConfigError("edge embed range invalid");
  if (!(roll_embed_min > 0.0) || roll_embed_max < roll_embed_min)
    throw ConfigError("roll embed range invalid");
  if (!(ball_diameter_min > 0.0) || ball_diameter_max < ball_diameter_min)
    throw ConfigError("roll diameter range invalid");
  if (target_penetration < 0.0 || target_penetration >= sensor.max_penetration)
    throw ConfigError("surface.target_penetration_mm must be in [0, max penetration)");
  if (surface_octaves < 1) throw ConfigError("surface.octaves must be >= 1");
  if (push_waypoints < 2) throw ConfigError("push.waypoints must be >= 2");
  if (!(push_contact_penetration > 0.0) || push_contact_penetration >= sensor.radius)
    throw ConfigError("push contact penetration must be in (0, radius)");
  if (!(pole_length > 0.0) || !(tilt_limit_deg > 0.0)) throw ConfigError("balance params invalid");
}

Env::Env(EnvConfig cfg) : cfg_(std::move(cfg)), sensor_(cfg_.sensor) { cfg_.validate(); }

ObsSpec Env::obs_spec() const {
  ObsSpec s;
  const int c = image_channels(cfg_.mode);
  if (c > 0) {
    s.channels = c * cfg_.history;
    s.height = s.width = cfg_.image_size;
  }
  const std::size_t dim = cfg_.mode == ObsMode::kEnvState ? env_state_layout().size()
                                                          : image_extras().size();
  s.state_dim = static_cast<int>(dim) * cfg_.history;
  return s;
}

std::vector<geom::SdfShape> Env::visual_scene() const {
  std::vector<geom::SdfShape> scene = contact_scene();
  const double r = cfg_.sensor.radius;
  geom::SdfShape body =
      cfg_.sensor.tip == render::TipKind::kHemisphere
          ? geom::SdfShape::sphere(r, geom::Pose{tcp_.transform_point(geom::Vec3(0, 0, r)),
                                                 tcp_.orientation})
          : geom::SdfShape::box(geom::Vec3(r, r, r / 2),
                                geom::Pose{tcp_.transform_point(geom::Vec3(0, 0, r / 2)),
                                           tcp_.orientation});
  body.albedo = geom::Vec3(0.2, 0.3, 0.9);
  scene.push_back(body);
  return scene;
}

render::TactileImage Env::render_tactile() const {
  const auto scene = contact_scene();
  return sensor_.render(scene, tcp_);
}

render::RgbImage Env::render_visual() const {
  const auto scene = visual_scene();
  render::CameraSpec cam = camera();
  cam.resolution = cfg_.image_size;
  return render::render_rgb(scene, cam);
}

Env::Frame Env::make_frame() const {
  Frame f;
  switch (cfg_.mode) {
    case ObsMode::kEnvState: break;
    case ObsMode::kTactile: f.image = render_tactile(); break;
    case ObsMode::kVisual: f.image = render_visual(); break;
    case ObsMode::kVisuoTactile:
      f.image = render::compose_rgbt(render_visual(), render_tactile());
      break;
  }
  const std::vector<double> s = cfg_.mode == ObsMode::kEnvState ? env_state() : image_extras();
  f.state.assign(s.begin(), s.end());
  return f;
}

Observation Env::observation() const {
  Observation obs;
  if (history_.empty()) return obs;
  const auto& first = history_.front();
  if (!first.image.data.empty()) {
    const int c = first.image.channels;
    obs.image = render::ByteImage(first.image.width, first.image.height,
                                  c * static_cast<int>(history_.size()));
    std::size_t off = 0;
    for (const auto& f : history_) {
      std::copy(f.image.data.begin(), f.image.data.end(),
                obs.image.data.begin() + static_cast<std::ptrdiff_t>(off));
      off += f.image.data.size();
    }
  }
  for (const auto& f : history_) obs.state.insert(obs.state.end(), f.state.begin(), f.state.end());
  return obs;
}

Observation Env::reset(std::uint64_t seed) {
  util::Rng rng(seed);
  steps_ = 0;
  done_ = false;
  tcp_twist_ = {};
  on_reset(rng);
  history_.clear();
  const Frame f = make_frame();
  for (int i = 0; i < cfg_.history; ++i) history_.push_back(f);
  return observation();
}

StepResult Env::step(std::span<const double> action) {
  if (static_cast<int>(action.size()) != action_dim())
    throw std::invalid_argument(fmt::format("{}: expected {} action values, got {}",
                                            to_string(cfg_.kind), action_dim(), action.size()));
  if (history_.empty() || done_) throw std::logic_error("step called before reset or after done");
  on_step(action);
  StepResult r = evaluate();
  ++steps_;
  if (!r.done && steps_ >= cfg_.max_steps) {
    r.done = true;
    r.truncated = true;
    r.info.termination = "budget";
  }
  done_ = r.done;
  history_.pop_front();
  history_.push_back(make_frame());
  r.observation = observation();
  return r;
}

void Env::set_tcp_pose(const geom::Pose& pose) {
  tcp_ = pose;
  on_tcp_set();
}

StepResult Env::evaluate() const {
  StepResult r;
  score(r);
  return r;
}

std::unique_ptr<Env> make_env(const EnvConfig& cfg) {
  switch (cfg.kind) {
    case EnvKind::kEdgeFollow: return std::make_unique<EdgeFollowEnv>(cfg);
    case EnvKind::kSurfaceFollow: return std::make_unique<SurfaceFollowEnv>(cfg);
    case EnvKind::kObjectRoll: return std::make_unique<ObjectRollEnv>(cfg);
    case EnvKind::kObjectPush: return std::make_unique<ObjectPushEnv>(cfg);
    case EnvKind::kObjectBalance: return std::make_unique<ObjectBalanceEnv>(cfg);
  }
  throw ConfigError("unknown environment kind");
}

}  // namespace tactile::envs
