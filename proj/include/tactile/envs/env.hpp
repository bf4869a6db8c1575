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

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tactile/dynamics/control.hpp"
#include "tactile/geom/pose.hpp"
#include "tactile/geom/sdf.hpp"
#include "tactile/render/image.hpp"
#include "tactile/render/scene.hpp"
#include "tactile/render/tactile.hpp"
#include "tactile/util/config.hpp"
#include "tactile/util/rng.hpp"

namespace tactile::envs {

enum class EnvKind { kEdgeFollow, kSurfaceFollow, kObjectRoll, kObjectPush, kObjectBalance };
enum class ObsMode { kEnvState, kTactile, kVisual, kVisuoTactile };
enum class EdgeShape { kStraight, kSquare };

std::string to_string(EnvKind kind);
std::string to_string(ObsMode mode);
EnvKind parse_env_kind(const std::string& s);  // throws ConfigError
ObsMode parse_obs_mode(const std::string& s);

struct EnvConfig {
  EnvKind kind = EnvKind::kEdgeFollow;
  ObsMode mode = ObsMode::kEnvState;
  int max_steps = 250;
  int image_size = 64;
  int history = 1;
  bool reward_mm = false;  // distance terms in millimeters instead of meters
  dynamics::ControlConfig control;
  render::SensorSpec sensor;

  // Edge follow.
  EdgeShape edge_shape = EdgeShape::kStraight;
  double edge_goal_distance = 0.05;
  double edge_square_half = 0.025;
  double edge_lookahead = 0.02;
  double embed_min = 0.0015;
  double embed_max = 0.0035;

  // Surface follow.
  double surface_goal_distance = 0.10;
  double target_penetration = 0.002;
  double surface_amplitude = 0.01;
  double surface_frequency = 5.0;
  int surface_octaves = 1;

  // Object roll.
  double ball_diameter_min = 0.005;
  double ball_diameter_max = 0.010;
  double roll_start_radius = 0.008;
  double roll_goal_radius = 0.008;
  double roll_embed_min = 0.0005;
  double roll_embed_max = 0.0015;

  // Object push.
  double push_trajectory_length = 0.20;
  int push_waypoints = 11;
  double push_trajectory_amplitude = 0.02;
  double push_trajectory_frequency = 4.0;
  double push_kappa = 0.5;
  double push_goal_radius = 0.025;
  double push_contact_penetration = 0.002;
  double push_cube_half = 0.025;
  double push_init_offset = 0.002;
  double push_init_yaw_deg = 5.0;

  // Object balance.
  double pole_length = 0.10;
  double pole_half_width = 0.01;
  double pole_embed = 0.0015;
  double perturbation_deg_s = 30.0;
  double tilt_limit_deg = 35.0;

  // Defaults for one task (history, tip, action axes, speed limits).
  static EnvConfig defaults(EnvKind kind);
  // Defaults for the kind named by env.kind, overridden by every other key.
  static EnvConfig from_config(const util::Config& cfg);
  util::Config to_config() const;
  static std::vector<std::string> known_keys();
  void validate() const;  // throws ConfigError
};

struct Observation {
  render::ByteImage image;  // empty for EnvState
  std::vector<float> state;
};

struct StepInfo {
  bool success = false;
  std::string termination;  // "", "goal", "tilt", "budget"
  std::map<std::string, double> metrics;
};

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool done = false;
  bool truncated = false;  // ended by the step budget only
  StepInfo info;
};

// Dimensions of the observation produced for a config.
struct ObsSpec {
  int channels = 0;  // 0 when no image
  int height = 0;
  int width = 0;
  int state_dim = 0;
};

class Env {
 public:
  explicit Env(EnvConfig cfg);
  virtual ~Env() = default;

  Observation reset(std::uint64_t seed);
  StepResult step(std::span<const double> action);

  const EnvConfig& config() const { return cfg_; }
  virtual int action_dim() const = 0;
  ObsSpec obs_spec() const;
  int step_count() const { return steps_; }
  bool done() const { return done_; }

  // Current stacked observation.
  Observation observation() const;

  // Privileged access (rewards, metrics, scripted controllers, logging).
  virtual std::vector<double> env_state() const = 0;
  virtual std::vector<std::string> env_state_layout() const = 0;
  virtual std::vector<double> oracle_action() const = 0;
  const geom::Pose& tcp_pose() const { return tcp_; }
  void set_tcp_pose(const geom::Pose& pose);
  // Reward, termination and metrics of the current state, without stepping.
  StepResult evaluate() const;
  const geom::Twist& tcp_twist() const { return tcp_twist_; }
  virtual geom::Pose object_pose() const { return geom::Pose::identity(); }

  // Geometry seen by the tactile sensor, and by the external camera.
  virtual std::vector<geom::SdfShape> contact_scene() const = 0;
  virtual std::vector<geom::SdfShape> visual_scene() const;
  virtual render::CameraSpec camera() const = 0;

  render::TactileImage render_tactile() const;
  render::RgbImage render_visual() const;

 protected:
  // Scalars appended to image observations.
  virtual std::vector<double> image_extras() const { return {}; }
  virtual void on_reset(util::Rng& rng) = 0;
  // Advances the simulation by one control step.
  virtual void on_step(std::span<const double> action) = 0;
  // Fills reward, done (terminal) and info for the current state.
  virtual void score(StepResult& result) const = 0;
  virtual void on_tcp_set() {}

  double distance_scale() const { return cfg_.reward_mm ? 1000.0 : 1.0; }

  EnvConfig cfg_;
  render::TactileSensor sensor_;
  geom::Pose tcp_;
  geom::Twist tcp_twist_;

 private:
  struct Frame {
    render::ByteImage image;
    std::vector<float> state;
  };
  Frame make_frame() const;

  std::deque<Frame> history_;
  int steps_ = 0;
  bool done_ = false;
};

std::unique_ptr<Env> make_env(const EnvConfig& cfg);

// Scale factors used by env_state() vectors.
constexpr double kPositionScale = 0.05;   // meters
constexpr double kBallRadiusScale = 0.005;

}  // namespace tactile::envs
