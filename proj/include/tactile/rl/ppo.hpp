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
#include <span>
#include <string>
#include <vector>

#include "tactile/nn/tensor.hpp"
#include "tactile/render/image.hpp"
#include "tactile/rl/policy.hpp"
#include "tactile/util/config.hpp"
#include "tactile/util/rng.hpp"

namespace tactile::rl {

struct PPOConfig {
  double learning_rate = 3e-4;
  std::string lr_schedule = "linear";  // linear (to 0 at train.total_steps) | constant
  int n_envs = 10;
  int epoch_steps = 2048;  // transitions per rollout over all envs
  int batch_size = 64;
  int n_epochs = 10;
  double gamma = 0.95;
  double gae_lambda = 0.9;
  double clip_range = 0.2;
  double ent_coef = 0.0;
  double vf_coef = 0.5;
  double max_grad_norm = 0.5;
  double kl_limit = 0.1;  // stop the epoch loop once a minibatch exceeds it; <= 0 disables
  double adam_eps = 1e-5;
  int augment_shift = 2;  // pixels; image observations only, 0 disables

  int steps_per_env() const { return (epoch_steps + n_envs - 1) / n_envs; }
  void validate() const;  // throws ConfigError
  static PPOConfig from_config(const util::Config& cfg);
  void to_config(util::Config& cfg) const;
  static std::vector<std::string> known_keys();
};

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;
};

// delta_t = r_t + gamma V_{t+1} (1 - done_t) - V_t, with V_T = bootstrap;
// A_t = delta_t + gamma lambda (1 - done_t) A_{t+1}. Throws std::invalid_argument
// on length mismatch.
GaeResult gae(std::span<const double> rewards, std::span<const double> values,
              std::span<const std::uint8_t> dones, double bootstrap_value, double gamma,
              double lambda);

// min(r A, clip(r, 1 - eps, 1 + eps) A).
double clipped_objective(double ratio, double advantage, double clip_range);
// True when the clipped branch is the active minimum and strictly below the
// unclipped one (zero policy gradient for that sample).
bool clip_active(double ratio, double advantage, double clip_range);

// In-place standardization: mean 0, std 1 (population std). A constant
// batch becomes all zeros.
void normalize_advantages(std::vector<double>& adv);

// Translates every plane of a planar image by (dx, dy) pixels with zero fill.
render::ByteImage shift_image(const render::ByteImage& img, int dx, int dy);
// Random translation in [-max_shift, max_shift]^2, the same for all planes.
render::ByteImage augment(const render::ByteImage& img, int max_shift, util::Rng& rng);

struct Transition {
  render::ByteImage image;
  std::vector<float> state;
  std::vector<float> action;  // pre-clipping sample
  double log_prob = 0.0;
  double value = 0.0;
  double reward = 0.0;  // includes the truncation bootstrap
  bool done = false;
};

class RolloutBuffer {
 public:
  RolloutBuffer(int n_envs, int steps_per_env);
  void add(int env, Transition t);
  bool full() const;
  // Runs GAE per env with the given bootstrap values, then normalizes the
  // advantages over the whole buffer.
  void finish(const std::vector<double>& last_values, double gamma, double lambda);
  std::size_t size() const { return static_cast<std::size_t>(n_envs_) * steps_; }
  const Transition& at(std::size_t flat) const;
  double advantage(std::size_t flat) const { return adv_[flat]; }
  double ret(std::size_t flat) const { return ret_[flat]; }
  const std::vector<double>& raw_advantages() const { return raw_adv_; }
  const std::vector<double>& advantages() const { return adv_; }
  bool finished() const { return finished_; }
  void clear();

 private:
  int n_envs_, steps_;
  std::vector<std::vector<Transition>> data_;
  std::vector<double> adv_, raw_adv_, ret_;
  bool finished_ = false;
};

struct UpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
  double approx_kl = 0.0;
  double grad_norm = 0.0;       // mean pre-clip norm
  double max_clipped_norm = 0.0;  // largest post-clip norm
  int minibatches = 0;
  int epochs_completed = 0;
  bool early_stopped = false;
};

// Packs observations into network inputs (pixels scaled to [0, 1]).
void pack_inputs(const std::vector<const render::ByteImage*>& images,
                 const std::vector<const std::vector<float>*>& states, const InputShape& shape,
                 nn::Tensor<float>& image_out, nn::Tensor<float>& state_out);

class Ppo {
 public:
  Ppo(ActorCritic<float>& net, const PPOConfig& cfg);
  // Throws std::runtime_error on a non-finite loss.
  UpdateStats update(const RolloutBuffer& buffer, util::Rng& rng);
  // Fraction of training still ahead, in [0, 1]; scales the learning rate
  // under the linear schedule.
  void set_remaining(double fraction);

 private:
  ActorCritic<float>& net_;
  PPOConfig cfg_;
  nn::Adam<float> adam_;
};

void save_checkpoint(const std::string& path, ActorCritic<float>& net);
// Throws IoError on a bad file and ConfigError on a signature mismatch.
void load_checkpoint(const std::string& path, ActorCritic<float>& net);

}  // namespace tactile::rl
