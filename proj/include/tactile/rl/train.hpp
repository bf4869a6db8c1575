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

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tactile/envs/env.hpp"
#include "tactile/rl/policy.hpp"
#include "tactile/rl/ppo.hpp"
#include "tactile/util/config.hpp"

namespace tactile::rl {

struct TrainConfig {
  long long total_steps = 100000;  // env transitions; rounded up to whole rollouts
  long long eval_every = 20000;
  int eval_episodes = 10;
  int smooth_window = 50;
  int threads = 1;  // env stepping workers; outputs do not depend on it

  void validate() const;
  static TrainConfig from_config(const util::Config& cfg);
  void to_config(util::Config& cfg) const;
  static std::vector<std::string> known_keys();
};

struct EpisodeRecord {
  int index = 0;
  double ret = 0.0;
  int length = 0;
  bool success = false;
  std::string termination;
  // Info metrics at the last step and averaged over the episode ("mean_" prefix).
  std::map<std::string, double> metrics;
};

struct EvalResult {
  double mean_return = 0.0;
  double success_rate = 0.0;
  double mean_length = 0.0;
  std::vector<EpisodeRecord> episodes;
  std::map<std::string, double> mean_metrics;
};

// Fixed per-run evaluation seeds so successive evaluations see the same episodes.
std::uint64_t eval_episode_seed(std::uint64_t seed, int episode);

// Deterministic (mean) actions, no augmentation. Episodes run in lockstep.
EvalResult evaluate(ActorCritic<float>& net, const envs::EnvConfig& env_cfg, int episodes,
                    std::uint64_t seed, int threads = 1);

enum class Baseline { kRandom, kZero, kOracle };
Baseline parse_baseline(const std::string& name);  // random|zero|oracle
EvalResult evaluate_baseline(Baseline kind, const envs::EnvConfig& env_cfg, int episodes,
                             std::uint64_t seed, int threads = 1);

// Writes one row per episode with return, length, success, termination and metrics.
void write_episodes_csv(const std::string& path, const EvalResult& result);

InputShape input_shape(const envs::ObsSpec& spec);

// Mean action for one observation, clipped to [-1, 1].
std::vector<double> policy_action(ActorCritic<float>& net, const envs::Observation& obs);

struct TrainResult {
  long long steps = 0;
  int updates = 0;
  bool interrupted = false;
  EvalResult final_eval;
  std::vector<std::pair<long long, double>> eval_curve;  // (step, mean eval return)
};

using LogFn = std::function<void(const std::string&)>;

// PPO over cfg.n_envs environment copies. Writes into out_dir:
//   episodes.csv  training episodes (step, env, return, length, success, termination)
//   updates.csv   per-update statistics
//   eval.csv      periodic deterministic evaluations
//   curve.csv     step, episode return, smoothed return, latest eval return
//   checkpoint.bin
// Setting *stop ends the run early with all files written so far and the
// current weights checkpointed. Exceptions propagate after the same flush.
TrainResult train(const envs::EnvConfig& env_cfg, const NetworkSpec& net_spec, const PPOConfig& ppo_cfg,
                  const TrainConfig& train_cfg, std::uint64_t seed, const std::string& out_dir,
                  const std::atomic<bool>* stop = nullptr, const LogFn& log = {});

}  // namespace tactile::rl
