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

#include "tactile/rl/train.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <memory>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "tactile/util/csv.hpp"
#include "tactile/util/errors.hpp"
#include "tactile/util/parallel.hpp"
#include "tactile/util/rng.hpp"

namespace tactile::rl {

namespace {

using envs::Env;
using envs::Observation;

enum Stream : std::uint64_t {
  kInitStream = 1,
  kActionStream = 2,
  kAugmentStream = 3,
  kShuffleStream = 4,
  kEvalStream = 0xE7A1,
  kBaselineStream = 0xBA5E,
  kResetStream = 100,
};

using ActionFn = std::function<std::vector<std::vector<double>>(
    const std::vector<int>& active, const std::vector<Observation>& obs,
    std::vector<std::unique_ptr<Env>>& envs)>;

EvalResult run_episodes(const envs::EnvConfig& cfg, int episodes, std::uint64_t seed, int threads,
                        const ActionFn& act) {
  EvalResult out;
  std::vector<std::unique_ptr<Env>> envs(static_cast<std::size_t>(episodes));
  std::vector<Observation> obs(envs.size());
  out.episodes.resize(envs.size());
  std::vector<std::map<std::string, double>> sums(envs.size());
  std::vector<int> active;
  for (int i = 0; i < episodes; ++i) {
    envs[i] = envs::make_env(cfg);
    obs[i] = envs[i]->reset(eval_episode_seed(seed, i));
    out.episodes[i].index = i;
    active.push_back(i);
  }
  std::vector<envs::StepResult> results(envs.size());
  while (!active.empty()) {
    const auto actions = act(active, obs, envs);
    util::parallel_for(active.size(), threads, [&](std::size_t k) {
      const int i = active[k];
      results[i] = envs[i]->step(actions[k]);
    });
    std::vector<int> still;
    for (int i : active) {
      auto& r = results[i];
      auto& rec = out.episodes[i];
      rec.ret += r.reward;
      ++rec.length;
      for (const auto& [k, v] : r.info.metrics) sums[i][k] += v;
      obs[i] = std::move(r.observation);
      if (r.done || r.truncated) {
        rec.success = r.info.success;
        rec.termination = r.info.termination;
        for (const auto& [k, v] : r.info.metrics) rec.metrics[k] = v;
        for (const auto& [k, v] : sums[i]) rec.metrics["mean_" + k] = v / rec.length;
      } else {
        still.push_back(i);
      }
    }
    active = std::move(still);
  }
  if (episodes > 0) {
    for (const auto& e : out.episodes) {
      out.mean_return += e.ret;
      out.success_rate += e.success ? 1.0 : 0.0;
      out.mean_length += e.length;
      for (const auto& [k, v] : e.metrics) out.mean_metrics[k] += v;
    }
    out.mean_return /= episodes;
    out.success_rate /= episodes;
    out.mean_length /= episodes;
    for (auto& [k, v] : out.mean_metrics) v /= episodes;
  }
  return out;
}

void pack_observations(const std::vector<const Observation*>& obs, const InputShape& shape,
                       nn::Tensor<float>& images, nn::Tensor<float>& state) {
  std::vector<const render::ByteImage*> imgs;
  std::vector<const std::vector<float>*> states;
  for (const auto* o : obs) {
    imgs.push_back(&o->image);
    states.push_back(&o->state);
  }
  pack_inputs(imgs, states, shape, images, state);
}

std::vector<double> clipped(const float* mean, int dim) {
  std::vector<double> a(static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j) a[j] = std::clamp(static_cast<double>(mean[j]), -1.0, 1.0);
  return a;
}

std::vector<std::string> metric_keys(const EvalResult& r) {
  std::set<std::string> keys;
  for (const auto& e : r.episodes)
    for (const auto& [k, v] : e.metrics) keys.insert(k);
  return {keys.begin(), keys.end()};
}

}  // namespace

void TrainConfig::validate() const {
  if (total_steps < 0) throw ConfigError("train.total_steps must be >= 0");
  if (eval_every < 1) throw ConfigError("train.eval_every must be >= 1");
  if (eval_episodes < 1) throw ConfigError("train.eval_episodes must be >= 1");
  if (smooth_window < 1) throw ConfigError("train.smooth_window must be >= 1");
  if (threads < 1) throw ConfigError("train.threads must be >= 1");
}

TrainConfig TrainConfig::from_config(const util::Config& cfg) {
  TrainConfig c;
  c.total_steps = cfg.get_int("train.total_steps", c.total_steps);
  c.eval_every = cfg.get_int("train.eval_every", c.eval_every);
  c.eval_episodes = static_cast<int>(cfg.get_int("train.eval_episodes", c.eval_episodes));
  c.smooth_window = static_cast<int>(cfg.get_int("train.smooth_window", c.smooth_window));
  c.threads = static_cast<int>(cfg.get_int("train.threads", c.threads));
  c.validate();
  return c;
}

void TrainConfig::to_config(util::Config& cfg) const {
  cfg.set("train.total_steps", std::to_string(total_steps));
  cfg.set("train.eval_every", std::to_string(eval_every));
  cfg.set("train.eval_episodes", std::to_string(eval_episodes));
  cfg.set("train.smooth_window", std::to_string(smooth_window));
  cfg.set("train.threads", std::to_string(threads));
}

std::vector<std::string> TrainConfig::known_keys() {
  return {"train.total_steps", "train.eval_every", "train.eval_episodes", "train.smooth_window",
          "train.threads"};
}

std::uint64_t eval_episode_seed(std::uint64_t seed, int episode) {
  return util::mix_seed(util::mix_seed(seed, kEvalStream), static_cast<std::uint64_t>(episode));
}

InputShape input_shape(const envs::ObsSpec& spec) {
  return {spec.channels, spec.height, spec.width, spec.state_dim};
}

EvalResult evaluate(ActorCritic<float>& net, const envs::EnvConfig& env_cfg, int episodes,
                    std::uint64_t seed, int threads) {
  const InputShape shape = net.input();
  return run_episodes(env_cfg, episodes, seed, threads,
                      [&](const std::vector<int>& active, const std::vector<Observation>& obs,
                          std::vector<std::unique_ptr<Env>>&) {
                        std::vector<const Observation*> batch;
                        for (int i : active) batch.push_back(&obs[i]);
                        nn::Tensor<float> xi, xs;
                        pack_observations(batch, shape, xi, xs);
                        const auto out = net.forward(xi, xs, false);
                        std::vector<std::vector<double>> acts;
                        for (std::size_t k = 0; k < active.size(); ++k)
                          acts.push_back(clipped(out.mean.ptr() + k * net.action_dim(), net.action_dim()));
                        return acts;
                      });
}

std::vector<double> policy_action(ActorCritic<float>& net, const Observation& obs) {
  nn::Tensor<float> xi, xs;
  pack_observations({&obs}, net.input(), xi, xs);
  const auto out = net.forward(xi, xs, false);
  return clipped(out.mean.ptr(), net.action_dim());
}

Baseline parse_baseline(const std::string& name) {
  if (name == "random") return Baseline::kRandom;
  if (name == "zero") return Baseline::kZero;
  if (name == "oracle") return Baseline::kOracle;
  throw ConfigError(fmt::format("unknown baseline '{}' (expected random, zero or oracle)", name));
}

EvalResult evaluate_baseline(Baseline kind, const envs::EnvConfig& env_cfg, int episodes,
                             std::uint64_t seed, int threads) {
  std::vector<util::Rng> rngs;
  for (int i = 0; i < episodes; ++i)
    rngs.emplace_back(util::mix_seed(util::mix_seed(seed, kBaselineStream), static_cast<std::uint64_t>(i)));
  return run_episodes(env_cfg, episodes, seed, threads,
                      [&](const std::vector<int>& active, const std::vector<Observation>&,
                          std::vector<std::unique_ptr<Env>>& envs) {
                        std::vector<std::vector<double>> acts;
                        for (int i : active) {
                          const int dim = envs[i]->action_dim();
                          std::vector<double> a(static_cast<std::size_t>(dim), 0.0);
                          if (kind == Baseline::kRandom)
                            for (double& x : a) x = rngs[i].uniform(-1.0, 1.0);
                          else if (kind == Baseline::kOracle)
                            a = envs[i]->oracle_action();
                          acts.push_back(std::move(a));
                        }
                        return acts;
                      });
}

void write_episodes_csv(const std::string& path, const EvalResult& result) {
  const auto keys = metric_keys(result);
  std::vector<std::string> header = {"episode", "return", "length", "success", "termination"};
  header.insert(header.end(), keys.begin(), keys.end());
  util::CsvWriter csv(path, header);
  for (const auto& e : result.episodes) {
    csv.cell(e.index).cell(e.ret).cell(e.length).cell(e.success ? 1 : 0).cell(e.termination);
    for (const auto& k : keys) {
      auto it = e.metrics.find(k);
      if (it == e.metrics.end())
        csv.empty();
      else
        csv.cell(it->second);
    }
    csv.end_row();
  }
}

TrainResult train(const envs::EnvConfig& env_cfg, const NetworkSpec& net_spec, const PPOConfig& ppo_cfg,
                  const TrainConfig& train_cfg, std::uint64_t seed, const std::string& out_dir,
                  const std::atomic<bool>* stop, const LogFn& log) {
  env_cfg.validate();
  ppo_cfg.validate();
  train_cfg.validate();
  std::filesystem::create_directories(out_dir);
  auto path = [&](const char* name) { return (std::filesystem::path(out_dir) / name).string(); };
  auto say = [&](const std::string& s) {
    if (log) log(s);
  };
  auto stopped = [&] { return stop != nullptr && stop->load(); };

  const int n_envs = ppo_cfg.n_envs, spe = ppo_cfg.steps_per_env();
  std::vector<std::unique_ptr<Env>> envs;
  for (int e = 0; e < n_envs; ++e) envs.push_back(envs::make_env(env_cfg));
  const InputShape shape = input_shape(envs[0]->obs_spec());
  const int adim = envs[0]->action_dim();
  ActorCritic<float> net(net_spec, shape, adim, util::mix_seed(seed, kInitStream));
  Ppo ppo(net, ppo_cfg);
  util::Rng act_rng(util::mix_seed(seed, kActionStream));
  util::Rng aug_rng(util::mix_seed(seed, kAugmentStream));
  util::Rng shuffle_rng(util::mix_seed(seed, kShuffleStream));
  const bool augment_images = shape.channels > 0 && ppo_cfg.augment_shift > 0;

  util::CsvWriter episodes_csv(path("episodes.csv"),
                               {"step", "env", "episode", "return", "length", "success", "termination"});
  util::CsvWriter updates_csv(path("updates.csv"),
                              {"update", "step", "policy_loss", "value_loss", "entropy", "approx_kl",
                               "clip_fraction", "grad_norm", "minibatches", "early_stopped"});
  util::CsvWriter curve_csv(path("curve.csv"), {"step", "episode_return", "smoothed_return", "eval_return"});
  std::unique_ptr<util::CsvWriter> eval_csv;
  std::vector<std::string> eval_keys;

  TrainResult result;
  double last_eval = std::nan("");
  auto run_eval = [&](long long step) {
    result.final_eval = evaluate(net, env_cfg, train_cfg.eval_episodes, seed, train_cfg.threads);
    const auto& ev = result.final_eval;
    if (!eval_csv) {
      eval_keys = metric_keys(ev);
      std::vector<std::string> header = {"step", "mean_return", "success_rate", "mean_length"};
      header.insert(header.end(), eval_keys.begin(), eval_keys.end());
      eval_csv = std::make_unique<util::CsvWriter>(path("eval.csv"), header);
    }
    eval_csv->cell(step).cell(ev.mean_return).cell(ev.success_rate).cell(ev.mean_length);
    for (const auto& k : eval_keys) {
      auto it = ev.mean_metrics.find(k);
      if (it == ev.mean_metrics.end())
        eval_csv->empty();
      else
        eval_csv->cell(it->second);
    }
    eval_csv->end_row();
    eval_csv->flush();
    last_eval = ev.mean_return;
    result.eval_curve.emplace_back(step, ev.mean_return);
    say(fmt::format("eval step {}: return {:.3f} success {:.2f} length {:.1f}", step, ev.mean_return,
                    ev.success_rate, ev.mean_length));
  };

  std::vector<long long> episode_count(static_cast<std::size_t>(n_envs), 0);
  std::vector<Observation> obs(static_cast<std::size_t>(n_envs));
  std::vector<double> ep_return(static_cast<std::size_t>(n_envs), 0.0);
  std::vector<int> ep_length(static_cast<std::size_t>(n_envs), 0);
  auto reset_env = [&](int e) {
    const auto s = util::mix_seed(util::mix_seed(seed, kResetStream + e), episode_count[e]);
    obs[e] = envs[e]->reset(s);
    ep_return[e] = 0.0;
    ep_length[e] = 0;
  };
  for (int e = 0; e < n_envs; ++e) reset_env(e);

  std::vector<double> all_returns;
  long long steps = 0, global_episode = 0;
  run_eval(0);
  long long next_eval = train_cfg.eval_every;

  std::vector<envs::StepResult> results(static_cast<std::size_t>(n_envs));
  while (steps < train_cfg.total_steps && !stopped()) {
    ppo.set_remaining(1.0 - static_cast<double>(steps) / static_cast<double>(train_cfg.total_steps));
    RolloutBuffer buffer(n_envs, spe);
    for (int t = 0; t < spe && !stopped(); ++t) {
      std::vector<Observation> policy_obs(static_cast<std::size_t>(n_envs));
      std::vector<const Observation*> batch;
      for (int e = 0; e < n_envs; ++e) {
        policy_obs[e].state = obs[e].state;
        policy_obs[e].image = augment_images ? augment(obs[e].image, ppo_cfg.augment_shift, aug_rng) : obs[e].image;
        batch.push_back(&policy_obs[e]);
      }
      nn::Tensor<float> xi, xs;
      pack_observations(batch, shape, xi, xs);
      const auto out = net.forward(xi, xs, false);
      const float* log_std = net.log_std().value.data();
      std::vector<Transition> trans(static_cast<std::size_t>(n_envs));
      std::vector<std::vector<double>> env_actions(static_cast<std::size_t>(n_envs));
      for (int e = 0; e < n_envs; ++e) {
        const float* mu = out.mean.ptr() + static_cast<std::size_t>(e) * adim;
        auto& tr = trans[e];
        tr.action.resize(static_cast<std::size_t>(adim));
        env_actions[e].resize(static_cast<std::size_t>(adim));
        for (int j = 0; j < adim; ++j) {
          tr.action[j] = static_cast<float>(mu[j] + std::exp(static_cast<double>(log_std[j])) * act_rng.normal());
          env_actions[e][j] = std::clamp(static_cast<double>(tr.action[j]), -1.0, 1.0);
        }
        tr.log_prob = gaussian_log_prob(mu, log_std, tr.action.data(), adim);
        tr.value = out.value.data[e];
        tr.image = std::move(policy_obs[e].image);
        tr.state = std::move(policy_obs[e].state);
      }
      util::parallel_for(static_cast<std::size_t>(n_envs), train_cfg.threads,
                         [&](std::size_t e) { results[e] = envs[e]->step(env_actions[e]); });

      // Budget-truncated episodes bootstrap from the value of their last observation.
      std::vector<int> truncated;
      std::vector<const Observation*> final_obs;
      for (int e = 0; e < n_envs; ++e)
        if (results[e].truncated && !results[e].done) {
          truncated.push_back(e);
          final_obs.push_back(&results[e].observation);
        }
      std::vector<double> bootstrap(static_cast<std::size_t>(n_envs), 0.0);
      if (!truncated.empty()) {
        nn::Tensor<float> fi, fs;
        pack_observations(final_obs, shape, fi, fs);
        const auto fv = net.forward(fi, fs, false);
        for (std::size_t k = 0; k < truncated.size(); ++k) bootstrap[truncated[k]] = fv.value.data[k];
      }

      steps += n_envs;
      for (int e = 0; e < n_envs; ++e) {
        auto& r = results[e];
        auto& tr = trans[e];
        tr.reward = r.reward + ppo_cfg.gamma * bootstrap[e];
        tr.done = r.done || r.truncated;
        buffer.add(e, std::move(tr));
        ep_return[e] += r.reward;
        ++ep_length[e];
        if (r.done || r.truncated) {
          const long long at_step = steps;
          episodes_csv.cell(at_step).cell(e).cell(global_episode).cell(ep_return[e]).cell(ep_length[e])
              .cell(r.info.success ? 1 : 0).cell(r.info.termination);
          episodes_csv.end_row();
          all_returns.push_back(ep_return[e]);
          const std::size_t w = static_cast<std::size_t>(train_cfg.smooth_window);
          const std::size_t n = std::min(all_returns.size(), w);
          double smooth = 0.0;
          for (std::size_t k = all_returns.size() - n; k < all_returns.size(); ++k) smooth += all_returns[k];
          curve_csv.cell(at_step).cell(ep_return[e]).cell(smooth / static_cast<double>(n));
          if (std::isnan(last_eval))
            curve_csv.empty();
          else
            curve_csv.cell(last_eval);
          curve_csv.end_row();
          ++global_episode;
          ++episode_count[e];
          reset_env(e);
        } else {
          obs[e] = std::move(r.observation);
        }
      }
    }
    if (!buffer.full()) break;  // interrupted mid-rollout

    std::vector<Observation> last(obs.begin(), obs.end());
    std::vector<const Observation*> last_ptr;
    for (auto& o : last) last_ptr.push_back(&o);
    nn::Tensor<float> li, ls;
    pack_observations(last_ptr, shape, li, ls);
    const auto lv = net.forward(li, ls, false);
    std::vector<double> last_values(lv.value.data.begin(), lv.value.data.end());
    buffer.finish(last_values, ppo_cfg.gamma, ppo_cfg.gae_lambda);
    const UpdateStats st = ppo.update(buffer, shuffle_rng);
    ++result.updates;
    updates_csv.cell(result.updates).cell(steps).cell(st.policy_loss).cell(st.value_loss)
        .cell(st.entropy).cell(st.approx_kl).cell(st.clip_fraction).cell(st.grad_norm)
        .cell(st.minibatches).cell(st.early_stopped ? 1 : 0);
    updates_csv.end_row();
    if (!all_returns.empty()) {
      const std::size_t n = std::min<std::size_t>(all_returns.size(), train_cfg.smooth_window);
      const double recent =
          std::accumulate(all_returns.end() - static_cast<std::ptrdiff_t>(n), all_returns.end(), 0.0) / n;
      say(fmt::format("update {} step {}: return {:.3f} kl {:.4f} clip {:.3f}{}", result.updates,
                      steps, recent, st.approx_kl, st.clip_fraction, st.early_stopped ? " (kl stop)" : ""));
    }
    episodes_csv.flush();
    curve_csv.flush();
    updates_csv.flush();
    if (steps >= next_eval) {
      run_eval(steps);
      while (next_eval <= steps) next_eval += train_cfg.eval_every;
    }
  }
  result.steps = steps;
  result.interrupted = stopped() && result.steps < train_cfg.total_steps;
  if (result.eval_curve.back().first != result.steps && !result.interrupted) run_eval(result.steps);
  save_checkpoint(path("checkpoint.bin"), net);
  return result;
}

}  // namespace tactile::rl
