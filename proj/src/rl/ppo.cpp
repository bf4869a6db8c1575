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

#include "tactile/rl/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "tactile/util/errors.hpp"

namespace tactile::rl {

// ---------------------------------------------------------------- config

void PPOConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("ppo.learning_rate must be > 0");
  if (n_envs < 1) throw ConfigError("ppo.n_envs must be >= 1");
  if (epoch_steps < n_envs) throw ConfigError("ppo.epoch_steps must be >= ppo.n_envs");
  if (batch_size < 1) throw ConfigError("ppo.batch_size must be >= 1");
  if (n_epochs < 1) throw ConfigError("ppo.n_epochs must be >= 1");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("ppo.gamma must be in (0, 1]");
  if (!(gae_lambda > 0.0 && gae_lambda <= 1.0)) throw ConfigError("ppo.gae_lambda must be in (0, 1]");
  if (!(clip_range > 0.0)) throw ConfigError("ppo.clip_range must be > 0");
  if (ent_coef < 0.0 || vf_coef < 0.0) throw ConfigError("ppo coefficients must be >= 0");
  if (!(max_grad_norm > 0.0)) throw ConfigError("ppo.max_grad_norm must be > 0");
  if (augment_shift < 0) throw ConfigError("ppo.augment_shift must be >= 0");
  if (lr_schedule != "constant" && lr_schedule != "linear")
    throw ConfigError(fmt::format("ppo.lr_schedule must be constant or linear, got '{}'", lr_schedule));
}

PPOConfig PPOConfig::from_config(const util::Config& cfg) {
  PPOConfig c;
  c.learning_rate = cfg.get_double("ppo.learning_rate", c.learning_rate);
  c.lr_schedule = cfg.get_string("ppo.lr_schedule", c.lr_schedule);
  c.n_envs = static_cast<int>(cfg.get_int("ppo.n_envs", c.n_envs));
  c.epoch_steps = static_cast<int>(cfg.get_int("ppo.epoch_steps", c.epoch_steps));
  c.batch_size = static_cast<int>(cfg.get_int("ppo.batch_size", c.batch_size));
  c.n_epochs = static_cast<int>(cfg.get_int("ppo.n_epochs", c.n_epochs));
  c.gamma = cfg.get_double("ppo.gamma", c.gamma);
  c.gae_lambda = cfg.get_double("ppo.gae_lambda", c.gae_lambda);
  c.clip_range = cfg.get_double("ppo.clip_range", c.clip_range);
  c.ent_coef = cfg.get_double("ppo.ent_coef", c.ent_coef);
  c.vf_coef = cfg.get_double("ppo.vf_coef", c.vf_coef);
  c.max_grad_norm = cfg.get_double("ppo.max_grad_norm", c.max_grad_norm);
  c.kl_limit = cfg.get_double("ppo.kl_limit", c.kl_limit);
  c.adam_eps = cfg.get_double("ppo.adam_eps", c.adam_eps);
  c.augment_shift = static_cast<int>(cfg.get_int("ppo.augment_shift", c.augment_shift));
  c.validate();
  return c;
}

void PPOConfig::to_config(util::Config& cfg) const {
  cfg.set("ppo.learning_rate", fmt::format("{}", learning_rate));
  cfg.set("ppo.lr_schedule", lr_schedule);
  cfg.set("ppo.n_envs", std::to_string(n_envs));
  cfg.set("ppo.epoch_steps", std::to_string(epoch_steps));
  cfg.set("ppo.batch_size", std::to_string(batch_size));
  cfg.set("ppo.n_epochs", std::to_string(n_epochs));
  cfg.set("ppo.gamma", fmt::format("{}", gamma));
  cfg.set("ppo.gae_lambda", fmt::format("{}", gae_lambda));
  cfg.set("ppo.clip_range", fmt::format("{}", clip_range));
  cfg.set("ppo.ent_coef", fmt::format("{}", ent_coef));
  cfg.set("ppo.vf_coef", fmt::format("{}", vf_coef));
  cfg.set("ppo.max_grad_norm", fmt::format("{}", max_grad_norm));
  cfg.set("ppo.kl_limit", fmt::format("{}", kl_limit));
  cfg.set("ppo.adam_eps", fmt::format("{}", adam_eps));
  cfg.set("ppo.augment_shift", std::to_string(augment_shift));
}

std::vector<std::string> PPOConfig::known_keys() {
  return {"ppo.learning_rate", "ppo.lr_schedule", "ppo.n_envs",     "ppo.epoch_steps",   "ppo.batch_size",
          "ppo.n_epochs",      "ppo.gamma",      "ppo.gae_lambda",    "ppo.clip_range",
          "ppo.ent_coef",      "ppo.vf_coef",    "ppo.max_grad_norm", "ppo.kl_limit",
          "ppo.adam_eps",      "ppo.augment_shift"};
}

// ---------------------------------------------------------------- math

GaeResult gae(std::span<const double> rewards, std::span<const double> values,
              std::span<const std::uint8_t> dones, double bootstrap_value, double gamma,
              double lambda) {
  if (rewards.size() != values.size() || rewards.size() != dones.size())
    throw std::invalid_argument(fmt::format("gae: length mismatch ({} rewards, {} values, {} dones)",
                                            rewards.size(), values.size(), dones.size()));
  const std::size_t n = rewards.size();
  GaeResult out;
  out.advantages.assign(n, 0.0);
  out.returns.assign(n, 0.0);
  double next_adv = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const double next_value = k + 1 < n ? values[k + 1] : bootstrap_value;
    const double live = dones[k] ? 0.0 : 1.0;
    const double delta = rewards[k] + gamma * next_value * live - values[k];
    next_adv = delta + gamma * lambda * live * next_adv;
    out.advantages[k] = next_adv;
    out.returns[k] = next_adv + values[k];
  }
  return out;
}

double clipped_objective(double ratio, double advantage, double clip_range) {
  const double clipped = std::clamp(ratio, 1.0 - clip_range, 1.0 + clip_range);
  return std::min(ratio * advantage, clipped * advantage);
}

bool clip_active(double ratio, double advantage, double clip_range) {
  const double clipped = std::clamp(ratio, 1.0 - clip_range, 1.0 + clip_range);
  return clipped * advantage < ratio * advantage;
}

void normalize_advantages(std::vector<double>& adv) {
  if (adv.empty()) return;
  const double n = static_cast<double>(adv.size());
  const double mean = std::accumulate(adv.begin(), adv.end(), 0.0) / n;
  double var = 0.0;
  for (double a : adv) var += (a - mean) * (a - mean);
  const double sd = std::sqrt(var / n);
  const double inv = sd > 1e-12 ? 1.0 / sd : 0.0;
  for (double& a : adv) a = (a - mean) * inv;
}

render::ByteImage shift_image(const render::ByteImage& img, int dx, int dy) {
  render::ByteImage out(img.width, img.height, img.channels, 0);
  for (int c = 0; c < img.channels; ++c)
    for (int r = 0; r < img.height; ++r) {
      const int sr = r - dy;
      if (sr < 0 || sr >= img.height) continue;
      for (int col = 0; col < img.width; ++col) {
        const int sc = col - dx;
        if (sc >= 0 && sc < img.width) out.at(c, r, col) = img.at(c, sr, sc);
      }
    }
  return out;
}

render::ByteImage augment(const render::ByteImage& img, int max_shift, util::Rng& rng) {
  if (max_shift <= 0) return img;
  if (4 * max_shift >= std::min(img.width, img.height))
    throw std::invalid_argument("augment: max_shift must be below a quarter of the image size");
  const int dx = rng.uniform_int(-max_shift, max_shift);
  const int dy = rng.uniform_int(-max_shift, max_shift);
  return shift_image(img, dx, dy);
}

// ---------------------------------------------------------------- buffer

RolloutBuffer::RolloutBuffer(int n_envs, int steps_per_env)
    : n_envs_(n_envs), steps_(steps_per_env), data_(static_cast<std::size_t>(n_envs)) {
  for (auto& d : data_) d.reserve(static_cast<std::size_t>(steps_per_env));
}

void RolloutBuffer::add(int env, Transition t) {
  auto& d = data_.at(static_cast<std::size_t>(env));
  if (static_cast<int>(d.size()) >= steps_) throw std::logic_error("rollout buffer: env slot full");
  d.push_back(std::move(t));
  finished_ = false;
}

bool RolloutBuffer::full() const {
  return std::all_of(data_.begin(), data_.end(),
                     [&](const auto& d) { return static_cast<int>(d.size()) == steps_; });
}

void RolloutBuffer::finish(const std::vector<double>& last_values, double gamma, double lambda) {
  if (!full()) throw std::logic_error("rollout buffer: advantages requested before the buffer is full");
  if (static_cast<int>(last_values.size()) != n_envs_)
    throw std::invalid_argument("rollout buffer: one bootstrap value per env required");
  adv_.assign(size(), 0.0);
  ret_.assign(size(), 0.0);
  for (int e = 0; e < n_envs_; ++e) {
    const auto& d = data_[e];
    std::vector<double> r(d.size()), v(d.size());
    std::vector<std::uint8_t> done(d.size());
    for (std::size_t t = 0; t < d.size(); ++t) {
      r[t] = d[t].reward;
      v[t] = d[t].value;
      done[t] = d[t].done ? 1 : 0;
    }
    const GaeResult g = gae(r, v, done, last_values[e], gamma, lambda);
    for (std::size_t t = 0; t < d.size(); ++t) {
      adv_[e * steps_ + t] = g.advantages[t];
      ret_[e * steps_ + t] = g.returns[t];
    }
  }
  raw_adv_ = adv_;
  normalize_advantages(adv_);
  finished_ = true;
}

const Transition& RolloutBuffer::at(std::size_t flat) const {
  return data_[flat / steps_][flat % steps_];
}

void RolloutBuffer::clear() {
  for (auto& d : data_) d.clear();
  adv_.clear();
  raw_adv_.clear();
  ret_.clear();
  finished_ = false;
}

// ---------------------------------------------------------------- update

void pack_inputs(const std::vector<const render::ByteImage*>& images,
                 const std::vector<const std::vector<float>*>& states, const InputShape& shape,
                 nn::Tensor<float>& image_out, nn::Tensor<float>& state_out) {
  const int n = static_cast<int>(std::max(images.size(), states.size()));
  if (shape.channels > 0) {
    image_out = nn::Tensor<float>({n, shape.channels, shape.height, shape.width});
    const std::size_t per = image_out.stride0();
    for (int i = 0; i < n; ++i) {
      const auto& img = *images[i];
      if (img.data.size() != per) throw std::invalid_argument("pack_inputs: image size mismatch");
      float* dst = image_out.ptr() + i * per;
      for (std::size_t k = 0; k < per; ++k) dst[k] = img.data[k] * (1.0f / 255.0f);
    }
  } else {
    image_out = {};
  }
  if (shape.state_dim > 0) {
    state_out = nn::Tensor<float>({n, shape.state_dim});
    for (int i = 0; i < n; ++i) {
      const auto& s = *states[i];
      if (static_cast<int>(s.size()) != shape.state_dim)
        throw std::invalid_argument("pack_inputs: state size mismatch");
      std::copy(s.begin(), s.end(), state_out.ptr() + static_cast<std::size_t>(i) * shape.state_dim);
    }
  } else {
    state_out = {};
  }
}

Ppo::Ppo(ActorCritic<float>& net, const PPOConfig& cfg)
    : net_(net), cfg_(cfg), adam_(net.params(), cfg.learning_rate, 0.9, 0.999, cfg.adam_eps) {}

void Ppo::set_remaining(double fraction) {
  if (cfg_.lr_schedule == "linear") adam_.set_lr(cfg_.learning_rate * std::clamp(fraction, 0.0, 1.0));
}

UpdateStats Ppo::update(const RolloutBuffer& buffer, util::Rng& rng) {
  if (!buffer.finished()) throw std::logic_error("ppo: buffer advantages not computed");
  UpdateStats st;
  const int a_dim = net_.action_dim();
  const auto params = net_.params();
  std::vector<std::size_t> order(buffer.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  double kl_sum = 0.0, grad_sum = 0.0;
  std::size_t clipped = 0, samples = 0;
  for (int epoch = 0; epoch < cfg_.n_epochs && !st.early_stopped; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng.engine());
    for (std::size_t start = 0; start < order.size(); start += cfg_.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg_.batch_size);
      const int b = static_cast<int>(end - start);
      std::vector<const render::ByteImage*> imgs;
      std::vector<const std::vector<float>*> states;
      for (std::size_t k = start; k < end; ++k) {
        const Transition& t = buffer.at(order[k]);
        imgs.push_back(&t.image);
        states.push_back(&t.state);
      }
      nn::Tensor<float> xi, xs;
      pack_inputs(imgs, states, net_.input(), xi, xs);
      const auto out = net_.forward(xi, xs, true);
      const float* log_std = net_.log_std().value.data();

      nn::Tensor<float> d_mean({b, a_dim}), d_value({b, 1});
      std::vector<double> d_log_std(static_cast<std::size_t>(a_dim), 0.0);
      double pol = 0.0, val = 0.0, kl = 0.0;
      std::size_t mb_clipped = 0;
      for (int i = 0; i < b; ++i) {
        const std::size_t idx = order[start + i];
        const Transition& t = buffer.at(idx);
        const float* mu = out.mean.ptr() + static_cast<std::size_t>(i) * a_dim;
        const double lp = gaussian_log_prob(mu, log_std, t.action.data(), a_dim);
        const double log_ratio = lp - t.log_prob;
        const double ratio = std::exp(log_ratio);
        const double adv = buffer.advantage(idx);
        pol -= clipped_objective(ratio, adv, cfg_.clip_range);
        kl += (ratio - 1.0) - log_ratio;
        const bool active = clip_active(ratio, adv, cfg_.clip_range);
        if (std::fabs(ratio - 1.0) > cfg_.clip_range) ++mb_clipped;
        const double dlp = active ? 0.0 : -adv * ratio / b;
        for (int j = 0; j < a_dim; ++j) {
          const double inv_var = std::exp(-2.0 * log_std[j]);
          const double diff = static_cast<double>(t.action[j]) - mu[j];
          d_mean.data[static_cast<std::size_t>(i) * a_dim + j] = static_cast<float>(dlp * diff * inv_var);
          d_log_std[j] += dlp * (diff * diff * inv_var - 1.0);
        }
        const double v = out.value.data[i];
        val += (v - buffer.ret(idx)) * (v - buffer.ret(idx));
        d_value.data[i] = static_cast<float>(cfg_.vf_coef * 2.0 * (v - buffer.ret(idx)) / b);
      }
      pol /= b;
      val /= b;
      kl /= b;
      const double ent = gaussian_entropy(log_std, a_dim);
      const double loss = pol + cfg_.vf_coef * val - cfg_.ent_coef * ent;
      if (!std::isfinite(loss))
        throw std::runtime_error(fmt::format(
            "ppo: non-finite loss at epoch {} minibatch {} (policy {}, value {}, kl {})", epoch,
            start / cfg_.batch_size, pol, val, kl));
      if (cfg_.kl_limit > 0.0 && kl > cfg_.kl_limit) {
        st.early_stopped = true;
        st.approx_kl = kl;
        break;
      }
      nn::zero_grad(params);
      net_.backward(d_mean, d_value);
      auto& g = net_.log_std().grad;
      for (int j = 0; j < a_dim; ++j) g[j] += static_cast<float>(d_log_std[j] - cfg_.ent_coef);
      const double norm = nn::clip_grad_norm(params, cfg_.max_grad_norm);
      double post = 0.0;
      for (auto* p : params)
        for (float x : p->grad) post += static_cast<double>(x) * x;
      st.max_clipped_norm = std::max(st.max_clipped_norm, std::sqrt(post));
      adam_.step();

      st.policy_loss += pol;
      st.value_loss += val;
      st.entropy += ent;
      kl_sum += kl;
      grad_sum += norm;
      clipped += mb_clipped;
      samples += static_cast<std::size_t>(b);
      ++st.minibatches;
    }
    if (!st.early_stopped) ++st.epochs_completed;
  }
  if (st.minibatches > 0) {
    const double m = st.minibatches;
    st.policy_loss /= m;
    st.value_loss /= m;
    st.entropy /= m;
    if (!st.early_stopped) st.approx_kl = kl_sum / m;
    st.grad_norm = grad_sum / m;
    st.clip_fraction = static_cast<double>(clipped) / static_cast<double>(samples);
  }
  return st;
}

// ---------------------------------------------------------------- checkpoints

namespace {
constexpr char kMagic[8] = {'T', 'G', 'C', 'K', 'P', 'T', '0', '1'};
}

void save_checkpoint(const std::string& path, ActorCritic<float>& net) {
  const std::vector<float> w = net.flat_weights();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write checkpoint '{}'", path));
  const std::uint64_t sig = net.signature(), n = w.size();
  out.write(kMagic, sizeof kMagic);
  out.write(reinterpret_cast<const char*>(&sig), sizeof sig);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(w.data()), static_cast<std::streamsize>(n * sizeof(float)));
  if (!out) throw IoError(fmt::format("error writing checkpoint '{}'", path));
}

void load_checkpoint(const std::string& path, ActorCritic<float>& net) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read checkpoint '{}'", path));
  char magic[8];
  std::uint64_t sig = 0, n = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&sig), sizeof sig);
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw IoError(fmt::format("'{}' is not a checkpoint", path));
  if (sig != net.signature())
    throw ConfigError(fmt::format("checkpoint '{}' was written for a different network ({})", path,
                                  net.describe()));
  if (n != net.num_params()) throw IoError(fmt::format("checkpoint '{}': weight count mismatch", path));
  std::vector<float> w(n);
  in.read(reinterpret_cast<char*>(w.data()), static_cast<std::streamsize>(n * sizeof(float)));
  if (!in) throw IoError(fmt::format("checkpoint '{}' is truncated", path));
  net.set_flat_weights(w);
}

}  // namespace tactile::rl
